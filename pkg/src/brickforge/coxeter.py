"""Finite crystallographic Coxeter systems in the simple-root basis.

Everything here is exact: group elements are integer matrices whose column
``s`` holds ``w(alpha_s)`` in the basis of simple roots, roots are integer
tuples, and fundamental weights are tuples of :class:`fractions.Fraction`.

Generators and word letters are 1-based (``1..n``) as in the usual shorthand
``Q = 123212``; matrix and tuple indices are 0-based internally.

>>> A2 = build_system(PRESETS["A2"])
>>> A2.positive_roots
[(1, 0), (0, 1), (1, 1)]
>>> A2.reduced_word(A2.longest_element)
(1, 2, 1)
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence, Union

from .errors import IndexOutOfRange, NotARoot, NotCrystallographic, NotFinite

Matrix = tuple[tuple[int, ...], ...]
Root = tuple[int, ...]
Vector = tuple[Union[int, Fraction], ...]
Word = tuple[int, ...]

DEFAULT_MAX_ROOTS = 10_000
DEFAULT_MAX_ELEMENTS = 500_000

# a[s][t] with s(alpha_t) = alpha_t - a[s][t] alpha_s
PRESETS: dict[str, tuple[tuple[int, ...], ...]] = {
    "A1": ((2,),),
    "A1xA1": ((2, 0), (0, 2)),
    "A2": ((2, -1), (-1, 2)),
    "B2": ((2, -1), (-2, 2)),
    "C2": ((2, -2), (-1, 2)),
    "G2": ((2, -1), (-3, 2)),
    "A3": ((2, -1, 0), (-1, 2, -1), (0, -1, 2)),
    "B3": ((2, -1, 0), (-1, 2, -1), (0, -2, 2)),
    "C3": ((2, -1, 0), (-1, 2, -2), (0, -1, 2)),
    "A1xA1xA1": ((2, 0, 0), (0, 2, 0), (0, 0, 2)),
    "A4": ((2, -1, 0, 0), (-1, 2, -1, 0), (0, -1, 2, -1), (0, 0, -1, 2)),
    "B4": ((2, -1, 0, 0), (-1, 2, -1, 0), (0, -1, 2, -1), (0, 0, -2, 2)),
    "D4": ((2, -1, 0, 0), (-1, 2, -1, -1), (0, -1, 2, 0), (0, -1, 0, 2)),
}


@dataclass(frozen=True)
class CartanMatrix:
    entries: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.entries)

    def __getitem__(self, st: tuple[int, int]) -> int:
        s, t = st
        return self.entries[s][t]

    @classmethod
    def coerce(cls, value: "CartanMatrix | Sequence[Sequence[int]]") -> "CartanMatrix":
        if isinstance(value, CartanMatrix):
            return value
        rows = []
        for row in value:
            out = []
            for a in row:
                if isinstance(a, bool) or int(a) != a:
                    raise NotCrystallographic(f"non-integer Cartan entry {a!r}")
                out.append(int(a))
            rows.append(tuple(out))
        return cls(tuple(rows))


@dataclass(frozen=True)
class GroupElement:
    """A Coxeter group element; equality and hashing use the matrix only."""

    matrix: Matrix
    length: int = field(compare=False)

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def column(self, s: int) -> Root:
        """``w(alpha_s)`` for a 1-based generator ``s``."""
        return tuple(row[s - 1] for row in self.matrix)


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    bt = tuple(zip(*b))
    return tuple(tuple(sum(a[i][k] * bt[j][k] for k in range(n)) for j in range(n)) for i in range(n))


def _matvec(a: Matrix, v: Sequence) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def _det(rows: list[list[Fraction]]) -> Fraction:
    m = [list(r) for r in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                for k in range(c, n):
                    m[r][k] -= f * m[c][k]
    return det


def _inverse(rows: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    n = len(rows)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(rows)]
    for c in range(n):
        p = next(r for r in range(c, n) if m[r][c] != 0)
        m[c], m[p] = m[p], m[c]
        piv = m[c][c]
        m[c] = [x / piv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [row[n:] for row in m]


def is_positive(v: Sequence) -> bool:
    return any(v) and all(x >= 0 for x in v)


def is_negative(v: Sequence) -> bool:
    return any(v) and all(x <= 0 for x in v)


def negate(v: Sequence) -> tuple:
    return tuple(-x for x in v)


def _validate(cartan: CartanMatrix) -> None:
    n = cartan.rank
    if n == 0 or any(len(row) != n for row in cartan.entries):
        raise NotCrystallographic("Cartan matrix must be square and non-empty")
    for s in range(n):
        if cartan.entries[s][s] != 2:
            raise NotCrystallographic(f"diagonal entry a[{s + 1}][{s + 1}] must be 2")
        for t in range(n):
            if s == t:
                continue
            a, b = cartan.entries[s][t], cartan.entries[t][s]
            if a > 0:
                raise NotCrystallographic(f"off-diagonal entry a[{s + 1}][{t + 1}] = {a} is positive")
            if (a == 0) != (b == 0):
                raise NotCrystallographic(f"a[{s + 1}][{t + 1}] and a[{t + 1}][{s + 1}] must vanish together")
            if a * b > 3:
                raise NotFinite(f"a[{s + 1}][{t + 1}]*a[{t + 1}][{s + 1}] = {a * b} is not of finite type")


def _symmetrizer(cartan: CartanMatrix) -> tuple[int, ...]:
    """Minimal positive integer ``d`` with ``d_s a_st = d_t a_ts`` on every component."""
    n = cartan.rank
    d: list[Fraction | None] = [None] * n
    for root in range(n):
        if d[root] is not None:
            continue
        d[root] = Fraction(1)
        component = [root]
        queue = deque([root])
        while queue:
            s = queue.popleft()
            for t in range(n):
                a = cartan.entries[s][t]
                if t == s or a == 0:
                    continue
                want = d[s] * a / cartan.entries[t][s]
                if d[t] is None:
                    d[t] = want
                    component.append(t)
                    queue.append(t)
                elif d[t] != want:
                    raise NotCrystallographic("Cartan matrix is not symmetrizable")
        lcm = 1
        for t in component:
            den = d[t].denominator
            lcm = lcm * den // _gcd(lcm, den)
        ints = [int(d[t] * lcm) for t in component]
        g = 0
        for x in ints:
            g = _gcd(g, x)
        for t, x in zip(component, ints):
            d[t] = Fraction(x // g)
    return tuple(int(x) for x in d)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


class CoxeterSystem:
    """A finite crystallographic Coxeter system built from a Cartan matrix.

    Immutable after construction; caches are filled lazily but only ever hold
    values that are pure functions of the Cartan matrix.
    """

    def __init__(self, cartan, max_roots: int = DEFAULT_MAX_ROOTS, name: str | None = None):
        self.cartan = CartanMatrix.coerce(cartan)
        _validate(self.cartan)
        self.name = name
        self.rank = n = self.cartan.rank
        self.symmetrizer = _symmetrizer(self.cartan)
        self.gram: Matrix = tuple(
            tuple(self.symmetrizer[s] * self.cartan.entries[s][t] for t in range(n)) for s in range(n)
        )
        for k in range(1, n + 1):
            if _det([[Fraction(x) for x in row[:k]] for row in self.gram[:k]]) <= 0:
                raise NotFinite("symmetrized Cartan matrix is not positive definite")

        self.identity = GroupElement(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), 0)
        gens = []
        for s in range(n):
            rows = [list(r) for r in self.identity.matrix]
            for t in range(n):
                rows[s][t] -= self.cartan.entries[s][t]
            gens.append(GroupElement(tuple(tuple(r) for r in rows), 1))
        self.generators: tuple[GroupElement, ...] = tuple(gens)

        self.positive_roots: list[Root] = self._enumerate_roots(max_roots)
        self.root_index: dict[Root, int] = {r: i for i, r in enumerate(self.positive_roots)}
        inv = _inverse(self.cartan.entries)
        self.weights: list[tuple[Fraction, ...]] = [tuple(inv[i][s] for i in range(n)) for s in range(n)]
        self._lengths: dict[Matrix, int] = {self.identity.matrix: 0}
        for g in gens:
            self._lengths[g.matrix] = 1
        self._reduced_words: dict[Matrix, Word] = {}
        self.longest_element = self._longest()

    def __repr__(self) -> str:
        label = self.name or repr(self.cartan.entries)
        return f"CoxeterSystem({label})"

    # roots -------------------------------------------------------------

    def _enumerate_roots(self, max_roots: int) -> list[Root]:
        simple = [tuple(int(i == s) for i in range(self.rank)) for s in range(self.rank)]
        seen = set(simple)
        queue = deque(simple)
        while queue:
            r = queue.popleft()
            for g in self.generators:
                image = _matvec(g.matrix, r)
                if image not in seen:
                    if not (is_positive(image) or is_negative(image)):
                        raise NotFinite(f"orbit produced mixed-sign vector {image}")
                    seen.add(image)
                    if len(seen) > max_roots:
                        raise NotFinite(f"root orbit exceeds {max_roots} vectors")
                    queue.append(image)
        positive = [r for r in seen if is_positive(r)]
        return sorted(positive, key=lambda r: (sum(r), tuple(-x for x in r)))

    @property
    def simple_roots(self) -> list[Root]:
        return [tuple(int(i == s) for i in range(self.rank)) for s in range(self.rank)]

    def is_root(self, v: Sequence) -> bool:
        v = tuple(v)
        return v in self.root_index or negate(v) in self.root_index

    def positive_part(self, v: Sequence) -> Root:
        """``|beta|``: the positive root among ``beta`` and ``-beta``."""
        v = tuple(v)
        return v if is_positive(v) else negate(v)

    def inner(self, u: Sequence, v: Sequence):
        """Symmetrized bilinear form ``<u, v> = u^T diag(d) A v`` in root coordinates."""
        return sum(u[i] * sum(self.gram[i][j] * v[j] for j in range(self.rank)) for i in range(self.rank) if u[i])

    # group elements ----------------------------------------------------

    def _check_letter(self, s: int) -> None:
        if not 1 <= s <= self.rank:
            raise IndexOutOfRange(f"generator index {s} outside 1..{self.rank}")

    def generator(self, s: int) -> GroupElement:
        self._check_letter(s)
        return self.generators[s - 1]

    def _length_of(self, matrix: Matrix) -> int:
        cached = self._lengths.get(matrix)
        if cached is None:
            cached = sum(1 for r in self.positive_roots if is_negative(_matvec(matrix, r)))
            self._lengths[matrix] = cached
        return cached

    def element(self, matrix: Sequence[Sequence[int]]) -> GroupElement:
        m = tuple(tuple(int(x) for x in row) for row in matrix)
        return GroupElement(m, self._length_of(m))

    def multiply(self, *elements: GroupElement) -> GroupElement:
        result = self.identity.matrix
        for x in elements:
            result = _matmul(result, x.matrix)
        return GroupElement(result, self._length_of(result))

    def act(self, w: GroupElement, v: Sequence) -> tuple:
        """Apply ``w`` to a vector given in the simple-root basis."""
        if len(v) != self.rank:
            raise ValueError(f"vector of length {len(v)} in rank {self.rank}")
        return _matvec(w.matrix, v)

    def element_from_word(self, word: Iterable[int]) -> GroupElement:
        m = self.identity.matrix
        for s in word:
            self._check_letter(s)
            m = _matmul(m, self.generators[s - 1].matrix)
        return GroupElement(m, self._length_of(m))

    def is_reduced(self, word: Sequence[int]) -> bool:
        """Prefix criterion: ``s_1...s_{i-1}(alpha_{s_i})`` positive for all ``i``."""
        m = self.identity.matrix
        for s in word:
            self._check_letter(s)
            if not is_positive(tuple(row[s - 1] for row in m)):
                return False
            m = _matmul(m, self.generators[s - 1].matrix)
        return True

    def right_multiply(self, w: GroupElement, s: int) -> GroupElement:
        return self.multiply(w, self.generator(s))

    def left_multiply(self, s: int, w: GroupElement) -> GroupElement:
        return self.multiply(self.generator(s), w)

    def has_right_descent(self, w: GroupElement, s: int) -> bool:
        return is_negative(w.column(s))

    def has_left_descent(self, w: GroupElement, s: int) -> bool:
        return self._length_of(_matmul(self.generator(s).matrix, w.matrix)) < w.length

    def reduced_word(self, w: GroupElement) -> Word:
        """Lexicographically smallest reduced word for ``w``."""
        cached = self._reduced_words.get(w.matrix)
        if cached is not None:
            return cached
        word = []
        cur = w
        while cur.length:
            s = next(s for s in range(1, self.rank + 1) if self.has_left_descent(cur, s))
            word.append(s)
            cur = self.left_multiply(s, cur)
        result = tuple(word)
        self._reduced_words[w.matrix] = result
        return result

    def inverse(self, w: GroupElement) -> GroupElement:
        return self.element_from_word(reversed(self.reduced_word(w)))

    def reflection(self, beta: Sequence[int]) -> GroupElement:
        """The reflection ``s_beta``: ``v - 2<beta, v>/<beta, beta> beta``."""
        beta = tuple(beta)
        if not self.is_root(beta):
            raise NotARoot(f"{beta} is not a root")
        bb = self.inner(beta, beta)
        cols = []
        for t in range(self.rank):
            e = tuple(int(i == t) for i in range(self.rank))
            c = Fraction(2 * self.inner(beta, e), bb)
            if c.denominator != 1:
                raise NotCrystallographic(f"non-integral reflection coefficient for {beta}")
            cols.append(tuple(e[i] - int(c) * beta[i] for i in range(self.rank)))
        return self.element(tuple(zip(*cols)))

    def length(self, w: GroupElement) -> int:
        return w.length

    def inversion_set(self, w: GroupElement) -> list[Root]:
        """``Inv(w) = Phi+ ∩ w(Phi-)`` in canonical root order."""
        inv = set()
        for r in self.positive_roots:
            image = _matvec(w.matrix, r)
            if is_negative(image):
                inv.add(negate(image))
        return [r for r in self.positive_roots if r in inv]

    def weak_leq(self, x: GroupElement, y: GroupElement) -> bool:
        """Right weak order: ``Inv(x) ⊆ Inv(y)``."""
        if x.length > y.length:
            return False
        return set(self.inversion_set(x)) <= set(self.inversion_set(y))

    def _longest(self) -> GroupElement:
        w = self.identity
        while True:
            s = next((s for s in range(1, self.rank + 1) if is_positive(w.column(s))), None)
            if s is None:
                return w
            w = self.right_multiply(w, s)

    @cached_property
    def elements(self) -> list[GroupElement]:
        """All of W, sorted by (length, lexicographically smallest reduced word)."""
        seen = {self.identity.matrix: self.identity}
        queue = deque([self.identity])
        while queue:
            w = queue.popleft()
            for s in range(1, self.rank + 1):
                if is_positive(w.column(s)):
                    v = self.right_multiply(w, s)
                    if v.matrix not in seen:
                        if len(seen) >= DEFAULT_MAX_ELEMENTS:
                            raise NotFinite(f"group has more than {DEFAULT_MAX_ELEMENTS} elements")
                        seen[v.matrix] = v
                        queue.append(v)
        return sorted(seen.values(), key=lambda w: (w.length, self.reduced_word(w)))

    # text forms ----------------------------------------------------------

    def format_word(self, word: Sequence[int]) -> str:
        if self.rank >= 10:
            return ",".join(str(s) for s in word)
        return "".join(str(s) for s in word)

    def format_element(self, w: GroupElement) -> str:
        return self.format_word(self.reduced_word(w)) if w.length else "e"

    def parse_word(self, text: str) -> Word:
        text = text.strip()
        if text in ("", "e", "ε"):
            return ()
        if "," in text or " " in text:
            parts = [p for p in text.replace(",", " ").split() if p]
        else:
            parts = list(text)
        try:
            word = tuple(int(p) for p in parts)
        except ValueError:
            raise ValueError(f"cannot parse word {text!r}") from None
        for s in word:
            self._check_letter(s)
        return word

    def parse_element(self, text: str) -> GroupElement:
        if text.strip() in ("w0", "w_0", "wo"):
            return self.longest_element
        return self.element_from_word(self.parse_word(text))


def build_system(cartan, max_roots: int = DEFAULT_MAX_ROOTS, name: str | None = None) -> CoxeterSystem:
    return CoxeterSystem(cartan, max_roots=max_roots, name=name)


def preset(name: str) -> CoxeterSystem:
    try:
        entries = PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None
    return _preset_cache(name, entries)


_PRESET_SYSTEMS: dict[str, CoxeterSystem] = {}


def _preset_cache(name: str, entries) -> CoxeterSystem:
    if name not in _PRESET_SYSTEMS:
        _PRESET_SYSTEMS[name] = CoxeterSystem(entries, name=name)
    return _PRESET_SYSTEMS[name]
