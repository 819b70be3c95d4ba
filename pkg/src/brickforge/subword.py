"""Demazure products, subword complexes, flips, root and weight functions."""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .bruhat import bruhat_leq, upper_labels
from .coxeter import CoxeterSystem, GroupElement, Root, Word, _matvec, is_positive
from .errors import EmptyComplex, NoCover, NotFlippable, NotInFacet, IndexOutOfRange

Facet = tuple  # strictly increasing 1-based positions


def demazure_product(sys: CoxeterSystem, word: Iterable[int]) -> GroupElement:
    """Scan left to right, extending by ``s`` exactly when that goes up in length."""
    cur = sys.identity
    for s in word:
        sys._check_letter(s)
        if is_positive(cur.column(s)):
            cur = sys.right_multiply(cur, s)
    return cur


def star(sys: CoxeterSystem, s: int, u: GroupElement) -> GroupElement:
    """Left Demazure action ``s * u``."""
    return u if sys.has_left_descent(u, s) else sys.left_multiply(s, u)


class SubwordComplex:
    """The subword complex of a word ``Q`` and target ``w`` (positions are 1-based).

    Facets are plain tuples of increasing positions. Per-facet root and weight
    functions are computed with one prefix-product pass and cached.
    """

    def __init__(self, sys: CoxeterSystem, word: Sequence[int], target: GroupElement):
        self.system = sys
        self.word: Word = tuple(word)
        for s in self.word:
            sys._check_letter(s)
        self.target = target
        self.m = len(self.word)
        self.demazure = demazure_product(sys, self.word)
        self.nonempty = bruhat_leq(sys, target, self.demazure)
        self._data: dict[Facet, tuple[tuple, tuple]] = {}

    @classmethod
    def from_strings(cls, sys: CoxeterSystem, word: str, target: str) -> "SubwordComplex":
        return cls(sys, sys.parse_word(word), sys.parse_element(target))

    def __repr__(self) -> str:
        sys = self.system
        return f"SubwordComplex({sys.format_word(self.word)}, {sys.format_element(self.target)})"

    def _require_nonempty(self) -> None:
        if not self.nonempty:
            raise EmptyComplex(f"{self.system.format_element(self.target)} is not below Dem(Q) = "
                               f"{self.system.format_element(self.demazure)}")

    # basic data ------------------------------------------------------------

    @property
    def facet_size(self) -> int:
        return self.m - self.target.length

    def complement(self, positions: Iterable[int]) -> tuple[int, ...]:
        p = set(positions)
        return tuple(k for k in range(1, self.m + 1) if k not in p)

    def subword(self, positions: Iterable[int]) -> Word:
        return tuple(self.word[k - 1] for k in positions)

    def _check_positions(self, positions: Iterable[int]) -> Facet:
        I = tuple(sorted(set(positions)))
        for k in I:
            if not 1 <= k <= self.m:
                raise IndexOutOfRange(f"position {k} outside 1..{self.m}")
        return I

    def is_facet(self, positions: Iterable[int]) -> bool:
        I = self._check_positions(positions)
        comp = self.subword(self.complement(I))
        sys = self.system
        return len(comp) == self.target.length and sys.is_reduced(comp) and sys.element_from_word(comp) == self.target

    @cached_property
    def suffix_demazure(self) -> tuple[GroupElement, ...]:
        """``suffix_demazure[k] = Dem(Q_{k+1..m})`` for ``k = 0..m``."""
        sys = self.system
        out = [sys.identity] * (self.m + 1)
        for k in range(self.m - 1, -1, -1):
            out[k] = star(sys, self.word[k], out[k + 1])
        return tuple(out)

    @cached_property
    def target_inversions(self) -> frozenset:
        return frozenset(self.system.inversion_set(self.target))

    @cached_property
    def upper_labels(self) -> tuple[Root, ...]:
        """E+(w, Dem(Q))."""
        self._require_nonempty()
        return upper_labels(self.system, self.target, self.demazure)

    def _below_right(self, x: GroupElement, y: GroupElement) -> bool:
        """``x <=_R y`` via length additivity of ``x^{-1} y``."""
        sys = self.system
        if x.length > y.length:
            return False
        return sys.multiply(sys.inverse(x), y).length == y.length - x.length

    # greedy facets ---------------------------------------------------------

    @cached_property
    def greedy_facet(self) -> Facet:
        """Lexicographically first facet: take a position whenever the rest can still reach ``w``."""
        self._require_nonempty()
        sys, w = self.system, self.target
        cur, I = sys.identity, []
        for k in range(1, self.m + 1):
            rest = sys.multiply(sys.inverse(cur), w)
            if bruhat_leq(sys, rest, self.suffix_demazure[k]):
                I.append(k)
            else:
                cur = sys.right_multiply(cur, self.word[k - 1])
        I = tuple(I)
        assert self.is_facet(I)
        assert all(is_positive(r) for r in self.root_configuration(I))
        return I

    @cached_property
    def antigreedy_facet(self) -> Facet:
        """Lexicographically last facet: skip a position whenever that stays on track."""
        self._require_nonempty()
        sys, w = self.system, self.target
        cur, I = sys.identity, []
        for k in range(1, self.m + 1):
            s = self.word[k - 1]
            nxt = sys.right_multiply(cur, s)
            if (
                nxt.length == cur.length + 1
                and self._below_right(nxt, w)
                and bruhat_leq(sys, sys.multiply(sys.inverse(nxt), w), self.suffix_demazure[k])
            ):
                cur = nxt
            else:
                I.append(k)
        I = tuple(I)
        assert self.is_facet(I)
        assert all(is_positive(sys.act(sys.inverse(w), r)) for r in self.root_configuration(I))
        return I

    # root and weight functions --------------------------------------------

    def _functions(self, I: Facet) -> tuple[tuple, tuple]:
        data = self._data.get(I)
        if data is None:
            sys = self.system
            inI = set(I)
            cur = sys.identity.matrix
            roots, weights = [], []
            for k in range(1, self.m + 1):
                s = self.word[k - 1]
                roots.append(tuple(row[s - 1] for row in cur))
                weights.append(_matvec(cur, sys.weights[s - 1]))
                if k not in inI:
                    cur = sys.right_multiply(GroupElement(cur, 0), s).matrix
            data = (tuple(roots), tuple(weights))
            self._data[I] = data
        return data

    def _position(self, k: int) -> None:
        if not 1 <= k <= self.m:
            raise IndexOutOfRange(f"position {k} outside 1..{self.m}")

    def root_function(self, I: Iterable[int], k: int) -> Root:
        self._position(k)
        return self._functions(self._check_positions(I))[0][k - 1]

    def roots(self, I: Iterable[int]) -> tuple[Root, ...]:
        """``r(I, k)`` for all ``k = 1..m``."""
        return self._functions(self._check_positions(I))[0]

    def weight_function(self, I: Iterable[int], k: int) -> tuple[Fraction, ...]:
        self._position(k)
        return self._functions(self._check_positions(I))[1][k - 1]

    def weights(self, I: Iterable[int]) -> tuple[tuple[Fraction, ...], ...]:
        return self._functions(self._check_positions(I))[1]

    def root_configuration(self, I: Iterable[int]) -> tuple[Root, ...]:
        I = self._check_positions(I)
        roots = self._functions(I)[0]
        return tuple(roots[i - 1] for i in I)

    # flips -----------------------------------------------------------------

    def is_flippable(self, I: Facet, i: int) -> bool:
        if i not in I:
            raise NotInFacet(f"position {i} not in facet {I}")
        return self.system.positive_part(self.root_function(I, i)) in self.target_inversions

    def flippable_positions(self, I: Facet) -> tuple[int, ...]:
        return tuple(i for i in I if self.is_flippable(I, i))

    def flip(self, I: Iterable[int], i: int) -> tuple[Facet, int]:
        """Exchange ``i`` for the unique complement position carrying ``|r(I, i)|``."""
        I = self._check_positions(I)
        if i not in I:
            raise NotInFacet(f"position {i} not in facet {I}")
        roots = self._functions(I)[0]
        beta = self.system.positive_part(roots[i - 1])
        if beta not in self.target_inversions:
            raise NotFlippable(f"position {i} of {I} carries {roots[i - 1]}, not an inversion of w")
        inI = set(I)
        j = next(k for k in range(1, self.m + 1) if k not in inI and roots[k - 1] == beta)
        J = tuple(sorted((inI - {i}) | {j}))
        return J, j

    def flipped_roots(self, I: Facet, i: int, j: int) -> tuple[Root, ...]:
        """Root function of the flipped facet from that of ``I`` by the reflection update."""
        roots = self.roots(I)
        sys = self.system
        refl = sys.reflection(roots[i - 1])
        lo, hi = min(i, j), max(i, j)
        return tuple(sys.act(refl, r) if lo < k <= hi else r for k, r in enumerate(roots, start=1))

    def flipped_weights(self, I: Facet, i: int, j: int) -> tuple[tuple, ...]:
        weights = self.weights(I)
        sys = self.system
        refl = sys.reflection(self.root_function(I, i))
        lo, hi = min(i, j), max(i, j)
        return tuple(sys.act(refl, v) if lo < k <= hi else v for k, v in enumerate(weights, start=1))

    def neighbours(self, I: Facet) -> list[tuple[int, Facet, int]]:
        """``(i, J, j)`` for every flippable ``i`` in ``I``."""
        return [(i,) + self.flip(I, i) for i in self.flippable_positions(I)]

    @cached_property
    def facets(self) -> tuple[Facet, ...]:
        """All facets, by breadth-first search of the flip graph from the greedy facet."""
        self._require_nonempty()
        start = self.greedy_facet
        seen = {start}
        queue = deque([start])
        while queue:
            I = queue.popleft()
            for _, J, _ in self.neighbours(I):
                if J not in seen:
                    seen.add(J)
                    queue.append(J)
        return tuple(sorted(seen))

    def enumerate_facets(self) -> tuple[Facet, ...]:
        return self.facets

    @property
    def is_spherical(self) -> bool:
        return self.nonempty and self.target == self.demazure

    # non-flippable roots and the iota map ----------------------------------

    def nonflippable_root_set(self) -> tuple[Root, ...]:
        self._require_nonempty()
        found = set()
        for I in self.facets:
            for i in I:
                if not self.is_flippable(I, i):
                    found.add(self.root_function(I, i))
        out = tuple(r for r in self.system.positive_roots if r in found)
        assert len(out) == len(found) and set(out) == set(self.upper_labels)
        return out


def iota_map(upper: SubwordComplex, J: Iterable[int], w: GroupElement) -> Facet:
    """Send a facet of ``SC(Q, s_beta w)`` to the facet ``J + {k}`` of ``SC(Q, w)``."""
    sys = upper.system
    top = upper.target
    if top.length != w.length + 1 or not bruhat_leq(sys, w, top):
        raise NoCover(f"{sys.format_element(w)} is not covered by {sys.format_element(top)}")
    if not bruhat_leq(sys, top, upper.demazure):
        raise NoCover("upper target is not below the Demazure product")
    J = upper._check_positions(J)
    if not upper.is_facet(J):
        raise NoCover(f"{J} is not a facet of {upper!r}")
    comp = upper.complement(J)
    hits = []
    for k in comp:
        word = upper.subword(c for c in comp if c != k)
        if sys.element_from_word(word) == w:
            hits.append(k)
    assert len(hits) == 1, hits
    return tuple(sorted(J + (hits[0],)))
