"""Exact rational polyhedral geometry at desk scale.

Two engines back everything in this module:

* a dense-tableau simplex over :class:`~fractions.Fraction` with Bland's
  rule (phase 1 for feasibility, phase 2 for optimisation);
* Motzkin's double description method, used in both directions
  (generators -> halfspaces via the dual cone, halfspaces -> generators).

Cones are ``{v : f.v >= 0}`` for covectors ``f``; polyhedra use pairs
``(f, b)`` meaning ``f.v + b >= 0``. No floating point is used anywhere.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

from .errors import DimensionMismatch, DimensionTooLarge

Vector = tuple  # tuple of int | Fraction
DEFAULT_MAX_DIM = 6


def max_dim() -> int:
    value = os.environ.get("BRICKFORGE_MAX_DIM")
    return int(value) if value else DEFAULT_MAX_DIM


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def primitive(v: Sequence) -> tuple[int, ...]:
    """Positive rescaling of ``v`` to a primitive integer vector."""
    fr = [Fraction(x) for x in v]
    lcm = 1
    for x in fr:
        lcm = lcm * x.denominator // gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def _rank(vectors: Iterable[Sequence]) -> int:
    rows = [[Fraction(x) for x in v] for v in vectors]
    rank = 0
    if not rows:
        return 0
    ncols = len(rows[0])
    for c in range(ncols):
        p = next((r for r in range(rank, len(rows)) if rows[r][c] != 0), None)
        if p is None:
            continue
        rows[rank], rows[p] = rows[p], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][c] != 0:
                f = rows[r][c] / rows[rank][c]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def _check_dim(vectors: Iterable[Sequence], dim: int) -> None:
    for v in vectors:
        if len(v) != dim:
            raise DimensionMismatch(f"vector {tuple(v)} has length {len(v)}, expected {dim}")


# ---------------------------------------------------------------------------
# simplex


@dataclass
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: Optional[list[Fraction]] = None
    value: Optional[Fraction] = None


def _pivot(T: list[list[Fraction]], basis: list[int], r: int, c: int) -> None:
    row = T[r]
    piv = row[c]
    if piv != 1:
        T[r] = row = [x / piv for x in row]
    for i, other in enumerate(T):
        if i != r:
            f = other[c]
            if f:
                T[i] = [x - f * y for x, y in zip(other, row)]
    basis[r] = c


def _bland(T, basis, cost, allowed) -> str:
    """Minimise ``cost`` over the tableau using Bland's smallest-index rule."""
    rhs = len(T[0]) - 1
    while True:
        entering = None
        for j in allowed:
            if j in basis:
                continue
            reduced = cost[j] - sum(cost[basis[i]] * T[i][j] for i in range(len(T)))
            if reduced < 0:
                entering = j
                break
        if entering is None:
            return "optimal"
        best = None
        for i, row in enumerate(T):
            a = row[entering]
            if a > 0:
                key = (row[rhs] / a, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return "unbounded"
        _pivot(T, basis, best[1], entering)


def linprog(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPResult:
    """Minimise ``c.x`` subject to ``A x = b``, ``x >= 0``, exactly."""
    nvar = len(c)
    rows = []
    for arow, bi in zip(A, b):
        arow = [Fraction(x) for x in arow]
        bi = Fraction(bi)
        if bi < 0:
            arow, bi = [-x for x in arow], -bi
        rows.append((arow, bi))
    m = len(rows)
    if m == 0:
        if any(Fraction(ci) < 0 for ci in c):
            return LPResult("unbounded")
        return LPResult("optimal", [Fraction(0)] * nvar, Fraction(0))
    T = [arow + [Fraction(int(i == j)) for j in range(m)] + [bi] for i, (arow, bi) in enumerate(rows)]
    basis = [nvar + i for i in range(m)]
    ncols = nvar + m
    phase1 = [Fraction(0)] * nvar + [Fraction(1)] * m
    _bland(T, basis, phase1, range(ncols))
    if sum(T[i][-1] for i in range(m) if basis[i] >= nvar) > 0:
        return LPResult("infeasible")
    # drive zero-level artificials out; drop rows that are linearly redundant
    i = 0
    while i < len(T):
        if basis[i] >= nvar:
            j = next((j for j in range(nvar) if T[i][j] != 0), None)
            if j is None:
                del T[i]
                del basis[i]
                continue
            _pivot(T, basis, i, j)
        i += 1
    cost = [Fraction(x) for x in c] + [Fraction(0)] * m
    if not T:
        if any(ci < 0 for ci in cost[:nvar]):
            return LPResult("unbounded")
        return LPResult("optimal", [Fraction(0)] * nvar, Fraction(0))
    status = _bland(T, basis, cost, range(nvar))
    if status == "unbounded":
        return LPResult("unbounded")
    x = [Fraction(0)] * nvar
    for i, j in enumerate(basis):
        x[j] = T[i][-1]
    return LPResult("optimal", x, sum(ci * xi for ci, xi in zip(cost, x)))


def feasible_combination(generators: Sequence[Sequence], target: Sequence) -> Optional[list[Fraction]]:
    """Nonnegative ``lam`` with ``sum lam_i g_i = target``, or ``None``."""
    dim = len(target)
    if not generators:
        return [] if not any(target) else None
    A = [[g[r] for g in generators] for r in range(dim)]
    res = linprog([0] * len(generators), A, target)
    return res.x if res.status == "optimal" else None


# ---------------------------------------------------------------------------
# double description


def _dd(constraints: Sequence[Sequence], dim: int) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """Extreme rays and a lineality basis of ``{x : a.x >= 0 for a in constraints}``.

    Incremental Motzkin double description with the combinatorial adjacency
    test. Returned rays are primitive integer vectors.
    """
    if dim > max_dim():
        raise DimensionTooLarge(f"dimension {dim} exceeds cap {max_dim()} (set BRICKFORGE_MAX_DIM)")
    lineality: list[tuple] = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    rays: list[tuple[tuple, frozenset]] = []
    for idx, a in enumerate(constraints):
        if not any(a):
            continue
        vals = [dot(a, l) for l in lineality]
        piv = next((i for i, v in enumerate(vals) if v != 0), None)
        if piv is not None:
            l, al = lineality[piv], vals[piv]
            if al < 0:
                l, al = tuple(-x for x in l), -al
            new_lin = []
            for i, l2 in enumerate(lineality):
                if i != piv:
                    f = Fraction(vals[i]) / al
                    new_lin.append(primitive(tuple(x - f * y for x, y in zip(l2, l))) if f else l2)
            new_rays = []
            for r, tight in rays:
                ar = dot(a, r)
                r2 = primitive(tuple(x - Fraction(ar) / al * y for x, y in zip(r, l))) if ar else r
                new_rays.append((r2, tight | {idx}))
            new_rays.append((primitive(l), frozenset(range(idx))))
            lineality, rays = [tuple(v) for v in new_lin], new_rays
            continue
        pos, neg, zero = [], [], []
        for r, tight in rays:
            v = dot(a, r)
            (pos if v > 0 else neg if v < 0 else zero).append((r, tight, v))
        new_rays = [(r, tight) for r, tight, _ in pos] + [(r, tight | {idx}) for r, tight, _ in zero]
        if pos and neg:
            for p, tp, vp in pos:
                for q, tq, vq in neg:
                    common = tp & tq
                    if any(common <= tr for r, tr in rays if r is not p and r is not q):
                        continue
                    new = primitive(tuple(vp * x - vq * y for x, y in zip(q, p)))
                    if any(new):
                        new_rays.append((new, common | {idx}))
        rays = new_rays
    seen = set()
    out = []
    for r, _ in rays:
        if r not in seen:
            seen.add(r)
            out.append(r)
    return out, [primitive(l) for l in lineality]


def double_description(generators: Sequence[Sequence], dim: int) -> list[tuple[int, ...]]:
    """Minimal H-representation of ``cone(generators)``.

    Facet covectors come first; a linear-span constraint ``h = 0`` appears as
    the pair ``h, -h``.
    """
    _check_dim(generators, dim)
    rays, lin = _dd([tuple(g) for g in generators], dim)
    out = list(rays)
    for l in lin:
        out.append(l)
        out.append(tuple(-x for x in l))
    return out


def generators_from_halfspaces(halfspaces: Sequence[Sequence], dim: int) -> list[tuple[int, ...]]:
    """Generators of ``{v : f.v >= 0}``; lines appear as opposite pairs."""
    _check_dim(halfspaces, dim)
    rays, lin = _dd([tuple(h) for h in halfspaces], dim)
    out = list(rays)
    for l in lin:
        out.append(l)
        out.append(tuple(-x for x in l))
    return out


# ---------------------------------------------------------------------------
# cones


@dataclass(frozen=True)
class LinearFunctional:
    covector: tuple

    def __call__(self, v: Sequence):
        return dot(self.covector, v)

    def __len__(self) -> int:
        return len(self.covector)


@dataclass(frozen=True)
class RationalCone:
    dim: int
    generators: tuple[tuple, ...] = ()
    halfspaces: Optional[tuple[tuple, ...]] = field(default=None, compare=False)

    @classmethod
    def from_generators(cls, generators: Iterable[Sequence], dim: int) -> "RationalCone":
        gens = tuple(tuple(g) for g in generators)
        _check_dim(gens, dim)
        return cls(dim, gens)

    @classmethod
    def from_halfspaces(cls, halfspaces: Iterable[Sequence], dim: int) -> "RationalCone":
        hs = tuple(tuple(h) for h in halfspaces)
        gens = generators_from_halfspaces(hs, dim)
        return cls(dim, tuple(gens), hs)

    def with_halfspaces(self) -> "RationalCone":
        if self.halfspaces is not None:
            return self
        return RationalCone(self.dim, self.generators, tuple(double_description(self.generators, self.dim)))

    def nonzero_generators(self) -> list[tuple]:
        return [g for g in self.generators if any(g)]

    def __contains__(self, v) -> bool:
        return cone_contains(self, v)


def cone_contains(cone: RationalCone, v: Sequence) -> bool:
    """``v in cone(generators)``, decided by exact phase-1 simplex."""
    if len(v) != cone.dim:
        raise DimensionMismatch(f"vector of length {len(v)} tested against cone in dimension {cone.dim}")
    if not any(v):
        return True
    gens = cone.nonzero_generators()
    if not gens:
        return False
    return feasible_combination(gens, v) is not None


def cone_intersect(cones: Sequence[RationalCone]) -> RationalCone:
    if not cones:
        raise ValueError("need at least one cone")
    dim = cones[0].dim
    halfspaces: list[tuple] = []
    seen = set()
    for c in cones:
        if c.dim != dim:
            raise DimensionMismatch("cones of different dimensions")
        for h in c.with_halfspaces().halfspaces:
            h = primitive(h)
            if h not in seen:
                seen.add(h)
                halfspaces.append(h)
    return RationalCone.from_halfspaces(halfspaces, dim)


def cone_subset(a: RationalCone, b: RationalCone) -> bool:
    return all(cone_contains(b, g) for g in a.nonzero_generators())


def cone_equal(a: RationalCone, b: RationalCone) -> bool:
    if a.dim != b.dim:
        raise DimensionMismatch("cones of different dimensions")
    return cone_subset(a, b) and cone_subset(b, a)


def is_pointed(cone: RationalCone) -> bool:
    """No line in the cone, i.e. its facet covectors span the dual space."""
    gens = cone.nonzero_generators()
    if not gens:
        return True
    hs = double_description(gens, cone.dim)
    return _rank(hs) == cone.dim


def is_pointed_lp(generators: Sequence[Sequence]) -> bool:
    """Independent check: zero is no nontrivial nonnegative combination."""
    gens = [tuple(g) for g in generators if any(g)]
    if not gens:
        return True
    dim = len(gens[0])
    A = [[g[r] for g in gens] for r in range(dim)] + [[1] * len(gens)]
    return linprog([0] * len(gens), A, [0] * dim + [1]).status == "infeasible"


def is_extreme(generators: Sequence[Sequence], index: int) -> bool:
    """Whether ``generators[index]`` spans an extreme ray of their cone."""
    g = tuple(generators[index])
    if not any(g):
        return False
    others = [tuple(h) for i, h in enumerate(generators) if i != index and any(h)]
    neg = tuple(-x for x in g)
    if feasible_combination(others + [g], neg) is not None:
        return False
    dim = len(g)
    # g is not extreme iff g = sum of others with some weight outside the ray of g
    outside = [h for h in others if _rank([h, g]) == 2]
    return feasible_combination(outside, g) is None if outside else True


# ---------------------------------------------------------------------------
# polyhedra


@dataclass(frozen=True)
class RationalPolyhedron:
    dim: int
    points: tuple[tuple, ...] = ()
    rays: tuple[tuple, ...] = ()
    halfspaces: Optional[tuple[tuple[tuple, Fraction], ...]] = field(default=None, compare=False)

    def with_halfspaces(self) -> "RationalPolyhedron":
        if self.halfspaces is not None:
            return self
        return RationalPolyhedron(self.dim, self.points, self.rays, tuple(vrep_to_hrep(self.points, self.rays, self.dim)))

    def satisfies_halfspaces(self, v: Sequence) -> bool:
        return all(dot(f, v) + b >= 0 for f, b in self.with_halfspaces().halfspaces)

    def __contains__(self, v) -> bool:
        return polyhedron_contains(self, v)


def minkowski_vrep(points: Iterable[Sequence], rays: Iterable[Sequence], dim: Optional[int] = None) -> RationalPolyhedron:
    pts = []
    for p in points:
        p = tuple(Fraction(x) for x in p)
        if p not in pts:
            pts.append(p)
    rs = []
    for r in rays:
        if any(r):
            r = primitive(r)
            if r not in rs:
                rs.append(r)
    if dim is None:
        dim = len(pts[0]) if pts else len(rs[0])
    _check_dim(pts, dim)
    _check_dim(rs, dim)
    return RationalPolyhedron(dim, tuple(pts), tuple(rs))


def polyhedron_contains(P: RationalPolyhedron, v: Sequence) -> bool:
    """``v in conv(points) + cone(rays)`` by exact LP."""
    if len(v) != P.dim:
        raise DimensionMismatch(f"vector of length {len(v)} tested against polyhedron in dimension {P.dim}")
    if not P.points:
        return False
    cols = [tuple(p) + (1,) for p in P.points] + [tuple(r) + (0,) for r in P.rays]
    return feasible_combination(cols, tuple(v) + (1,)) is not None


def vrep_to_hrep(points: Sequence[Sequence], rays: Sequence[Sequence], dim: int) -> list[tuple[tuple, Fraction]]:
    """Minimal ``(f, b)`` pairs with ``f.v + b >= 0`` describing ``conv + cone``."""
    gens = [(1,) + tuple(p) for p in points] + [(0,) + tuple(r) for r in rays]
    out = []
    for h in double_description(gens, dim + 1):
        f, b = tuple(h[1:]), Fraction(h[0])
        if not any(f):
            continue  # the homogenising t >= 0
        out.append((f, b))
    return out


def hrep_to_vrep(halfspaces: Sequence[tuple[Sequence, Fraction]], dim: int) -> RationalPolyhedron:
    """Points and rays of ``{v : f.v + b >= 0}``; lines are returned as ray pairs."""
    cons = [(Fraction(b),) + tuple(f) for f, b in halfspaces] + [(1,) + (0,) * dim]
    gens = generators_from_halfspaces([primitive(c) for c in cons], dim + 1)
    points, rays = [], []
    for g in gens:
        if g[0] > 0:
            points.append(tuple(Fraction(x, g[0]) for x in g[1:]))
        elif g[0] == 0 and any(g):
            rays.append(tuple(g[1:]))
    hs = tuple((tuple(f), Fraction(b)) for f, b in halfspaces)
    return RationalPolyhedron(dim, tuple(points), tuple(rays), hs)


def local_cone(P: RationalPolyhedron, q: Sequence) -> RationalCone:
    """``cone{p - q : p in P}`` from the V-representation."""
    q = tuple(q)
    gens = [tuple(a - b for a, b in zip(p, q)) for p in P.points]
    gens = [primitive(g) for g in gens if any(g)] + [tuple(r) for r in P.rays]
    return RationalCone.from_generators(gens, P.dim)


def vertices_of(P: RationalPolyhedron) -> list[tuple]:
    """Points of the V-representation that are 0-dimensional faces."""
    return [p for p in P.points if is_pointed(local_cone(P, p))]


def minimize(halfspaces: Sequence[tuple[Sequence, Fraction]], f: Sequence, dim: int) -> LPResult:
    """Minimise ``f.v`` over ``{v : a.v + b >= 0}`` (free variables, exact)."""
    k = len(halfspaces)
    # v = p - q with p, q >= 0; slack t_i = a_i.v + b_i >= 0
    c = list(f) + [-x for x in f] + [0] * k
    A, rhs = [], []
    for i, (a, b) in enumerate(halfspaces):
        A.append(list(a) + [-x for x in a] + [-int(i == j) for j in range(k)])
        rhs.append(-Fraction(b))
    res = linprog(c, A, rhs)
    if res.status != "optimal":
        return res
    v = [res.x[i] - res.x[dim + i] for i in range(dim)]
    return LPResult("optimal", v, dot(f, v))


# ---------------------------------------------------------------------------
# JSON helpers


def frac_pair(x) -> list[int]:
    x = Fraction(x)
    return [x.numerator, x.denominator]


def vector_json(v: Sequence) -> list[list[int]]:
    return [frac_pair(x) for x in v]


def vector_from_json(data: Sequence) -> tuple:
    out = []
    for x in data:
        if isinstance(x, (list, tuple)):
            num, den = x
            out.append(Fraction(int(num), int(den)))
        else:
            out.append(Fraction(x))
    return tuple(out)


def cone_to_json(cone: RationalCone) -> dict:
    data = {"dim": cone.dim, "generators": [vector_json(g) for g in cone.generators]}
    if cone.halfspaces is not None:
        data["halfspaces"] = [vector_json(h) for h in cone.halfspaces]
    return data


def cone_from_json(data: dict) -> RationalCone:
    gens = [vector_from_json(g) for g in data.get("generators", [])]
    dim = data.get("dim") or (len(gens[0]) if gens else None)
    if "halfspaces" in data and not gens:
        hs = [vector_from_json(h) for h in data["halfspaces"]]
        return RationalCone.from_halfspaces(hs, dim or len(hs[0]))
    return RationalCone.from_generators(gens, dim)


def polyhedron_to_json(P: RationalPolyhedron) -> dict:
    data = {
        "dim": P.dim,
        "points": [vector_json(p) for p in P.points],
        "rays": [vector_json(r) for r in P.rays],
    }
    if P.halfspaces is not None:
        data["halfspaces"] = [{"covector": vector_json(f), "offset": frac_pair(b)} for f, b in P.halfspaces]
    return data


def polyhedron_from_json(data: dict) -> RationalPolyhedron:
    points = [vector_from_json(p) for p in data.get("points", [])]
    rays = [vector_from_json(r) for r in data.get("rays", [])]
    P = minkowski_vrep(points, rays, data.get("dim"))
    if "halfspaces" in data:
        hs = tuple((vector_from_json(h["covector"]), vector_from_json([h["offset"]])[0]) for h in data["halfspaces"])
        P = RationalPolyhedron(P.dim, P.points, P.rays, hs)
    return P
