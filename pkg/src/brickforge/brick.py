"""The f-antigreedy facet, brick vectors, brick polyhedra, the kappa map and normal fans."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence, Union

from .bruhat import WeakIdeal, bruhat_leq, weak_ideal
from .coxeter import GroupElement, Root, is_negative, is_positive
from .errors import FunctionalNotNonnegative, PreconditionFailed
from .geometry import (
    LinearFunctional,
    RationalCone,
    RationalPolyhedron,
    cone_contains,
    cone_equal,
    dot,
    hrep_to_vrep,
    is_pointed,
    local_cone,
    minimize,
    minkowski_vrep,
    polyhedron_contains,
    primitive,
    vrep_to_hrep,
)
from .subword import Facet, SubwordComplex

FunctionalLike = Union[LinearFunctional, Sequence]


def as_functional(f: FunctionalLike) -> LinearFunctional:
    return f if isinstance(f, LinearFunctional) else LinearFunctional(tuple(f))


# ---------------------------------------------------------------------------
# the f-antigreedy facet


@dataclass(frozen=True)
class AntigreedyStep:
    k: int
    beta: Root
    condition: int  # 1..6; 1-3 add k to the facet, 4-6 extend w
    w: GroupElement
    facet: Facet


@dataclass(frozen=True)
class AntigreedyTrace:
    steps: tuple[AntigreedyStep, ...]

    @property
    def conditions(self) -> tuple[int, ...]:
        return tuple(st.condition for st in self.steps)


def is_admissible(inst: SubwordComplex, f: FunctionalLike) -> bool:
    """``f`` is non-negative on every atom label of ``[w, Dem(Q)]``."""
    f = as_functional(f)
    return all(f(b) >= 0 for b in inst.upper_labels)


def f_antigreedy(inst: SubwordComplex, f: FunctionalLike) -> tuple[Facet, AntigreedyTrace]:
    """Run the six-condition scan and return the facet with its trace."""
    inst._require_nonempty()
    f = as_functional(f)
    sys, w = inst.system, inst.target
    if len(f) != sys.rank:
        raise ValueError(f"functional of length {len(f)} in rank {sys.rank}")
    bad = [b for b in inst.upper_labels if f(b) < 0]
    if bad:
        raise FunctionalNotNonnegative(f"f is negative on {bad}")

    cur, I, steps = sys.identity, [], []
    for k in range(1, inst.m + 1):
        s = inst.word[k - 1]
        beta = cur.column(s)
        value = f(beta)
        if value < 0:
            cond = 4
        else:
            nxt = sys.right_multiply(cur, s)
            up = is_positive(beta) and inst._below_right(nxt, w)
            if not is_positive(beta):
                cond = 2
            elif value == 0:
                cond = 5 if up else 1
            elif not up:
                cond = 1
            else:
                rest = sys.multiply(sys.inverse(cur), w)
                cond = 3 if bruhat_leq(sys, rest, inst.suffix_demazure[k]) else 6
        if cond <= 3:
            I.append(k)
        else:
            cur = sys.right_multiply(cur, s)
        assert cur.length == k - len(I)
        steps.append(AntigreedyStep(k, beta, cond, cur, tuple(I)))

    I = tuple(I)
    assert inst.is_facet(I), f"scan produced a non-facet {I}"
    labels = set(inst.upper_labels)
    for r in inst.root_configuration(I):
        assert f(r) >= 0
        if f(r) == 0 and r not in labels:
            assert is_negative(r)
    return I, AntigreedyTrace(tuple(steps))


def sc_f_facets(inst: SubwordComplex, f: FunctionalLike) -> tuple[Facet, ...]:
    """Facets whose whole root configuration lies in ``f >= 0``."""
    f = as_functional(f)
    return tuple(I for I in inst.facets if all(f(r) >= 0 for r in inst.root_configuration(I)))


def satisfies_antigreedy_conditions(inst: SubwordComplex, I: Facet, f: FunctionalLike) -> bool:
    """Non-negativity on Roots(I), and zero-valued roots outside E+ are negative."""
    f = as_functional(f)
    labels = set(inst.upper_labels)
    for r in inst.root_configuration(I):
        v = f(r)
        if v < 0 or (v == 0 and r not in labels and not is_negative(r)):
            return False
    return True


def positive_positions(inst: SubwordComplex, I: Facet, f: FunctionalLike) -> tuple[int, ...]:
    f = as_functional(f)
    return tuple(i for i in I if f(inst.root_function(I, i)) > 0)


def preserving_component(inst: SubwordComplex, start: Facet, f: FunctionalLike) -> tuple[Facet, ...]:
    """Facets reachable from ``start`` through flips with ``f(r(I, i)) = 0``."""
    f = as_functional(f)
    seen, stack = {start}, [start]
    while stack:
        I = stack.pop()
        for i, J, _ in inst.neighbours(I):
            if f(inst.root_function(I, i)) == 0 and J not in seen:
                seen.add(J)
                stack.append(J)
    return tuple(sorted(seen))


# ---------------------------------------------------------------------------
# brick vectors and polyhedra


def brick_vector(inst: SubwordComplex, I: Facet) -> tuple[Fraction, ...]:
    """``b(I) = -sum_k w(I, k)`` in simple-root coordinates."""
    n = inst.system.rank
    total = [Fraction(0)] * n
    for v in inst.weights(I):
        for t in range(n):
            total[t] -= v[t]
    return tuple(total)


def translated_cone_halfspaces(apex: Sequence, cone: RationalCone) -> list[tuple[tuple, Fraction]]:
    return [(tuple(h), -dot(h, apex)) for h in cone.with_halfspaces().halfspaces]


@dataclass(frozen=True)
class KappaMap:
    ideal: WeakIdeal
    assignment: tuple[tuple[GroupElement, Facet], ...]

    def __getitem__(self, z: GroupElement) -> Facet:
        for x, I in self.assignment:
            if x == z:
                return I
        raise KeyError(z)

    def fibers(self) -> dict[Facet, tuple[GroupElement, ...]]:
        out: dict[Facet, list] = {}
        for z, I in self.assignment:
            out.setdefault(I, []).append(z)
        return {I: tuple(zs) for I, zs in out.items()}


def chamber_functional(sys, z: GroupElement) -> LinearFunctional:
    """The covector with value 1 on every ``z(alpha_s)``."""
    zi = sys.inverse(z).matrix
    return LinearFunctional(tuple(sum(zi[i][j] for i in range(sys.rank)) for j in range(sys.rank)))


def kappa(inst: SubwordComplex) -> KappaMap:
    inst._require_nonempty()
    sys = inst.system
    ideal = weak_ideal(sys, inst.target, inst.demazure)
    pairs = []
    for z in ideal.members:
        I, _ = f_antigreedy(inst, chamber_functional(sys, z))
        zi = sys.inverse(z)
        assert all(is_positive(sys.act(zi, r)) for r in inst.root_configuration(I))
        pairs.append((z, I))
    return KappaMap(ideal, tuple(pairs))


class BrickPolyhedron:
    """``conv{b(I)} + cone E+(w, Dem(Q))`` with both representations."""

    def __init__(self, inst: SubwordComplex):
        inst._require_nonempty()
        self.instance = inst
        self.system = inst.system
        self.dim = inst.system.rank

    @cached_property
    def brick_vectors(self) -> dict[Facet, tuple[Fraction, ...]]:
        return {I: brick_vector(self.instance, I) for I in self.instance.facets}

    @cached_property
    def recession_rays(self) -> tuple[Root, ...]:
        return self.instance.upper_labels

    @cached_property
    def root_cones(self) -> dict[Facet, RationalCone]:
        return {
            I: RationalCone.from_generators(self.instance.root_configuration(I), self.dim)
            for I in self.instance.facets
        }

    @cached_property
    def vertex_facets(self) -> tuple[Facet, ...]:
        """Facets with a pointed root configuration."""
        return tuple(I for I in self.instance.facets if is_pointed(self.root_cones[I]))

    @cached_property
    def vrep(self) -> RationalPolyhedron:
        return minkowski_vrep(self.brick_vectors.values(), self.recession_rays, self.dim)

    @cached_property
    def hrep(self) -> RationalPolyhedron:
        """Intersection of the translated cones ``b(I) + cone Roots(I)``, minimised."""
        seen, raw = set(), []
        for I in self.instance.facets:
            for f, b in translated_cone_halfspaces(self.brick_vectors[I], self.root_cones[I]):
                key = (primitive(tuple(f) + (b,)))
                if key not in seen:
                    seen.add(key)
                    raw.append((f, b))
        P = hrep_to_vrep(raw, self.dim)
        minimal = tuple((tuple(Fraction(x) for x in f), b) for f, b in vrep_to_hrep(P.points, P.rays, self.dim))
        return RationalPolyhedron(self.dim, P.points, P.rays, minimal)

    @cached_property
    def vertices(self) -> tuple[tuple[Fraction, ...], ...]:
        """Distinct vertices, in order of first appearance over sorted facets."""
        out = []
        for I in self.vertex_facets:
            v = self.brick_vectors[I]
            if v not in out:
                out.append(v)
        return tuple(out)

    @property
    def is_polytope(self) -> bool:
        return not self.recession_rays

    def recession_cone(self) -> RationalCone:
        return RationalCone.from_generators(self.recession_rays, self.dim)

    def satisfies_hrep(self, v: Sequence) -> bool:
        return all(dot(f, v) + b >= 0 for f, b in self.hrep.halfspaces)

    def representations_agree(self) -> bool:
        """Mutual containment of the V- and H-descriptions."""
        vr, hr = self.vrep, self.hrep
        if not all(self.satisfies_hrep(p) for p in vr.points):
            return False
        if not all(all(dot(f, r) >= 0 for f, _ in hr.halfspaces) for r in vr.rays):
            return False
        if not all(polyhedron_contains(vr, p) for p in hr.points):
            return False
        rec = self.recession_cone()
        return all(cone_contains(rec, r) for r in hr.rays)

    def local_cone_at(self, I: Facet) -> RationalCone:
        cone = self.root_cones[I]
        geometric = local_cone(self.vrep, self.brick_vectors[I])
        assert cone_equal(cone, geometric), f"local cone mismatch at {I}"
        return cone

    def face(self, f: FunctionalLike) -> tuple[Fraction, tuple[Facet, ...]]:
        """Minimum of ``f`` over the polyhedron and the facets whose brick vector attains it."""
        f = as_functional(f)
        res = minimize(self.hrep.halfspaces, f.covector, self.dim)
        if res.status != "optimal":
            raise FunctionalNotNonnegative(f"f is unbounded below on the brick polyhedron ({res.status})")
        return res.value, tuple(I for I, b in self.brick_vectors.items() if f(b) == res.value)

    @cached_property
    def kappa(self) -> KappaMap:
        km = kappa(self.instance)
        assert set(km.fibers()) == set(self.vertex_facets), "kappa is not onto the pointed facets"
        return km

    def normal_cone(self, I: Facet) -> RationalCone:
        """Vectors pairing non-negatively (in the symmetrised form) with Roots(I)."""
        sys = self.system
        covectors = [tuple(sum(sys.gram[i][j] * r[j] for j in range(self.dim)) for i in range(self.dim))
                     for r in self.instance.root_configuration(I)]
        return RationalCone.from_halfspaces(covectors, self.dim)

    def chamber(self, z: GroupElement) -> tuple[tuple, ...]:
        sys = self.system
        return tuple(sys.act(z, om) for om in sys.weights)

    def normal_fan(self) -> list[tuple[Facet, tuple[GroupElement, ...]]]:
        """Vertex facets with the chambers glued into their normal cones.

        Asserts that the chambers inside each normal cone are exactly those of
        the kappa-fiber (over all facets sharing the brick vector), and that no
        chamber outside the weak ideal lies in any normal cone.
        """
        sys = self.system
        fibers = self.kappa.fibers()
        ideal = set(z.matrix for z in self.kappa.ideal.members)
        out = []
        for I in self.vertex_facets:
            K = self.normal_cone(I).with_halfspaces()
            inside = {z.matrix for z in sys.elements if all(all(dot(h, u) >= 0 for h in K.halfspaces) for u in self.chamber(z))}
            expected = set()
            for J, zs in fibers.items():
                if self.brick_vectors[J] == self.brick_vectors[I]:
                    expected.update(z.matrix for z in zs)
            assert inside == expected, f"normal cone of {I} glues the wrong chambers"
            assert inside <= ideal
            out.append((I, fibers.get(I, ())))
        return out


def brick_polyhedron(inst: SubwordComplex) -> BrickPolyhedron:
    bp = BrickPolyhedron(inst)
    assert bp.representations_agree(), "V- and H-representations disagree"
    assert bp.is_polytope == inst.is_spherical
    return bp


def containment_check(lower: SubwordComplex, upper: SubwordComplex) -> bool:
    """Whether ``B(Q, ws)`` sits inside ``B(Q, w)`` for a simple cover ``w < ws <= Dem(Q)``."""
    sys = lower.system
    if lower.word != upper.word:
        raise PreconditionFailed("the two complexes use different words")
    w, ws = lower.target, upper.target
    lw = sys.inverse(w)
    step = sys.multiply(lw, ws)
    if step.length != 1 or ws.length != w.length + 1:
        raise PreconditionFailed(f"{sys.format_element(ws)} is not w times a simple reflection above w")
    if not bruhat_leq(sys, ws, lower.demazure):
        raise PreconditionFailed("upper target is not below the Demazure product")
    big, small = BrickPolyhedron(lower), BrickPolyhedron(upper)
    if not all(big.satisfies_hrep(b) for b in small.brick_vectors.values()):
        return False
    rec = big.recession_cone()
    return all(cone_contains(rec, r) for r in small.recession_rays)
