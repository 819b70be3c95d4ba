"""Named theorem checks and exhaustive sweeps over small words.

Every check takes a subword complex (or a Coxeter system, for the
order-theoretic suites) and returns a list of human-readable failure
descriptions; an empty list means the check passed.
"""

from __future__ import annotations

import random
import traceback
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .brick import (
    BrickPolyhedron,
    as_functional,
    brick_vector,
    chamber_functional,
    containment_check,
    f_antigreedy,
    is_admissible,
    positive_positions,
    preserving_component,
    satisfies_antigreedy_conditions,
    sc_f_facets,
)
from .bruhat import bruhat_leq, lower_labels, upper_labels
from .coxeter import CoxeterSystem, GroupElement, is_negative, is_positive
from .geometry import (
    LinearFunctional,
    RationalCone,
    _rank,
    cone_contains,
    cone_equal,
    cone_intersect,
    dot,
    double_description,
    is_extreme,
    is_pointed,
    vertices_of,
)
from .oracles import bruhat_leq_subword, demazure_bruhat_max, facets_brute_force, subword_products
from .subword import SubwordComplex, iota_map

RANDOM_FUNCTIONALS = 50


# ---------------------------------------------------------------------------
# instances and functionals


class InstanceCache:
    """Shares subword complexes between checks of one sweep."""

    def __init__(self, sys: CoxeterSystem):
        self.system = sys
        self._cache: dict = {}

    def get(self, word: Sequence[int], target: GroupElement) -> SubwordComplex:
        key = (tuple(word), target.matrix)
        inst = self._cache.get(key)
        if inst is None:
            inst = self._cache[key] = SubwordComplex(self.system, word, target)
        return inst


def words(rank: int, max_length: int, min_length: int = 1) -> Iterator[tuple[int, ...]]:
    for m in range(min_length, max_length + 1):
        yield from product(range(1, rank + 1), repeat=m)


def sweep_instances(sys: CoxeterSystem, max_length: int, cache: Optional[InstanceCache] = None,
                    targets: Optional[Iterable[GroupElement]] = None) -> Iterator[SubwordComplex]:
    """Every non-empty ``SC(Q, w)`` with ``1 <= |Q| <= max_length``."""
    cache = cache or InstanceCache(sys)
    pool = list(targets) if targets is not None else sys.elements
    for word in words(sys.rank, max_length):
        for w in pool:
            inst = cache.get(word, w)
            if inst.nonempty:
                yield inst


def supporting_functionals(inst: SubwordComplex) -> list[LinearFunctional]:
    """For each atom label, a functional vanishing on it and positive on the other labels."""
    labels = inst.upper_labels
    if not labels:
        return []
    n = inst.system.rank
    hs = double_description(labels, n)
    out = []
    for beta in labels:
        tight = [h for h in hs if dot(h, beta) == 0]
        out.append(LinearFunctional(tuple(sum(h[t] for h in tight) for t in range(n))))
    return out


def admissible_functionals(inst: SubwordComplex, seed: int = 0, count: int = RANDOM_FUNCTIONALS) -> list[LinearFunctional]:
    """Structured admissible functionals plus ``count`` seeded random ones.

    Random covectors are drawn from ``[-5, 5]^n`` and kept when admissible;
    if that is too rare, the remainder is drawn from ``[0, 5]^n``, which is
    always admissible since every atom label is a positive root.
    """
    sys = inst.system
    n = sys.rank
    structured = [
        LinearFunctional((0,) * n),
        LinearFunctional((1,) * n),
        chamber_functional(sys, inst.target),
        *supporting_functionals(inst),
    ]
    rng = random.Random(f"{seed}:{sys.cartan.entries}:{inst.word}:{sys.reduced_word(inst.target)}")
    rand: list[LinearFunctional] = []
    attempts = 0
    while len(rand) < count and attempts < 20 * count:
        attempts += 1
        f = LinearFunctional(tuple(rng.randint(-5, 5) for _ in range(n)))
        if is_admissible(inst, f):
            rand.append(f)
    while len(rand) < count:
        rand.append(LinearFunctional(tuple(rng.randint(0, 5) for _ in range(n))))
    out = []
    for f in structured + rand:
        assert is_admissible(inst, f)
        out.append(f)
    return out


# ---------------------------------------------------------------------------
# instance checks


def check_cone_equality(inst: SubwordComplex, **_) -> list[str]:
    n = inst.system.rank
    cones = [RationalCone.from_generators(inst.root_configuration(I), n) for I in inst.facets]
    meet = cone_intersect(cones)
    target = RationalCone.from_generators(inst.upper_labels, n)
    if not cone_equal(meet, target):
        return [f"intersection {meet.generators} differs from cone E+ = {target.generators}"]
    return []


def check_nonflippable(inst: SubwordComplex, **_) -> list[str]:
    out = []
    labels = set(inst.upper_labels)
    found = set()
    n = inst.system.rank
    for I in inst.facets:
        cone = RationalCone.from_generators(inst.root_configuration(I), n)
        for b in labels:
            if not cone_contains(cone, b):
                out.append(f"label {b} not in cone Roots({I})")
        for i in I:
            r = inst.root_function(I, i)
            if inst.is_flippable(I, i):
                if r in labels:
                    out.append(f"flippable {i} in {I} carries atom label {r}")
            else:
                found.add(r)
    if found != labels:
        out.append(f"non-flippable roots {sorted(found)} differ from E+ {sorted(labels)}")
    if inst.is_spherical != all(inst.is_flippable(I, i) for I in inst.facets for i in I):
        out.append("sphericity does not match full flippability")
    return out


def check_root_function(inst: SubwordComplex, **_) -> list[str]:
    """Bijection onto Inv(w), flip rules, the weight lemma and greedy facets."""
    sys = inst.system
    out = []
    inv = sorted(inst.target_inversions)
    if inst.greedy_facet != inst.facets[0] or inst.antigreedy_facet != inst.facets[-1]:
        out.append("greedy/antigreedy facets are not lexicographically extreme")
    for I in inst.facets:
        if len(I) != inst.facet_size:
            out.append(f"facet {I} has the wrong size")
        roots = inst.roots(I)
        comp = inst.complement(I)
        if sorted(roots[k - 1] for k in comp) != inv:
            out.append(f"complement roots of {I} are not Inv(w)")
        all_positive = all(is_positive(r) for r in inst.root_configuration(I))
        if all_positive != (I == inst.greedy_facet):
            out.append(f"positivity of Roots({I}) does not single out the greedy facet")
        winv = sys.inverse(inst.target)
        in_w_pos = all(is_positive(sys.act(winv, r)) for r in inst.root_configuration(I))
        if in_w_pos != (I == inst.antigreedy_facet):
            out.append(f"Roots({I}) inside w(Phi+) does not single out the antigreedy facet")
        weights = inst.weights(I)
        for k in range(1, inst.m):
            if inst.word[k - 1] == inst.word[k]:
                expected = weights[k - 1] if k in I else tuple(a - b for a, b in zip(weights[k - 1], roots[k - 1]))
                if weights[k] != expected:
                    out.append(f"repeated-letter weight rule fails at {k} in {I}")
        for j in comp:
            for k in range(1, inst.m + 1):
                v = sys.inner(roots[j - 1], weights[k - 1])
                if (j >= k and v < 0) or (j < k and v > 0):
                    out.append(f"sign rule fails for j={j}, k={k} in {I}")
        for i, J, j in inst.neighbours(I):
            rI = roots[i - 1]
            if roots[j - 1] != (rI if i < j else tuple(-x for x in rI)):
                out.append(f"flip sign rule fails for {I}, {i} -> {j}")
            if inst.roots(J) != inst.flipped_roots(I, i, j):
                out.append(f"root update rule fails for {I} -> {J}")
            if inst.weights(J) != inst.flipped_weights(I, i, j):
                out.append(f"weight update rule fails for {I} -> {J}")
            if inst.flip(J, j) != (I, i):
                out.append(f"flip is not an involution at {I}, {i}")
    return out


def check_oracles(inst: SubwordComplex, **_) -> list[str]:
    out = []
    sys = inst.system
    if inst.facets != facets_brute_force(sys, inst.word, inst.target):
        out.append("flip-graph facets differ from brute force")
    if inst.target.length == 0 and demazure_bruhat_max(sys, inst.word) != inst.demazure:
        out.append("Demazure product differs from the Bruhat maximum of subword products")
    return out


def check_uniqueness(inst: SubwordComplex, seed: int = 0, count: int = RANDOM_FUNCTIONALS, **_) -> list[str]:
    out = []
    for f in admissible_functionals(inst, seed, count):
        If, _ = f_antigreedy(inst, f)
        good = [I for I in inst.facets if satisfies_antigreedy_conditions(inst, I, f)]
        if good != [If]:
            out.append(f"f={f.covector}: facets with the two properties {good}, algorithm gave {If}")
    return out


def check_connected_components(inst: SubwordComplex, seed: int = 0, count: int = RANDOM_FUNCTIONALS, **_) -> list[str]:
    out = []
    sys = inst.system
    for f in admissible_functionals(inst, seed, count):
        If, _ = f_antigreedy(inst, f)
        scf = sc_f_facets(inst, f)
        if preserving_component(inst, If, f) != scf:
            out.append(f"f={f.covector}: SC_f is not the f-preserving component of I_f")
            continue
        pos = positive_positions(inst, If, f)
        if any(positive_positions(inst, I, f) != pos for I in scf):
            out.append(f"f={f.covector}: positive positions vary across SC_f")
            continue
        keep = [k for k in range(1, inst.m + 1) if k not in pos]
        index = {k: t for t, k in enumerate(keep, start=1)}
        reduced = SubwordComplex(sys, inst.subword(keep), inst.target)
        image = sorted(tuple(index[k] for k in I if k in index) for I in scf)
        if not reduced.nonempty or image != sorted(reduced.facets):
            out.append(f"f={f.covector}: deleting positions {pos} does not give an isomorphic complex")
    return out


def _edges(bp: BrickPolyhedron) -> list[tuple[tuple, tuple]]:
    """Vertex pairs whose smallest common face is one-dimensional."""
    hs = bp.hrep.halfspaces
    out = []
    for p, q in combinations(bp.vertices, 2):
        common = [f for f, b in hs if dot(f, p) + b == 0 and dot(f, q) + b == 0]
        if _rank(common) == bp.dim - 1:
            out.append((p, q))
    return out


def check_brick(inst: SubwordComplex, seed: int = 0, **_) -> list[str]:
    out = []
    sys = inst.system
    bp = BrickPolyhedron(inst)
    if not bp.representations_agree():
        out.append("V- and H-representations disagree")
    if bp.is_polytope != inst.is_spherical:
        out.append("polytopality does not match sphericity")
    verts = set(vertices_of(bp.vrep))
    for I in inst.facets:
        pointed = I in bp.vertex_facets
        if (bp.brick_vectors[I] in verts) != pointed:
            out.append(f"b({I}) vertex status differs from pointedness of Roots({I})")
        try:
            bp.local_cone_at(I)
        except AssertionError as exc:
            out.append(str(exc))
        for i, J, _ in inst.neighbours(I):
            d = tuple(a - b for a, b in zip(bp.brick_vectors[J], bp.brick_vectors[I]))
            r = inst.root_function(I, i)
            t = next(x for x in range(sys.rank) if r[x] != 0)
            c = Fraction(d[t]) / r[t]
            if c <= 0 or any(d[x] != c * r[x] for x in range(sys.rank)):
                out.append(f"b({J}) - b({I}) = {d} is not a positive multiple of {r}")
    try:
        bp.normal_fan()
    except AssertionError as exc:
        out.append(f"normal fan: {exc}")
    funcs = admissible_functionals(inst, seed, 5)
    for f in funcs:
        _, on_face = bp.face(f)
        if set(on_face) != set(sc_f_facets(inst, f)):
            out.append(f"f={f.covector}: face facets {on_face} differ from SC_f")
    owners: dict = {}
    for I in bp.vertex_facets:
        owners.setdefault(bp.brick_vectors[I], []).append(I)
    for p, q in _edges(bp):
        if not any(J in {K for _, K, _ in inst.neighbours(I)} for I in owners[p] for J in owners[q]):
            out.append(f"edge {p} -- {q} is not a flip")
    for beta in inst.upper_labels:
        upper = SubwordComplex(sys, inst.word, sys.multiply(sys.reflection(beta), inst.target))
        image = set()
        for J in upper.facets:
            I = iota_map(upper, J, inst.target)
            image.add(I)
            if not (set(J) < set(I) and len(I) == len(J) + 1):
                out.append(f"iota({J}) = {I} is not a one-point extension")
            d = tuple(a - b for a, b in zip(brick_vector(upper, J), bp.brick_vectors[I]))
            t = next(x for x in range(sys.rank) if beta[x] != 0)
            c = Fraction(d[t]) / beta[t]
            if c < 0 or any(d[x] != c * beta[x] for x in range(sys.rank)):
                out.append(f"b({J}) - b(iota({J})) = {d} is not in R+ {beta}")
        expected = {I for I in inst.facets if beta in inst.root_configuration(I)}
        if image != expected:
            out.append(f"image of iota for {beta} is not the facets containing it")
    return out


def check_containment(inst: SubwordComplex, cache: Optional[InstanceCache] = None, **_) -> list[str]:
    sys = inst.system
    out = []
    for s in range(1, sys.rank + 1):
        ws = sys.right_multiply(inst.target, s)
        if ws.length == inst.target.length + 1 and bruhat_leq(sys, ws, inst.demazure):
            upper = cache.get(inst.word, ws) if cache else SubwordComplex(sys, inst.word, ws)
            if not containment_check(inst, upper):
                out.append(f"B(Q, {sys.format_element(ws)}) is not inside B(Q, w)")
    return out


INSTANCE_CHECKS: dict[str, Callable[..., list[str]]] = {
    "cone_equality": check_cone_equality,
    "nonflippable": check_nonflippable,
    "root_function": check_root_function,
    "oracles": check_oracles,
    "uniqueness": check_uniqueness,
    "connected_components": check_connected_components,
    "brick": check_brick,
    "containment": check_containment,
}


# ---------------------------------------------------------------------------
# system checks


def _in_cone(gens, v, dim) -> bool:
    return cone_contains(RationalCone.from_generators(gens, dim), v)


def dyer_suite(sys: CoxeterSystem) -> tuple[int, list[str]]:
    """Bruhat cone properties over every triple ``(x, y, s)`` with ``x <= y``."""
    n = sys.rank
    e, w0 = sys.identity, sys.longest_element
    out = []
    cases = 0
    fmt = sys.format_element
    for w in sys.elements:
        lower = lower_labels(sys, e, w)
        upper = upper_labels(sys, w, w0)
        meet = cone_intersect([RationalCone.from_generators(lower, n), RationalCone.from_generators(upper, n)])
        if any(any(g) for g in meet.generators):
            out.append(f"w={fmt(w)}: C-(e,w) and C+(w,w0) meet beyond 0")
        cminus = RationalCone.from_generators(lower, n)
        cplus = RationalCone.from_generators(upper, n)
        inv = set(sys.inversion_set(w))
        inv_top = set(sys.inversion_set(sys.multiply(w, w0)))
        for beta in sys.positive_roots:
            a, b = cone_contains(cminus, beta), cone_contains(cplus, beta)
            if not (a or b):
                out.append(f"w={fmt(w)}: {beta} in neither cone")
            if a != (beta in inv) or b != (beta in inv_top):
                out.append(f"w={fmt(w)}: roots in the cones are not the inversion sets")
    for x, y in product(sys.elements, repeat=2):
        for s in range(1, n + 1):
            cases += 1
        if not bruhat_leq(sys, x, y):
            continue
        tag = f"x={fmt(x)}, y={fmt(y)}"
        up, down = upper_labels(sys, x, y), lower_labels(sys, x, y)
        if (not up) != (x == y):
            out.append(f"{tag}: E+ empty iff x = y fails")
        for labels in (up, down):
            for i in range(len(labels)):
                if not is_extreme(labels, i):
                    out.append(f"{tag}: label {labels[i]} is not a ray")
        for beta in up:
            gens = list(upper_labels(sys, sys.multiply(sys.reflection(beta), x), y)) + [beta, tuple(-c for c in beta)]
            if not all(_in_cone(gens, g, n) for g in up):
                out.append(f"{tag}: C+ not inside C+(s_b x, y) + R b for b={beta}")
        for beta in down:
            gens = list(lower_labels(sys, x, sys.multiply(sys.reflection(beta), y))) + [beta, tuple(-c for c in beta)]
            if not all(_in_cone(gens, g, n) for g in down):
                out.append(f"{tag}: C- not inside C-(x, s_b y) + R b for b={beta}")
        for beta in sys.positive_roots:
            r = sys.reflection(beta)
            bx, by = sys.multiply(r, x), sys.multiply(r, y)
            if bruhat_leq(sys, x, bx) and bruhat_leq(sys, bx, y) and not _in_cone(up, beta, n):
                out.append(f"{tag}: {beta} not in C+(x,y)")
            if bruhat_leq(sys, x, by) and bruhat_leq(sys, by, y) and not _in_cone(down, beta, n):
                out.append(f"{tag}: {beta} not in C-(x,y)")
        for s in range(1, n + 1):
            alpha = sys.simple_roots[s - 1]
            sy = sys.left_multiply(s, y)
            if sy.length == y.length + 1:
                gens = list(up) + [alpha]
                if not all(_in_cone(gens, g, n) for g in upper_labels(sys, x, sy)):
                    out.append(f"{tag}, s={s}: C+(x, sy) not inside C+(x, y) + R+ alpha_s")
            sx = sys.left_multiply(s, x)
            if sx.length == x.length - 1:
                tau = sy if sy.length < y.length else y
                target = upper_labels(sys, sx, tau)
                gs = sys.generator(s)
                if not all(_in_cone(target, sys.act(gs, g), n) for g in up):
                    out.append(f"{tag}, s={s}: s(C+(x,y)) not inside C+(sx, tau)")
            xs = sys.right_multiply(x, s)
            if xs.length == x.length - 1:
                ys = sys.right_multiply(y, s)
                tau = ys if ys.length < y.length else y
                target = upper_labels(sys, xs, tau)
                if not all(_in_cone(target, g, n) for g in up):
                    out.append(f"{tag}, s={s}: C+(x,y) not inside C+(xs, tau)")
    return cases, out


def bruhat_oracle_suite(sys: CoxeterSystem) -> tuple[int, list[str]]:
    out = []
    cases = 0
    for y in sys.elements:
        below = subword_products(sys, sys.reduced_word(y))
        for x in sys.elements:
            cases += 1
            if bruhat_leq(sys, x, y) != (x.matrix in below):
                out.append(f"x={sys.format_element(x)}, y={sys.format_element(y)}")
    return cases, out


SYSTEM_CHECKS: dict[str, Callable[[CoxeterSystem], tuple[int, list[str]]]] = {
    "dyer": dyer_suite,
    "bruhat_oracle": bruhat_oracle_suite,
}

ALL_CHECKS = tuple(INSTANCE_CHECKS) + tuple(SYSTEM_CHECKS)


# ---------------------------------------------------------------------------
# running


@dataclass
class CheckResult:
    name: str
    system: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def describe(inst: SubwordComplex) -> str:
    sys = inst.system
    return f"Q={sys.format_word(inst.word)}, w={sys.format_element(inst.target)}"


def run_instance_check(name: str, inst: SubwordComplex, **kwargs) -> list[str]:
    try:
        return INSTANCE_CHECKS[name](inst, **kwargs)
    except Exception as exc:  # a crash is a failure, reported with its instance
        return [f"{type(exc).__name__}: {exc} | {traceback.format_exc(limit=2).splitlines()[-1]}"]


def run_sweep(sys: CoxeterSystem, system_name: str, max_length: int, checks: Sequence[str],
              seed: int = 0, functionals: int = RANDOM_FUNCTIONALS,
              targets: Optional[Iterable[GroupElement]] = None) -> list[CheckResult]:
    unknown = [c for c in checks if c not in ALL_CHECKS]
    if unknown:
        raise ValueError(f"unknown checks: {', '.join(unknown)}")
    results = {c: CheckResult(c, system_name) for c in checks}
    inst_checks = [c for c in checks if c in INSTANCE_CHECKS]
    if inst_checks:
        cache = InstanceCache(sys)
        for inst in sweep_instances(sys, max_length, cache, targets):
            for c in inst_checks:
                res = results[c]
                res.cases += 1
                for msg in run_instance_check(c, inst, seed=seed, count=functionals, cache=cache):
                    res.failures.append(f"{describe(inst)}: {msg}")
    for c in checks:
        if c in SYSTEM_CHECKS:
            cases, fails = SYSTEM_CHECKS[c](sys)
            results[c].cases = cases
            results[c].failures.extend(fails)
    return [results[c] for c in checks]
