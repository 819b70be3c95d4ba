from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from brickforge.brick import (
    BrickPolyhedron,
    brick_polyhedron,
    brick_vector,
    chamber_functional,
    containment_check,
    f_antigreedy,
    is_admissible,
    kappa,
    positive_positions,
    preserving_component,
    satisfies_antigreedy_conditions,
    sc_f_facets,
)
from brickforge.bruhat import bruhat_leq
from brickforge.coxeter import is_positive, preset
from brickforge.errors import FunctionalNotNonnegative, PreconditionFailed
from brickforge.geometry import RationalCone, cone_contains, cone_equal, is_pointed, vertices_of
from brickforge.subword import SubwordComplex, demazure_product
from brickforge.verify import admissible_functionals, check_brick, check_connected_components, check_uniqueness

F = Fraction


def sc(sys, word, target):
    return SubwordComplex.from_strings(sys, word, target)


def names(sys, zs):
    return sorted(sys.format_element(z) for z in zs)


def test_antigreedy_trace_b2(B2):
    inst = sc(B2, "21122112", "12")
    I, trace = f_antigreedy(inst, (-2, 1))
    assert I == (1, 3, 5, 6, 7, 8)
    assert trace.conditions == (1, 4, 2, 4, 2, 1, 1, 2)
    assert [st.beta for st in trace.steps] == [(0, 1), (1, 0), (-1, 0), (1, 1), (-1, -1), (1, 2), (1, 2), (-1, -1)]
    for step in trace.steps:
        comp = [k for k in range(1, step.k + 1) if k not in step.facet]
        word = inst.subword(comp)
        assert B2.is_reduced(word) and B2.element_from_word(word) == step.w


def test_antigreedy_trace_swapped_suffix(B2):
    inst = sc(B2, "21122121", "12")
    I, trace = f_antigreedy(inst, (-2, 1))
    assert I == (1, 3, 5, 6, 7, 8)
    assert trace.conditions == (1, 4, 2, 4, 2, 1, 2, 1)
    assert [st.beta for st in trace.steps][-2:] == [(-1, -1), (1, 2)]


def test_antigreedy_greedy_and_antigreedy(B3):
    inst = sc(B3, "123123123", "1")
    assert f_antigreedy(inst, (1, 1, 1))[0] == inst.greedy_facet
    assert f_antigreedy(inst, chamber_functional(B3, inst.target))[0] == inst.antigreedy_facet


def test_antigreedy_rejects_negative_functional(A2):
    inst = sc(A2, "1212", "12")
    assert not is_admissible(inst, (1, -1))
    with pytest.raises(FunctionalNotNonnegative):
        f_antigreedy(inst, (1, -1))
    assert sc_f_facets(inst, (1, -1)) == ()


def test_sc_f_example(A2):
    inst = sc(A2, "211221", "121")
    f = (1, 0)
    assert sc_f_facets(inst, f) == ((1, 2, 4), (2, 4, 6))
    assert f_antigreedy(inst, f)[0] == (2, 4, 6)
    assert preserving_component(inst, (2, 4, 6), f) == ((1, 2, 4), (2, 4, 6))


def test_sc_f_strictly_positive_gives_greedy(A3):
    for word in ((1, 2, 1, 2), (2, 1, 3, 2, 1, 2, 3)):
        spherical = SubwordComplex(A3, word, demazure_product(A3, word))
        assert spherical.upper_labels == ()
        assert sc_f_facets(spherical, (3, 2, 1)) == (spherical.greedy_facet,)


def test_brick_vectors_a2(A2):
    inst = sc(A2, "11212", "12")
    got = {I: brick_vector(inst, I) for I in inst.facets}
    assert got[(1, 2, 3)] == (F(-8, 3), F(-7, 3))
    assert got == {
        (1, 2, 3): (F(-8, 3), F(-7, 3)),
        (1, 3, 4): (F(-5, 3), F(-7, 3)),
        (1, 4, 5): (F(-2, 3), F(-4, 3)),
        (2, 3, 4): (F(-2, 3), F(-7, 3)),
        (2, 4, 5): (F(1, 3), F(-4, 3)),
    }
    bp = brick_polyhedron(inst)
    assert set(bp.vertices) == {got[(1, 2, 3)], got[(2, 3, 4)], got[(2, 4, 5)]}
    assert bp.recession_rays == ((0, 1),)
    assert cone_equal(bp.local_cone_at((2, 3, 4)), RationalCone.from_generators([(-1, 0), (1, 1)], 2))


def test_brick_polyhedron_b2(B2):
    inst = sc(B2, "2221", "2")
    bp = brick_polyhedron(inst)
    assert bp.brick_vectors[(1, 2, 4)] == (F(-5, 2), F(-4))
    assert set(bp.vrep.points) == {(F(-5, 2), F(-4)), (F(-5, 2), F(-3)), (F(-5, 2), F(-2))}
    assert set(vertices_of(bp.vrep)) == {(F(-5, 2), F(-4)), (F(-5, 2), F(-2))}
    assert bp.recession_rays == ((1, 2),)
    assert set(bp.hrep.points) == {(F(-5, 2), F(-4)), (F(-5, 2), F(-2))}
    assert bp.hrep.rays == ((1, 2),)
    assert not bp.is_polytope


def test_flip_differences_are_integral_multiples(A2, B2):
    for sys, word, target in ((A2, "11212", "12"), (B2, "2221", "2"), (B2, "21122112", "12")):
        inst = sc(sys, word, target)
        for I in inst.facets:
            for i, J, _ in inst.neighbours(I):
                d = [a - b for a, b in zip(brick_vector(inst, J), brick_vector(inst, I))]
                r = inst.root_function(I, i)
                t = next(x for x in range(sys.rank) if r[x])
                c = d[t] / r[t]
                assert c > 0 and c.denominator == 1
                assert all(d[x] == c * r[x] for x in range(sys.rank))


def test_kappa_examples(A2, B2):
    km = kappa(sc(A2, "11212", "12"))
    assert {A2.format_element(z): I for z, I in km.assignment} == {"e": (1, 2, 3), "1": (2, 3, 4), "12": (2, 4, 5)}
    km = kappa(sc(B2, "2221", "2"))
    assert {B2.format_element(z): I for z, I in km.assignment} == {
        "e": (1, 2, 4), "1": (1, 2, 4), "12": (1, 2, 4), "2": (2, 3, 4),
    }


def test_kappa_fibers_are_weak_intervals(B3):
    inst = sc(B3, "123123123", "1")
    km = kappa(inst)
    for I, zs in km.fibers().items():
        members = {z.matrix for z in zs}
        for x in zs:
            for y in zs:
                for z in B3.elements:
                    if B3.weak_leq(x, z) and B3.weak_leq(z, y):
                        assert z.matrix in members


def test_normal_fans(A2, B2):
    fan = dict(BrickPolyhedron(sc(A2, "11212", "12")).normal_fan())
    assert {I: names(A2, zs) for I, zs in fan.items()} == {(1, 2, 3): ["e"], (2, 3, 4): ["1"], (2, 4, 5): ["12"]}
    fan = dict(BrickPolyhedron(sc(B2, "2221", "2")).normal_fan())
    assert names(B2, fan[(1, 2, 4)]) == ["1", "12", "e"]


def test_spherical_hexagon(A2):
    inst = sc(A2, "211221", "121")
    bp = brick_polyhedron(inst)
    assert bp.is_polytope
    assert len(set(bp.brick_vectors.values())) == 8 and len(bp.vertices) == 6
    assert set(inst.facets) - set(bp.vertex_facets) == {(1, 2, 5), (2, 5, 6)}
    assert check_brick(inst) == []


def test_single_facet_is_a_point(B3):
    inst = sc(B3, "123", "123")
    bp = brick_polyhedron(inst)
    assert bp.vertices == (brick_vector(inst, ()),)
    assert bp.is_polytope and bp.recession_rays == ()


def test_containment_chain(A2):
    Q = "112211"
    chain = ["121", "12", "1", "e"]
    for upper, lower in zip(chain, chain[1:]):
        assert containment_check(sc(A2, Q, lower), sc(A2, Q, upper))
    w = sc(A2, Q, "12")
    assert containment_check(w, sc(A2, Q, "121"))
    with pytest.raises(PreconditionFailed):
        containment_check(sc(A2, Q, "e"), sc(A2, Q, "12"))


def test_faces_match_sc_f(B2):
    inst = sc(B2, "21122112", "12")
    bp = BrickPolyhedron(inst)
    for f in admissible_functionals(inst, seed=3, count=10):
        value, facets = bp.face(f)
        assert set(facets) == set(sc_f_facets(inst, f))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["A2", "B2", "B3"]), st.lists(st.integers(1, 3), min_size=1, max_size=6), st.data())
def test_random_instances_satisfy_all_brick_theorems(name, letters, data):
    sys = preset(name)
    word = [min(s, sys.rank) for s in letters]
    dem = demazure_product(sys, word)
    w = data.draw(st.sampled_from([z for z in sys.elements if bruhat_leq(sys, z, dem)]))
    inst = SubwordComplex(sys, word, w)
    assert check_uniqueness(inst, seed=1, count=8) == []
    assert check_connected_components(inst, seed=1, count=8) == []
    assert check_brick(inst, seed=1) == []


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 2), min_size=1, max_size=7), st.tuples(st.integers(-5, 5), st.integers(-5, 5)))
def test_f_antigreedy_is_the_unique_good_facet(letters, f):
    sys = preset("B2")
    inst = SubwordComplex(sys, letters, sys.identity)
    if not is_admissible(inst, f):
        with pytest.raises(FunctionalNotNonnegative):
            f_antigreedy(inst, f)
        return
    I, _ = f_antigreedy(inst, f)
    assert [J for J in inst.facets if satisfies_antigreedy_conditions(inst, J, f)] == [I]
    pos = positive_positions(inst, I, f)
    assert all(f_ > 0 for f_ in (sum(a * b for a, b in zip(f, inst.root_function(I, i))) for i in pos))
