from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from brickforge.bruhat import bruhat_leq
from brickforge.coxeter import preset
from brickforge.errors import EmptyComplex, IndexOutOfRange, NoCover, NotFlippable, NotInFacet
from brickforge.oracles import demazure_bruhat_max, facets_brute_force
from brickforge.subword import SubwordComplex, demazure_product, iota_map

B3_FACETS = {
    (1, 2, 3, 4, 5, 6, 8, 9): [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (0, 0, 1)],
    (1, 2, 3, 5, 6, 7, 8, 9): [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (0, 0, 1), (-1, 0, 0), (1, 1, 0), (0, 0, 1)],
    (2, 3, 4, 5, 6, 7, 8, 9): [(1, 1, 0), (0, 0, 1), (-1, 0, 0), (1, 1, 0), (0, 0, 1), (-1, 0, 0), (1, 1, 0), (0, 0, 1)],
}
B3_FLIPPABLE = {
    (1, 2, 3, 4, 5, 6, 8, 9): (1, 4),
    (1, 2, 3, 5, 6, 7, 8, 9): (1, 7),
    (2, 3, 4, 5, 6, 7, 8, 9): (4, 7),
}


def sc(sys, word, target):
    return SubwordComplex.from_strings(sys, word, target)


def test_demazure_examples(A2, B2):
    assert demazure_product(A2, (1, 2, 1, 2)) == A2.parse_element("121")
    assert demazure_product(A2, ()) == A2.identity
    assert demazure_product(B2, B2.parse_word("21122112")) == B2.longest_element
    assert demazure_product(B2, B2.parse_word("2221")) == B2.parse_element("21")


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(["A2", "B2", "A3", "B3"]), st.lists(st.integers(1, 3), max_size=7))
def test_demazure_is_bruhat_max_of_subwords(name, letters):
    sys = preset(name)
    word = [min(s, sys.rank) for s in letters]
    assert demazure_product(sys, word) == demazure_bruhat_max(sys, word)


def test_a2_facets_and_roots(A2):
    inst = sc(A2, "1212", "12")
    assert inst.facets == ((1, 2), (2, 3), (3, 4))
    assert inst.root_configuration((1, 2)) == ((1, 0), (0, 1))
    assert inst.root_configuration((2, 3)) == ((1, 1), (-1, 0))
    assert inst.root_configuration((3, 4)) == ((0, 1), (-1, -1))
    assert inst.root_function((2, 3), 1) == (1, 0)
    assert inst.greedy_facet == (1, 2) and inst.antigreedy_facet == (3, 4)
    assert inst.flip((1, 2), 1) == ((2, 3), 3)
    assert inst.nonflippable_root_set() == ((0, 1),)


def test_a2_weight_function(A2):
    inst = sc(A2, "1212", "12")
    assert inst.weight_function((1, 2), 3) == A2.weights[0]
    assert inst.weight_function((1, 2), 1) == A2.weights[0]
    bigger = sc(A2, "11212", "12")
    total = tuple(sum(v[t] for v in bigger.weights((1, 2, 3))) for t in range(2))
    assert total == (Fraction(8, 3), Fraction(7, 3))


def test_b3_example(B3):
    inst = sc(B3, "123123123", "1")
    assert inst.upper_labels == ((0, 1, 0), (0, 0, 1), (1, 1, 0))
    assert inst.facets == tuple(sorted(B3_FACETS))
    for I, roots in B3_FACETS.items():
        assert list(inst.root_configuration(I)) == roots
        assert inst.flippable_positions(I) == B3_FLIPPABLE[I]
    assert inst.nonflippable_root_set() == ((0, 1, 0), (0, 0, 1), (1, 1, 0))


def test_single_reduced_word(B3):
    inst = sc(B3, "123", "123")
    assert inst.facets == ((),)
    assert inst.greedy_facet == () == inst.antigreedy_facet
    assert inst.is_spherical and inst.nonflippable_root_set() == ()


def test_product_of_a1(B3):
    inst = sc(B3, "131", "13")
    assert inst.greedy_facet == (1,) and inst.antigreedy_facet == (3,)
    upper = inst
    w = B3.parse_element("3")
    assert iota_map(upper, (1,), w) == (1, 3) == iota_map(upper, (3,), w)
    A1A1 = preset("A1xA1")
    same = sc(A1A1, "121", "12")
    assert same.facets == ((1,), (3,))
    assert iota_map(same, (1,), A1A1.parse_element("2")) == (1, 3)


def test_iota_b2(B2):
    lower = sc(B2, "2221", "2")
    upper = sc(B2, "2221", "21")
    assert upper.target == B2.multiply(B2.reflection((1, 2)), lower.target)
    image = {iota_map(upper, J, lower.target) for J in upper.facets}
    beta = (1, 2)
    assert beta in lower.upper_labels
    assert image == {I for I in lower.facets if beta in lower.root_configuration(I)}
    with pytest.raises(NoCover):
        iota_map(upper, upper.facets[0], B2.identity)


def test_errors(A2):
    inst = sc(A2, "1212", "12")
    with pytest.raises(NotFlippable):
        inst.flip((1, 2), 2)
    with pytest.raises(NotInFacet):
        inst.flip((1, 2), 3)
    with pytest.raises(IndexOutOfRange):
        inst.root_function((1, 2), 5)
    empty = sc(A2, "12", "21")
    assert not empty.nonempty
    with pytest.raises(EmptyComplex):
        empty.facets
    with pytest.raises(IndexOutOfRange):
        SubwordComplex(A2, (1, 3), A2.identity)


@settings(max_examples=120, deadline=None)
@given(st.sampled_from(["A2", "B2", "A3", "B3"]), st.lists(st.integers(1, 3), min_size=1, max_size=7), st.data())
def test_complex_matches_oracles(name, letters, data):
    sys = preset(name)
    word = [min(s, sys.rank) for s in letters]
    dem = demazure_product(sys, word)
    below = [w for w in sys.elements if bruhat_leq(sys, w, dem)]
    w = data.draw(st.sampled_from(below))
    inst = SubwordComplex(sys, word, w)
    assert inst.nonempty
    facets = inst.facets
    assert facets == facets_brute_force(sys, word, w)
    assert inst.greedy_facet == facets[0] and inst.antigreedy_facet == facets[-1]
    inv = sorted(sys.inversion_set(w))
    for I in facets:
        roots = inst.roots(I)
        assert sorted(roots[k - 1] for k in inst.complement(I)) == inv
        for i, J, j in inst.neighbours(I):
            assert inst.roots(J) == inst.flipped_roots(I, i, j)
            assert inst.weights(J) == inst.flipped_weights(I, i, j)
            assert inst.flip(J, j) == (I, i)
    assert set(inst.nonflippable_root_set()) == set(inst.upper_labels)
    assert inst.is_spherical == all(inst.is_flippable(I, i) for I in facets for i in I)


def test_empty_complexes_have_no_facets(A2):
    for w in A2.elements:
        inst = SubwordComplex(A2, (1, 2), w)
        assert inst.nonempty == bool(facets_brute_force(A2, (1, 2), w))
