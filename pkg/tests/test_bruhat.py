import pytest
from hypothesis import given, settings, strategies as st

from brickforge.bruhat import (
    bruhat_cone,
    bruhat_interval,
    bruhat_leq,
    cover_label_sets,
    lower_labels,
    upper_cone,
    upper_labels,
    weak_ideal,
)
from brickforge.coxeter import preset
from brickforge.errors import NotComparable
from brickforge.geometry import cone_contains, is_pointed
from brickforge.oracles import bruhat_leq_subword
from brickforge.verify import bruhat_oracle_suite, dyer_suite


def el(sys, text):
    return sys.parse_element(text)


def test_bruhat_examples(A2):
    for w in A2.elements:
        assert bruhat_leq(A2, w, w)
    assert bruhat_leq(A2, el(A2, "2"), el(A2, "12"))
    assert not bruhat_leq(A2, el(A2, "12"), el(A2, "21"))


def test_weak_order_implies_bruhat(B3):
    for x in B3.elements:
        for y in B3.elements:
            if B3.weak_leq(x, y):
                assert bruhat_leq(B3, x, y)


@pytest.mark.parametrize("name", ["A2", "B2", "A3", "B3"])
def test_recursion_matches_subword_oracle(name):
    cases, failures = bruhat_oracle_suite(preset(name))
    assert cases == len(preset(name).elements) ** 2
    assert failures == []


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(["A3", "B3"]), st.data())
def test_bruhat_is_a_partial_order(name, data):
    sys = preset(name)
    x, y, z = (data.draw(st.sampled_from(sys.elements)) for _ in range(3))
    assert bruhat_leq(sys, x, y) == bruhat_leq_subword(sys, x, y)
    if bruhat_leq(sys, x, y) and bruhat_leq(sys, y, z):
        assert bruhat_leq(sys, x, z)
    if bruhat_leq(sys, x, y) and bruhat_leq(sys, y, x):
        assert x == y


def test_label_examples(A2, B2, B3):
    assert upper_labels(A2, el(A2, "12"), el(A2, "121")) == ((0, 1),)
    assert upper_labels(B3, el(B3, "1"), B3.longest_element) == ((0, 1, 0), (0, 0, 1), (1, 1, 0))
    assert upper_labels(B2, el(B2, "2"), el(B2, "21")) == ((1, 2),)
    w = el(B3, "123")
    labels = cover_label_sets(B3, w, w)
    assert labels.atoms_labels == () and labels.coatoms_labels == ()


def test_labels_require_comparable(A2):
    with pytest.raises(NotComparable):
        upper_labels(A2, el(A2, "12"), el(A2, "21"))
    with pytest.raises(NotComparable):
        weak_ideal(A2, el(A2, "12"), el(A2, "21"))


def test_labels_are_covers(B2):
    for x in B2.elements:
        for y in B2.elements:
            if not bruhat_leq(B2, x, y):
                continue
            interval = bruhat_interval(B2, x, y)
            atoms = {z for z in interval if z.length == x.length + 1}
            coatoms = {z for z in interval if z.length == y.length - 1}
            assert {B2.multiply(B2.reflection(b), x) for b in upper_labels(B2, x, y)} == atoms
            assert {B2.multiply(B2.reflection(b), y) for b in lower_labels(B2, x, y)} == coatoms


def test_cone_examples(A2, B2):
    c = upper_cone(A2, el(A2, "12"), el(A2, "121"), check=True)
    assert c.generators == ((0, 1),)
    assert cone_contains(c, (0, 5)) and not cone_contains(c, (1, 1))
    empty = bruhat_cone([], 2)
    assert not cone_contains(empty, (1, 0)) and cone_contains(empty, (0, 0))
    ray = upper_cone(B2, el(B2, "2"), el(B2, "21"), check=True)
    assert cone_contains(ray, (2, 4)) and is_pointed(ray)
    with pytest.raises(ValueError):
        bruhat_cone([(1, -1)], 2)


def test_weak_ideal_examples(A2, B2):
    names = lambda sys, ideal: sorted(sys.format_element(z) for z in ideal.members)
    assert names(A2, weak_ideal(A2, el(A2, "12"), el(A2, "121"))) == ["1", "12", "e"]
    assert names(B2, weak_ideal(B2, el(B2, "2"), el(B2, "21"))) == ["1", "12", "2", "e"]
    w0 = B2.longest_element
    assert len(weak_ideal(B2, w0, w0).members) == 8


@pytest.mark.parametrize("name", ["A2", "B2", "A3"])
def test_weak_ideals_are_downward_closed(name):
    sys = preset(name)
    for x in sys.elements:
        for y in sys.elements:
            if not bruhat_leq(sys, x, y):
                continue
            ideal = weak_ideal(sys, x, y)
            for z in ideal.members:
                for s in range(1, sys.rank + 1):
                    if sys.has_right_descent(z, s):
                        assert sys.right_multiply(z, s) in ideal


@pytest.mark.parametrize("name", ["A2", "B2", "A3"])
def test_dyer_suite_exhaustive(name):
    cases, failures = dyer_suite(preset(name))
    n = preset(name)
    assert cases == len(n.elements) ** 2 * n.rank
    assert failures == []
