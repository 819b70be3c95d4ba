"""Bruhat order, cover labels of intervals, Bruhat cones and weak-order ideals."""

from __future__ import annotations

import weakref
from dataclasses import dataclass
from typing import Iterable

from .coxeter import CoxeterSystem, GroupElement, Root, is_positive
from .errors import NotComparable
from .geometry import RationalCone, is_extreme

_MEMO: "weakref.WeakKeyDictionary[CoxeterSystem, dict]" = weakref.WeakKeyDictionary()


def _memo(sys: CoxeterSystem, name: str) -> dict:
    tables = _MEMO.setdefault(sys, {})
    return tables.setdefault(name, {})


def bruhat_leq(sys: CoxeterSystem, x: GroupElement, y: GroupElement) -> bool:
    """``x <= y`` in Bruhat order via the lifting property.

    Take the smallest left descent ``s`` of ``y``; then ``x <= y`` iff
    ``sx <= sy`` when ``s`` is also a left descent of ``x``, and iff
    ``x <= sy`` otherwise.
    """
    memo = _memo(sys, "leq")
    key = (x.matrix, y.matrix)
    hit = memo.get(key)
    if hit is not None:
        return hit
    lx, ly = sys.length(x), sys.length(y)
    if lx > ly:
        result = False
    elif lx == 0:
        result = True
    elif lx == ly:
        result = x == y
    else:
        s = next(t for t in range(1, sys.rank + 1) if sys.has_left_descent(y, t))
        sy = sys.left_multiply(s, y)
        if sys.has_left_descent(x, s):
            result = bruhat_leq(sys, sys.left_multiply(s, x), sy)
        else:
            result = bruhat_leq(sys, x, sy)
    memo[key] = result
    return result


def bruhat_interval(sys: CoxeterSystem, x: GroupElement, y: GroupElement) -> list[GroupElement]:
    return [z for z in sys.elements if bruhat_leq(sys, x, z) and bruhat_leq(sys, z, y)]


def upper_labels(sys: CoxeterSystem, x: GroupElement, y: GroupElement) -> tuple[Root, ...]:
    """E+(x, y): labels of the atoms of ``[x, y]``, in canonical root order."""
    memo = _memo(sys, "upper")
    key = (x.matrix, y.matrix)
    if key not in memo:
        if not bruhat_leq(sys, x, y):
            raise NotComparable(f"{sys.format_element(x)} is not below {sys.format_element(y)}")
        lx = sys.length(x)
        out = []
        for beta in sys.positive_roots:
            z = sys.multiply(sys.reflection(beta), x)
            if z.length == lx + 1 and bruhat_leq(sys, z, y):
                out.append(beta)
        memo[key] = tuple(out)
    return memo[key]


def lower_labels(sys: CoxeterSystem, x: GroupElement, y: GroupElement) -> tuple[Root, ...]:
    """E-(x, y): labels of the coatoms of ``[x, y]``, in canonical root order."""
    memo = _memo(sys, "lower")
    key = (x.matrix, y.matrix)
    if key not in memo:
        if not bruhat_leq(sys, x, y):
            raise NotComparable(f"{sys.format_element(x)} is not below {sys.format_element(y)}")
        ly = sys.length(y)
        out = []
        for beta in sys.positive_roots:
            z = sys.multiply(sys.reflection(beta), y)
            if z.length == ly - 1 and bruhat_leq(sys, x, z):
                out.append(beta)
        memo[key] = tuple(out)
    return memo[key]


@dataclass(frozen=True)
class BruhatEdgeLabelSet:
    base: GroupElement
    top: GroupElement
    atoms_labels: tuple[Root, ...]
    coatoms_labels: tuple[Root, ...]


def cover_label_sets(sys: CoxeterSystem, x: GroupElement, y: GroupElement) -> BruhatEdgeLabelSet:
    return BruhatEdgeLabelSet(x, y, upper_labels(sys, x, y), lower_labels(sys, x, y))


def bruhat_cone(labels: Iterable[Root], dim: int, check: bool = False) -> RationalCone:
    """Cone spanned by the given labels.

    Labels of atoms (or coatoms) of a Bruhat interval are always the rays of
    their cone; ``check=True`` asserts this instead of trusting it.
    """
    gens = [tuple(b) for b in labels]
    for b in gens:
        if not is_positive(b):
            raise ValueError(f"label {b} is not a positive root")
    if check:
        for i in range(len(gens)):
            assert is_extreme(gens, i), f"label {gens[i]} is not an extreme ray"
    return RationalCone.from_generators(gens, dim)


def upper_cone(sys: CoxeterSystem, x: GroupElement, y: GroupElement, check: bool = False) -> RationalCone:
    return bruhat_cone(upper_labels(sys, x, y), sys.rank, check)


def lower_cone(sys: CoxeterSystem, x: GroupElement, y: GroupElement, check: bool = False) -> RationalCone:
    return bruhat_cone(lower_labels(sys, x, y), sys.rank, check)


@dataclass(frozen=True)
class WeakIdeal:
    interval: tuple[GroupElement, GroupElement]
    members: tuple[GroupElement, ...]

    def __contains__(self, z: GroupElement) -> bool:
        return z in self.members


def weak_ideal(sys: CoxeterSystem, x: GroupElement, y: GroupElement) -> WeakIdeal:
    """Elements whose inversion set avoids E+(x, y)."""
    labels = set(upper_labels(sys, x, y))
    members = tuple(z for z in sys.elements if not labels.intersection(sys.inversion_set(z)))
    return WeakIdeal((x, y), members)
