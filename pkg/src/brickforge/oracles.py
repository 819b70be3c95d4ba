"""Slow reference implementations used to cross-check the fast code paths."""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from .coxeter import CoxeterSystem, GroupElement


def subword_products(sys: CoxeterSystem, word: Sequence[int]) -> set:
    """Matrices of all products of subwords of ``word``."""
    current = {sys.identity.matrix}
    for s in word:
        g = sys.generator(s)
        current |= {sys.multiply(GroupElement(m, 0), g).matrix for m in current}
    return current


def bruhat_leq_subword(sys: CoxeterSystem, x: GroupElement, y: GroupElement) -> bool:
    """Subword property: ``x <= y`` iff ``x`` is a subword product of a reduced word of ``y``."""
    return x.matrix in subword_products(sys, sys.reduced_word(y))


def demazure_bruhat_max(sys: CoxeterSystem, word: Sequence[int]) -> GroupElement:
    """The Bruhat-maximum of all subword products of ``word``."""
    elements = [sys.element(m) for m in subword_products(sys, word)]
    top = max(elements, key=lambda z: z.length)
    for z in elements:
        assert bruhat_leq_subword(sys, z, top), "subword products have no maximum"
    return top


def facets_brute_force(sys: CoxeterSystem, word: Sequence[int], target: GroupElement) -> tuple:
    """Position sets whose complement is a reduced word for ``target``."""
    m = len(word)
    out = []
    for comp in combinations(range(1, m + 1), target.length):
        letters = [word[k - 1] for k in comp]
        if sys.is_reduced(letters) and sys.element_from_word(letters) == target:
            out.append(tuple(k for k in range(1, m + 1) if k not in comp))
    return tuple(sorted(out))
