"""Exact subword complexes, Bruhat cones and brick polyhedra of finite Weyl groups."""

from .coxeter import CoxeterSystem, GroupElement, PRESETS, build_system, preset

__all__ = ["CoxeterSystem", "GroupElement", "PRESETS", "build_system", "preset"]
