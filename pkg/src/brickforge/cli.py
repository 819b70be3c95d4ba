"""Command-line interface.

Exit codes: 0 success, 1 a verification check failed, 2 usage or input error.
Output is deterministic JSON (sorted keys); rationals are ``[num, den]`` pairs
and group elements are lexicographically smallest reduced words (``"e"`` for
the identity).
"""

from __future__ import annotations

import argparse
import json
import sys as _sys
from pathlib import Path
from typing import Optional, Sequence

from .brick import BrickPolyhedron, f_antigreedy
from .bruhat import lower_labels, upper_labels
from .coxeter import PRESETS, CoxeterSystem, build_system, preset
from .errors import BrickforgeError
from .geometry import frac_pair, vector_json
from .subword import SubwordComplex, demazure_product
from .verify import ALL_CHECKS, RANDOM_FUNCTIONALS, run_sweep


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# helpers


def load_system(args) -> tuple[CoxeterSystem, str]:
    if getattr(args, "cartan", None):
        text = args.cartan
        path = Path(text)
        if path.exists():
            text = path.read_text()
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"--cartan is neither a JSON file nor JSON text: {exc}") from None
        entries = data["cartan"] if isinstance(data, dict) else data
        return build_system(entries), "custom"
    name = args.system
    if name not in PRESETS:
        raise UsageError(f"unknown system {name!r}; choose from {', '.join(PRESETS)}")
    return preset(name), name


def make_instance(sys: CoxeterSystem, args) -> SubwordComplex:
    try:
        return SubwordComplex.from_strings(sys, args.word, args.target)
    except (ValueError, IndexError) as exc:
        raise UsageError(str(exc)) from None


def parse_facet(text: str) -> tuple[int, ...]:
    text = text.strip().strip("{}[]()")
    if not text:
        return ()
    parts = text.replace(",", " ").split() if ("," in text or " " in text) else list(text)
    try:
        return tuple(sorted(int(p) for p in parts))
    except ValueError:
        raise UsageError(f"cannot parse facet {text!r}") from None


def parse_functional(text: str, rank: int) -> tuple[int, ...]:
    try:
        values = tuple(int(p) for p in text.replace(",", " ").split())
    except ValueError:
        raise UsageError(f"cannot parse functional {text!r}; give integers like '-2,1'") from None
    if len(values) != rank:
        raise UsageError(f"functional needs {rank} values, got {len(values)}")
    return values


def roots_json(roots) -> list[list[int]]:
    return [list(r) for r in roots]


def facet_json(I) -> list[int]:
    return list(I)


def _is_flat(obj, depth: int = 3) -> bool:
    if isinstance(obj, list):
        return depth > 0 and all(_is_flat(x, depth - 1) for x in obj)
    return not isinstance(obj, dict)


def dumps(obj, level: int = 0) -> str:
    """JSON with sorted keys; small numeric arrays stay on one line."""
    pad, inner = "  " * level, "  " * (level + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(k)}: {dumps(obj[k], level + 1)}" for k in sorted(obj)]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, list) and not _is_flat(obj):
        return "[\n" + ",\n".join(inner + dumps(x, level + 1) for x in obj) + "\n" + pad + "]"
    return json.dumps(obj)


def emit(data, args) -> None:
    text = dumps(data) + "\n"
    out = getattr(args, "output", None)
    if out:
        Path(out).write_text(text)
    else:
        _sys.stdout.write(text)


def header(sys: CoxeterSystem, name: str) -> dict:
    return {"system": name, "cartan": [list(r) for r in sys.cartan.entries]}


def instance_header(inst: SubwordComplex, name: str) -> dict:
    sys = inst.system
    data = header(sys, name)
    data.update(
        word=sys.format_word(inst.word),
        target=sys.format_element(inst.target),
        demazure=sys.format_element(inst.demazure),
    )
    return data


# ---------------------------------------------------------------------------
# commands


def cmd_roots(args) -> int:
    sys, name = load_system(args)
    data = header(sys, name)
    data.update(
        rank=sys.rank,
        simple_roots=roots_json(sys.simple_roots),
        # row s, column t holds s(alpha_t)
        simple_reflections=[
            [list(sys.act(sys.generator(s), a)) for a in sys.simple_roots] for s in range(1, sys.rank + 1)
        ],
        positive_roots=roots_json(sys.positive_roots),
        weights=[vector_json(w) for w in sys.weights],
        symmetrizer=list(sys.symmetrizer),
        order=len(sys.elements),
        longest_element=sys.format_element(sys.longest_element),
    )
    emit(data, args)
    return 0


def cmd_demazure(args) -> int:
    sys, _ = load_system(args)
    try:
        word = sys.parse_word(args.word)
    except (ValueError, IndexError) as exc:
        raise UsageError(str(exc)) from None
    emit({"demazure": sys.format_element(demazure_product(sys, word))}, args)
    return 0


def facet_record(inst: SubwordComplex, I) -> dict:
    flippable = inst.flippable_positions(I)
    return {
        "positions": facet_json(I),
        "roots": roots_json(inst.root_configuration(I)),
        "flippable": [i in flippable for i in I],
        "greedy": I == inst.greedy_facet,
        "antigreedy": I == inst.antigreedy_facet,
    }


def cmd_facets(args) -> int:
    sys, name = load_system(args)
    inst = make_instance(sys, args)
    data = instance_header(inst, name)
    data["facets"] = [facet_record(inst, I) for I in inst.facets]
    data["upper_labels"] = roots_json(inst.upper_labels)
    emit(data, args)
    return 0


def cmd_flips(args) -> int:
    sys, name = load_system(args)
    inst = make_instance(sys, args)
    facets = [parse_facet(args.facet)] if args.facet is not None else list(inst.facets)
    data = instance_header(inst, name)
    flips = []
    for I in facets:
        if not inst.is_facet(I):
            raise UsageError(f"{list(I)} is not a facet")
        for i in I:
            rec = {"facet": facet_json(I), "position": i, "root": list(inst.root_function(I, i))}
            if inst.is_flippable(I, i):
                J, j = inst.flip(I, i)
                rec.update(flippable=True, to=facet_json(J), new_position=j)
            else:
                rec.update(flippable=False)
            flips.append(rec)
    data["flips"] = flips
    emit(data, args)
    return 0


def cmd_antigreedy(args) -> int:
    sys, name = load_system(args)
    inst = make_instance(sys, args)
    f = parse_functional(args.functional, sys.rank)
    I, trace = f_antigreedy(inst, f)
    data = instance_header(inst, name)
    data.update(
        functional=list(f),
        facet=facet_json(I),
        roots=roots_json(inst.root_configuration(I)),
        trace=[
            {"k": st.k, "beta": list(st.beta), "condition": st.condition,
             "w": sys.format_element(st.w), "facet": facet_json(st.facet)}
            for st in trace.steps
        ],
    )
    emit(data, args)
    return 0


def kappa_json(bp: BrickPolyhedron) -> list[dict]:
    sys = bp.system
    return [{"element": sys.format_element(z), "facet": facet_json(I)} for z, I in bp.kappa.assignment]


def cmd_brickpoly(args) -> int:
    sys, name = load_system(args)
    inst = make_instance(sys, args)
    bp = BrickPolyhedron(inst)
    parts = [p.strip() for p in args.emit.split(",") if p.strip()]
    known = {"vrep", "hrep", "kappa", "normalfan", "svg"}
    bad = [p for p in parts if p not in known]
    if bad:
        raise UsageError(f"unknown --emit parts {bad}; choose from {sorted(known)}")
    svg = None
    if "svg" in parts:
        from .svg import render_svg

        if sys.rank != 2:
            raise UsageError("--emit svg needs a rank-2 system")
        svg = render_svg(bp)
        if args.svg_output:
            Path(args.svg_output).write_text(svg)
            svg = None
        elif parts == ["svg"]:
            _sys.stdout.write(svg)
            return 0
    data = instance_header(inst, name)
    if svg is not None:
        data["svg"] = svg
    data["brick_vectors"] = [
        {"facet": facet_json(I), "vector": vector_json(v), "vertex": I in bp.vertex_facets}
        for I, v in bp.brick_vectors.items()
    ]
    if "vrep" in parts:
        data["vrep"] = {
            "points": [vector_json(v) for v in bp.vertices],
            "rays": roots_json(bp.recession_rays),
        }
    if "hrep" in parts:
        data["hrep"] = [
            {"covector": vector_json(f), "offset": frac_pair(b)} for f, b in bp.hrep.halfspaces
        ]
    if "kappa" in parts:
        data["kappa"] = kappa_json(bp)
    if "normalfan" in parts:
        data["normal_fan"] = [
            {"facet": facet_json(I), "vertex": vector_json(bp.brick_vectors[I]),
             "chambers": [sys.format_element(z) for z in zs]}
            for I, zs in bp.normal_fan()
        ]
    if not bp.representations_agree():
        raise AssertionError("V- and H-representations disagree")
    emit(data, args)
    return 0


def cmd_kappa(args) -> int:
    sys, name = load_system(args)
    inst = make_instance(sys, args)
    bp = BrickPolyhedron(inst)
    data = instance_header(inst, name)
    data["kappa"] = kappa_json(bp)
    emit(data, args)
    return 0


def cmd_plot(args) -> int:
    from .svg import render_svg

    sys, _ = load_system(args)
    if sys.rank != 2:
        raise UsageError("plot needs a rank-2 system")
    svg = render_svg(BrickPolyhedron(make_instance(sys, args)))
    if args.output:
        Path(args.output).write_text(svg)
    else:
        _sys.stdout.write(svg)
    return 0


def cmd_bruhat_cone(args) -> int:
    sys, name = load_system(args)
    try:
        x, y = sys.parse_element(args.source), sys.parse_element(args.to)
    except (ValueError, IndexError) as exc:
        raise UsageError(str(exc)) from None
    data = header(sys, name)
    data.update(
        **{"from": sys.format_element(x), "to": sys.format_element(y)},
        upper_labels=roots_json(upper_labels(sys, x, y)),
        lower_labels=roots_json(lower_labels(sys, x, y)),
    )
    emit(data, args)
    return 0


def cmd_verify(args) -> int:
    checks = [c.strip() for c in args.checks.split(",") if c.strip()] if args.checks else list(ALL_CHECKS)
    bad = [c for c in checks if c not in ALL_CHECKS]
    if bad:
        raise UsageError(f"unknown checks {bad}; choose from {', '.join(ALL_CHECKS)}")
    if args.max_word_length < 1:
        raise UsageError("--max-word-length must be at least 1")
    names = args.system or ["A2"]
    results = []
    for name in names:
        if name not in PRESETS:
            raise UsageError(f"unknown system {name!r}")
        sys = preset(name)
        targets = None
        if args.targets != "all":
            targets = [sys.parse_element(t) for t in args.targets.split(",")]
        results.extend(run_sweep(sys, name, args.max_word_length, checks, args.seed, args.functionals, targets))
    width = max(len(r.name) for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status}  {r.system:<8} {r.name:<{width}}  cases={r.cases}  failures={len(r.failures)}")
        for msg in r.failures[:5]:
            print(f"      counterexample: {msg}")
    if args.output:
        report = [{"system": r.system, "check": r.name, "cases": r.cases, "passed": r.passed,
                   "failures": r.failures} for r in results]
        Path(args.output).write_text(dumps(report) + "\n")
    return 0 if all(r.passed for r in results) else 1


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="brickforge", description="Subword complexes, Bruhat cones and brick polyhedra.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, instance=False):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--system", default="A2", help=f"preset: {', '.join(PRESETS)}")
        p.add_argument("--cartan", help="Cartan matrix as JSON text or file ({\"cartan\": [[...]]})")
        p.add_argument("--output", "-o", help="write output to this file")
        if instance:
            p.add_argument("--word", required=True, help="word Q, e.g. 1212")
            p.add_argument("--target", required=True, help="element w as a word, 'e' or 'w0'")
        p.set_defaults(func=func)
        return p

    add("roots", cmd_roots, "positive roots, weights and group data")
    p = add("demazure", cmd_demazure, "Demazure product of a word")
    p.add_argument("--word", required=True)
    add("facets", cmd_facets, "facets with root configurations", instance=True)
    p = add("flips", cmd_flips, "flips of one facet or of all facets", instance=True)
    p.add_argument("--facet", help="facet positions, e.g. 23 or 2,3")
    p = add("antigreedy", cmd_antigreedy, "f-antigreedy facet with its trace", instance=True)
    p.add_argument("--functional", required=True, help="values on the simple roots, e.g. '-2,1'")
    p = add("brickpoly", cmd_brickpoly, "brick polyhedron data", instance=True)
    p.add_argument("--emit", default="vrep,hrep", help="comma list of vrep,hrep,kappa,normalfan,svg")
    p.add_argument("--svg-output", help="file for the SVG when other parts go to JSON")
    add("kappa", cmd_kappa, "kappa map on the weak-order ideal", instance=True)
    add("plot", cmd_plot, "SVG picture of a rank-2 brick polyhedron", instance=True)
    p = add("bruhat-cone", cmd_bruhat_cone, "atom and coatom labels of a Bruhat interval")
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", required=True)

    p = sub.add_parser("verify", help="run theorem checks over all short words")
    p.add_argument("--system", action="append", help="preset (repeatable); default A2")
    p.add_argument("--max-word-length", type=int, default=5)
    p.add_argument("--checks", help=f"comma list from: {', '.join(ALL_CHECKS)}")
    p.add_argument("--targets", default="all", help="'all' or comma list of elements")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--functionals", type=int, default=RANDOM_FUNCTIONALS)
    p.add_argument("--output", "-o", help="write a JSON report here")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, BrickforgeError) as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"check failed: {exc}", file=_sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
