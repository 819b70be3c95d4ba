"""Self-contained SVG pictures of rank-2 brick polyhedra.

Coordinates are floats here: the picture is output only and never feeds back
into any exact computation.
"""

from __future__ import annotations

import math
from html import escape

from .brick import BrickPolyhedron

SIZE = 480
MARGIN = 40


def _embedding(gram):
    """Cholesky factor so that the Euclidean picture respects the invariant form."""
    a, b, d = float(gram[0][0]), float(gram[0][1]), float(gram[1][1])
    l11 = math.sqrt(a)
    l21 = b / l11
    l22 = math.sqrt(d - l21 * l21)
    return lambda v: (l11 * float(v[0]) + l21 * float(v[1]), l22 * float(v[1]))


def _hull(points):
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def render_svg(bp: BrickPolyhedron) -> str:
    inst = bp.instance
    sys = inst.system
    if sys.rank != 2:
        raise ValueError("SVG rendering is only available in rank 2")
    emb = _embedding(sys.gram)
    bricks = {I: emb(v) for I, v in bp.brick_vectors.items()}
    verts = [emb(v) for v in bp.vertices]
    rays = [emb(r) for r in bp.recession_rays]
    xs = [p[0] for p in bricks.values()]
    ys = [p[1] for p in bricks.values()]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1.0)
    reach = span * 0.8
    region = list(verts)
    for v in verts:
        for r in rays:
            norm = math.hypot(*r)
            region.append((v[0] + reach * r[0] / norm, v[1] + reach * r[1] / norm))
    allx = [p[0] for p in region] + xs
    ally = [p[1] for p in region] + ys
    lo_x, hi_x, lo_y, hi_y = min(allx), max(allx), min(ally), max(ally)
    scale = (SIZE - 2 * MARGIN) / max(hi_x - lo_x, hi_y - lo_y, 1e-9)

    def tr(p):
        return (MARGIN + (p[0] - lo_x) * scale, SIZE - MARGIN - (p[1] - lo_y) * scale)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"6\" "
        "markerHeight=\"6\" orient=\"auto-start-reverse\"><path d=\"M 0 0 L 10 5 L 0 10 z\"/></marker></defs>",
        f'<title>{escape(repr(inst))}</title>',
    ]
    hull = _hull(region)
    if len(hull) >= 3:
        pts = " ".join(f"{x:.2f},{y:.2f}" for x, y in map(tr, hull))
        out.append(f'<polygon points="{pts}" fill="#e8e8e8" stroke="#444" stroke-width="1.5"/>')
    elif len(hull) == 2:
        (x1, y1), (x2, y2) = map(tr, hull)
        out.append(f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" stroke="#444" stroke-width="2"/>')
    for v in verts:
        for r in rays:
            norm = math.hypot(*r)
            (x1, y1), (x2, y2) = tr(v), tr((v[0] + reach * r[0] / norm, v[1] + reach * r[1] / norm))
            out.append(f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" stroke="#444" '
                       f'stroke-width="1.5" marker-end="url(#arrow)"/>')
    arrow = 18.0
    for I, p in bricks.items():
        cx, cy = tr(p)
        for r in inst.root_configuration(I):
            e = emb(r)
            norm = math.hypot(*e)
            out.append(f'<line x1="{cx:.2f}" y1="{cy:.2f}" x2="{cx + arrow * e[0] / norm:.2f}" '
                       f'y2="{cy - arrow * e[1] / norm:.2f}" stroke="#1f4e9c" stroke-width="2" marker-end="url(#arrow)"/>')
        fill = "#c0392b" if I in bp.vertex_facets else "#888"
        out.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="3.5" fill="{fill}"/>')
        label = "{" + ",".join(map(str, I)) + "}"
        out.append(f'<text x="{cx + 6:.2f}" y="{cy + 14:.2f}" font-size="11" font-family="sans-serif">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
