"""Object maps, individual maps and biplots written as plain SVG 1.1.

Only the first two dimensions are drawn. Both axes share one scale factor so
that distances and angles in the picture are faithful to the solution.
"""
import os
import tempfile
from dataclasses import dataclass, field
from xml.sax.saxutils import escape

import numpy as np

from .errors import InvalidInput, IoError, NeedTwoDimensions
from .recode import MINUS, PLUS
from .variants import Variant, VariantResult, doubled_masses, estimate_mean_ratings

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
           "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf")
INDIVIDUAL_COLOR = "#444444"
LABEL_OFFSET = (5.0, -5.0)
TICK_HALF_LENGTH = 4.0
POINT_RADIUS = 3.5
MARGIN = 40.0


@dataclass(frozen=True)
class PointSet:
    role: str              # "objects" or "individuals"
    scaling: str           # "standard" or "principal"
    labels: tuple
    xy: np.ndarray
    colors: tuple
    filled: tuple


@dataclass(frozen=True)
class PairAxis:
    """Segment from the ``-`` point (rating 1) to the ``+`` point (rating q)."""

    label: str
    minus: np.ndarray
    plus: np.ndarray
    ticks: np.ndarray       # q x 2
    mean_t: float
    mean_rating: float
    color: str

    @property
    def mean_point(self):
        return self.minus + self.mean_t * (self.plus - self.minus)


@dataclass(frozen=True)
class BiplotSpec:
    point_sets: tuple
    axes: tuple = ()
    width: float = 640.0
    height: float = 640.0
    show_origin: bool = True
    title: str = ""
    meta: dict = field(default_factory=dict)

    @property
    def mean_markers(self):
        return tuple(a.mean_point for a in self.axes)


def _check_dims(res):
    if res.solution.k < 2:
        raise NeedTwoDimensions(f"plots need k >= 2, solution has k={res.solution.k}")


def _coords(view, scaling):
    if scaling not in ("standard", "principal"):
        raise InvalidInput(f"unknown scaling {scaling!r}")
    return (view.standard if scaling == "standard" else view.principal)[:, :2]


def tick_positions(minus, plus, q):
    t = np.arange(q) / (q - 1)
    return minus[None, :] + t[:, None] * (plus - minus)[None, :]


def _pair_axes(res, xy):
    p = res.data.p
    q = res.data.q
    c_plus, c_minus = doubled_masses(res)
    means = estimate_mean_ratings(res)
    axes = []
    for j in range(p):
        plus, minus = xy[j], xy[j + p]
        axes.append(PairAxis(
            label=res.data.col_labels[j],
            minus=minus.copy(),
            plus=plus.copy(),
            ticks=tick_positions(minus, plus, q),
            mean_t=float(c_plus[j] / (c_plus[j] + c_minus[j])),
            mean_rating=float(means[j]),
            color=PALETTE[j % len(PALETTE)],
        ))
    return tuple(axes)


def _object_set(res, scaling):
    view = res.objects_view
    xy = _coords(view, scaling)
    if res.variant is Variant.CAR:
        p = res.data.p
        colors = tuple(PALETTE[j % p % len(PALETTE)] for j in range(2 * p))
        filled = tuple(tag == PLUS for tag in view.tags)
    else:
        colors = tuple(PALETTE[j % len(PALETTE)] for j in range(len(view.labels)))
        filled = tuple(tag != "boundary" for tag in view.tags) or (True,) * len(view.labels)
    return PointSet("objects", scaling, view.labels, xy.copy(), colors, filled), xy


def _individual_set(res, scaling):
    view = res.individuals_view
    xy = _coords(view, scaling)
    n = len(view.labels)
    return PointSet("individuals", scaling, view.labels, xy.copy(),
                    (INDIVIDUAL_COLOR,) * n, (True,) * n)


def default_object_scaling(res):
    return "principal" if res.variant is Variant.CAR else "standard"


def default_individual_scaling(res):
    return "standard" if res.variant is Variant.CAR else "principal"


def build_object_map(res: VariantResult, scaling=None) -> BiplotSpec:
    _check_dims(res)
    scaling = scaling or default_object_scaling(res)
    objects, xy = _object_set(res, scaling)
    axes = _pair_axes(res, xy) if res.variant is Variant.CAR else ()
    return BiplotSpec((objects,), axes, title=f"{res.variant.value}: objects ({scaling})")


def build_individual_map(res: VariantResult, scaling=None) -> BiplotSpec:
    _check_dims(res)
    scaling = scaling or default_individual_scaling(res)
    return BiplotSpec((_individual_set(res, scaling),),
                      title=f"{res.variant.value}: individuals ({scaling})")


def build_biplot(res: VariantResult) -> BiplotSpec:
    """Objects in standard coordinates, individuals in principal coordinates."""
    _check_dims(res)
    objects, xy = _object_set(res, "standard")
    axes = _pair_axes(res, xy) if res.variant is Variant.CAR else ()
    return BiplotSpec((objects, _individual_set(res, "principal")), axes,
                      title=f"{res.variant.value}: biplot")


BUILDERS = {
    "objects": build_object_map,
    "individuals": build_individual_map,
    "biplot": lambda res, scaling=None: build_biplot(res),
}


# ---------------------------------------------------------------------------
# SVG
# ---------------------------------------------------------------------------

def _f(x):
    v = float(x)
    s = f"{v:.6f}"
    return "0.000000" if s == "-0.000000" else s


class _Frame:
    """Data -> pixel map with one scale factor for both axes (y flipped)."""

    def __init__(self, pts, width, height):
        lo = pts.min(axis=0)
        hi = pts.max(axis=0)
        span = np.maximum(hi - lo, 1e-12)
        self.scale = float(min((width - 2 * MARGIN) / span[0], (height - 2 * MARGIN) / span[1]))
        centre = (lo + hi) / 2
        self.cx = width / 2 - self.scale * centre[0]
        self.cy = height / 2 + self.scale * centre[1]

    def __call__(self, xy):
        return self.cx + self.scale * xy[0], self.cy - self.scale * xy[1]


def render_svg(spec: BiplotSpec) -> str:
    pts = [ps.xy for ps in spec.point_sets]
    pts += [np.vstack([a.minus, a.plus]) for a in spec.axes]
    if spec.show_origin:
        pts.append(np.zeros((1, 2)))
    allpts = np.vstack(pts)
    if not np.all(np.isfinite(allpts)):
        raise InvalidInput("non-finite coordinates cannot be plotted")
    frame = _Frame(allpts, spec.width, spec.height)
    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_f(spec.width)}" '
        f'height="{_f(spec.height)}" viewBox="0 0 {_f(spec.width)} {_f(spec.height)}">',
        f'<rect x="0" y="0" width="{_f(spec.width)}" height="{_f(spec.height)}" fill="white"/>',
    ]
    if spec.title:
        out.append(f'<text x="{_f(MARGIN / 2)}" y="{_f(MARGIN / 2)}" font-family="sans-serif" '
                   f'font-size="12">{escape(spec.title)}</text>')
    if spec.show_origin:
        ox, oy = frame((0.0, 0.0))
        out.append(f'<line class="origin" x1="0.000000" y1="{_f(oy)}" x2="{_f(spec.width)}" '
                   f'y2="{_f(oy)}" stroke="#bbbbbb" stroke-dasharray="4 3"/>')
        out.append(f'<line class="origin" x1="{_f(ox)}" y1="0.000000" x2="{_f(ox)}" '
                   f'y2="{_f(spec.height)}" stroke="#bbbbbb" stroke-dasharray="4 3"/>')
    for a in spec.axes:
        (x1, y1), (x2, y2) = frame(a.minus), frame(a.plus)
        out.append(f'<polyline class="axis" points="{_f(x1)},{_f(y1)} {_f(x2)},{_f(y2)}" '
                   f'fill="none" stroke="{a.color}" stroke-width="1.5"/>')
    for a in spec.axes:
        (x1, y1), (x2, y2) = frame(a.minus), frame(a.plus)
        dx, dy = x2 - x1, y2 - y1
        length = float(np.hypot(dx, dy)) or 1.0
        nx, ny = -dy / length * TICK_HALF_LENGTH, dx / length * TICK_HALF_LENGTH
        for m, t in enumerate(a.ticks, start=1):
            tx, ty = frame(t)
            out.append(f'<line class="tick" data-rating="{m}" x1="{_f(tx - nx)}" y1="{_f(ty - ny)}" '
                       f'x2="{_f(tx + nx)}" y2="{_f(ty + ny)}" stroke="{a.color}"/>')
    for a in spec.axes:
        mx, my = frame(a.mean_point)
        out.append(f'<rect class="mean" x="{_f(mx - 2.5)}" y="{_f(my - 2.5)}" width="5.000000" '
                   f'height="5.000000" fill="{a.color}" data-mean="{a.mean_rating:.6f}"/>')
    for ps in spec.point_sets:
        for xy, color, filled in zip(ps.xy, ps.colors, ps.filled):
            px, py = frame(xy)
            fill = color if filled else "none"
            out.append(f'<circle class="{ps.role}" cx="{_f(px)}" cy="{_f(py)}" r="{_f(POINT_RADIUS)}" '
                       f'fill="{fill}" stroke="{color}"/>')
    for ps in spec.point_sets:
        for label, xy, color in zip(ps.labels, ps.xy, ps.colors):
            px, py = frame(xy)
            out.append(f'<text x="{_f(px + LABEL_OFFSET[0])}" y="{_f(py + LABEL_OFFSET[1])}" '
                       f'font-family="sans-serif" font-size="10" fill="{color}">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_atomic(path, payload: bytes):
    """Write via a temp file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    try:
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except OSError as exc:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise IoError(f"cannot write {path}: {exc}") from exc


def emit_svg(spec: BiplotSpec, path):
    write_atomic(path, render_svg(spec).encode("utf-8"))
