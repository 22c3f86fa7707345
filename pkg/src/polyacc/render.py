"""Images of the disk as circle and ray polylines, with SVG and CSV output."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable
from xml.sax.saxutils import escape

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class RenderSpec:
    n_circles: int = 24
    n_rays: int = 24
    samples_per_curve: int = 512
    r_max: float = 0.99
    canvas: int = 800
    stroke_width: float = 0.75

    def __post_init__(self):
        if self.samples_per_curve < 64:
            raise ValueError("samples_per_curve must be at least 64")
        if not 0 < self.r_max < 1:
            raise ValueError("r_max must lie in (0, 1)")
        if self.n_circles < 1 or self.n_rays < 0:
            raise ValueError("need at least one circle and a nonnegative ray count")


@dataclass
class Polyline:
    kind: str  # "circle" or "ray"
    param: float  # radius or angle
    points: np.ndarray


@dataclass
class Rendering:
    polylines: list
    bbox: tuple  # (xmin, xmax, ymin, ymax)

    @property
    def max_modulus(self):
        return float(max(np.max(np.abs(p.points)) for p in self.polylines))


def _bbox(polylines):
    pts = np.concatenate([p.points for p in polylines])
    return (float(pts.real.min()), float(pts.real.max()), float(pts.imag.min()), float(pts.imag.max()))


def render_image(func: Callable, rs: RenderSpec | None = None) -> Rendering:
    """Sample F on circles r_j = r_max j / n_circles and on rays
    theta_i = 2 pi i / n_rays.

    Circles are sampled at theta_s = 2 pi s / S (open curves, closed when
    drawn); rays at r = r_max s / (S - 1), starting from the origin.
    """
    rs = rs or RenderSpec()
    S = rs.samples_per_curve
    th = 2 * np.pi * np.arange(S) / S
    c, s = np.cos(th), np.sin(th)
    lines = []
    for j in range(1, rs.n_circles + 1):
        r = rs.r_max * j / rs.n_circles
        z = r * c + 1j * (r * s)
        lines.append(Polyline("circle", r, np.asarray(func(z), dtype=complex)))
    radii = rs.r_max * np.arange(S) / (S - 1)
    for i in range(rs.n_rays):
        a = 2 * np.pi * i / rs.n_rays
        z = radii * math.cos(a) + 1j * (radii * math.sin(a))
        lines.append(Polyline("ray", a, np.asarray(func(z), dtype=complex)))
    for pl in lines:
        if not np.all(np.isfinite(pl.points)):
            raise DomainError(f"non-finite image on {pl.kind} {pl.param!r}")
    return Rendering(lines, _bbox(lines))


def _fmt(v):
    return f"{v:.6g}"


def svg_document(rendering: Rendering, rs: RenderSpec | None = None, title=None) -> str:
    """SVG 1.1 text with one polyline per curve.

    The viewBox is the bounding box padded by 5 % and a y-flip transform
    keeps counterclockwise curves counterclockwise on screen.
    """
    rs = rs or RenderSpec()
    xmin, xmax, ymin, ymax = rendering.bbox
    w, h = max(xmax - xmin, 1e-12), max(ymax - ymin, 1e-12)
    pad = 0.05 * max(w, h)
    vx, vy = xmin - pad, -(ymax + pad)
    vw, vh = w + 2 * pad, h + 2 * pad
    width = rs.canvas
    height = max(1, int(round(rs.canvas * vh / vw)))
    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="{_fmt(vx)} {_fmt(vy)} {_fmt(vw)} {_fmt(vh)}">',
    ]
    if title:
        out.append(f"<title>{escape(title)}</title>")
    out.append(
        f'<g transform="scale(1,-1)" fill="none" stroke="black" stroke-width="{rs.stroke_width}" '
        'vector-effect="non-scaling-stroke">'
    )
    for pl in rendering.polylines:
        pts = pl.points
        if pl.kind == "circle":
            pts = np.append(pts, pts[:1])
        coords = " ".join(f"{_fmt(p.real)},{_fmt(p.imag)}" for p in pts)
        out.append(f'<polyline class="{pl.kind}" vector-effect="non-scaling-stroke" points="{coords}"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_svg(rendering: Rendering, path, rs: RenderSpec | None = None, title=None):
    if not rendering.polylines:
        raise ValueError("nothing to draw")
    path = Path(path)
    try:
        path.write_text(svg_document(rendering, rs, title), encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write SVG to {path}: {exc.strerror}") from exc
    return path


def emit_csv(rendering: Rendering, path):
    """Write columns curve_id, sample_index, re, im with repr floats."""
    if not rendering.polylines:
        raise ValueError("nothing to write")
    path = Path(path)
    try:
        with path.open("w", newline="", encoding="utf-8") as fh:
            wr = csv.writer(fh)
            wr.writerow(["curve_id", "sample_index", "re", "im"])
            for cid, pl in enumerate(rendering.polylines):
                for k, p in enumerate(pl.points):
                    wr.writerow([cid, k, repr(float(p.real)), repr(float(p.imag))])
    except OSError as exc:
        raise OSError(f"cannot write CSV to {path}: {exc.strerror}") from exc
    return path


def read_csv(path):
    """Curves from :func:`emit_csv` as a list of complex arrays."""
    curves: dict = {}
    with Path(path).open(newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            curves.setdefault(int(row["curve_id"]), []).append(complex(float(row["re"]), float(row["im"])))
    return [np.asarray(curves[k]) for k in sorted(curves)]


def composite_svg(panels, path, columns=2, rs: RenderSpec | None = None):
    """Several renderings side by side, each scaled into its own cell."""
    rs = rs or RenderSpec()
    cell = rs.canvas // columns
    rows = math.ceil(len(panels) / columns)
    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{cell * columns}" height="{cell * rows}">',
    ]
    for idx, (title, rendering) in enumerate(panels):
        xmin, xmax, ymin, ymax = rendering.bbox
        span = max(xmax - xmin, ymax - ymin, 1e-12) * 1.1
        cx, cy = (xmin + xmax) / 2, (ymin + ymax) / 2
        s = cell / span
        ox, oy = (idx % columns) * cell + cell / 2, (idx // columns) * cell + cell / 2
        out.append(
            f'<g transform="translate({_fmt(ox)},{_fmt(oy)}) scale({_fmt(s)},{_fmt(-s)}) '
            f'translate({_fmt(-cx)},{_fmt(-cy)})" fill="none" stroke="black">'
        )
        out.append(f"<title>{escape(title)}</title>")
        for pl in rendering.polylines:
            pts = np.append(pl.points, pl.points[:1]) if pl.kind == "circle" else pl.points
            coords = " ".join(f"{_fmt(p.real)},{_fmt(p.imag)}" for p in pts)
            out.append(
                f'<polyline vector-effect="non-scaling-stroke" stroke-width="{rs.stroke_width}" points="{coords}"/>'
            )
        out.append("</g>")
    out.append("</svg>")
    Path(path).write_text("\n".join(out) + "\n", encoding="utf-8")
    return Path(path)
