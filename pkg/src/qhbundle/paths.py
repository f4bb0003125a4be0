"""Piecewise-linear paths on CP^n with explicit chart junctions.

A path is a sequence of segments, each a polyline of affine points in a
single chart.  Where the chart changes, the last point of one segment and
the first point of the next describe the same point of CP^n.  Charts are
never switched automatically.

File format (JSON): ``[{"chart": k, "points": [...]}, ...]``.  For ``n = 1``
each point is ``[re, im]``; for ``n > 1`` it is a list of ``n`` such pairs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .atlas import AffineCoords, check_chart, to_projective, transition
from .errors import ChartExcluded, DomainError, PathDiscontinuous

__all__ = [
    "JUNCTION_TOL",
    "PathSegment",
    "PhaseSpacePath",
    "square_loop",
    "circle_loop",
    "equator_loop",
    "half_equators",
    "loop_area",
    "path_to_json",
    "path_from_json",
    "load_path",
    "dump_path",
]

JUNCTION_TOL = 1e-10


@dataclass(frozen=True)
class PathSegment:
    chart: int
    points: np.ndarray  # shape (m, n), m >= 1

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=complex)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2 or pts.shape[0] < 1 or pts.shape[1] < 1:
            raise DomainError("segment points must have shape (m, n) with m, n >= 1")
        if not np.all(np.isfinite(pts)):
            raise DomainError("segment points must be finite")
        check_chart(self.chart, pts.shape[1])
        pts = pts.copy()
        pts.setflags(write=False)
        object.__setattr__(self, "chart", int(self.chart))
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return self.points.shape[1]

    def point(self, i: int) -> AffineCoords:
        return AffineCoords(self.chart, self.points[i])

    def edges(self):
        return zip(self.points[:-1], self.points[1:])


class PhaseSpacePath:
    """An ordered list of :class:`PathSegment` joined at chart junctions.

    Raises
    ------
    PathDiscontinuous
        If consecutive segments do not meet within :data:`JUNCTION_TOL`.
    """

    def __init__(self, segments: Sequence[PathSegment | tuple] = (), n: int | None = None):
        segs = tuple(s if isinstance(s, PathSegment) else PathSegment(*s) for s in segments)
        if segs:
            dims = {s.n for s in segs}
            if len(dims) != 1 or (n is not None and dims != {n}):
                raise DomainError("all segments must share the same dimension n")
            n = dims.pop()
        self.segments = segs
        self.n = n
        for prev, nxt in zip(segs[:-1], segs[1:]):
            end = prev.point(-1)
            try:
                moved = transition(end, nxt.chart)
            except ChartExcluded as exc:
                raise PathDiscontinuous(f"junction point not in chart {nxt.chart}") from exc
            gap = np.max(np.abs(moved.z - nxt.points[0]))
            if gap > JUNCTION_TOL * (1.0 + np.max(np.abs(moved.z))):
                raise PathDiscontinuous(f"segments do not meet at junction (gap {gap:.3g})")

    def __len__(self):
        return len(self.segments)

    def __repr__(self):
        desc = ", ".join(f"chart {s.chart}: {s.points.shape[0]} pts" for s in self.segments)
        return f"PhaseSpacePath([{desc}])"

    @property
    def start(self) -> AffineCoords:
        return self.segments[0].point(0)

    @property
    def end(self) -> AffineCoords:
        return self.segments[-1].point(-1)

    @property
    def is_closed(self) -> bool:
        if not self.segments:
            return True
        return to_projective(self.start) == to_projective(self.end)

    def reversed(self) -> "PhaseSpacePath":
        return PhaseSpacePath(
            [PathSegment(s.chart, s.points[::-1]) for s in self.segments[::-1]], n=self.n
        )

    def __add__(self, other: "PhaseSpacePath") -> "PhaseSpacePath":
        if not self.segments:
            return other
        if not other.segments:
            return self
        a, b = self.segments[-1], other.segments[0]
        if a.chart == b.chart:
            if np.max(np.abs(a.points[-1] - b.points[0])) > JUNCTION_TOL * (1 + np.max(np.abs(b.points[0]))):
                raise PathDiscontinuous("paths do not meet")
            merged = PathSegment(a.chart, np.vstack([a.points, b.points[1:]]))
            return PhaseSpacePath(self.segments[:-1] + (merged,) + other.segments[1:])
        return PhaseSpacePath(self.segments + other.segments)


def _embed(z1: np.ndarray, center, n: int, direction: int) -> np.ndarray:
    c = np.zeros(n, dtype=complex) if center is None else np.atleast_1d(np.asarray(center, dtype=complex))
    if c.size != n:
        raise DomainError("center must have n entries")
    pts = np.tile(c, (z1.size, 1))
    pts[:, direction] += z1
    return pts


def square_loop(side: float, center=None, n: int = 1, chart: int = 1,
                direction: int = 0, points_per_edge: int = 1) -> PhaseSpacePath:
    """Counterclockwise square of the given side in the ``direction``-th coordinate plane."""
    h = side / 2.0
    corners = np.array([-h - 1j * h, h - 1j * h, h + 1j * h, -h + 1j * h, -h - 1j * h])
    m = max(int(points_per_edge), 1)
    t = np.arange(m) / m
    z1 = np.concatenate([a + t * (b - a) for a, b in zip(corners[:-1], corners[1:])] + [corners[-1:]])
    return PhaseSpacePath([PathSegment(chart, _embed(z1, center, n, direction))])


def circle_loop(radius: float, center=None, num: int = 1000, n: int = 1,
                chart: int = 1, direction: int = 0) -> PhaseSpacePath:
    """Counterclockwise inscribed polygon with ``num`` vertices on a coordinate circle."""
    theta = 2 * np.pi * np.arange(num + 1) / num
    z1 = radius * np.exp(1j * theta)
    z1[-1] = z1[0]
    return PhaseSpacePath([PathSegment(chart, _embed(z1, center, n, direction))])


def equator_loop(num: int = 1000, n: int = 1) -> PhaseSpacePath:
    """The circle ``|Z^1| = |Z^2|`` of the first projective line, in chart 1."""
    return circle_loop(1.0, num=num, n=n)


def half_equators(num: int = 1000, n: int = 1) -> tuple[PhaseSpacePath, PhaseSpacePath]:
    """Two paths from ``z = 1`` to the antipodal point ``z = -1`` along the equator.

    The first passes through ``z = i``, the second through ``z = -i``.
    """
    half = max(num // 2, 1)
    theta = np.pi * np.arange(half + 1) / half
    upper = np.exp(1j * theta)
    lower = np.exp(-1j * theta)
    upper[-1] = lower[-1] = -1.0
    return (
        PhaseSpacePath([PathSegment(1, _embed(upper, None, n, 0))]),
        PhaseSpacePath([PathSegment(1, _embed(lower, None, n, 0))]),
    )


def loop_area(path: PhaseSpacePath) -> float | None:
    r"""Symplectic flux through a path, :math:`\oint \mathrm{Im}(\bar z\cdot dz)/(1+|z|^2)`.

    All points are mapped to the chart of the first segment; ``None`` is
    returned if that is impossible.  Each straight edge is integrated with
    Gauss-Legendre quadrature.  Positive for counterclockwise loops.
    """
    if not path.segments:
        return 0.0
    k = path.segments[0].chart
    try:
        pts = np.vstack([
            seg.points if seg.chart == k else
            np.array([transition(seg.point(i), k).z for i in range(seg.points.shape[0])])
            for seg in path.segments
        ])
    except ChartExcluded:
        return None
    x, w = np.polynomial.legendre.leggauss(20)
    t = 0.5 * (x + 1.0)
    total = 0.0
    for za, zb in zip(pts[:-1], pts[1:]):
        d = zb - za
        z = za[None, :] + t[:, None] * d[None, :]
        num = np.imag(z.conj() @ d)
        total += 0.5 * float(np.sum(w * num / (1.0 + np.sum(np.abs(z) ** 2, axis=1))))
    return total


def _point_to_json(z: np.ndarray):
    pairs = [[float(v.real), float(v.imag)] for v in z]
    return pairs[0] if len(pairs) == 1 else pairs


def path_to_json(path: PhaseSpacePath) -> list:
    return [
        {"chart": s.chart, "points": [_point_to_json(p) for p in s.points]}
        for s in path.segments
    ]


def path_from_json(data) -> PhaseSpacePath:
    segs = []
    for entry in data:
        pts = []
        for p in entry["points"]:
            arr = np.asarray(p, dtype=float)
            if arr.ndim == 1:
                arr = arr[None, :]
            if arr.ndim != 2 or arr.shape[1] != 2:
                raise DomainError(f"malformed point {p!r}")
            pts.append(arr[:, 0] + 1j * arr[:, 1])
        segs.append(PathSegment(int(entry["chart"]), np.array(pts)))
    return PhaseSpacePath(segs)


def load_path(fname) -> PhaseSpacePath:
    with open(fname) as fh:
        return path_from_json(json.load(fh))


def dump_path(path: PhaseSpacePath, fname) -> None:
    with open(fname, "w") as fh:
        json.dump(path_to_json(path), fh)
