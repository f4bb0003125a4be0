"""Homogeneous coordinates on CP^n and the standard atlas of affine charts.

Charts are numbered ``1..n+1``; chart ``k`` is the open set ``Z^k != 0``
with coordinates ``z^j = Z^j / Z^k`` for ``j != k``, listed in increasing
``j``.  All functions are pure and operate on immutable values.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ChartExcluded, DomainError

__all__ = [
    "CHART_TOL",
    "EQUALITY_RTOL",
    "ProjectivePoint",
    "AffineCoords",
    "check_chart",
    "normalize",
    "preferred_chart",
    "to_affine",
    "to_projective",
    "transition",
    "jacobian",
    "homogeneous",
    "in_chart",
]

CHART_TOL = 1e-10
EQUALITY_RTOL = 1e-10
# components whose modulus is this close to the maximum count as tied
_TIE_RTOL = 1e-12


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=complex)
    arr.setflags(write=False)
    return arr


def _lead_index(Z: np.ndarray) -> int:
    mod = np.abs(Z)
    top = mod.max()
    return int(np.flatnonzero(mod >= top * (1.0 - _TIE_RTOL))[0])


def normalize(Z) -> np.ndarray:
    """Rescale homogeneous coordinates so the leading component is exactly 1.

    The leading component is the one of largest modulus, ties going to the
    lowest index.
    """
    Z = np.asarray(Z, dtype=complex)
    if Z.ndim != 1 or Z.size < 2:
        raise DomainError("homogeneous coordinates need at least two entries")
    if not np.all(np.isfinite(Z)):
        raise DomainError("homogeneous coordinates must be finite")
    if not np.any(Z != 0):
        raise DomainError("homogeneous coordinates cannot all vanish")
    i = _lead_index(Z)
    out = Z / Z[i]
    out[i] = 1.0
    return out


class ProjectivePoint:
    """A point of CP^n stored in canonical normalized form.

    Parameters
    ----------
    homogeneous : array_like
        ``n + 1`` complex numbers, not all zero.  Any nonzero multiple
        describes the same point.
    """

    __slots__ = ("_Z",)

    def __init__(self, homogeneous):
        self._Z = _frozen(normalize(homogeneous))

    @property
    def homogeneous(self) -> np.ndarray:
        return self._Z

    @property
    def n(self) -> int:
        return self._Z.size - 1

    def __eq__(self, other):
        if not isinstance(other, ProjectivePoint):
            return NotImplemented
        if other.n != self.n:
            return False
        return bool(np.all(np.abs(self._Z - other._Z) <= EQUALITY_RTOL))

    __hash__ = None

    def __repr__(self):
        return f"ProjectivePoint({np.array2string(self._Z, precision=6)})"


@dataclass(frozen=True)
class AffineCoords:
    """Coordinates ``z`` of a point in chart ``chart`` (1-based).

    ``z`` has ``n`` entries, ``Z^j / Z^chart`` for ``j != chart`` in
    increasing ``j``.
    """

    chart: int
    z: np.ndarray = field(repr=True)

    def __post_init__(self):
        z = np.atleast_1d(np.asarray(self.z, dtype=complex))
        if z.ndim != 1 or z.size < 1:
            raise DomainError("affine coordinates need n >= 1 entries")
        if not np.all(np.isfinite(z)):
            raise DomainError("affine coordinates must be finite")
        check_chart(self.chart, z.size)
        object.__setattr__(self, "chart", int(self.chart))
        object.__setattr__(self, "z", _frozen(z))

    @property
    def n(self) -> int:
        return self.z.size

    def __eq__(self, other):
        if not isinstance(other, AffineCoords):
            return NotImplemented
        return (
            self.chart == other.chart
            and self.n == other.n
            and bool(np.allclose(self.z, other.z, rtol=EQUALITY_RTOL, atol=EQUALITY_RTOL))
        )

    __hash__ = None


def check_chart(k: int, n: int) -> int:
    """Validate a 1-based chart index on CP^n."""
    if int(k) != k or not 1 <= k <= n + 1:
        raise DomainError(f"chart index {k} outside 1..{n + 1}")
    return int(k)


def _others(k: int, n: int) -> np.ndarray:
    """0-based homogeneous indices of the affine coordinates of chart ``k``."""
    return np.delete(np.arange(n + 1), k - 1)


def homogeneous(a: AffineCoords) -> np.ndarray:
    """Unnormalized homogeneous coordinates with ``Z^chart = 1``."""
    Z = np.empty(a.n + 1, dtype=complex)
    Z[a.chart - 1] = 1.0
    Z[_others(a.chart, a.n)] = a.z
    return Z


def in_chart(Z, k: int) -> bool:
    """Whether homogeneous coordinates ``Z`` lie in chart ``k`` (with tolerance)."""
    Z = np.asarray(Z, dtype=complex)
    return bool(np.abs(Z[k - 1]) >= CHART_TOL * np.abs(Z).max())


def preferred_chart(p: ProjectivePoint) -> int:
    """The chart in which ``p`` is best conditioned: its leading component."""
    return _lead_index(p.homogeneous) + 1


def to_affine(p: ProjectivePoint, k: int) -> AffineCoords:
    """Coordinates of ``p`` in chart ``k``.

    Raises
    ------
    ChartExcluded
        If ``|Z^k|`` of the normalized point is below :data:`CHART_TOL`.
    """
    if not isinstance(p, ProjectivePoint):
        p = ProjectivePoint(p)
    check_chart(k, p.n)
    Z = p.homogeneous
    if not in_chart(Z, k):
        raise ChartExcluded(f"point lies at infinity of chart {k}")
    return AffineCoords(k, Z[_others(k, p.n)] / Z[k - 1])


def to_projective(a: AffineCoords) -> ProjectivePoint:
    return ProjectivePoint(homogeneous(a))


def transition(a: AffineCoords, j: int) -> AffineCoords:
    """Re-express ``a`` in chart ``j`` using the rational change of coordinates."""
    check_chart(j, a.n)
    if j == a.chart:
        return a
    Z = homogeneous(a)
    if not in_chart(Z, j):
        raise ChartExcluded(f"point lies at infinity of chart {j}")
    return AffineCoords(j, Z[_others(j, a.n)] / Z[j - 1])


def jacobian(a: AffineCoords, j: int) -> np.ndarray:
    """Holomorphic Jacobian ``d z_(j) / d z_(k)`` of the chart change ``k -> j``.

    Row ``r`` is the ``r``-th coordinate of chart ``j``, column ``c`` the
    ``c``-th coordinate of the source chart ``k = a.chart``.
    """
    check_chart(j, a.n)
    n, k = a.n, a.chart
    if j == k:
        return np.eye(n, dtype=complex)
    Z = homogeneous(a)
    if not in_chart(Z, j):
        raise ChartExcluded(f"point lies at infinity of chart {j}")
    rows = _others(j, n)  # target coordinates w_i = Z^i / Z^j
    cols = _others(k, n)  # source coordinates z_m = Z^m
    Zj = Z[j - 1]
    J = (rows[:, None] == cols[None, :]) / Zj + 0j
    # Z^j itself is one of the source coordinates
    m = int(np.flatnonzero(cols == j - 1)[0])
    J[:, m] -= Z[rows] / Zj**2
    return J
