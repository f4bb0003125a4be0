r"""Holomorphic line bundles :math:`\tau^l` over CP^n.

A local section in chart ``k`` is a complex amplitude ``s_k``.  Amplitudes
in two charts are related by ``s_j = transition_factor(a, j, l) * s_k``
with factor ``(Z^k / Z^j)^l``, and the fiber metric :math:`h_l = (1+|z|^2)^{-l}`
makes ``h |s|^2`` chart independent.  With these choices the Chern number of
:math:`\tau^l` is ``+l``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import integrate

from . import fubini_study as fs
from .atlas import AffineCoords, homogeneous, in_chart, check_chart
from .errors import ChartExcluded, DomainError, QuadratureFailure

__all__ = [
    "LineBundle",
    "SectionValue",
    "transition_factor",
    "fiber_metric",
    "chern_connection",
    "curvature_form",
    "chern_number",
    "transport_phase",
]


@dataclass(frozen=True)
class LineBundle:
    """The bundle ``tau^l``; ``l = 0`` is trivial, ``l = -1`` tautological."""

    l: int

    def __post_init__(self):
        if int(self.l) != self.l:
            raise DomainError("Picard class must be an integer")

    def transition_factor(self, a, j):
        return transition_factor(a, j, self.l)

    def fiber_metric(self, a):
        return fiber_metric(a, self.l)

    def chern_connection(self, a):
        return chern_connection(a, self.l)

    def curvature_form(self, a):
        return curvature_form(a, self.l)

    def chern_number(self, **kw):
        return chern_number(self.l, **kw)


@dataclass(frozen=True)
class SectionValue:
    """Amplitude of a local section at a point, in the trivialization of ``point.chart``."""

    point: AffineCoords
    value: complex
    l: int

    def to_chart(self, j: int) -> "SectionValue":
        from .atlas import transition

        t = transition_factor(self.point, j, self.l)
        return SectionValue(transition(self.point, j), t * self.value, self.l)

    def norm_squared(self) -> float:
        return fiber_metric(self.point, self.l) * abs(self.value) ** 2


def transition_factor(a: AffineCoords, j: int, l: int) -> complex:
    """Multiplier ``(Z^k / Z^j)^l`` taking chart-``k`` amplitudes to chart ``j``."""
    check_chart(j, a.n)
    if j == a.chart or l == 0:
        return 1.0 + 0j
    Z = homogeneous(a)
    if not in_chart(Z, j):
        raise ChartExcluded(f"point lies at infinity of chart {j}")
    return complex((Z[a.chart - 1] / Z[j - 1]) ** l)


def fiber_metric(a, l: int) -> float:
    return float((1.0 + fs.quadratic_approximation(a)) ** (-l))


def chern_connection(a, l: int) -> np.ndarray:
    r"""Connection coefficients :math:`A_i = \partial_i \log h_l`."""
    z = fs._z(a)
    return -l * z.conj() / (1.0 + fs._s(z))


def curvature_form(a, l: int) -> np.ndarray:
    r""":math:`F_{i\bar j} = \bar\partial_j \partial_i \log h_l = -l\, g_{i\bar j}`."""
    return -l * fs.metric(a)


def chern_number(l: int, n: int = 1, epsabs: float = 1e-10, epsrel: float = 1e-10) -> float:
    r"""First Chern number :math:`\frac{i}{2\pi}\int F` over a projective line.

    The line is ``Z^3 = ... = Z^{n+1} = 0``, covered by the unit disks of
    charts 1 and 2.  With :math:`F = F_{1\bar 1}\, d\bar z\wedge dz` the
    integrand is :math:`-F_{1\bar 1}/\pi` per unit Euclidean area.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    total = 0.0
    for chart in (1, 2):
        def density(r, theta, chart=chart):
            z = np.zeros(n, dtype=complex)
            z[0] = r * np.exp(1j * theta)
            F = curvature_form(AffineCoords(chart, z), l)
            return -F[0, 0].real / np.pi * r

        val, err = integrate.dblquad(
            density, 0.0, 2 * np.pi, 0.0, 1.0, epsabs=epsabs, epsrel=epsrel
        )
        if not np.isfinite(val) or err > 100 * max(epsabs, epsrel * abs(val)):
            raise QuadratureFailure(f"Chern quadrature on chart {chart}: error {err:g}")
        total += val
    return total


def transport_phase(points, l: int) -> complex:
    """Parallel-transport multiplier of a section along a polyline in one chart.

    Each straight edge is integrated with 20-point Gauss-Legendre
    quadrature of ``A_i dz^i``; the result is ``exp(-sum)``.
    """
    pts = np.asarray(points, dtype=complex)
    if pts.ndim == 1:
        pts = pts[:, None]
    x, wts = np.polynomial.legendre.leggauss(20)
    t = 0.5 * (x + 1.0)
    total = 0.0 + 0j
    for za, zb in zip(pts[:-1], pts[1:]):
        d = zb - za
        z = za[None, :] + t[:, None] * d[None, :]
        A = -l * z.conj() / (1.0 + np.sum(np.abs(z) ** 2, axis=1))[:, None]
        total += 0.5 * np.sum(wts * (A @ d))
    return complex(np.exp(-total))
