r"""Fubini-Study geometry of CP^n in a single affine chart.

Index conventions
-----------------
``metric(a)[i, j]`` is :math:`g_{i\bar j} = \partial_i \bar\partial_j K` with
:math:`K = \log(1 + |z|^2)`.  ``inverse_metric(a)[i, j]`` is
:math:`g^{i\bar j}`, defined by :math:`\sum_l g^{i\bar l} g_{k\bar l} = \delta_{ik}`.
``christoffel(a)[i, j, k]`` is :math:`\Gamma^i_{jk}` and
``curvature(a)[i, j, k, l]`` is :math:`R^i_{jk\bar l} = -\bar\partial_l \Gamma^i_{jk}`.

The symplectic form is :math:`\omega = i\partial\bar\partial K`, which gives
CP^1 total area :math:`2\pi`; the Gaussian curvature of CP^1 is then +4.
"""

from __future__ import annotations

import numpy as np
from scipy import integrate

from .atlas import AffineCoords
from .errors import DomainError, QuadratureFailure

__all__ = [
    "kahler_potential",
    "quadratic_approximation",
    "metric",
    "inverse_metric",
    "christoffel",
    "curvature",
    "lowered_curvature",
    "symplectic_form",
    "gaussian_curvature",
    "cp1_area",
]


def _z(a) -> np.ndarray:
    if isinstance(a, AffineCoords):
        return a.z
    return np.atleast_1d(np.asarray(a, dtype=complex))


def _s(z: np.ndarray) -> float:
    return float(np.sum(np.abs(z) ** 2))


def kahler_potential(a) -> float:
    """``log(1 + sum |z^j|^2)``."""
    return float(np.log1p(_s(_z(a))))


def quadratic_approximation(a) -> float:
    """Leading Taylor term ``sum |z^j|^2`` of the Kähler potential."""
    return _s(_z(a))


def metric(a) -> np.ndarray:
    z = _z(a)
    s1 = 1.0 + _s(z)
    return (s1 * np.eye(z.size) - np.outer(z.conj(), z)) / s1**2


def inverse_metric(a) -> np.ndarray:
    z = _z(a)
    s1 = 1.0 + _s(z)
    return s1 * (np.eye(z.size) + np.outer(z, z.conj()))


def christoffel(a) -> np.ndarray:
    """Chern (= Levi-Civita) connection coefficients, symmetric in ``j, k``."""
    z = _z(a)
    n = z.size
    s1 = 1.0 + _s(z)
    eye = np.eye(n)
    zb = z.conj()
    # -(delta^i_j zbar_k + delta^i_k zbar_j) / (1 + |z|^2)
    gam = eye[:, :, None] * zb[None, None, :]
    return -(gam + gam.transpose(0, 2, 1)) / s1


def curvature(a) -> np.ndarray:
    z = _z(a)
    n = z.size
    s1 = 1.0 + _s(z)
    eye = np.eye(n)
    zb = z.conj()
    dd = eye[:, :, None, None] * eye[None, None, :, :]  # d^i_j d_kl
    dd = dd + dd.transpose(0, 2, 1, 3)
    dz = eye[:, :, None, None] * zb[None, None, :, None] * z[None, None, None, :]
    dz = dz + dz.transpose(0, 2, 1, 3)
    return dd / s1 - dz / s1**2


def lowered_curvature(a) -> np.ndarray:
    r"""``R[i, j, k, l]`` = :math:`R_{i\bar j k\bar l} = g_{m\bar j} R^m_{ik\bar l}`."""
    return np.einsum("mj,mikl->ijkl", metric(a), curvature(a))


def symplectic_form(a) -> np.ndarray:
    r"""Coefficients of :math:`\omega = w_{i\bar j}\, dz^i\wedge d\bar z^j`, i.e. ``i * metric``."""
    return 1j * metric(a)


def gaussian_curvature(a) -> float:
    """Gaussian curvature of CP^1 at ``a`` (constant 4 for Fubini-Study)."""
    z = _z(a)
    if z.size != 1:
        raise DomainError("Gaussian curvature is defined here for n = 1 only")
    return float(2.0 * curvature(z)[0, 0, 0, 0].real / metric(z)[0, 0].real)


def cp1_area(epsabs: float = 1e-10, epsrel: float = 1e-10) -> float:
    r"""Total symplectic area of CP^1 by adaptive quadrature.

    The sphere is split along ``|w| = 1`` into the unit disks of charts 1
    and 2.  On each disk :math:`\omega = 2\, g_{1\bar 1}\, dx\wedge dy`.
    """
    total = 0.0
    for chart in (1, 2):
        def density(r, theta, chart=chart):
            w = AffineCoords(chart, [r * np.exp(1j * theta)])
            return (symplectic_form(w)[0, 0] * -2j).real * r

        val, err = integrate.dblquad(
            density, 0.0, 2 * np.pi, 0.0, 1.0, epsabs=epsabs, epsrel=epsrel
        )
        if not np.isfinite(val) or err > max(epsabs, epsrel * abs(val)) * 100:
            raise QuadratureFailure(f"area quadrature on chart {chart}: error {err:g}")
        total += val
    return total
