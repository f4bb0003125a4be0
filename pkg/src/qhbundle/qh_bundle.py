r"""Quantum Hilbert-space bundles over CP^n.

Fiber bases
-----------
``l = 1``
    Index 0 is the vacuum, indices ``1..n`` are the excitations along the
    chart coordinates.  Transitions are ``t(tau) (+) jacobian``; the fiber
    metric is ``h_1 (+) g^T`` and the connection is the line-bundle Chern
    connection on the vacuum plus the Fubini-Study Christoffel symbols on
    the excitations.
``l >= 2``
    Basis states are the ``n``-subsets of ``{1..n+l}`` in lexicographic
    order (see :mod:`qhbundle.picard`).  Everything is the ``n``-th exterior
    power of the data on ``C^{n+l} = T (+) C^l`` (identity on the ``l``
    extra directions), twisted by ``tau^c`` with ``c = twist_exponent(l)``.
``l = 0``
    The trivial line.
``l = -1``
    The dual of the ``l = 1`` bundle: inverse-transpose transitions,
    connection ``-C^T``, metric ``conj(H^{-1})``.

Amplitude vectors transform as ``s_j = T s_k`` and the fiber inner product
is ``<u, v> = u^H H v``, so ``H_k = T^H H_j T``.  Transport solves
``ds/dt = -sum_i zdot^i C_i(z) s``.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import fubini_study as fs
from . import line_bundle as lb
from .atlas import (
    AffineCoords,
    ProjectivePoint,
    jacobian,
    preferred_chart,
    to_affine,
    to_projective,
)
from .errors import (
    ChartMismatch,
    DomainError,
    PathDiscontinuous,
    StepFailure,
    UnsupportedPicardClass,
)
from .paths import PhaseSpacePath

__all__ = [
    "TRANSPORT_TOL",
    "QHFiberState",
    "TransitionMatrix",
    "HolonomyResult",
    "fiber_dimension",
    "fiber_labels",
    "twist_exponent",
    "exterior_power",
    "exterior_derivation",
    "transition_matrix",
    "fiber_metric_matrix",
    "fiber_inner_product",
    "connection_matrix",
    "transport_matrix",
    "parallel_transport",
    "holonomy",
    "duality_map",
]

TRANSPORT_TOL = 1e-9
_MAX_HALVINGS = 16


def _check_l(l: int) -> int:
    if int(l) != l:
        raise DomainError("Picard class must be an integer")
    if l < -1:
        raise UnsupportedPicardClass(f"no QH fiber construction for l = {l}")
    return int(l)


def fiber_dimension(n: int, l: int) -> int:
    """``binom(n+l, n)`` for ``l >= 1``; 1 for ``l = 0``; ``n + 1`` for ``l = -1``."""
    if int(n) != n or n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    l = _check_l(l)
    if l == 0:
        return 1
    if l == -1:
        return n + 1
    return math.comb(n + l, n)


def twist_exponent(l: int) -> int:
    """Line-bundle twist ``c(l)`` applied to the exterior-power fiber."""
    return l


@functools.lru_cache(maxsize=None)
def _subsets(N: int, k: int) -> tuple[tuple[int, ...], ...]:
    return tuple(itertools.combinations(range(N), k))


def fiber_labels(n: int, l: int) -> list[str]:
    """Human-readable names of the fiber basis vectors, in fiber order."""
    l = _check_l(l)
    if l == 0:
        return ["|0>"]
    if abs(l) == 1:
        names = ["|0>"] + [f"A{i}+|0>" for i in range(1, n + 1)]
        return names if l == 1 else ["<0|"] + [f"<0|A{i}" for i in range(1, n + 1)]
    return ["{" + ",".join(str(i + 1) for i in s) + "}" for s in _subsets(n + l, n)]


def exterior_power(M: np.ndarray, k: int) -> np.ndarray:
    """``k``-th exterior power of a square matrix in the lexicographic subset basis.

    Entry ``[S, T]`` is the minor ``det M[S, T]``.
    """
    M = np.asarray(M)
    N = M.shape[0]
    if k == 0:
        return np.ones((1, 1), dtype=M.dtype)
    idx = np.array(_subsets(N, k))
    sub = M[idx[:, None, :, None], idx[None, :, None, :]]
    return np.linalg.det(sub)


@functools.lru_cache(maxsize=None)
def _derivation_table(N: int, k: int):
    subs = _subsets(N, k)
    where = {s: i for i, s in enumerate(subs)}
    out_i, in_i, rows, cols, signs = [], [], [], [], []
    for si, s in enumerate(subs):
        for p, c in enumerate(s):
            for r in range(N):
                if r != c and r in s:
                    continue
                new = list(s)
                new[p] = r
                # parity of the sorting permutation
                perm = np.argsort(new)
                inv = sum(1 for a in range(k) for b in range(a + 1, k) if perm[a] > perm[b])
                out_i.append(where[tuple(sorted(new))])
                in_i.append(si)
                rows.append(r)
                cols.append(c)
                signs.append(-1.0 if inv % 2 else 1.0)
    return tuple(np.array(v) for v in (out_i, in_i, rows, cols, signs)), len(subs)


def exterior_derivation(X: np.ndarray, k: int) -> np.ndarray:
    """Action of the Lie-algebra element ``X`` on the ``k``-th exterior power.

    This is ``d/de exterior_power(I + e X, k)`` at ``e = 0``.
    """
    X = np.asarray(X)
    N = X.shape[0]
    (out_i, in_i, rows, cols, signs), d = _derivation_table(N, k)
    D = np.zeros((d, d), dtype=np.result_type(X.dtype, float))
    np.add.at(D, (out_i, in_i), signs * X[rows, cols])
    return D


def _block(a00, rest: np.ndarray) -> np.ndarray:
    d = rest.shape[0] + 1
    out = np.zeros((d, d), dtype=complex)
    out[0, 0] = a00
    out[1:, 1:] = rest
    return out


def _extend(M: np.ndarray, l: int) -> np.ndarray:
    n = M.shape[0]
    out = np.zeros((n + l, n + l), dtype=complex)
    out[:n, :n] = M
    return out


@dataclass(frozen=True)
class TransitionMatrix:
    from_chart: int
    to_chart: int
    matrix: np.ndarray

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)

    def apply(self, s: "QHFiberState") -> "QHFiberState":
        if s.chart != self.from_chart:
            raise ChartMismatch(f"state in chart {s.chart}, matrix from chart {self.from_chart}")
        return QHFiberState(self.to_chart, s.picard, self.matrix @ s.amplitudes)


def _transition(a: AffineCoords, j: int, l: int) -> np.ndarray:
    n = a.n
    if l == 0:
        return np.ones((1, 1), dtype=complex)
    if l == 1:
        return _block(lb.transition_factor(a, j, 1), jacobian(a, j))
    if l == -1:
        return np.linalg.inv(_transition(a, j, 1)).T
    ext = _extend(jacobian(a, j), l)
    ext[n:, n:] = np.eye(l)
    return exterior_power(ext, n) * lb.transition_factor(a, j, twist_exponent(l))


def transition_matrix(a: AffineCoords, j: int, l: int) -> TransitionMatrix:
    """Change of fiber basis from chart ``a.chart`` to chart ``j`` over ``a``.

    Raises
    ------
    ChartExcluded
        If the point is not in chart ``j``.
    """
    l = _check_l(l)
    return TransitionMatrix(a.chart, int(j), _transition(a, j, l))


def fiber_metric_matrix(a: AffineCoords, l: int) -> np.ndarray:
    """Hermitian matrix ``H`` of the fiber inner product at ``a``."""
    l = _check_l(l)
    n = a.n
    if l == 0:
        return np.ones((1, 1), dtype=complex)
    if l == 1:
        return _block(lb.fiber_metric(a, 1), fs.metric(a).T)
    if l == -1:
        return np.linalg.inv(fiber_metric_matrix(a, 1)).conj()
    ext = _extend(fs.metric(a).T, l)
    ext[n:, n:] = np.eye(l)
    return exterior_power(ext, n) * lb.fiber_metric(a, twist_exponent(l))


def connection_matrix(a: AffineCoords, l: int) -> np.ndarray:
    """Connection coefficients ``C[i]`` (shape ``(n, d, d)``) along ``dz^i``."""
    l = _check_l(l)
    n = a.n
    if l == 0:
        return np.zeros((n, 1, 1), dtype=complex)
    gam = fs.christoffel(a)  # gam[p, i, q] = Gamma^p_{iq}
    if l == 1 or l == -1:
        A = lb.chern_connection(a, 1)
        C = np.zeros((n, n + 1, n + 1), dtype=complex)
        C[:, 0, 0] = A
        C[:, 1:, 1:] = gam.transpose(1, 0, 2)
        return C if l == 1 else -C.transpose(0, 2, 1)
    A = lb.chern_connection(a, twist_exponent(l))
    d = fiber_dimension(n, l)
    C = np.empty((n, d, d), dtype=complex)
    for i in range(n):
        C[i] = exterior_derivation(_extend(gam[:, i, :], l), n) + A[i] * np.eye(d)
    return C


@dataclass(frozen=True)
class QHFiberState:
    """Amplitudes of a fiber vector in the basis of chart ``chart``."""

    chart: int
    picard: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amp = np.atleast_1d(np.asarray(self.amplitudes, dtype=complex)).copy()
        amp.setflags(write=False)
        object.__setattr__(self, "amplitudes", amp)
        object.__setattr__(self, "picard", _check_l(self.picard))

    @classmethod
    def basis(cls, n: int, l: int, chart: int = 1, index: int = 0) -> "QHFiberState":
        amp = np.zeros(fiber_dimension(n, l), dtype=complex)
        amp[index] = 1.0
        return cls(chart, l, amp)

    @classmethod
    def vacuum(cls, n: int, l: int = 1, chart: int = 1) -> "QHFiberState":
        """The vacuum for ``l = 1``; for ``l >= 2`` the first label ``{1..n}``."""
        return cls.basis(n, l, chart, 0)

    def __add__(self, other):
        if (self.chart, self.picard) != (other.chart, other.picard):
            raise ChartMismatch("cannot add states from different charts or classes")
        return QHFiberState(self.chart, self.picard, self.amplitudes + other.amplitudes)

    def __rmul__(self, c):
        return QHFiberState(self.chart, self.picard, c * self.amplitudes)


def fiber_inner_product(s1: QHFiberState, s2: QHFiberState, a: AffineCoords) -> complex:
    """``<s1, s2>``, antilinear in ``s1``."""
    if s1.chart != s2.chart or s1.chart != a.chart:
        raise ChartMismatch("states and base point must share a chart")
    if s1.picard != s2.picard:
        raise ChartMismatch("states belong to different Picard classes")
    H = fiber_metric_matrix(a, s1.picard)
    return complex(s1.amplitudes.conj() @ H @ s2.amplitudes)


def _edge_propagator(chart: int, za: np.ndarray, zb: np.ndarray, l: int, tol: float) -> np.ndarray:
    dz = zb - za

    def rhs(t):
        C = connection_matrix(AffineCoords(chart, za + t * dz), l)
        return -np.tensordot(dz, C, axes=1)

    d = fiber_dimension(za.size, l)
    if not np.any(dz):
        return np.eye(d, dtype=complex)

    @functools.lru_cache(maxsize=None)
    def gen(t):
        return rhs(t)

    def rk4(steps: int) -> np.ndarray:
        U = np.eye(d, dtype=complex)
        h = 1.0 / steps
        for m in range(steps):
            t = m * h
            k1 = gen(t) @ U
            k2 = gen(t + h / 2) @ (U + h / 2 * k1)
            k3 = gen(t + h / 2) @ (U + h / 2 * k2)
            k4 = gen(t + h) @ (U + h * k3)
            U = U + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        return U

    steps = 1
    prev = rk4(steps)
    for _ in range(_MAX_HALVINGS):
        steps *= 2
        cur = rk4(steps)
        if np.max(np.abs(cur - prev)) < tol:
            return cur
        prev = cur
    raise StepFailure(f"transport did not converge after {steps} RK4 steps")


def transport_matrix(path: PhaseSpacePath, l: int, tol: float = TRANSPORT_TOL) -> np.ndarray:
    """Linear map from fiber amplitudes at the path start (chart of the first
    segment) to amplitudes at the end (chart of the last segment)."""
    l = _check_l(l)
    if not path.segments:
        raise DomainError("empty path has no dimension; transport the state directly")
    d = fiber_dimension(path.n, l)
    U = np.eye(d, dtype=complex)
    prev = None
    for seg in path.segments:
        if prev is not None:
            U = _transition(prev.point(-1), seg.chart, l) @ U
        for za, zb in seg.edges():
            U = _edge_propagator(seg.chart, za, zb, l, tol) @ U
        prev = seg
    return U


def parallel_transport(s: QHFiberState, path: PhaseSpacePath, tol: float = TRANSPORT_TOL) -> QHFiberState:
    """Transport ``s`` along ``path``.

    If ``s`` is expressed in a chart other than the path's first segment it
    is first moved there with :func:`transition_matrix`.
    """
    if not path.segments:
        return s
    start = path.start
    amp = s.amplitudes
    if amp.size != fiber_dimension(path.n, s.picard):
        raise DomainError("state dimension does not match the fiber")
    if s.chart != start.chart:
        from .atlas import transition

        amp = _transition(transition(start, s.chart), start.chart, s.picard) @ amp
    U = transport_matrix(path, s.picard, tol)
    return QHFiberState(path.segments[-1].chart, s.picard, U @ amp)


@dataclass(frozen=True)
class HolonomyResult:
    matrix: np.ndarray
    loop: PhaseSpacePath
    picard: int

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    def unitarity_residual(self) -> float:
        """``max |U^H H U - H|`` with ``H`` the fiber metric at the base point."""
        U = self.matrix
        if not self.loop.segments:
            return 0.0
        H = fiber_metric_matrix(self.loop.start, self.picard)
        return float(np.max(np.abs(U.conj().T @ H @ U - H)))

    def deviation(self) -> float:
        """Operator 2-norm of ``U - I``."""
        return float(np.linalg.norm(self.matrix - np.eye(self.dimension), 2))


def holonomy(loop: PhaseSpacePath, l: int = 1, tol: float = TRANSPORT_TOL) -> HolonomyResult:
    """Holonomy of a closed loop, in the basis of its first segment's chart.

    Raises
    ------
    PathDiscontinuous
        If the loop is not closed.
    """
    l = _check_l(l)
    if not loop.is_closed:
        raise PathDiscontinuous("holonomy requires a closed loop")
    U = transport_matrix(loop, l, tol)
    first, last = loop.segments[0].chart, loop.segments[-1].chart
    if first != last:
        U = _transition(loop.end, first, l) @ U
    return HolonomyResult(U, loop, l)


def duality_map(p: ProjectivePoint, q: ProjectivePoint, path: PhaseSpacePath,
                l: int = 1, tol: float = TRANSPORT_TOL) -> np.ndarray:
    """Matrix taking fiber amplitudes at ``p`` (its preferred chart) to
    amplitudes at ``q`` (its preferred chart) by transport along ``path``."""
    l = _check_l(l)
    if not isinstance(p, ProjectivePoint):
        p = ProjectivePoint(p)
    if not isinstance(q, ProjectivePoint):
        q = ProjectivePoint(q)
    kp, kq = preferred_chart(p), preferred_chart(q)
    if not path.segments:
        if p != q:
            raise PathDiscontinuous("empty path cannot join distinct points")
        return np.eye(fiber_dimension(p.n, l), dtype=complex)
    if to_projective(path.start) != p or to_projective(path.end) != q:
        raise PathDiscontinuous("path does not run from p to q")
    ap = to_affine(p, kp)
    U = _transition(ap, path.start.chart, l)
    U = transport_matrix(path, l, tol) @ U
    return _transition(path.end, kq, l) @ U
