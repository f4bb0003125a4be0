"""Invariant suites run by ``qhbundle <subcommand> --check``.

Every suite is deterministic for a given seed and returns a list of
:class:`Check` records.  The finite-difference and complex-step helpers
here are oracles only; the library computes everything in closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import atlas, flow, fubini_study as fs, line_bundle as lb, oscillator, picard
from . import qh_bundle as qh
from . import paths

__all__ = ["Check", "SUITES", "run_suite"]


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    threshold: float
    passed: bool

    def as_dict(self):
        return {"name": self.name, "residual": self.residual,
                "threshold": self.threshold, "passed": self.passed}


def _le(name, residual, threshold) -> Check:
    residual = float(residual)
    return Check(name, residual, threshold, bool(residual <= threshold))


def _ge(name, value, threshold) -> Check:
    value = float(value)
    return Check(name, value, threshold, bool(value >= threshold))


def _random_z(rng, n, scale=1.0):
    return scale * (rng.normal(size=n) + 1j * rng.normal(size=n))


def _wirtinger_hessian(f, z, h=1e-20, d=1e-5):
    """d^2 f / dz^i dzbar^j of a real function of real coordinates, mixing a
    complex step in one real variable with a central difference in the other."""
    n = z.size
    x0 = np.concatenate([z.real, z.imag])
    m = 2 * n

    def F(x):
        return f(x[:n], x[n:])

    H = np.empty((m, m))
    for u in range(m):
        for v in range(m):
            e_u = np.zeros(m, dtype=complex); e_u[u] = 1j * h
            e_v = np.zeros(m); e_v[v] = d
            H[u, v] = (F(x0 + e_u + e_v).imag - F(x0 + e_u - e_v).imag) / (2 * h * d)
    xx, yy, xy, yx = H[:n, :n], H[n:, n:], H[:n, n:], H[n:, :n]
    return 0.25 * (xx + yy + 1j * (xy - yx))


def _potential(x, y):
    return np.log(1.0 + np.sum(x * x + y * y))


def atlas_suite(seed: int = 0, samples: int = 200) -> list[Check]:
    rng = np.random.default_rng(seed)
    worst_rt = worst_cyc = worst_jac = 0.0
    for n in (1, 2, 3):
        for _ in range(samples):
            p = atlas.ProjectivePoint(_random_z(rng, n + 1))
            i, j, k = (int(c) for c in rng.choice(np.arange(1, n + 2), size=3, replace=n < 2))
            a = atlas.to_affine(p, i)
            worst_rt = max(worst_rt, np.max(np.abs(atlas.to_projective(a).homogeneous - p.homogeneous)))
            b = atlas.transition(a, j)
            c = atlas.transition(b, k)
            back = atlas.transition(c, i)
            worst_cyc = max(worst_cyc, np.max(np.abs(back.z - a.z)) / (1 + np.max(np.abs(a.z))))
            prod = atlas.jacobian(c, i) @ atlas.jacobian(b, k) @ atlas.jacobian(a, j)
            worst_jac = max(worst_jac, np.max(np.abs(prod - np.eye(n))))
    return [
        _le("chart round trip", worst_rt, 1e-12),
        _le("coordinate cocycle i->j->k->i", worst_cyc, 1e-12),
        _le("jacobian cocycle", worst_jac, 1e-9),
    ]


def metric_suite(seed: int = 0, samples: int = 50) -> list[Check]:
    rng = np.random.default_rng(seed)
    worst_cs = worst_herm = worst_cov = worst_gauss = 0.0
    min_eig = np.inf
    for _ in range(samples):
        n = int(rng.integers(1, 4))
        z = _random_z(rng, n, 0.7)
        a = atlas.AffineCoords(1, z)
        g = fs.metric(a)
        worst_cs = max(worst_cs, np.max(np.abs(g - _wirtinger_hessian(_potential, z))))
        worst_herm = max(worst_herm, np.max(np.abs(g - g.conj().T)))
        min_eig = min(min_eig, np.linalg.eigvalsh(g).min())
        J = atlas.jacobian(a, 2)
        g2 = fs.metric(atlas.transition(a, 2))
        worst_cov = max(worst_cov, np.max(np.abs(J.T @ g2 @ J.conj() - g)))
        w = atlas.AffineCoords(1, z[:1])
        worst_gauss = max(worst_gauss, abs(fs.gaussian_curvature(w) - 4.0))
    return [
        _le("metric vs complex-step Hessian of potential", worst_cs, 1e-7),
        _le("metric Hermitian", worst_herm, 1e-12),
        Check("metric positive definite", float(min_eig), 0.0, bool(min_eig > 0)),
        _le("metric chart covariance", worst_cov, 1e-8),
        _le("CP^1 Gaussian curvature = 4", worst_gauss, 1e-6),
        _le("CP^1 symplectic area = 2 pi", abs(fs.cp1_area() - 2 * math.pi), 1e-6),
        _ge("curvature nonzero at origin", np.max(np.abs(fs.curvature(np.zeros(2)))), 0.5),
    ]


def chern_suite(seed: int = 0) -> list[Check]:
    out = [_le(f"chern number l={l}", abs(lb.chern_number(l) - l), 1e-6) for l in (-2, -1, 0, 1, 2)]
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(50):
        n = int(rng.integers(1, 4))
        Z = _random_z(rng, n + 1)
        i, j, k = 1, 2, min(3, n + 1)
        p = atlas.ProjectivePoint(Z)
        a = atlas.to_affine(p, i)
        b = atlas.transition(a, j)
        c = atlas.transition(b, k)
        prod = lb.transition_factor(a, j, 1) * lb.transition_factor(b, k, 1) * lb.transition_factor(c, i, 1)
        worst = max(worst, abs(prod - 1))
    out.append(_le("transition factor cocycle", worst, 1e-10))
    return out


def spectrum_suite(seed: int = 0) -> list[Check]:
    worst_e, bad_rows, bad_rank = 0.0, 0, 0
    for n in range(1, 11):
        tab = oscillator.spectrum(n)
        bad_rows += len(tab) != n + 1
        e = [r.projective_energy for r in tab]
        worst_e = max(worst_e, abs(e[0] - math.log(1 + n / 2)), *(abs(x - math.log(2 + n / 2)) for x in e[1:]))
        lin = [r.linear_energy for r in tab]
        bad_rank += sorted(range(len(e)), key=lambda i: (e[i], i)) != sorted(range(len(lin)), key=lambda i: (lin[i], i))
    gaps = [oscillator.vacuum_is_nondegenerate(n)[1] for n in (1, 10, 1000, 10**6)]
    return [
        _le("spectrum has n+1 rows (n <= 10)", bad_rows, 0),
        _le("energies log(1+n/2), log(2+n/2)", worst_e, 1e-12),
        _le("H_lin and H_proj rankings agree", bad_rank, 0),
        _ge("vacuum gap positive up to n = 1e6", min(gaps), 1e-300),
    ]


def states_suite(seed: int = 0) -> list[Check]:
    bad = 0
    for n in range(1, 9):
        for l in range(1, 9):
            c = picard.state_count(n, l)
            bad += not (c == len(picard.enumerate_states(n, l)) == picard.young_dimension(n, l)
                        == qh.fiber_dimension(n, l))
    bad_l1 = sum(picard.state_count(n, 1) != n + 1 for n in range(1, 50))
    return [
        _le("state count = enumeration = Young dimension (n, l <= 8)", bad, 0),
        _le("l = 1 gives n + 1", bad_l1, 0),
    ]


def _random_path(rng, n, legs=6, scale=0.6):
    pts = np.cumsum(scale * (rng.normal(size=(legs, n)) + 1j * rng.normal(size=(legs, n))) / np.sqrt(legs), axis=0)
    pts = np.vstack([np.zeros(n), pts])
    return paths.PhaseSpacePath([paths.PathSegment(1, pts)])


def transport_suite(seed: int = 0) -> list[Check]:
    rng = np.random.default_rng(seed)
    worst_norm = worst_lin = worst_rev = worst_tm = 0.0
    for n, l in ((1, 1), (2, 1), (1, 2), (2, 2), (1, -1)):
        path = _random_path(rng, n)
        d = qh.fiber_dimension(n, l)
        s1 = qh.QHFiberState(1, l, rng.normal(size=d) + 1j * rng.normal(size=d))
        s2 = qh.QHFiberState(1, l, rng.normal(size=d) + 1j * rng.normal(size=d))
        t1 = qh.parallel_transport(s1, path)
        t2 = qh.parallel_transport(s2, path)
        n0 = qh.fiber_inner_product(s1, s1, path.start).real
        n1 = qh.fiber_inner_product(t1, t1, path.end).real
        worst_norm = max(worst_norm, abs(n1 - n0) / n0)
        alpha, beta = 0.3 - 1.1j, 2.0 + 0.5j
        tc = qh.parallel_transport(alpha * s1 + beta * s2, path)
        worst_lin = max(worst_lin, np.max(np.abs(tc.amplitudes - alpha * t1.amplitudes - beta * t2.amplitudes)))
        back = qh.parallel_transport(t1, path.reversed())
        worst_rev = max(worst_rev, np.max(np.abs(back.amplitudes - s1.amplitudes)))
        if n >= 1:
            a = atlas.to_affine(atlas.ProjectivePoint(_random_z(rng, n + 1)), 1)
            j = 2
            T = qh.transition_matrix(a, j, l).matrix
            H1 = qh.fiber_metric_matrix(a, l)
            H2 = qh.fiber_metric_matrix(atlas.transition(a, j), l)
            worst_tm = max(worst_tm, np.max(np.abs(T.conj().T @ H2 @ T - H1)) / np.max(np.abs(H1)))
    return [
        _le("transport preserves fiber norm", worst_norm, 1e-8),
        _le("transport is linear", worst_lin, 1e-10),
        _le("reverse transport inverts", worst_rev, 1e-8),
        _le("fiber metric chart invariant", worst_tm, 1e-9),
    ]


def holonomy_suite(seed: int = 0) -> list[Check]:
    sides = (0.1, 0.05, 0.025)
    devs = np.array([qh.holonomy(paths.square_loop(s), 1).deviation() for s in sides])
    x = np.array(sides) ** 2
    c = float(x @ devs / (x @ x))
    fit_err = float(np.max(np.abs(devs - c * x) / (c * x)))
    big = qh.holonomy(paths.square_loop(0.5), 1)
    eq = qh.holonomy(paths.equator_loop(1000), 1)
    area = fs.cp1_area() / 2
    phase_err = abs(np.angle(eq.matrix[0, 0] * np.exp(-1j * area)))
    zero = qh.holonomy(paths.square_loop(0.0), 1)
    rng = np.random.default_rng(seed)
    worst_cocycle = 0.0
    for n in (1, 2):
        for l in (1, 2, -1):
            p = atlas.ProjectivePoint(_random_z(rng, n + 1))
            a = atlas.to_affine(p, 1)
            k = n + 1
            b = atlas.transition(a, 2)
            cpt = atlas.transition(b, k)
            prod = (qh.transition_matrix(cpt, 1, l).matrix @ qh.transition_matrix(b, k, l).matrix
                    @ qh.transition_matrix(a, 2, l).matrix)
            worst_cocycle = max(worst_cocycle, np.max(np.abs(prod - np.eye(prod.shape[0]))))
    return [
        _le("degenerate loop gives identity", zero.deviation(), 1e-14),
        _ge("square side 0.5 holonomy deviation", big.deviation(), 1e-2),
        _le("deviation ~ side^2 (relative fit error)", fit_err, 0.15),
        _le("equator vacuum phase = enclosed area (mod 2 pi)", phase_err, 1e-4),
        _le("holonomy unitarity", max(big.unitarity_residual(), eq.unitarity_residual()), 1e-8),
        _le("transition matrix cocycle", worst_cocycle, 1e-9),
    ]


def duality_suite(seed: int = 0) -> list[Check]:
    up, lo = paths.half_equators(1000)
    p, q = atlas.ProjectivePoint([1, 1]), atlas.ProjectivePoint([1, -1])
    D1 = qh.duality_map(p, q, up, 1)
    D2 = qh.duality_map(p, q, lo, 1)
    Hp = qh.fiber_metric_matrix(atlas.to_affine(p, atlas.preferred_chart(p)), 1)
    Hq = qh.fiber_metric_matrix(atlas.to_affine(q, atlas.preferred_chart(q)), 1)
    unit = max(np.max(np.abs(D.conj().T @ Hq @ D - Hp)) for D in (D1, D2))
    same = qh.duality_map(p, p, paths.PhaseSpacePath([paths.PathSegment(1, [[1.0]])]), 1)
    return [
        _ge("two half-equator maps differ (max entry)", np.max(np.abs(D1 - D2)), 1e-3),
        _le("duality maps unitary", unit, 1e-8),
        _le("trivial path gives identity", np.max(np.abs(same - np.eye(2))), 1e-14),
    ]


def flow_suite(seed: int = 0, samples: int = 3) -> list[Check]:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for n in (1, 2, 3):
        for choice in ("projective", "linear"):
            for _ in range(samples):
                z = _random_z(rng, n)
                z *= rng.uniform(0.05, 2.0) / np.linalg.norm(z)
                tr = flow.integrate(atlas.AffineCoords(1, z), choice, 10.0, 1e-10)
                worst = max(worst, tr.energy_drift / abs(tr.energy[0]))
    tr = flow.integrate(atlas.AffineCoords(1, [1.0]), "projective", math.pi, 1e-10)
    analytic = abs(tr.z[-1, 0] - 1.0)
    cross = flow.cross_chart_consistency(atlas.AffineCoords(1, [1.0]), "projective", math.pi)
    return [
        _le("relative energy drift over t = 10", worst, 1e-8),
        _le("n = 1 analytic solution at t = pi", analytic, 1e-6),
        _le("cross-chart residual", cross, 1e-6),
    ]


SUITES = {
    "atlas": atlas_suite,
    "metric": metric_suite,
    "chern": chern_suite,
    "spectrum": spectrum_suite,
    "states": states_suite,
    "transport": transport_suite,
    "holonomy": holonomy_suite,
    "duality": duality_suite,
    "flow": flow_suite,
}


def run_suite(name: str, seed: int = 0) -> list[Check]:
    return SUITES[name](seed)
