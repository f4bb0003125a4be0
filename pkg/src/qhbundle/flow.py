r"""Classical Hamiltonian flows on CP^n.

Two Hamiltonians are attached to each chart ``k``: the projective one,
:math:`\log(1+|z_{(k)}|^2)`, and its quadratic truncation :math:`|z_{(k)}|^2`.
Both are genuine functions on the open set ``U_k``, so they can be
integrated in any chart containing the trajectory; ``home_chart`` names
the chart whose coordinates define the Hamiltonian.

Hamilton's equations use the Fubini-Study symplectic form,
:math:`\dot z^i = -i\, g^{i\bar j}\, \partial H / \partial \bar z^j`.
"""

from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import DOP853

from . import fubini_study as fs
from .atlas import AffineCoords, CHART_TOL, check_chart, homogeneous, jacobian, transition
from .errors import ChartExcluded, DomainError, StepFailure

__all__ = [
    "Hamiltonian",
    "Trajectory",
    "MIN_STEP",
    "hamiltonian_value",
    "hamiltonian_gradient",
    "hamiltonian_vector_field",
    "integrate",
    "cross_chart_consistency",
]

MIN_STEP = 1e-12
_SOLVER_SAFETY = 1e-2


class Hamiltonian(str, enum.Enum):
    PROJECTIVE = "projective"
    LINEAR = "linear"


def _choice(choice) -> Hamiltonian:
    try:
        return Hamiltonian(choice)
    except ValueError:
        raise DomainError(f"unknown Hamiltonian {choice!r}") from None


def _home(a: AffineCoords, home_chart):
    return a.chart if home_chart is None else check_chart(home_chart, a.n)


def hamiltonian_value(a: AffineCoords, choice="projective", home_chart: int | None = None) -> float:
    choice = _choice(choice)
    home = _home(a, home_chart)
    w = transition(a, home)
    if choice is Hamiltonian.PROJECTIVE:
        return fs.kahler_potential(w)
    return fs.quadratic_approximation(w)


def hamiltonian_gradient(a: AffineCoords, choice="projective", home_chart: int | None = None) -> np.ndarray:
    r""":math:`\partial H/\partial\bar z^j` in the coordinates of ``a.chart``."""
    choice = _choice(choice)
    home = _home(a, home_chart)
    w = transition(a, home)
    grad = w.z / (1.0 + fs._s(w.z)) if choice is Hamiltonian.PROJECTIVE else w.z.copy()
    if home == a.chart:
        return grad
    return jacobian(a, home).conj().T @ grad


def hamiltonian_vector_field(a: AffineCoords, choice="projective", home_chart: int | None = None) -> np.ndarray:
    return -1j * fs.inverse_metric(a) @ hamiltonian_gradient(a, choice, home_chart)


@dataclass
class Trajectory:
    t: np.ndarray
    z: np.ndarray  # shape (m, n)
    energy: np.ndarray
    chart: int
    choice: Hamiltonian
    home_chart: int
    stats: dict = field(default_factory=dict)

    @property
    def samples(self):
        return [(float(t), AffineCoords(self.chart, z), float(e))
                for t, z, e in zip(self.t, self.z, self.energy)]

    @property
    def energy_drift(self) -> float:
        return float(np.max(np.abs(self.energy - self.energy[0])))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        n = self.z.shape[1]
        head = ["t"]
        for i in range(1, n + 1):
            head += [f"re_z{i}", f"im_z{i}"]
        w.writerow(head + ["energy"])
        for t, z, e in zip(self.t, self.z, self.energy):
            row = [f"{t:.17g}"]
            for v in z:
                row += [f"{v.real:.17g}", f"{v.imag:.17g}"]
            w.writerow(row + [f"{e:.17g}"])
        return buf.getvalue()

    def summary(self) -> dict:
        e0 = float(self.energy[0])
        return {
            "hamiltonian": self.choice.value,
            "chart": self.chart,
            "home_chart": self.home_chart,
            "t_end": float(self.t[-1]),
            "samples": int(self.t.size),
            "energy_start": e0,
            "energy_end": float(self.energy[-1]),
            "max_abs_drift": self.energy_drift,
            "max_rel_drift": self.energy_drift / abs(e0) if e0 else self.energy_drift,
            **self.stats,
        }


def _rhs(chart, choice, home, n):
    if home == chart:
        # closed forms of -i g^{-1} dH/dzbar in the home chart
        if choice is Hamiltonian.PROJECTIVE:
            return lambda t, y: -1j * y * (1.0 + np.vdot(y, y).real)
        return lambda t, y: -1j * y * (1.0 + np.vdot(y, y).real) ** 2

    def f(t, y):
        a = AffineCoords(chart, y)
        Z = homogeneous(a)
        if abs(Z[home - 1]) < CHART_TOL * np.max(np.abs(Z)):
            raise ChartExcluded(f"trajectory left chart {home}")
        return hamiltonian_vector_field(a, choice, home)
    return f


def _rk4(f, y0, t_end, steps):
    h = t_end / steps
    ts = np.linspace(0.0, t_end, steps + 1)
    ys = np.empty((steps + 1, y0.size), dtype=complex)
    ys[0] = y = y0
    for m in range(steps):
        t = ts[m]
        k1 = f(t, y)
        k2 = f(t + h / 2, y + h / 2 * k1)
        k3 = f(t + h / 2, y + h / 2 * k2)
        k4 = f(t + h, y + h * k3)
        y = y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        ys[m + 1] = y
    return ts, ys


def integrate(a0: AffineCoords, choice="projective", t_end: float = 1.0, tol: float = 1e-10,
              home_chart: int | None = None, fixed_steps: int | None = None,
              t_eval=None) -> Trajectory:
    """Integrate Hamilton's equations from ``a0`` over ``[0, t_end]``.

    Adaptive mode uses the embedded Dormand-Prince 8(5,3) pair, with local
    error tolerances set so that the energy drift stays below about
    ``tol * t_end``, and records every accepted step (or, if
    ``t_eval`` is given, dense-output samples at those times).  With
    ``fixed_steps`` a classical RK4 scheme with that many equal steps is
    used instead; its output is bit-for-bit reproducible.

    Raises
    ------
    StepFailure
        If the adaptive step size drops below :data:`MIN_STEP`.
    """
    choice = _choice(choice)
    if not t_end > 0:
        raise DomainError("t_end must be positive")
    if not tol > 0:
        raise DomainError("tol must be positive")
    home = _home(a0, home_chart)
    f = _rhs(a0.chart, choice, home, a0.n)
    y0 = np.asarray(a0.z, dtype=complex)

    if fixed_steps is not None:
        ts, ys = _rk4(f, y0, float(t_end), int(fixed_steps))
        stats = {"steps": int(fixed_steps), "nfev": 4 * int(fixed_steps), "mode": "fixed"}
    else:
        # tol is a target for the energy drift per unit time; the local
        # error control runs two decades tighter to meet it
        solver = DOP853(f, 0.0, y0, float(t_end), rtol=_SOLVER_SAFETY * tol, atol=_SOLVER_SAFETY * tol)
        want = None if t_eval is None else np.asarray(t_eval, dtype=float)
        ts, ys = [0.0], [y0]
        if want is not None:
            ts, ys = [], []
            done = 0
            while done < want.size and want[done] <= 0.0:
                ts.append(want[done]); ys.append(y0); done += 1
        steps, min_step = 0, np.inf
        while solver.status == "running":
            t_old = solver.t
            msg = solver.step()
            if solver.status == "failed":
                raise StepFailure(f"integrator failed at t = {solver.t:g}: {msg}")
            h = solver.t - t_old
            steps += 1
            if solver.status == "running":
                min_step = min(min_step, h)
                if h < MIN_STEP:
                    raise StepFailure(f"step size {h:g} below {MIN_STEP:g} at t = {solver.t:g}")
            if want is None:
                ts.append(solver.t)
                ys.append(solver.y.copy())
            else:
                dense = solver.dense_output()
                while done < want.size and want[done] <= solver.t:
                    ts.append(want[done]); ys.append(dense(want[done])); done += 1
        ts, ys = np.array(ts), np.array(ys)
        stats = {"steps": steps, "nfev": int(solver.nfev), "min_step": float(min_step),
                 "mode": "adaptive", "tol": tol}

    if home == a0.chart:
        s2 = np.sum(np.abs(ys) ** 2, axis=1)
        energy = np.log1p(s2) if choice is Hamiltonian.PROJECTIVE else s2
    else:
        energy = np.array([hamiltonian_value(AffineCoords(a0.chart, y), choice, home) for y in ys])
    return Trajectory(ts, ys, energy, a0.chart, choice, home, stats)


def cross_chart_consistency(a0: AffineCoords, choice="projective", t_end: float = 1.0,
                            tol: float = 1e-10, other_chart: int | None = None,
                            samples: int = 101) -> float:
    """Max distance, in ``other_chart`` coordinates, between the flow computed
    in ``a0.chart`` and mapped over, and the same flow computed directly in
    ``other_chart``.  The Hamiltonian is the one of ``a0.chart`` in both runs.

    Raises
    ------
    ChartExcluded
        If the trajectory leaves the overlap of the two charts.
    """
    n = a0.n
    if other_chart is None:
        Z = homogeneous(a0)
        cands = [k for k in range(1, n + 2) if k != a0.chart
                 and abs(Z[k - 1]) >= CHART_TOL * np.max(np.abs(Z))]
        if not cands:
            raise ChartExcluded("point lies in no other chart")
        other_chart = cands[0]
    if t_end == 0:
        return 0.0
    times = np.linspace(0.0, t_end, samples)
    here = integrate(a0, choice, t_end, tol, t_eval=times)
    there = integrate(transition(a0, other_chart), choice, t_end, tol,
                      home_chart=a0.chart, t_eval=times)
    mapped = np.array([transition(AffineCoords(a0.chart, z), other_chart).z for z in here.z])
    return float(np.max(np.abs(mapped - there.z)))
