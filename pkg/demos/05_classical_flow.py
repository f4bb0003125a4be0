"""Hamiltonian flows of log(1 + |z|^2) and |z|^2 on CP^n.

On CP^1 both rotate circles |z| = r, at angular speeds (1 + r^2) and
(1 + r^2)^2.  The adaptive integrator conserves energy to the requested
tolerance, and the flow computed in a second chart agrees with the first.
"""

import math

import numpy as np

from qhbundle import flow
from qhbundle.atlas import AffineCoords

a0 = AffineCoords(1, [1.0])
tr = flow.integrate(a0, "projective", math.pi, 1e-10)
print("z(pi) from z0 = 1:", tr.z[-1, 0], " (analytic: 1)")
print(tr.summary())

# %% both Hamiltonians near and far from the origin
for r in (1e-3, 0.5, 1.5):
    for kind in ("projective", "linear"):
        t = flow.integrate(AffineCoords(1, [r]), kind, 10.0, t_eval=np.linspace(0, 10, 5))
        print(f"r = {r:<6} {kind:<10} z(10) = {t.z[-1, 0]:.6f}  drift {t.energy_drift:.1e}")

# %% a CP^3 trajectory and the chart check
rng = np.random.default_rng(1)
z = 0.6 * (rng.normal(size=3) + 1j * rng.normal(size=3))
t = flow.integrate(AffineCoords(1, z), "linear", 10.0)
print("CP^3 linear flow: steps", t.stats["steps"], "relative drift", t.energy_drift / t.energy[0])
print("cross-chart residual:", flow.cross_chart_consistency(AffineCoords(1, z), "projective", 3.0))
