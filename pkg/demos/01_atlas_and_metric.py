"""Charts on CP^2 and the Fubini-Study metric.

A random point is written in each of the three affine charts, the chart
changes are composed around a triangle and the Jacobians multiply out to
the identity.  Then the metric is compared with the Hessian of the
potential log(1 + |z|^2) and the CP^1 area and curvature are printed.
"""

import math

import numpy as np

from qhbundle import atlas, fubini_study as fs
from qhbundle.atlas import AffineCoords, ProjectivePoint

rng = np.random.default_rng(0)
p = ProjectivePoint(rng.normal(size=3) + 1j * rng.normal(size=3))
print("normalized homogeneous coordinates:", np.round(p.homogeneous, 4))

# %% the same point in each chart
charts = [atlas.to_affine(p, k) for k in (1, 2, 3)]
for a in charts:
    print(f"chart {a.chart}: z = {np.round(a.z, 4)}")

# %% chart 1 -> 2 -> 3 -> 1
a = charts[0]
b = atlas.transition(a, 2)
c = atlas.transition(b, 3)
loop = atlas.jacobian(c, 1) @ atlas.jacobian(b, 3) @ atlas.jacobian(a, 2)
print("Jacobian product around the triangle (should be I):")
print(np.round(loop, 12))

# %% metric at the chart-1 coordinates
g = fs.metric(a)
print("metric g_{i jbar}:")
print(np.round(g, 6))
print("eigenvalues:", np.round(np.linalg.eigvalsh(g), 6))

# finite-difference Hessian of the potential as a cross-check
h = 1e-5
z = a.z
K = lambda w: fs.kahler_potential(w)
hess = np.empty((2, 2), dtype=complex)
for i in range(2):
    for j in range(2):
        ei, ej = np.eye(2)[i] * h, np.eye(2)[j] * h
        # d_i dbar_j = (1/4)(d_xi - i d_yi)(d_xj + i d_yj)
        d = lambda u, v: (K(z + u + v) - K(z + u - v) - K(z - u + v) + K(z - u - v)) / (4 * h * h)
        hess[i, j] = 0.25 * (d(ei, ej) + d(1j * ei, 1j * ej) + 1j * (d(ei, 1j * ej) - d(1j * ei, ej)))
print("max |g - Hessian(K)|:", f"{np.max(np.abs(g - hess)):.1e}")

# %% CP^1
print("CP^1 Gaussian curvature at z = 0.7i:", fs.gaussian_curvature(AffineCoords(1, [0.7j])))
print("CP^1 symplectic area:", fs.cp1_area(), " 2 pi =", 2 * math.pi)
R0 = fs.curvature(np.zeros(2))
print("curvature at the origin of CP^2 is nonzero, max |R| =", np.max(np.abs(R0)))
