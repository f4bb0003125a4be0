"""Line bundles tau^l on CP^1 and their Chern numbers.

Local amplitudes change by (Z^k / Z^j)^l between charts.  The fiber
metric (1 + |z|^2)^-l makes |s|^2 h chart independent, and integrating the
curvature of its Chern connection over the sphere returns l.
"""

import numpy as np

from qhbundle import line_bundle as lb, paths
from qhbundle.atlas import AffineCoords

w = 0.6 + 0.8j
for l in (-1, 1, 2):
    s = lb.SectionValue(AffineCoords(1, [w]), 1.0 + 0j, l)
    t = s.to_chart(2)
    print(f"l = {l:+d}: chart-2 amplitude {t.value:.4f}, |s|^2 h in both charts "
          f"{s.norm_squared():.6f} {t.norm_squared():.6f}")

# %% Chern numbers by quadrature
for l in range(-3, 4):
    print(f"chern_number({l:+d}) = {lb.chern_number(l):+.12f}")

# %% parallel transport of a section around circles about z = 0
for r in (0.25, 0.5, 1.0, 2.0):
    loop = paths.circle_loop(r, num=2000)
    phase = lb.transport_phase(loop.segments[0].points, 1)
    area = paths.loop_area(loop)
    print(f"r = {r}: arg(holonomy) = {np.angle(phase):+.6f}, enclosed area = {area:.6f}")
