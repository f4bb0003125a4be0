"""Transport in the quantum Hilbert-space bundle over CP^1 (l = 1).

The fiber is spanned by the vacuum and one excitation.  Holonomy around
small squares grows like side^2, so there is no flat identification of
fibers.  Two different routes from z = 1 to its antipode z = -1 give two
different, equally valid maps between the fibers.
"""

import numpy as np

from qhbundle import paths, qh_bundle as qh
from qhbundle.atlas import ProjectivePoint

print("basis:", qh.fiber_labels(1, 1))

# %% small squares
for side in (0.5, 0.1, 0.05, 0.025):
    h = qh.holonomy(paths.square_loop(side), 1)
    print(f"side {side:5}: ||Hol - I|| = {h.deviation():.3e}, /side^2 = {h.deviation() / side**2:.4f}, "
          f"unitarity residual {h.unitarity_residual():.1e}")

# %% the equator
eq = qh.holonomy(paths.equator_loop(1000), 1)
print("equator holonomy (diagonal):", np.round(np.diag(eq.matrix), 5))

# %% two observers
up, lo = paths.half_equators(1000)
p, q = ProjectivePoint([1, 1]), ProjectivePoint([1, -1])
D_up = qh.duality_map(p, q, up)
D_lo = qh.duality_map(p, q, lo)
print("map via z = i:\n", np.round(D_up, 5))
print("map via z = -i:\n", np.round(D_lo, 5))
vac = qh.QHFiberState.vacuum(1)
print("the vacuum at p arrives at q as", np.round(D_up @ vac.amplitudes, 5),
      "or", np.round(D_lo @ vac.amplitudes, 5))

# %% a state moved across the chart boundary
t = np.linspace(0, 1, 401)
curve = (0.5 + 1.5 * t) * np.exp(0.8j * t)
path = paths.PhaseSpacePath([paths.PathSegment(1, curve[:201]), paths.PathSegment(2, 1 / curve[200:])])
s = qh.QHFiberState(1, 1, [1.0, 0.5j])
u = qh.parallel_transport(s, path)
print("transported into chart", u.chart, "amplitudes", np.round(u.amplitudes, 5))
print("norm before/after:", qh.fiber_inner_product(s, s, path.start).real,
      qh.fiber_inner_product(u, u, path.end).real)
