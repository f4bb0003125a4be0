"""Quantum Hilbert-space bundles over complex projective space.

Submodules
----------
atlas          homogeneous coordinates, affine charts, transitions, Jacobians
fubini_study   Kahler potential, metric, connection, curvature, area
line_bundle    the line bundles tau^l and their Chern numbers
qh_bundle      fiber bases, transition matrices, transport, holonomy, duality
paths          piecewise-linear paths with chart junctions, loop generators
oscillator     linear and projective oscillator spectra on CP^n
picard         state counting and labels for Picard class l
flow           classical Hamiltonian flows on CP^n charts
checks         invariant suites behind ``qhbundle <cmd> --check``
"""

from . import atlas, fubini_study, line_bundle, oscillator, paths, picard, qh_bundle, flow
from .atlas import AffineCoords, ProjectivePoint
from .errors import (
    ChartExcluded,
    ChartMismatch,
    DomainError,
    PathDiscontinuous,
    QHBundleError,
    QuadratureFailure,
    StepFailure,
    UnsupportedPicardClass,
)
from .paths import PathSegment, PhaseSpacePath
from .qh_bundle import QHFiberState

__version__ = "0.1.0"
