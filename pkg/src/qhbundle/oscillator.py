"""Spectra of the linear and projective oscillators on a chart of CP^n.

Energies are formed exactly as fractions (``sum m_j + n/2``) before the
logarithm of the projective Hamiltonian is taken.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import DomainError

__all__ = [
    "OccupationVector",
    "SpectrumRow",
    "SpectrumTable",
    "linear_energy_exact",
    "linear_energy",
    "projective_energy",
    "allowed_states",
    "spectrum",
    "unrestricted_spectrum",
    "vacuum_is_nondegenerate",
    "raise_mode",
    "lower_mode",
]


@dataclass(frozen=True, order=True)
class OccupationVector:
    m: tuple[int, ...]

    def __post_init__(self):
        m = tuple(int(x) for x in self.m)
        if not m:
            raise DomainError("occupation vector needs n >= 1 modes")
        if any(x < 0 for x in m):
            raise DomainError(f"negative occupation number in {m}")
        object.__setattr__(self, "m", m)

    @property
    def n(self) -> int:
        return len(self.m)

    def __str__(self):
        return "|" + ",".join(map(str, self.m)) + ">"


def _occ(m) -> OccupationVector:
    return m if isinstance(m, OccupationVector) else OccupationVector(tuple(m))


def raise_mode(m, i: int) -> OccupationVector:
    """Occupation vector after applying the ``i``-th creation operator (0-based)."""
    m = _occ(m)
    new = list(m.m)
    new[i] += 1
    return OccupationVector(tuple(new))


def lower_mode(m, i: int) -> OccupationVector | None:
    """Occupation vector after the ``i``-th annihilation operator, or ``None`` if it kills the state."""
    m = _occ(m)
    if m.m[i] == 0:
        return None
    new = list(m.m)
    new[i] -= 1
    return OccupationVector(tuple(new))


def linear_energy_exact(m) -> Fraction:
    m = _occ(m)
    return Fraction(sum(m.m)) + Fraction(m.n, 2)


def linear_energy(m) -> float:
    return float(linear_energy_exact(m))


def projective_energy(m) -> float:
    """``log(1 + sum (m_j + 1/2))``; the half-integer argument is exact in floating point."""
    return math.log(float(1 + linear_energy_exact(m)))


def allowed_states(n: int) -> list[OccupationVector]:
    """The vacuum and the ``n`` single excitations that survive on CP^n."""
    if int(n) != n or n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    vac = (0,) * n
    out = [OccupationVector(vac)]
    for i in range(n):
        out.append(raise_mode(vac, i))
    return out


@dataclass(frozen=True)
class SpectrumRow:
    state: OccupationVector
    linear_energy: float
    projective_energy: float
    degeneracy: int


@dataclass(frozen=True)
class SpectrumTable:
    rows: tuple[SpectrumRow, ...]
    truncated: bool = True  # False for the unrestricted comparison table

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def levels(self) -> list[tuple[float, int]]:
        """Distinct projective energies with their degeneracies."""
        seen: dict[float, int] = {}
        for r in self.rows:
            seen.setdefault(r.projective_energy, r.degeneracy)
        return list(seen.items())

    def to_records(self) -> list[dict]:
        return [
            {
                "occupations": list(r.state.m),
                "E_lin": r.linear_energy,
                "E_proj": r.projective_energy,
                "degeneracy": r.degeneracy,
            }
            for r in self.rows
        ]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["occupations", "E_lin", "E_proj", "degeneracy"])
        for r in self.rows:
            w.writerow([
                " ".join(map(str, r.state.m)),
                f"{r.linear_energy:.17g}",
                f"{r.projective_energy:.17g}",
                r.degeneracy,
            ])
        return buf.getvalue()


def _table(states: Iterable[OccupationVector], truncated: bool) -> SpectrumTable:
    states = list(states)
    exact = [linear_energy_exact(s) for s in states]
    counts: dict[Fraction, int] = {}
    for e in exact:
        counts[e] = counts.get(e, 0) + 1
    order = sorted(range(len(states)), key=lambda i: (exact[i], states[i]))
    rows = tuple(
        SpectrumRow(states[i], float(exact[i]), projective_energy(states[i]), counts[exact[i]])
        for i in order
    )
    return SpectrumTable(rows, truncated)


def spectrum(n: int) -> SpectrumTable:
    """Spectrum of the projective oscillator restricted to the allowed states."""
    return _table(allowed_states(n), truncated=True)


def unrestricted_spectrum(n: int, max_quanta: int) -> SpectrumTable:
    """Comparison table: every occupation vector with at most ``max_quanta``
    total quanta, as for the oscillator on ``C^n``.  Not a spectrum on CP^n."""
    if n < 1 or max_quanta < 0:
        raise DomainError("need n >= 1 and max_quanta >= 0")
    states = (
        OccupationVector(m)
        for m in itertools.product(range(max_quanta + 1), repeat=n)
        if sum(m) <= max_quanta
    )
    return _table(states, truncated=False)


def vacuum_is_nondegenerate(n: int) -> tuple[bool, float]:
    """Check the vacuum of the truncated projective oscillator is isolated.

    Returns
    -------
    (bool, float)
        Whether the vacuum is nondegenerate, and the gap
        ``log(2 + n/2) - log(1 + n/2)`` to the first excited level.
    """
    if int(n) != n or n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if n <= 1000:
        (e0, g0), (e1, _) = spectrum(n).levels()[:2]
        return g0 == 1 and e1 > e0, e1 - e0
    # log((2 + n/2) / (1 + n/2)) written to stay accurate for huge n
    gap = math.log1p(2.0 / (n + 2))
    return gap > 0, gap
