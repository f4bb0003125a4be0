"""Counting and labelling the Picard-class-``l`` state spaces on CP^n.

A basis state of class ``l >= 1`` is an ``n``-fold excitation of the
class-1 vacuum on CP^{n+l}: a choice of ``n`` creation operators out of
``n + l``, recorded as a sorted ``n``-subset of ``{1, ..., n+l}``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DomainError

__all__ = [
    "StateLabel",
    "RepresentationInfo",
    "state_count",
    "enumerate_states",
    "young_dimension",
    "hook_content_dimension",
    "representation_info",
    "vacuum_degeneracy_note",
    "report",
    "LABEL_LIMIT",
]

# labels are only listed in reports up to this many states
LABEL_LIMIT = 10_000


def _check(n: int, l: int) -> None:
    if int(n) != n or int(l) != l:
        raise DomainError("n and l must be integers")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if l < 1:
        raise DomainError(f"l must be >= 1, got {l}")


@dataclass(frozen=True, order=True)
class StateLabel:
    subset: tuple[int, ...]

    def __post_init__(self):
        s = tuple(int(x) for x in self.subset)
        if list(s) != sorted(set(s)):
            raise DomainError(f"label {s} is not strictly increasing")
        if s and s[0] < 1:
            raise DomainError(f"label {s} has entries below 1")
        object.__setattr__(self, "subset", s)

    def __str__(self):
        return "{" + ",".join(map(str, self.subset)) + "}"


@dataclass(frozen=True)
class RepresentationInfo:
    """Single-column Young tableau of ``n`` boxes for the rank ``n + l`` group."""

    n: int
    l: int
    dimension: int

    @property
    def tableau(self) -> tuple[int, ...]:
        return (1,) * self.n

    @property
    def rank(self) -> int:
        return self.n + self.l


def state_count(n: int, l: int) -> int:
    _check(n, l)
    return math.comb(n + l, n)


def enumerate_states(n: int, l: int) -> list[StateLabel]:
    """All ``n``-subsets of ``{1..n+l}`` in lexicographic order."""
    _check(n, l)
    return [StateLabel(c) for c in itertools.combinations(range(1, n + l + 1), n)]


def hook_content_dimension(shape: Sequence[int], N: int) -> int:
    """Dimension of the irreducible ``GL(N)`` representation with Young diagram ``shape``.

    Uses the hook-content formula ``prod (N + c) / h`` over boxes, with
    content ``c = col - row`` and hook length ``h``.
    """
    shape = [int(r) for r in shape if r > 0]
    if any(a < b for a, b in zip(shape, shape[1:])):
        raise DomainError(f"shape {shape} is not a partition")
    cols = [sum(1 for r in shape if r > j) for j in range(shape[0])] if shape else []
    dim = Fraction(1)
    for i, row in enumerate(shape):
        for j in range(row):
            hook = (row - j) + (cols[j] - i) - 1
            dim *= Fraction(N + j - i, hook)
    if dim.denominator != 1:
        raise ArithmeticError("hook-content formula produced a non-integer")
    return int(dim)


def young_dimension(n: int, l: int) -> int:
    """Dimension of the single-column (``n`` boxes) representation of SU(n+l)."""
    _check(n, l)
    return hook_content_dimension([1] * n, n + l)


def representation_info(n: int, l: int) -> RepresentationInfo:
    return RepresentationInfo(n, l, young_dimension(n, l))


def vacuum_degeneracy_note(n: int, l: int) -> dict:
    """Whether the class-``l`` vacuum is degenerate on CP^n.

    For ``l > 1`` the vacuum is itself an excited state of the CP^{n+l}
    vacuum and shares its space with the other labels; ``l = 1`` has the
    nondegenerate vacuum of the truncated projective oscillator, and
    ``l = 0`` is the trivial bundle with a single state.
    """
    if int(n) != n or n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if l == 0:
        return {"n": n, "l": 0, "dimension": 1, "degenerate_vacuum": False,
                "excitation_labels": 1}
    if l < 0:
        raise DomainError("degeneracy report requires l >= 0")
    count = state_count(n, l)
    return {
        "n": n,
        "l": l,
        "dimension": count,
        "degenerate_vacuum": l > 1,
        "excitation_labels": count,
    }


def report(n: int, l: int, labels: bool = True) -> dict:
    """JSON-ready summary; labels are listed only when there are at most :data:`LABEL_LIMIT`."""
    out = vacuum_degeneracy_note(n, l)
    out = {k: out[k] for k in ("n", "l", "dimension", "degenerate_vacuum")}
    if labels and l >= 1 and out["dimension"] <= LABEL_LIMIT:
        out["labels"] = [list(s.subset) for s in enumerate_states(n, l)]
    return out
