import math

import pytest
from hypothesis import given, strategies as st

from qhbundle import picard, qh_bundle as qh
from qhbundle.errors import DomainError


def test_state_label():
    s = picard.StateLabel((1, 3))
    assert s.subset == (1, 3)
    with pytest.raises(DomainError):
        picard.StateLabel((3, 1))
    assert picard.StateLabel((1, 2)) < picard.StateLabel((1, 3))


@pytest.mark.parametrize("shape,N,dim", [
    ([1], 3, 3), ([2], 3, 6), ([1, 1], 3, 3), ([2, 1], 3, 8), ([3, 3], 3, 10),
    ([2, 2], 2, 1), ([1, 1, 1], 2, 0), ([4, 2, 1], 4, 140),
])
def test_hook_content_known_values(shape, N, dim):
    assert picard.hook_content_dimension(shape, N) == dim


def test_hook_content_rejects_non_partition():
    with pytest.raises(DomainError):
        picard.hook_content_dimension([1, 2], 3)


@pytest.mark.parametrize("n", range(1, 9))
@pytest.mark.parametrize("l", range(1, 9))
def test_counting_agrees(n, l):
    c = picard.state_count(n, l)
    assert c == math.comb(n + l, n)
    states = picard.enumerate_states(n, l)
    assert len(states) == c == picard.young_dimension(n, l) == qh.fiber_dimension(n, l)
    assert len(set(states)) == c
    assert states == sorted(states)


@given(st.integers(1, 200))
def test_l1_gives_n_plus_one(n):
    assert picard.state_count(n, 1) == n + 1


def test_representation_info():
    info = picard.representation_info(2, 3)
    assert info.dimension == 10 and info.rank == 5 and info.tableau == (1, 1)


def test_degeneracy_note():
    assert not picard.vacuum_degeneracy_note(3, 1)["degenerate_vacuum"]
    assert picard.vacuum_degeneracy_note(3, 2)["degenerate_vacuum"]
    assert picard.vacuum_degeneracy_note(3, 0)["dimension"] == 1


def test_report_label_limit():
    assert len(picard.report(2, 2)["labels"]) == 6
    big = picard.report(10, 10)
    assert big["dimension"] == math.comb(20, 10) and "labels" not in big
    assert "labels" not in picard.report(2, 2, labels=False)


@pytest.mark.parametrize("n,l", [(0, 1), (1, 0), (2, -1)])
def test_rejects(n, l):
    with pytest.raises(DomainError):
        picard.state_count(n, l)
