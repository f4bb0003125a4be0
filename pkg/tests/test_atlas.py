import numpy as np
import pytest
from hypothesis import given, settings

from qhbundle import atlas
from qhbundle.atlas import AffineCoords, ProjectivePoint
from qhbundle.errors import ChartExcluded, DomainError

from conftest import generic_homogeneous, random_z


def test_normalize_leading_component_is_one():
    Z = atlas.normalize([1 + 1j, 4j, 0.5])
    assert Z[1] == 1.0
    assert np.allclose(Z, np.array([1 + 1j, 4j, 0.5]) / 4j)


def test_normalize_tie_goes_to_lowest_index():
    Z = atlas.normalize([2.0, -2.0 * 1j, 1.0])
    assert Z[0] == 1.0
    assert np.isclose(Z[1], -1j)


@pytest.mark.parametrize("bad", [[0, 0], [1], [np.nan, 1], [[1, 2]]])
def test_normalize_rejects(bad):
    with pytest.raises(DomainError):
        atlas.normalize(bad)


def test_projective_point_scale_invariance():
    p = ProjectivePoint([1, 2j, -3])
    q = ProjectivePoint(np.array([1, 2j, -3]) * (0.3 - 7j))
    assert p == q
    assert p != ProjectivePoint([1, 2j, 3])
    assert p != ProjectivePoint([1, 2j])


def test_projective_point_is_immutable():
    p = ProjectivePoint([1, 2])
    with pytest.raises(ValueError):
        p.homogeneous[0] = 5


def test_affine_coords_validation():
    with pytest.raises(DomainError):
        AffineCoords(3, [1.0])
    with pytest.raises(DomainError):
        AffineCoords(0, [1.0, 2.0])
    with pytest.raises(DomainError):
        AffineCoords(1, [np.inf])
    a = AffineCoords(2, [1.0, 2.0])
    assert a.n == 2
    assert a == AffineCoords(2, np.array([1.0, 2.0]) + 1e-13)


def test_affine_coordinate_layout():
    p = ProjectivePoint([2, 4, 8])
    a = atlas.to_affine(p, 2)
    assert np.allclose(a.z, [0.5, 2.0])
    assert np.allclose(atlas.homogeneous(a), [0.5, 1.0, 2.0])


def test_cp1_transition_is_inversion():
    a = AffineCoords(1, [0.3 - 0.4j])
    b = atlas.transition(a, 2)
    assert np.isclose(b.z[0], 1 / (0.3 - 0.4j))


def test_point_at_infinity_excluded():
    p = ProjectivePoint([1, 0])
    assert atlas.to_affine(p, 1).z[0] == 0
    with pytest.raises(ChartExcluded):
        atlas.to_affine(p, 2)
    with pytest.raises(ChartExcluded):
        atlas.transition(AffineCoords(1, [0.0]), 2)
    with pytest.raises(ChartExcluded):
        atlas.jacobian(AffineCoords(1, [0.0]), 2)


def test_chart_tolerance_boundary():
    assert atlas.in_chart([1.0, 2e-10], 2)
    assert not atlas.in_chart([1.0, 5e-11], 2)


def test_preferred_chart():
    assert atlas.preferred_chart(ProjectivePoint([0.1, 3, -2])) == 2
    assert atlas.preferred_chart(ProjectivePoint([1, -1])) == 1


def test_same_chart_jacobian_is_identity():
    a = AffineCoords(2, [1 + 1j, 2.0])
    assert np.array_equal(atlas.jacobian(a, 2), np.eye(2))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_jacobian_matches_finite_differences(n, rng):
    h = 1e-6
    for _ in range(10):
        p = ProjectivePoint(random_z(rng, n + 1) + 0.5)
        k, j = (int(c) for c in rng.choice(np.arange(1, n + 2), size=2, replace=False))
        a = atlas.to_affine(p, k)
        J = atlas.jacobian(a, j)
        fd = np.empty((n, n), dtype=complex)
        for c in range(n):
            e = np.zeros(n, dtype=complex)
            e[c] = h
            plus = atlas.transition(AffineCoords(k, a.z + e), j).z
            minus = atlas.transition(AffineCoords(k, a.z - e), j).z
            fd[:, c] = (plus - minus) / (2 * h)
        assert np.allclose(J, fd, atol=1e-6 * (1 + np.abs(J).max()))


def test_cp1_jacobian_closed_form():
    w = 0.7 + 0.2j
    assert np.isclose(atlas.jacobian(AffineCoords(1, [w]), 2)[0, 0], -1 / w**2)


@settings(max_examples=200, deadline=None)
@given(generic_homogeneous())
def test_round_trip_every_chart(Z):
    p = ProjectivePoint(Z)
    for k in range(1, p.n + 2):
        assert atlas.to_projective(atlas.to_affine(p, k)) == p


@settings(max_examples=200, deadline=None)
@given(generic_homogeneous())
def test_triple_overlap_cocycle(Z):
    p = ProjectivePoint(Z)
    n = p.n
    i, j, k = 1, min(2, n + 1), n + 1
    a = atlas.to_affine(p, i)
    b = atlas.transition(a, j)
    c = atlas.transition(b, k)
    assert atlas.transition(c, i) == a
    prod = atlas.jacobian(c, i) @ atlas.jacobian(b, k) @ atlas.jacobian(a, j)
    assert np.max(np.abs(prod - np.eye(n))) < 1e-9
    direct = atlas.jacobian(a, k)
    assert np.allclose(atlas.jacobian(b, k) @ atlas.jacobian(a, j), direct, atol=1e-9)
