import numpy as np
import pytest

from lorentzsim import exceptions
from lorentzsim.catalog import builtin
from lorentzsim.curves import transform_curve
from lorentzsim.frenet import CausalCase, frenet_apparatus
from lorentzsim.minkowski import euclidean_norm
from lorentzsim.pshape import (
    PShapeProfile,
    PShapeSource,
    focal_curve,
    focal_data,
    proposition_check,
    pshape_distance,
    pshape_from_derivatives,
    pshape_from_frenet,
    similarity_frame_residual,
)
from lorentzsim.quaternions import PSimilarity, random_psimilarity

from .test_catalog import SPACE_CURVES, SPHERICAL_CURVES


ALL_CURVES = SPACE_CURVES + [(name, constants) for name, constants, _ in SPHERICAL_CURVES]


def _profile(name, n = 2001, **constants):
    return pshape_from_frenet(frenet_apparatus(builtin(name, **constants).sample(n = n)))


@pytest.mark.parametrize('name, constants, kappa_tilde, tau_tilde', [
    ('example_or_i', dict(a = 1), 0.0, -1.0),
    ('example_or_ii', dict(a = 2), 0.0, -2.0),
    ('example_or_iii', dict(a = 2), 0.0, -2.0),
    ('self_similar_t', dict(a = 1, b = 0.5), 0.5, -1.0),
    ('self_similar_c', dict(a = 2, b = 1), 1.0, -2.0),
    ('self_similar_q', dict(a = 2, b = 1), 1.0, -2.0),
])
def test_constant_pshapes(name, constants, kappa_tilde, tau_tilde):
    profile = _profile(name, **constants)
    assert profile.source is PShapeSource.FROM_FRENET
    np.testing.assert_allclose(profile.kappa_tilde, kappa_tilde, atol = 1e-5)
    np.testing.assert_allclose(profile.tau_tilde, tau_tilde, atol = 1e-5)


def test_log_shape():
    profile = _profile('example_log_shape', a = 2)
    np.testing.assert_allclose(profile.sigma * profile.kappa_tilde, 1.0, atol = 1e-4)
    np.testing.assert_allclose(profile.tau_tilde, -2.0, atol = 1e-5)


@pytest.mark.parametrize('name, constants', ALL_CURVES)
def test_both_routes_agree(name, constants):
    curve = builtin(name, **constants).sample()
    fd = frenet_apparatus(curve)
    from_frenet = pshape_from_frenet(fd)
    from_derivatives = pshape_from_derivatives(curve)
    assert from_derivatives.source is PShapeSource.FROM_DERIVATIVES
    assert from_derivatives.causal_case is fd.causal_case
    np.testing.assert_allclose(from_derivatives.kappa_tilde, from_frenet.kappa_tilde, atol = 1e-5)
    np.testing.assert_allclose(from_derivatives.tau_tilde, from_frenet.tau_tilde, atol = 1e-5)


def test_planar_curve_has_no_pshape_torsion(circle):
    profile = pshape_from_derivatives(circle.without_derivatives())
    assert profile.causal_case is CausalCase.TIMELIKE_Q
    np.testing.assert_allclose(profile.tau_tilde, 0.0, atol = 1e-6)


@pytest.mark.parametrize('name, constants', [
    ('example_log_shape', dict(a = 2)),
    ('self_similar_c', dict(a = 2, b = 1)),
])
def test_pshape_is_invariant(name, constants):
    curve = builtin(name, **constants).sample(n = 1001)
    reference = pshape_from_frenet(frenet_apparatus(curve))
    for seed in range(100):
        moved = pshape_from_frenet(frenet_apparatus(transform_curve(curve, random_psimilarity(seed))))
        assert pshape_distance(moved, reference).direct < 1e-5


@pytest.mark.parametrize('mu', [1e-5, -1e-5, 1e5])
def test_pshape_does_not_depend_on_the_scale(mu):
    curve = builtin('self_similar_c', a = 2, b = 1).sample(n = 1001)
    f = PSimilarity.from_parameters(mu, [1, 0, 0, 0], [0, 0, 0])
    moved = transform_curve(curve, f)
    reference = pshape_from_frenet(frenet_apparatus(curve))
    distance = pshape_distance(pshape_from_frenet(frenet_apparatus(moved)), reference)
    assert (distance.direct if mu > 0 else distance.flipped) < 1e-5
    distance = pshape_distance(pshape_from_derivatives(moved), reference)
    assert (distance.direct if mu > 0 else distance.flipped) < 1e-5


def test_reversing_similarity_negates_pshape_torsion():
    curve = builtin('self_similar_q', a = 2, b = 1).sample(n = 1001)
    reference = pshape_from_frenet(frenet_apparatus(curve))
    moved = pshape_from_frenet(frenet_apparatus(transform_curve(curve, random_psimilarity(4, reversing = True))))
    distance = pshape_distance(moved, reference)
    assert distance.flipped < 1e-5
    assert distance.direct > 1.0
    assert distance.is_flipped
    assert float(distance) == distance.flipped


def test_distance_between_different_pshapes():
    p = _profile('self_similar_t', n = 1001, a = 1, b = 0.5)
    q = _profile('self_similar_t', n = 1001, a = 1, b = 0.6)
    assert pshape_distance(p, p).value < 1e-12
    assert pshape_distance(p, q).value >= 0.1 - 1e-5


def test_distance_without_overlap():
    p = PShapeProfile(np.linspace(0, 1, 10), np.zeros(10), np.zeros(10), 'timelike-t')
    q = PShapeProfile(np.linspace(5, 6, 10), np.zeros(10), np.zeros(10), 'timelike-t')
    with pytest.raises(exceptions.NoOverlap):
        pshape_distance(p, q)


@pytest.mark.parametrize('sigma, kappa_tilde', [
    ([0.0], [0.0]),
    ([0.0, 1.0], [0.0, np.nan]),
    ([1.0, 0.0], [0.0, 0.0]),
])
def test_invalid_profiles(sigma, kappa_tilde):
    with pytest.raises(exceptions.InvalidProfile):
        PShapeProfile(sigma, kappa_tilde, np.zeros(len(sigma)), 'timelike-t')


def test_profile_dict_form():
    profile = _profile('self_similar_c', n = 101, a = 2, b = 1)
    again = PShapeProfile.from_dict(profile.to_dict())
    assert again.causal_case is CausalCase.TIMELIKE_C
    assert again.source is PShapeSource.FROM_FRENET
    np.testing.assert_array_equal(again.tau_tilde, profile.tau_tilde)
    with pytest.raises(exceptions.InvalidProfile):
        PShapeProfile.from_dict({'samples': [[0, 0, 0], [1, 0, 0]], 'causal_case': 'timelike-x'})


def test_interpolation_reproduces_the_nodes():
    profile = _profile('example_log_shape', n = 201, a = 2)
    kappa_tilde, tau_tilde = profile.interpolate(profile.sigma)
    np.testing.assert_allclose(kappa_tilde, profile.kappa_tilde)
    np.testing.assert_allclose(tau_tilde, profile.tau_tilde)


def test_osculating_spheres_of_a_spherical_curve(sphere_spiral):
    fd = frenet_apparatus(sphere_spiral)
    assert fd.causal_case is CausalCase.TIMELIKE_Q
    focal = focal_data(fd)
    np.testing.assert_allclose(focal.center, 0.0, atol = 1e-6)
    np.testing.assert_allclose(focal.radius, 1.0, atol = 1e-6)
    np.testing.assert_allclose(focal.m1, fd.signs[0] * fd.signs[1] / fd.kappa)
    assert len(focal_curve(fd)) == len(fd)


def test_planar_curve_has_no_osculating_sphere(circle):
    with pytest.raises(exceptions.VanishingTorsion):
        focal_data(frenet_apparatus(circle))


def test_constant_curvature_means_constant_m1(timelike_helix):
    fd = frenet_apparatus(timelike_helix)
    focal = focal_data(fd)
    np.testing.assert_allclose(focal.m2, 0.0, atol = 1e-8)
    np.testing.assert_allclose(focal.m1, focal.m1[0])
    check = proposition_check(fd)
    assert check.kappa_residual < 1e-5
    assert check.skipped == len(fd) - 8


@pytest.mark.parametrize('name, constants', [
    ('self_similar_t', dict(a = 1, b = 0.5)),
    ('self_similar_c', dict(a = 2, b = 1)),
    ('example_log_shape', dict(a = 2)),
])
def test_pshape_from_focal_curvatures(name, constants):
    check = proposition_check(frenet_apparatus(builtin(name, **constants).sample()))
    assert check.kappa_residual < 1e-4
    assert check.tau_residual < 1e-4
    assert check.skipped == 0


@pytest.mark.parametrize('name, constants', [
    ('example_or_iii', dict(a = 2)),
    ('self_similar_c', dict(a = 2, b = 1)),
    ('self_similar_q', dict(a = 2, b = 1)),
])
def test_similarity_frame_equations(name, constants):
    fd = frenet_apparatus(builtin(name, **constants).sample())
    assert similarity_frame_residual(fd) < 1e-5


def test_focal_centers_move_with_the_curve(sphere_spiral):
    f = random_psimilarity(8)
    centers = focal_data(frenet_apparatus(sphere_spiral)).center
    moved = focal_data(frenet_apparatus(transform_curve(sphere_spiral, f))).center
    assert np.max(euclidean_norm(moved - f.apply(centers))) < 1e-5
