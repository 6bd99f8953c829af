import numpy as np
import pytest

from lorentzsim import exceptions
from lorentzsim.catalog import builtin, catalog_names
from lorentzsim.curves import ParamKind, curve_causal_character, differentiate
from lorentzsim.minkowski import CausalCharacter, UnitSphere, inner, norm


SPACE_CURVES = [
    ('example_or_i', dict(a = 1)),
    ('example_or_ii', dict(a = 2)),
    ('example_or_iii', dict(a = 2)),
    ('example_log_shape', dict(a = 2)),
    ('self_similar_t', dict(a = 1, b = 0.5)),
    ('self_similar_c', dict(a = 2, b = 1)),
    ('self_similar_q', dict(a = 2, b = 1)),
]

SPHERICAL_CURVES = [
    ('c_i2', dict(a = 1), UnitSphere.LORENTZIAN),
    ('c_i3', dict(a = 2), UnitSphere.HYPERBOLIC),
    ('c_i4', dict(a = 2), UnitSphere.LORENTZIAN),
]


def test_catalog_names():
    assert catalog_names() == sorted(
        [name for name, _ in SPACE_CURVES] + [name for name, _, _ in SPHERICAL_CURVES]
    )


def test_first_point_of_or_i():
    np.testing.assert_allclose(builtin('example_or_i', a = 1)(0.0), [[0.5, 0.0, 0.0]])


def test_unknown_example():
    with pytest.raises(exceptions.UnknownExample):
        builtin('no_such_curve', a = 1)


@pytest.mark.parametrize('constants', [dict(), dict(a = 1, b = 2), dict(a = 'x'), dict(a = float('inf'))])
def test_invalid_constants(constants):
    with pytest.raises(exceptions.InvalidConstants):
        builtin('example_or_i', **constants)


@pytest.mark.parametrize('name, constants', [
    ('example_or_ii', dict(a = 1)),
    ('example_or_iii', dict(a = 0.5)),
    ('self_similar_c', dict(a = 1, b = 1)),
    ('self_similar_c', dict(a = 2, b = 0)),
    ('self_similar_t', dict(a = 0, b = 1)),
    ('self_similar_q', dict(a = 1.25, b = 0.75)),
])
def test_poles_are_rejected(name, constants):
    with pytest.raises(exceptions.InvalidConstants):
        builtin(name, **constants)


def test_log_shape_needs_positive_sigma():
    curve = builtin('example_log_shape', a = 1)
    with pytest.raises(exceptions.InvalidConstants):
        curve.sample(-1.0, 1.0, 101)


def test_sampling_defaults():
    curve = builtin('self_similar_t', a = 1, b = 0.5).sample()
    assert len(curve) == 2001
    assert curve.param_kind is ParamKind.SPHERICAL
    assert curve.has_derivatives
    assert builtin('c_i2', a = 1).sample(n = 11).param_kind is ParamKind.ARC_LENGTH
    assert builtin('example_log_shape', a = 1).sample(n = 11).params[0] == 0.5


@pytest.mark.parametrize('name, constants, sphere', SPHERICAL_CURVES)
def test_spherical_curves_are_on_their_sphere(name, constants, sphere):
    curve = builtin(name, **constants)
    assert curve.sphere is sphere
    samples = curve.sample(n = 401)
    np.testing.assert_allclose(inner(samples.points, samples.points), sphere.radius_sign, atol = 1e-10)
    np.testing.assert_allclose(norm(samples.d1), 1.0, atol = 1e-10)
    if sphere is UnitSphere.HYPERBOLIC:
        assert np.all(samples.points[:, 0] > 0)


@pytest.mark.parametrize('name, constants', SPACE_CURVES + [(n, c) for n, c, _ in SPHERICAL_CURVES])
def test_derivative_channels_match_the_positions(name, constants):
    curve = builtin(name, **constants).sample(n = 2001)
    values = [curve.points, curve.d1, curve.d2]
    for order, channel in enumerate((curve.d1, curve.d2, curve.d3)):
        estimate = differentiate(curve.params, values[order], 1)
        scale = max(1.0, np.max(np.abs(channel)))
        np.testing.assert_allclose(estimate, channel, atol = 1e-6 * scale)


@pytest.mark.parametrize('name, constants, character', [
    ('example_or_i', dict(a = 1), CausalCharacter.SPACELIKE),
    ('example_or_ii', dict(a = 2), CausalCharacter.TIMELIKE),
    ('example_or_iii', dict(a = 2), CausalCharacter.SPACELIKE),
    ('self_similar_c', dict(a = 2, b = 1), CausalCharacter.TIMELIKE),
])
def test_causal_character_of_examples(name, constants, character):
    assert curve_causal_character(builtin(name, **constants).sample(n = 101)) is character


def test_spherical_parametrization_of_self_similar_curves():
    # |α'| = 1 / κ = exp(b σ)
    curve = builtin('self_similar_c', a = 2, b = 1).sample(n = 101)
    np.testing.assert_allclose(norm(curve.d1), np.exp(curve.params), rtol = 1e-12)
