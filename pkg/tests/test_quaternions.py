import logging

import numpy as np
import pytest

from lorentzsim import exceptions
from lorentzsim.minkowski import METRIC, AngleKind, UnitSphere, angle_between, causal_signs, inner, on_unit_sphere
from lorentzsim.quaternions import (
    Orientation,
    PSimilarity,
    SplitQuaternion,
    compose,
    from_rotation_matrix,
    inverse,
    random_psimilarity,
    random_unit_timelike,
    rotate,
)

from .conftest import random_vectors


I = SplitQuaternion(0, 1, 0, 0)
J = SplitQuaternion(0, 0, 1, 0)
K = SplitQuaternion(0, 0, 0, 1)


def _components(q):
    return q.as_array()


def test_multiplication_table():
    np.testing.assert_allclose(_components(I * I), [-1, 0, 0, 0])
    np.testing.assert_allclose(_components(J * J), [1, 0, 0, 0])
    np.testing.assert_allclose(_components(K * K), [1, 0, 0, 0])
    np.testing.assert_allclose(_components(I * J), _components(K))
    np.testing.assert_allclose(_components(J * I), -_components(K))
    np.testing.assert_allclose(_components(J * K), -_components(I))
    np.testing.assert_allclose(_components(K * I), _components(J))


def test_norm_form_is_multiplicative(rng):
    for _ in range(20):
        p = SplitQuaternion.from_array(rng.normal(size = 4))
        q = SplitQuaternion.from_array(rng.normal(size = 4))
        assert (p * q).norm_form() == pytest.approx(p.norm_form() * q.norm_form(), rel = 1e-10, abs = 1e-12)


def test_norm_form_of_vector_is_minus_inner_product(rng):
    for r in rng.normal(size = (10, 3)):
        assert SplitQuaternion.from_vector(r).norm_form() == pytest.approx(-inner(r, r))


def test_inverse(rng):
    q = SplitQuaternion.from_array(rng.normal(size = 4))
    np.testing.assert_allclose(_components(q * q.inverse()), [1, 0, 0, 0], atol = 1e-12)


def test_null_quaternion_has_no_inverse():
    with pytest.raises(exceptions.DegenerateQuaternion):
        SplitQuaternion(1, 0, 1, 0).inverse()


def test_rotation_keeps_vectors_pure(rng):
    q = random_unit_timelike(rng)
    for r in rng.normal(size = (10, 3)):
        image = q * SplitQuaternion.from_vector(r) * q.inverse()
        assert image.w == pytest.approx(0, abs = 1e-12)
        np.testing.assert_allclose(image.vector, rotate(q, r), atol = 1e-12)


def test_rotation_matrix_is_in_the_identity_component(rng):
    for _ in range(20):
        matrix = random_unit_timelike(rng).rotation_matrix()
        np.testing.assert_allclose(matrix.T @ METRIC @ matrix, METRIC, atol = 1e-10)
        assert np.linalg.det(matrix) == pytest.approx(1)
        # Future pointing vectors stay future pointing
        assert matrix[0, 0] >= 1 - 1e-12


def test_rotate_requires_unit_timelike():
    with pytest.raises(exceptions.NotUnitTimelike):
        rotate(SplitQuaternion(2, 0, 0, 0), [0, 1, 0])


def test_from_rotation_matrix_recovers_the_quaternion(rng):
    for _ in range(20):
        q = random_unit_timelike(rng)
        found = from_rotation_matrix(q.rotation_matrix())
        expected = _components(q) if q.w >= 0 else -_components(q)
        np.testing.assert_allclose(_components(found), expected, atol = 1e-8)


def test_from_rotation_matrix_rejects_improper_maps():
    with pytest.raises(exceptions.QuaternionExtractionFailure) as info:
        from_rotation_matrix(np.diag([1.0, 1.0, -1.0]))
    np.testing.assert_allclose(info.value.matrix, np.diag([1.0, 1.0, -1.0]))
    with pytest.raises(exceptions.QuaternionExtractionFailure):
        from_rotation_matrix(-np.eye(3))


def test_apply():
    f = PSimilarity(2.0, SplitQuaternion(), (1, 0, 0))
    np.testing.assert_allclose(f.apply([0, 1, 0]), [1, 2, 0])
    np.testing.assert_allclose(f([[0, 1, 0], [1, 1, 1]]), [[1, 2, 0], [3, 2, 2]])


def test_zero_scale_is_rejected():
    with pytest.raises(exceptions.InputError):
        PSimilarity(0.0)


def test_compose_and_inverse(rng):
    f = random_psimilarity(rng)
    g = random_psimilarity(rng)
    points = rng.normal(size = (30, 3))
    np.testing.assert_allclose(compose(f, g).apply(points), f.apply(g.apply(points)), atol = 1e-10)
    np.testing.assert_allclose(inverse(f).apply(f.apply(points)), points, atol = 1e-10)


def _assert_same_similarity(f, g):
    assert f.mu == pytest.approx(g.mu, rel = 1e-12)
    np.testing.assert_allclose(f.linear_part(), g.linear_part(), atol = 1e-10)
    np.testing.assert_allclose(f.b, g.b, atol = 1e-10)


def test_compose_is_associative(rng):
    for _ in range(20):
        f, g, h = (random_psimilarity(rng, reversing = rng.uniform() < 0.5) for _ in range(3))
        _assert_same_similarity(compose(compose(f, g), h), compose(f, compose(g, h)))


def test_inverse_of_the_inverse(rng):
    for _ in range(20):
        f = random_psimilarity(rng, reversing = rng.uniform() < 0.5)
        _assert_same_similarity(inverse(inverse(f)), f)
        _assert_same_similarity(compose(f, inverse(f)), PSimilarity.identity())


def _unit(vectors):
    return vectors / np.sqrt(np.abs(inner(vectors, vectors)))[:, None]


@pytest.mark.parametrize('character, sphere', [
    ('spacelike', UnitSphere.LORENTZIAN),
    ('timelike', UnitSphere.HYPERBOLIC),
])
def test_rotations_preserve_the_unit_spheres(rng, character, sphere):
    points = _unit(random_vectors(rng, 200, character))
    for _ in range(20):
        q = random_unit_timelike(rng)
        for image in rotate(q, points):
            membership = on_unit_sphere(image, sphere, tol = 1e-10)
            assert membership
            if sphere is UnitSphere.HYPERBOLIC:
                assert membership.component == 'future'


def test_random_psimilarity_is_deterministic():
    f = random_psimilarity(7)
    g = random_psimilarity(7)
    assert f.mu == g.mu
    np.testing.assert_array_equal(f.q.as_array(), g.q.as_array())
    np.testing.assert_array_equal(f.b, g.b)
    assert 0.5 <= f.mu <= 2.0
    assert f.q.norm_form() == pytest.approx(1)


def test_orientation():
    assert random_psimilarity(1).orientation is Orientation.PRESERVING
    assert random_psimilarity(1, reversing = True).orientation is Orientation.REVERSING


@pytest.mark.parametrize('character', ['timelike', 'spacelike'])
def test_causal_character_is_preserved(rng, character):
    vectors = random_vectors(rng, 1000, character)
    for seed in range(5):
        f = random_psimilarity(seed)
        mapped = f.apply_linear(vectors)
        np.testing.assert_array_equal(causal_signs(mapped), causal_signs(vectors))


@pytest.mark.parametrize('first, second', [
    ('timelike', 'timelike'),
    ('spacelike', 'spacelike'),
    ('timelike', 'spacelike'),
])
def test_angles_are_preserved(rng, first, second):
    x = random_vectors(rng, 1000, first)
    y = random_vectors(rng, 1000, second)
    for u, v in zip(x, y):
        f = random_psimilarity(rng)
        before = angle_between(u, v)
        after = angle_between(f.apply_linear(u), f.apply_linear(v))
        np.testing.assert_array_equal(causal_signs(f.apply_linear([u, v])), causal_signs([u, v]))
        ratio = abs(inner(u, v)) / np.sqrt(abs(inner(u, u) * inner(v, v)))
        if abs(ratio - 1) < 1e-3:
            continue
        assert after.kind is before.kind
        assert after.reason == before.reason
        if before.kind is not AngleKind.UNDEFINED:
            assert after.value == pytest.approx(before.value, abs = 1e-9)


def test_from_parameters_normalizes_and_warns(caplog):
    with caplog.at_level(logging.WARNING, logger = 'lorentzsim.quaternions'):
        f = PSimilarity.from_parameters(1.0, [2, 0, 0, 0], [0, 0, 0])
    assert f.q.norm_form() == pytest.approx(1)
    assert 'normalized split quaternion' in caplog.text


def test_from_parameters_rejects_spacelike_quaternions():
    with pytest.raises(exceptions.NotUnitTimelike):
        PSimilarity.from_parameters(1.0, [0, 0, 1, 0], [0, 0, 0])


def test_dict_form():
    f = random_psimilarity(3)
    g = PSimilarity.from_dict(f.to_dict())
    assert g.mu == f.mu
    np.testing.assert_allclose(g.q.as_array(), f.q.as_array())
    np.testing.assert_array_equal(g.b, f.b)
    with pytest.raises(exceptions.InputError):
        PSimilarity.from_dict({'mu': 1.0})
