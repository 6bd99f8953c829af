import numpy as np
import pytest

from lorentzsim.catalog import builtin
from lorentzsim.curves import CurveSamples, ParamKind


def _product_derivatives(f, g):
    """
    Derivatives 0..3 of f * g from the derivatives 0..3 of f and g (Leibniz).
    """
    return (
        f[0] * g[0],
        f[1] * g[0] + f[0] * g[1],
        f[2] * g[0] + 2 * f[1] * g[1] + f[0] * g[2],
        f[3] * g[0] + 3 * f[2] * g[1] + 3 * f[1] * g[2] + f[0] * g[3],
    )


def circle_curve(radius = 1.0, n = 2001, stop = 2 * np.pi):
    """
    The spacelike circle (0, R cos t, R sin t) with exact derivatives.
    """
    t = np.linspace(0.0, stop, n)
    c, s, z = np.cos(t), np.sin(t), np.zeros_like(t)
    return CurveSamples(
        t,
        radius * np.column_stack((z, c, s)),
        radius * np.column_stack((z, -s, c)),
        radius * np.column_stack((z, -c, -s)),
        radius * np.column_stack((z, s, -c))
    )


def spiral_on_sphere(lam = 0.5, n = 2001):
    """
    The curve (sinh λt, cosh λt cos t, cosh λt sin t) on the Lorentzian unit sphere.
    """
    t = np.linspace(0.3, 1.5, n)
    sh, ch = np.sinh(lam * t), np.cosh(lam * t)
    hyperbolic = (ch, lam * sh, lam ** 2 * ch, lam ** 3 * sh)
    cos = (np.cos(t), -np.sin(t), -np.cos(t), np.sin(t))
    sin = (np.sin(t), np.cos(t), -np.sin(t), -np.cos(t))
    x0 = (sh, lam * ch, lam ** 2 * sh, lam ** 3 * ch)
    x1 = _product_derivatives(hyperbolic, cos)
    x2 = _product_derivatives(hyperbolic, sin)
    columns = [np.column_stack((x0[k], x1[k], x2[k])) for k in range(4)]
    return CurveSamples(t, *columns)


@pytest.fixture
def circle():
    return circle_curve()


@pytest.fixture
def sphere_spiral():
    return spiral_on_sphere()


@pytest.fixture
def straight_line():
    t = np.linspace(0.0, 1.0, 101)
    return CurveSamples(t, np.column_stack((0.5 * t, t, 2 * t)))


@pytest.fixture
def timelike_helix():
    return builtin('example_or_ii', a = 2).sample()


@pytest.fixture
def spacelike_self_similar():
    return builtin('self_similar_t', a = 1, b = 0.5).sample(n = 1001)


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def random_vectors(rng, n, character):
    """
    Random vectors of the given causal character, future pointing if timelike.
    """
    spatial = rng.normal(size = (n, 2))
    size = np.linalg.norm(spatial, axis = 1)
    if character == 'timelike':
        time = size + rng.uniform(0.1, 2.0, size = n)
    else:
        time = size * rng.uniform(-0.9, 0.9, size = n)
    return np.column_stack((time, spatial))


def arbitrary(curve):
    """
    The same samples, with the parameter treated as arbitrary.
    """
    from dataclasses import replace
    return replace(curve, param_kind = ParamKind.ARBITRARY)
