"""
Built-in closed-form curves.

Every entry is parametrized by its own spherical arc length except the three
spherical curves, which are parametrized by arc length and lie on a unit sphere.
Derivatives are exact: each space curve has the form ``α' = B(σ) c(σ)`` for a
unit speed spherical curve ``c`` and a positive weight ``B``.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from . import exceptions
from .curves import CurveSamples, ParamKind
from .minkowski import UnitSphere
from .settings import setting_or_default


logger = logging.getLogger(__name__)


_CATALOG = {}


@dataclass(frozen = True)
class _Entry:
    factory: object
    constants: tuple
    default_range: tuple
    param_kind: ParamKind
    sphere: UnitSphere


def catalog_entry(name, *constants, default_range = (0.0, 2.0), param_kind = ParamKind.SPHERICAL, sphere = None):
    """
    Decorator that registers a factory for a built-in curve.

    The factory receives the named constants as keyword arguments and returns a
    function mapping a parameter array to ``(points, d1, d2, d3)``.
    """
    def decorator(factory):
        _CATALOG[name] = _Entry(factory, constants, default_range, param_kind, sphere)
        return factory
    return decorator


def catalog_names():
    return sorted(_CATALOG)


@dataclass(frozen = True, eq = False)
class AnalyticCurve:
    """
    A closed-form curve with exact derivatives.
    """
    name: str
    constants: dict
    evaluator: object
    default_range: tuple
    param_kind: ParamKind
    sphere: UnitSphere = None
    _validators: list = field(default_factory = list, repr = False)

    def evaluate(self, params):
        """
        Returns ``(points, d1, d2, d3)`` at the given parameter values.
        """
        params = np.atleast_1d(np.asarray(params, dtype = float))
        return self.evaluator(params)

    def __call__(self, params):
        return self.evaluate(params)[0]

    def sample(self, start = None, stop = None, n = None):
        """
        Samples the curve on a uniform grid, keeping the exact derivatives.
        """
        default_start, default_stop = self.default_range
        start = default_start if start is None else start
        stop = default_stop if stop is None else stop
        n = setting_or_default(n, 'SAMPLES')
        params = np.linspace(start, stop, num = int(n))
        points, d1, d2, d3 = self.evaluate(params)
        return CurveSamples(params, points, d1, d2, d3, self.param_kind)


def builtin(name, **constants):
    """
    Returns the named built-in curve with the given constants.
    """
    try:
        entry = _CATALOG[name]
    except KeyError:
        raise exceptions.UnknownExample(
            'unknown example {!r}, expected one of {}'.format(name, ', '.join(catalog_names()))
        )
    missing = set(entry.constants) - set(constants)
    unexpected = set(constants) - set(entry.constants)
    if missing or unexpected:
        raise exceptions.InvalidConstants(
            '{} takes constants {}, got {}'.format(name, ', '.join(entry.constants), ', '.join(sorted(constants)))
        )
    try:
        values = {key: float(value) for key, value in constants.items()}
    except (TypeError, ValueError):
        raise exceptions.InvalidConstants('constants for {} must be numbers'.format(name))
    if not all(np.isfinite(v) for v in values.values()):
        raise exceptions.InvalidConstants('constants for {} must be finite'.format(name))
    return AnalyticCurve(
        name,
        values,
        entry.factory(**values),
        entry.default_range,
        entry.param_kind,
        entry.sphere
    )


def _require(condition, message):
    if not condition:
        raise exceptions.InvalidConstants(message)


def _root_a2_minus_1(a):
    _require(a * a > 1, 'a^2 must exceed 1, got a = {!r}'.format(a))
    return np.sqrt(a * a - 1)


def _stack(*components):
    return np.stack(np.broadcast_arrays(*components), axis = -1)


# Unit speed spherical curves, returned with their first three derivatives

def _pseudo_circle(a):
    # A timelike pseudo-circle on the Lorentzian unit sphere
    q = np.sqrt(1 + a * a)
    def spherical(s):
        sh, ch = np.sinh(q * s), np.cosh(q * s)
        return (
            _stack(sh / q, -ch / q, a / q),
            _stack(ch, -sh, 0.0),
            q * _stack(sh, -ch, 0.0),
            q * q * _stack(ch, -sh, 0.0),
        )
    return spherical


def _hyperbolic_circle(a):
    # A spacelike circle on the future hyperbolic unit sphere
    n = _root_a2_minus_1(a)
    def spherical(s):
        sn, cs = np.sin(n * s), np.cos(n * s)
        return (
            _stack(a / n, sn / n, cs / n),
            _stack(0.0, cs, -sn),
            n * _stack(0.0, -sn, -cs),
            n * n * _stack(0.0, -cs, sn),
        )
    return spherical


def _hyperbola(a):
    # A spacelike hyperbola on the Lorentzian unit sphere
    n = _root_a2_minus_1(a)
    def spherical(s):
        sh, ch = np.sinh(n * s), np.cosh(n * s)
        return (
            _stack(ch / n, sh / n, a / n),
            _stack(sh, ch, 0.0),
            n * _stack(ch, sh, 0.0),
            n * n * _stack(sh, ch, 0.0),
        )
    return spherical


def _integrated(position, weight, spherical):
    """
    Evaluator for a curve with ``α' = B c``, given its closed-form position.

    ``weight`` returns ``(B, B', B'')``.
    """
    def evaluator(params):
        c, c1, c2, _ = spherical(params)
        w0, w1, w2 = (np.asarray(w, dtype = float)[..., None] for w in weight(params))
        d1 = w0 * c
        d2 = w1 * c + w0 * c1
        d3 = w2 * c + 2 * w1 * c1 + w0 * c2
        return position(params), d1, d2, d3
    return evaluator


def _unit_weight(s):
    return np.ones_like(s), np.zeros_like(s), np.zeros_like(s)


def _exponential_weight(b):
    def weight(s):
        e = np.exp(b * s)
        return e, b * e, b * b * e
    return weight


def _spherical_evaluator(spherical):
    def evaluator(params):
        return spherical(params)
    return evaluator


@catalog_entry('c_i2', 'a', default_range = (0.0, 2.0), param_kind = ParamKind.ARC_LENGTH, sphere = UnitSphere.LORENTZIAN)
def c_i2(a):
    return _spherical_evaluator(_pseudo_circle(a))


@catalog_entry('c_i3', 'a', default_range = (0.0, 2.0), param_kind = ParamKind.ARC_LENGTH, sphere = UnitSphere.HYPERBOLIC)
def c_i3(a):
    return _spherical_evaluator(_hyperbolic_circle(a))


@catalog_entry('c_i4', 'a', default_range = (0.0, 2.0), param_kind = ParamKind.ARC_LENGTH, sphere = UnitSphere.LORENTZIAN)
def c_i4(a):
    return _spherical_evaluator(_hyperbola(a))


@catalog_entry('example_or_i', 'a')
def example_or_i(a):
    """
    Spacelike curve with constant p-shape and timelike Sabban tangent.
    """
    q = np.sqrt(1 + a * a)
    def position(s):
        return _stack(np.cosh(q * s) / q ** 2, -np.sinh(q * s) / q ** 2, a * s / q)
    return _integrated(position, _unit_weight, _pseudo_circle(a))


@catalog_entry('example_or_ii', 'a')
def example_or_ii(a):
    """
    Timelike curve with constant p-shape.
    """
    n = _root_a2_minus_1(a)
    def position(s):
        return _stack(a * s / n, -np.cos(n * s) / n ** 2, np.sin(n * s) / n ** 2)
    return _integrated(position, _unit_weight, _hyperbolic_circle(a))


@catalog_entry('example_or_iii', 'a')
def example_or_iii(a):
    """
    Spacelike curve with constant p-shape and timelike binormal.
    """
    n = _root_a2_minus_1(a)
    def position(s):
        return _stack(np.sinh(n * s) / n ** 2, np.cosh(n * s) / n ** 2, a * s / n)
    return _integrated(position, _unit_weight, _hyperbola(a))


@catalog_entry('example_log_shape', 'a', default_range = (0.5, 2.5))
def example_log_shape(a):
    """
    Spacelike curve whose p-shape curvature is ``1/σ``. Defined for ``σ > 0``.
    """
    q = np.sqrt(1 + a * a)
    spherical = _pseudo_circle(a)
    def position(s):
        t = q * s
        return _stack(
            (t * np.cosh(t) - np.sinh(t)) / q ** 3,
            (np.cosh(t) - t * np.sinh(t)) / q ** 3,
            a * t * t / (2 * q ** 3)
        )
    def weight(s):
        if np.any(s <= 0):
            raise exceptions.InvalidConstants('example_log_shape is only defined for σ > 0')
        return s, np.ones_like(s), np.zeros_like(s)
    return _integrated(position, weight, spherical)


@catalog_entry('self_similar_t', 'a', 'b')
def self_similar_t(a, b):
    """
    Spacelike self-similar curve built on the pseudo-circle.
    """
    q = np.sqrt(1 + a * a)
    _require(b != 0, 'b must be non-zero')
    _require(b * b != q * q, 'b^2 must differ from 1 + a^2')
    def position(s):
        e = np.exp(b * s) / (b * b - q * q)
        return _stack(
            e * (b / q * np.sinh(q * s) - np.cosh(q * s)),
            e * (np.sinh(q * s) - b / q * np.cosh(q * s)),
            a / (b * q) * np.exp(b * s)
        )
    return _integrated(position, _exponential_weight(b), _pseudo_circle(a))


@catalog_entry('self_similar_c', 'a', 'b')
def self_similar_c(a, b):
    """
    Timelike self-similar curve built on the hyperbolic circle.
    """
    n = _root_a2_minus_1(a)
    _require(b != 0, 'b must be non-zero')
    def position(s):
        e = np.exp(b * s) / (b * b + n * n)
        return _stack(
            a / (b * n) * np.exp(b * s),
            e * (b / n * np.sin(n * s) - np.cos(n * s)),
            e * (b / n * np.cos(n * s) + np.sin(n * s))
        )
    return _integrated(position, _exponential_weight(b), _hyperbolic_circle(a))


@catalog_entry('self_similar_q', 'a', 'b')
def self_similar_q(a, b):
    """
    Spacelike self-similar curve built on the hyperbola.
    """
    n = _root_a2_minus_1(a)
    _require(b != 0, 'b must be non-zero')
    _require(b * b != n * n, 'b^2 must differ from a^2 - 1')
    def position(s):
        e = np.exp(b * s) / (b * b - n * n)
        return _stack(
            e * (b / n * np.cosh(n * s) - np.sinh(n * s)),
            e * (b / n * np.sinh(n * s) - np.cosh(n * s)),
            a / (b * n) * np.exp(b * s)
        )
    return _integrated(position, _exponential_weight(b), _hyperbola(a))
