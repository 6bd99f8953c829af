"""
Sampled curves in Minkowski 3-space.

A curve is a strictly increasing parameter grid with a point per node and,
optionally, exact first to third derivatives per node. Derivatives that are not
supplied are estimated with five point finite difference stencils.
"""

import enum
import logging
from dataclasses import dataclass, replace

import numpy as np
from scipy.integrate import cumulative_simpson, cumulative_trapezoid
from scipy.interpolate import CubicHermiteSpline

from . import exceptions
from .minkowski import CausalCharacter, causal_signs, cross, euclidean_norm, norm
from .settings import setting_or_default


logger = logging.getLogger(__name__)


#: Number of nodes in a finite difference stencil
STENCIL_WIDTH = 5
#: Smallest grid for which all three derivatives can be estimated
MIN_NODES = 7
#: A tangent shorter than this fraction of the longest tangent counts as vanishing
STALL_RATIO = 1e-8


class ParamKind(enum.Enum):
    """
    What the parameter of a sampled curve measures.
    """
    ARBITRARY = 'arbitrary'
    ARC_LENGTH = 'arclength'
    SPHERICAL = 'spherical'


@dataclass(frozen = True, eq = False)
class CurveSamples:
    """
    A curve sampled on a strictly increasing parameter grid.

    ``d1``, ``d2`` and ``d3`` are optional exact derivatives with respect to the
    parameter, with the same shape as ``points``.
    """
    params: np.ndarray
    points: np.ndarray
    d1: np.ndarray = None
    d2: np.ndarray = None
    d3: np.ndarray = None
    param_kind: ParamKind = ParamKind.ARBITRARY

    def __post_init__(self):
        params = np.array(self.params, dtype = float)
        points = np.array(self.points, dtype = float)
        if params.ndim != 1 or points.shape != (len(params), 3):
            raise exceptions.CurveFormatError(
                'expected n parameters and n x 3 points, got {} and {}'.format(params.shape, points.shape)
            )
        if len(params) < MIN_NODES:
            raise exceptions.GridTooCoarse(
                'at least {} samples are required, got {}'.format(MIN_NODES, len(params))
            )
        if not np.all(np.isfinite(params)) or not np.all(np.isfinite(points)):
            raise exceptions.CurveFormatError('curve samples must be finite')
        if np.any(np.diff(params) <= 0):
            raise exceptions.CurveFormatError('curve parameters must be strictly increasing')
        object.__setattr__(self, 'params', params)
        object.__setattr__(self, 'points', points)
        object.__setattr__(self, 'param_kind', ParamKind(self.param_kind))
        for name in ('d1', 'd2', 'd3'):
            channel = getattr(self, name)
            if channel is None:
                continue
            channel = np.array(channel, dtype = float)
            if channel.shape != points.shape:
                raise exceptions.CurveFormatError(
                    'derivative channel {} has shape {}, expected {}'.format(name, channel.shape, points.shape)
                )
            object.__setattr__(self, name, channel)

    def __len__(self):
        return len(self.params)

    @property
    def has_derivatives(self):
        return self.d1 is not None and self.d2 is not None and self.d3 is not None

    def channel(self, order):
        return (self.d1, self.d2, self.d3)[order - 1]

    def without_derivatives(self):
        return replace(self, d1 = None, d2 = None, d3 = None)


def fornberg_weights(x0, nodes, order):
    """
    Weights of the finite difference formula for the given derivative at ``x0``.

    Uses Fornberg's recursion, which works for arbitrarily spaced nodes.
    """
    n = len(nodes)
    c = np.zeros((n, order + 1))
    c1 = 1.0
    c4 = nodes[0] - x0
    c[0, 0] = 1.0
    for i in range(1, n):
        mn = min(i, order)
        c2 = 1.0
        c5 = c4
        c4 = nodes[i] - x0
        for j in range(i):
            c3 = nodes[i] - nodes[j]
            c2 = c2 * c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return c[:, order]


def uniform_step(params, rtol = 1e-9):
    """
    Returns the grid step if the grid is uniform, otherwise ``None``.
    """
    steps = np.diff(params)
    if np.allclose(steps, steps[0], rtol = rtol, atol = 0.0):
        return float(steps[0])
    return None


def differentiate(params, values, order):
    """
    Estimates a derivative of sampled values with five point stencils.

    Interior nodes use centred stencils, the two nodes nearest each end use
    one-sided stencils. ``values`` may be one or more dimensional; the first axis
    runs along the grid.
    """
    params = np.asarray(params, dtype = float)
    values = np.asarray(values, dtype = float)
    n = len(params)
    if n < MIN_NODES:
        raise exceptions.GridTooCoarse(
            'at least {} samples are required, got {}'.format(MIN_NODES, n)
        )
    starts = np.clip(np.arange(n) - STENCIL_WIDTH // 2, 0, n - STENCIL_WIDTH)
    index = starts[:, None] + np.arange(STENCIL_WIDTH)
    step = uniform_step(params)
    if step is not None:
        # Only five distinct stencils exist on a uniform grid
        unit_nodes = np.arange(STENCIL_WIDTH, dtype = float)
        table = np.array([fornberg_weights(p, unit_nodes, order) for p in unit_nodes])
        weights = table[np.arange(n) - starts] / step ** order
    else:
        logger.debug('non-uniform grid of %d nodes, computing stencils per node', n)
        weights = np.array([
            fornberg_weights(params[i], params[index[i]], order)
            for i in range(n)
        ])
    return np.einsum('nk,nk...->n...', weights, values[index])


def derivatives(curve, order):
    """
    Returns the derivative of the given order at every node.

    Exact derivative channels are used when the curve has them.
    """
    if order not in (1, 2, 3):
        raise exceptions.InputError('derivative order must be 1, 2 or 3')
    channel = curve.channel(order)
    if channel is not None:
        return channel
    return differentiate(curve.params, curve.points, order)


def cumulative_integral(params, values):
    """
    Cumulative integral from the first node, Simpson on uniform grids and the
    trapezoid rule otherwise.
    """
    params = np.asarray(params, dtype = float)
    step = uniform_step(params)
    if step is not None:
        return cumulative_simpson(values, dx = step, axis = 0, initial = 0.0)
    return cumulative_trapezoid(values, x = params, axis = 0, initial = 0.0)


def curve_causal_character(curve, tol = None):
    """
    Returns the causal character shared by every tangent of the curve.

    Tangents are scaled to unit Euclidean length before they are classified, so the
    result does not depend on the size of the curve or the speed of its parameter.
    """
    tol = setting_or_default(tol, 'TANGENT_LIGHTLIKE_TOLERANCE')
    d1 = derivatives(curve, 1)
    size = euclidean_norm(d1)
    if not np.max(size) > 0 or np.min(size) < STALL_RATIO * np.max(size):
        raise exceptions.LightlikeTangent(
            'tangent vanishes at parameter {!r}'.format(curve.params[np.argmin(size)])
        )
    signs = causal_signs(d1 / size[:, None], tol)
    if np.any(signs == 0):
        raise exceptions.LightlikeTangent(
            'tangent is lightlike at parameter {!r}'.format(curve.params[np.argmax(signs == 0)])
        )
    if np.any(signs != signs[0]):
        raise exceptions.CharacterChange('tangent changes causal character along the curve')
    return CausalCharacter.from_sign(signs[0])


def speed(curve, tol = None):
    """
    Returns ``|dα/dt|`` per node, rejecting lightlike tangents.
    """
    curve_causal_character(curve, tol)
    return norm(derivatives(curve, 1))


def arc_length(curve, tol = None):
    """
    Returns the arc length ``s(t)`` measured from the first node.
    """
    return cumulative_integral(curve.params, speed(curve, tol))


def curvature(curve):
    """
    Returns the curvature ``|α' x α''| / |α'|^3`` per node, in any parametrization.
    """
    d1 = derivatives(curve, 1)
    d2 = derivatives(curve, 2)
    return norm(cross(d1, d2)) / norm(d1) ** 3


def spherical_arc_length(curve, kappa, floor = None, tol = None):
    """
    Returns the spherical arc length ``σ(t) = ∫ κ ds`` measured from the first node.
    """
    floor = setting_or_default(floor, 'CURVATURE_FLOOR')
    kappa = np.asarray(kappa, dtype = float)
    if np.min(kappa) <= floor:
        raise exceptions.VanishingCurvature(
            'curvature vanishes at parameter {!r}'.format(curve.params[np.argmin(kappa)])
        )
    return cumulative_integral(curve.params, kappa * speed(curve, tol))


def spherical_parameter(curve, floor = None, tol = None):
    """
    Returns the spherical arc length at each node.

    For a curve already parametrized by spherical arc length, the parameter itself
    is returned so that its origin is kept.
    """
    if curve.param_kind is ParamKind.SPHERICAL:
        return curve.params
    return spherical_arc_length(curve, curvature(curve), floor, tol)


def parameter_map(curve, target, floor = None, tol = None):
    """
    Returns the target parameter at each node and its derivative with respect to
    the current parameter.
    """
    target = ParamKind(target)
    identity = (curve.params, np.ones_like(curve.params))
    if target is ParamKind.ARBITRARY or target is curve.param_kind:
        return identity
    ds_dt = speed(curve, tol)
    if target is ParamKind.ARC_LENGTH:
        return cumulative_integral(curve.params, ds_dt), ds_dt
    kappa = curvature(curve)
    return spherical_arc_length(curve, kappa, floor, tol), kappa * ds_dt


def resample(curve, target, n = None, floor = None, tol = None):
    """
    Resamples a curve on a uniform grid of ``n`` nodes in the target parameter.

    The inverse parameter map and the positions are both cubic Hermite
    interpolants, using the derivative of the parameter map and the tangent.
    """
    target = ParamKind(target)
    n = len(curve) if n is None else int(n)
    u, du_dt = parameter_map(curve, target, floor, tol)
    if np.any(np.diff(u) <= 0):
        raise exceptions.CurveFormatError('parameter map is not strictly increasing')
    grid = np.linspace(u[0], u[-1], num = n)
    if u is curve.params:
        t_new = grid
    else:
        t_new = CubicHermiteSpline(u, curve.params, 1.0 / du_dt)(grid)
        t_new = np.clip(t_new, curve.params[0], curve.params[-1])
    positions = CubicHermiteSpline(curve.params, curve.points, derivatives(curve, 1), axis = 0)
    logger.debug('resampled %d nodes to %d nodes in %s', len(curve), n, target.value)
    kind = curve.param_kind if target is ParamKind.ARBITRARY else target
    return CurveSamples(grid, positions(t_new), param_kind = kind)


def transform_curve(curve, f):
    """
    Applies a p-similarity to a sampled curve.

    Derivative channels are mapped by the linear part of ``f``.
    """
    linear = f.linear_part()
    channels = {
        name: None if getattr(curve, name) is None else getattr(curve, name) @ linear.T
        for name in ('d1', 'd2', 'd3')
    }
    return replace(curve, points = f.apply(curve.points), **channels)
