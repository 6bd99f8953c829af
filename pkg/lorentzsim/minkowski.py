"""
Lorentzian linear algebra in Minkowski 3-space.

Vectors are numpy arrays whose last axis has length 3, ordered ``(x0, x1, x2)``
with ``x0`` the timelike coordinate. The metric has signature ``diag(-1, 1, 1)``.
Every function broadcasts over leading axes, so an ``(n, 3)`` array of samples
can be processed in one call.
"""

import enum
import logging
from dataclasses import dataclass

import numpy as np

from . import exceptions
from .settings import setting_or_default


logger = logging.getLogger(__name__)


#: Diagonal of the metric
SIGNATURE = np.array([-1.0, 1.0, 1.0])
#: The metric as a matrix
METRIC = np.diag(SIGNATURE)


class CausalCharacter(enum.Enum):
    """
    Causal character of a vector.
    """
    TIMELIKE = 'timelike'
    SPACELIKE = 'spacelike'
    LIGHTLIKE = 'lightlike'

    @property
    def sign(self):
        """
        The sign of ``<x, x>`` for vectors with this character.
        """
        return {'timelike': -1, 'spacelike': 1, 'lightlike': 0}[self.value]

    @classmethod
    def from_sign(cls, sign):
        return {-1: cls.TIMELIKE, 1: cls.SPACELIKE, 0: cls.LIGHTLIKE}[int(sign)]


class AngleKind(enum.Enum):
    HYPERBOLIC = 'hyperbolic'
    CIRCULAR = 'circular'
    UNDEFINED = 'undefined'


class UnitSphere(enum.Enum):
    """
    The two unit spheres of Minkowski 3-space.
    """
    #: The hyperbolic unit sphere H_0^2, <x, x> = -1
    HYPERBOLIC = 'hyperbolic'
    #: The Lorentzian (de Sitter) unit sphere S_1^2, <x, x> = 1
    LORENTZIAN = 'lorentzian'

    @property
    def radius_sign(self):
        return -1 if self is UnitSphere.HYPERBOLIC else 1


@dataclass(frozen = True)
class AngleResult:
    """
    An angle between two vectors, with the kind of angle it is.

    ``reason`` explains an undefined angle.
    """
    value: float
    kind: AngleKind
    reason: str = None


@dataclass(frozen = True)
class SphereMembership:
    """
    Result of a unit sphere test. Truthy when the vector is on the sphere.

    ``component`` is ``'future'`` or ``'past'`` for the hyperbolic sphere.
    """
    on_sphere: bool
    component: str = None

    def __bool__(self):
        return self.on_sphere


def inner(x, y):
    """
    Lorentzian inner product ``-x0*y0 + x1*y1 + x2*y2``.
    """
    return np.sum(SIGNATURE * np.asarray(x, dtype = float) * np.asarray(y, dtype = float), axis = -1)


def norm(x):
    """
    Lorentzian norm ``sqrt(|<x, x>|)``.
    """
    return np.sqrt(np.abs(inner(x, x)))


def euclidean_norm(x):
    return np.linalg.norm(np.asarray(x, dtype = float), axis = -1)


def cross(x, y):
    """
    Lorentzian vector product.

    This is the Euclidean cross product with its timelike component negated, so that
    ``<cross(x, y), z>`` is the ordinary determinant of ``[x, y, z]``.
    """
    return SIGNATURE * np.cross(np.asarray(x, dtype = float), np.asarray(y, dtype = float))


def det(x, y, z):
    """
    Determinant of the matrix with rows ``x``, ``y`` and ``z``.
    """
    return inner(cross(x, y), z)


def causal_signs(x, tol = None):
    """
    Returns -1, 1 or 0 per vector for timelike, spacelike and lightlike vectors.

    A vector is lightlike if ``|<x, x>| <= tol * (1 + |x|^2)``, where ``|x|`` is the
    Euclidean norm. The zero vector is spacelike.
    """
    tol = setting_or_default(tol, 'LIGHTLIKE_TOLERANCE')
    x = np.asarray(x, dtype = float)
    squared = inner(x, x)
    euclid = np.sum(x * x, axis = -1)
    signs = np.where(squared < 0, -1, 1)
    signs = np.where(np.abs(squared) <= tol * (1.0 + euclid), 0, signs)
    # The exact zero vector counts as spacelike
    return np.where(euclid == 0.0, 1, signs)


def causal_character(x, tol = None):
    """
    Returns the causal character of a single vector.
    """
    return CausalCharacter.from_sign(causal_signs(x, tol))


def is_future_pointing(x):
    return np.asarray(x, dtype = float)[..., 0] > 0


def time_orientation(x):
    """
    Returns ``'future'`` or ``'past'`` for a timelike vector.
    """
    return 'future' if is_future_pointing(x) else 'past'


def on_unit_sphere(x, which, tol = None):
    """
    Tests whether ``x`` lies on the given unit sphere.
    """
    tol = setting_or_default(tol, 'SPHERE_TOLERANCE')
    which = UnitSphere(which)
    on_sphere = bool(abs(inner(x, x) - which.radius_sign) <= tol)
    if which is UnitSphere.HYPERBOLIC and on_sphere:
        return SphereMembership(True, time_orientation(x))
    return SphereMembership(on_sphere)


def angle_between(x, y, tol = None):
    """
    Returns the angle between two non-null vectors.

    Two timelike vectors in the same time cone have a hyperbolic angle. Two spacelike
    vectors spanning a spacelike plane have a circular angle and two spanning a
    timelike plane have a hyperbolic one. The angle is undefined for a timelike and a
    spacelike vector, for timelike vectors in opposite time cones and for spacelike
    vectors spanning a lightlike plane.
    """
    tol = setting_or_default(tol, 'LIGHTLIKE_TOLERANCE')
    x = np.asarray(x, dtype = float)
    y = np.asarray(y, dtype = float)
    sx, sy = int(causal_signs(x, tol)), int(causal_signs(y, tol))
    if sx == 0 or sy == 0 or not np.any(x) or not np.any(y):
        raise exceptions.NullInput('angle between a lightlike or zero vector is undefined')
    if sx != sy:
        return AngleResult(float('nan'), AngleKind.UNDEFINED, 'mixed_causality')
    scale = norm(x) * norm(y)
    product = inner(x, y)
    # |x cross y| equals |x||y| times the sine (or sinh) of the angle
    sine = norm(cross(x, y)) / scale
    if sx < 0:
        if product > 0:
            return AngleResult(float('nan'), AngleKind.UNDEFINED, 'opposite_time_cones')
        return AngleResult(float(np.arcsinh(sine)), AngleKind.HYPERBOLIC)
    # Parallel spacelike vectors do not span a plane
    if euclidean_norm(np.cross(x, y)) <= tol * euclidean_norm(x) * euclidean_norm(y):
        return AngleResult(0.0 if product > 0 else float(np.pi), AngleKind.CIRCULAR)
    ratio = abs(product) / scale
    if abs(ratio - 1.0) <= np.sqrt(tol):
        return AngleResult(float('nan'), AngleKind.UNDEFINED, 'lightlike_plane')
    if ratio < 1.0:
        return AngleResult(float(np.arctan2(sine, product / scale)), AngleKind.CIRCULAR)
    return AngleResult(float(np.arcsinh(sine)), AngleKind.HYPERBOLIC)


def gram(frame):
    """
    Gram matrix of the rows of ``frame`` under the Lorentzian inner product.
    """
    frame = np.asarray(frame, dtype = float)
    return frame @ METRIC @ np.swapaxes(frame, -1, -2)


def pseudo_gram_schmidt(frame, signs):
    """
    Orthonormalizes the rows of a 3x3 frame so that ``<e_i, e_i> = signs[i]``.

    Each row keeps its direction up to the removal of components along the
    previous rows, so a frame that is already close to pseudo-orthonormal
    changes only slightly.
    """
    frame = np.array(frame, dtype = float)
    for i in range(3):
        for j in range(i):
            frame[i] = frame[i] - signs[j] * inner(frame[i], frame[j]) * frame[j]
        frame[i] = frame[i] / norm(frame[i])
    return frame
