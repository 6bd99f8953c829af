"""
Split quaternions and the p-similarity group of Minkowski 3-space.

A split quaternion ``w + x i + y j + z k`` multiplies with ``i^2 = -1``,
``j^2 = k^2 = 1``, ``ij = -ji = k``, ``jk = -kj = -i`` and ``ki = -ik = j``.
Vectors of Minkowski 3-space are identified with pure split quaternions by
``(x0, x1, x2) -> x0 i + x1 j + x2 k``; under this identification
``N(r) = -<r, r>`` and conjugation by a unit timelike split quaternion is a
rotation (an element of the identity component of O(1,2)).
"""

import enum
import logging
from dataclasses import dataclass, field

import numpy as np

from . import exceptions
from .settings import setting_or_default


logger = logging.getLogger(__name__)


def _multiply(p, q):
    """
    Product of split quaternions given as arrays ``[w, x, y, z]``.
    """
    a, b, c, d = p
    e, f, g, h = q
    return np.array([
        a * e - b * f + c * g + d * h,
        a * f + b * e - c * h + d * g,
        a * g + c * e + d * f - b * h,
        a * h + d * e + b * g - c * f,
    ])


@dataclass(frozen = True)
class SplitQuaternion:
    """
    A split quaternion ``w + x i + y j + z k``.
    """
    w: float = 1.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    @classmethod
    def from_array(cls, values):
        w, x, y, z = (float(v) for v in values)
        return cls(w, x, y, z)

    @classmethod
    def from_vector(cls, vector):
        """
        The pure split quaternion of a Minkowski vector.
        """
        x0, x1, x2 = (float(v) for v in vector)
        return cls(0.0, x0, x1, x2)

    def as_array(self):
        return np.array([self.w, self.x, self.y, self.z])

    @property
    def scalar(self):
        return self.w

    @property
    def vector(self):
        return np.array([self.x, self.y, self.z])

    def __mul__(self, other):
        return SplitQuaternion.from_array(_multiply(self.as_array(), other.as_array()))

    def conjugate(self):
        return SplitQuaternion(self.w, -self.x, -self.y, -self.z)

    def norm_form(self):
        """
        The quaternionic norm form ``N(q) = q conj(q) = w^2 + x^2 - y^2 - z^2``.
        """
        return self.w ** 2 + self.x ** 2 - self.y ** 2 - self.z ** 2

    def inverse(self):
        n = self.norm_form()
        if abs(n) <= 1e-14:
            raise exceptions.DegenerateQuaternion('split quaternion {} has N(q) = 0'.format(self))
        return SplitQuaternion.from_array(self.conjugate().as_array() / n)

    def normalized(self):
        """
        Returns ``q / sqrt(N(q))`` for a timelike split quaternion.
        """
        n = self.norm_form()
        if n <= 0:
            raise exceptions.NotUnitTimelike(
                'split quaternion {} is not timelike (N(q) = {!r})'.format(self, n)
            )
        return SplitQuaternion.from_array(self.as_array() / np.sqrt(n))

    def check_unit_timelike(self, tol = None):
        tol = setting_or_default(tol, 'QUATERNION_TOLERANCE')
        if abs(self.norm_form() - 1.0) > tol:
            raise exceptions.NotUnitTimelike(
                'split quaternion {} is not unit timelike (N(q) = {!r})'.format(self, self.norm_form())
            )

    def rotation_matrix(self):
        """
        Matrix of ``r -> q r q^-1`` acting on Minkowski column vectors.
        """
        q = self.as_array()
        q_inv = self.inverse().as_array()
        columns = []
        for basis in np.eye(3):
            image = _multiply(_multiply(q, np.concatenate(([0.0], basis))), q_inv)
            columns.append(image[1:])
        return np.column_stack(columns)


IDENTITY = SplitQuaternion()


def rotate(q, r, tol = None):
    """
    Rotates one or more Minkowski vectors by ``r -> q r q^-1``.
    """
    q.check_unit_timelike(tol)
    return np.asarray(r, dtype = float) @ q.rotation_matrix().T


def _left_matrix(p):
    """
    Matrix of ``q -> p q``.
    """
    return np.column_stack([_multiply(p, e) for e in np.eye(4)])


def _right_matrix(p):
    """
    Matrix of ``q -> q p``.
    """
    return np.column_stack([_multiply(e, p) for e in np.eye(4)])


def from_rotation_matrix(matrix, tol = 1e-8):
    """
    Finds the unit timelike split quaternion ``q`` with ``q r q^-1 = matrix @ r``.

    ``q`` solves the linear system ``q u - (matrix u) q = 0`` for the three basis
    vectors ``u``. A solution with ``N(q) > 0`` exists exactly when the matrix is in
    the identity component of O(1,2). The sign of ``q`` is fixed so that ``w >= 0``.
    """
    matrix = np.asarray(matrix, dtype = float)
    blocks = []
    for m, basis in enumerate(np.eye(3)):
        u = np.concatenate(([0.0], basis))
        image = np.concatenate(([0.0], matrix[:, m]))
        blocks.append(_right_matrix(u) - _left_matrix(image))
    system = np.vstack(blocks)
    _, singular, vh = np.linalg.svd(system)
    candidate = vh[-1]
    scale = max(1.0, singular[0])
    n = candidate[0] ** 2 + candidate[1] ** 2 - candidate[2] ** 2 - candidate[3] ** 2
    if singular[-1] > tol * scale or n <= tol:
        raise exceptions.QuaternionExtractionFailure(matrix)
    candidate = candidate / np.sqrt(n)
    if candidate[0] < 0:
        candidate = -candidate
    return SplitQuaternion.from_array(candidate)


class Orientation(enum.Enum):
    PRESERVING = 'preserving'
    REVERSING = 'reversing'


@dataclass(frozen = True, eq = False)
class PSimilarity:
    """
    The p-similarity ``r -> mu q r q^-1 + b``.
    """
    mu: float = 1.0
    q: SplitQuaternion = IDENTITY
    b: np.ndarray = field(default_factory = lambda: np.zeros(3))

    def __post_init__(self):
        if self.mu == 0:
            raise exceptions.InputError('p-similarity scale must be non-zero')
        self.q.check_unit_timelike()
        object.__setattr__(self, 'mu', float(self.mu))
        object.__setattr__(self, 'b', np.array(self.b, dtype = float).reshape(3))

    @classmethod
    def identity(cls):
        return cls()

    @classmethod
    def from_parameters(cls, mu, q, b):
        """
        Builds a p-similarity from user supplied values, normalizing ``q``.
        """
        q = q if isinstance(q, SplitQuaternion) else SplitQuaternion.from_array(q)
        n = q.norm_form()
        unit = q.normalized()
        if abs(n - 1.0) > setting_or_default(None, 'QUATERNION_WARN_TOLERANCE'):
            logger.warning('normalized split quaternion with N(q) = %r', n)
        return cls(mu, unit, b)

    def linear_part(self):
        """
        Matrix of the linear part ``r -> mu q r q^-1``.
        """
        return self.mu * self.q.rotation_matrix()

    @property
    def orientation(self):
        if np.linalg.det(self.linear_part()) > 0:
            return Orientation.PRESERVING
        return Orientation.REVERSING

    def apply(self, points):
        """
        Applies the p-similarity to one or more points.
        """
        return self.mu * rotate(self.q, points) + self.b

    __call__ = apply

    def apply_linear(self, vectors):
        """
        Applies the linear part to one or more displacement vectors.
        """
        return self.mu * rotate(self.q, vectors)

    def to_dict(self):
        return dict(mu = self.mu, q = self.q.as_array().tolist(), b = self.b.tolist())

    @classmethod
    def from_dict(cls, data):
        try:
            return cls.from_parameters(data['mu'], data['q'], data['b'])
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, exceptions.LorentzSimError):
                raise
            raise exceptions.InputError('invalid p-similarity: {}'.format(exc))


def compose(f, g):
    """
    Returns the p-similarity ``f o g``.
    """
    q = (f.q * g.q).normalized()
    b = f.mu * rotate(f.q, g.b) + f.b
    return PSimilarity(f.mu * g.mu, q, b)


def inverse(f):
    """
    Returns the inverse p-similarity.
    """
    q_inv = f.q.conjugate()
    return PSimilarity(1.0 / f.mu, q_inv, -rotate(q_inv, f.b) / f.mu)


def _rotor(angle):
    # Rotation by the given angle about the timelike axis
    return SplitQuaternion(np.cos(angle / 2), np.sin(angle / 2), 0.0, 0.0)


def _boost(rapidity):
    # Boost along the x2 axis
    return SplitQuaternion(np.cosh(rapidity / 2), 0.0, np.sinh(rapidity / 2), 0.0)


def random_unit_timelike(rng, max_rapidity = 1.0):
    """
    Samples a unit timelike split quaternion as rotation * boost * rotation.
    """
    q = _rotor(rng.uniform(0, 2 * np.pi)) * _boost(rng.uniform(-max_rapidity, max_rapidity))
    return (q * _rotor(rng.uniform(0, 2 * np.pi))).normalized()


def random_psimilarity(seed, mu_range = (0.5, 2.0), reversing = False, max_rapidity = 1.0):
    """
    Samples a p-similarity deterministically from ``seed``.

    ``seed`` may be an integer or a ``numpy.random.Generator``. The scale is sampled
    from ``mu_range`` and negated when ``reversing`` is set.
    """
    low, high = mu_range
    if not 0 < low <= high:
        raise exceptions.InputError('mu_range must lie in (0, inf)')
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    mu = rng.uniform(low, high)
    q = random_unit_timelike(rng, max_rapidity)
    b = rng.uniform(-1.0, 1.0, size = 3)
    return PSimilarity(-mu if reversing else mu, q, b)
