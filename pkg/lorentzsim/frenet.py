"""
Frenet frames of non-lightlike curves and Sabban frames of spherical curves.

The Frenet equations are used in the form

    e1' = κ e2
    e2' = ε3 κ e1 + τ_F e3
    e3' = ε1 τ_F e2

where primes are derivatives with respect to arc length. The torsion ``τ`` computed
by the determinant formula is related to the coefficient above by ``τ = ε3 τ_F``.
"""

import enum
import logging
from dataclasses import dataclass

import numpy as np

from . import exceptions
from .curves import (
    ParamKind,
    cumulative_integral,
    curve_causal_character,
    derivatives,
    differentiate,
)
from .minkowski import (
    UnitSphere,
    causal_signs,
    cross,
    det,
    euclidean_norm,
    inner,
    norm,
)
from .settings import setting_or_default


logger = logging.getLogger(__name__)


#: Number of nodes at each end of the grid left out of residuals
#: The one-sided stencils there are less accurate
RESIDUAL_TRIM = 4


class CausalCase(enum.Enum):
    """
    Which vector of a pseudo-orthonormal frame is timelike.

    The names refer to the Sabban frame ``(c, t, q)``. The same three cases
    apply to a Frenet frame ``(e1, e2, e3)``.
    """
    TIMELIKE_C = 'timelike-c'
    TIMELIKE_T = 'timelike-t'
    TIMELIKE_Q = 'timelike-q'

    @property
    def signs(self):
        """
        The causal signs ``(ε1, ε2, ε3)`` of a frame in this case.
        """
        index = list(CausalCase).index(self)
        signs = [1, 1, 1]
        signs[index] = -1
        return tuple(signs)

    @property
    def timelike_index(self):
        return list(CausalCase).index(self)

    @classmethod
    def from_signs(cls, signs):
        signs = tuple(int(s) for s in signs)
        for case in cls:
            if case.signs == signs:
                return case
        raise exceptions.FrameDegenerate(
            'causal signs {} do not describe a pseudo-orthonormal frame'.format(signs)
        )


def _constant_sign(signs, name):
    if np.any(signs == 0):
        raise exceptions.LightlikeNormal('{} is lightlike'.format(name))
    if np.any(signs != signs[0]):
        raise exceptions.CharacterChange('{} changes causal character along the curve'.format(name))
    return int(signs[0])


@dataclass(frozen = True, eq = False)
class FrenetData:
    """
    The Frenet apparatus of a sampled curve.

    Frame vectors are ``(n, 3)`` arrays. ``speed`` is ``|dα/dt|`` in the
    parameter of the sampled curve, ``s`` and ``sigma`` are the arc length and
    the spherical arc length at each node.
    """
    params: np.ndarray
    points: np.ndarray
    e1: np.ndarray
    e2: np.ndarray
    e3: np.ndarray
    signs: tuple
    kappa: np.ndarray
    tau: np.ndarray
    speed: np.ndarray
    s: np.ndarray
    sigma: np.ndarray

    def __len__(self):
        return len(self.params)

    @property
    def eps1(self):
        return self.signs[0]

    @property
    def eps2(self):
        return self.signs[1]

    @property
    def eps3(self):
        return self.signs[2]

    @property
    def causal_case(self):
        return CausalCase.from_signs(self.signs)

    @property
    def frame(self):
        """
        The frame as an ``(n, 3, 3)`` array whose rows are ``e1``, ``e2`` and ``e3``.
        """
        return np.stack((self.e1, self.e2, self.e3), axis = 1)


def frenet_apparatus(curve, floor = None, tol = None):
    """
    Computes the Frenet frame, causal signs, curvature and torsion of a curve.

    The curve may be given in any regular parametrization. Curvature and torsion
    are ``|α' x α''| / |α'|^3`` and ``det(α', α'', α''') / |α' x α''|^2``.
    """
    floor = setting_or_default(floor, 'CURVATURE_FLOOR')
    tol = setting_or_default(tol, 'TANGENT_LIGHTLIKE_TOLERANCE')
    eps1 = curve_causal_character(curve, tol).sign
    d1 = derivatives(curve, 1)
    d2 = derivatives(curve, 2)
    d3 = derivatives(curve, 3)
    speed = norm(d1)
    e1 = d1 / speed[:, None]
    osculating = cross(d1, d2)
    kappa = norm(osculating) / speed ** 3
    if np.min(kappa) <= floor:
        raise exceptions.VanishingCurvature(
            'curvature vanishes at parameter {!r}'.format(curve.params[np.argmin(kappa)])
        )
    # Component of the second derivative orthogonal to the tangent
    normal = d2 - eps1 * inner(d2, e1)[:, None] * e1
    size = euclidean_norm(normal)
    if np.min(size) == 0.0:
        raise exceptions.VanishingCurvature('principal normal vanishes')
    eps2 = _constant_sign(causal_signs(normal / size[:, None], tol), 'principal normal')
    e2 = normal / norm(normal)[:, None]
    e3 = cross(e1, e2)
    e3 = e3 / norm(e3)[:, None]
    eps3 = -eps1 * eps2
    tau = det(d1, d2, d3) / norm(osculating) ** 2
    s = cumulative_integral(curve.params, speed)
    if curve.param_kind is ParamKind.SPHERICAL:
        sigma = curve.params
    else:
        sigma = cumulative_integral(curve.params, kappa * speed)
    logger.debug('frenet apparatus on %d nodes, causal signs %s', len(curve), (eps1, eps2, eps3))
    return FrenetData(
        params = curve.params,
        points = curve.points,
        e1 = e1,
        e2 = e2,
        e3 = e3,
        signs = (eps1, eps2, eps3),
        kappa = kappa,
        tau = tau,
        speed = speed,
        s = s,
        sigma = sigma
    )


@dataclass(frozen = True)
class FrenetResidual:
    """
    Residuals of a Frenet frame against the Frenet equations.

    ``as_written`` uses the determinant torsion as the coefficient ``τ_F``,
    ``signed_torsion`` uses ``τ_F = ε3 τ``. The two agree when ``e3`` is spacelike.
    ``convention`` names the better matching reading and ``value`` is its residual.
    """
    as_written: float
    signed_torsion: float
    convention: str
    value: float

    def to_dict(self):
        return dict(
            as_written = self.as_written,
            signed_torsion = self.signed_torsion,
            convention = self.convention,
            value = self.value
        )


def _frenet_rhs(fd, tau_f):
    kappa = fd.kappa[:, None]
    tau_f = tau_f[:, None]
    return (
        kappa * fd.e2,
        fd.eps3 * kappa * fd.e1 + tau_f * fd.e3,
        fd.eps1 * tau_f * fd.e2,
    )


def _max_residual(lhs, rhs, trim):
    window = slice(trim, -trim if trim else None)
    return max(float(np.max(euclidean_norm(l[window] - r[window]))) for l, r in zip(lhs, rhs))


def frenet_residual(fd, trim = RESIDUAL_TRIM):
    """
    Compares numerical derivatives of the frame with the Frenet equations.
    """
    lhs = tuple(
        differentiate(fd.params, e, 1) / fd.speed[:, None]
        for e in (fd.e1, fd.e2, fd.e3)
    )
    as_written = _max_residual(lhs, _frenet_rhs(fd, fd.tau), trim)
    signed = _max_residual(lhs, _frenet_rhs(fd, fd.eps3 * fd.tau), trim)
    if signed < as_written:
        convention, value = 'signed_torsion', signed
        logger.debug(
            'frame matches the Frenet equations with torsion coefficient ε3 τ (residual %g, %g as written)',
            signed,
            as_written
        )
    else:
        convention, value = 'as_written', as_written
    return FrenetResidual(as_written, signed, convention, value)


@dataclass(frozen = True, eq = False)
class SabbanData:
    """
    The Sabban frame ``(c, t, q)`` of a unit speed curve on a unit sphere.
    """
    params: np.ndarray
    c: np.ndarray
    t: np.ndarray
    q: np.ndarray
    kg: np.ndarray
    case: CausalCase
    sphere: UnitSphere
    residual: float

    def __len__(self):
        return len(self.params)

    @property
    def signs(self):
        return self.case.signs


def sabban_frame(curve, sphere_tol = None, speed_tol = None, tol = None):
    """
    Computes the Sabban frame and geodesic curvature of a spherical curve.

    The curve must be parametrized by its own arc length and lie on the hyperbolic
    or the Lorentzian unit sphere. The geodesic curvature is ``ε_q det(c, t, t')``.
    """
    sphere_tol = setting_or_default(sphere_tol, 'SPHERE_TOLERANCE')
    speed_tol = setting_or_default(speed_tol, 'UNIT_SPEED_TOLERANCE')
    tol = setting_or_default(tol, 'TANGENT_LIGHTLIKE_TOLERANCE')
    c = curve.points
    radius = inner(c, c)
    eps_c = -1 if radius[0] < 0 else 1
    off = np.abs(radius - eps_c)
    if np.max(off) > sphere_tol:
        raise exceptions.NotOnSphere(
            'curve leaves the unit sphere at parameter {!r} (|<c, c> - {}| = {!r})'.format(
                curve.params[np.argmax(off)], eps_c, float(np.max(off))
            )
        )
    sphere = UnitSphere.HYPERBOLIC if eps_c < 0 else UnitSphere.LORENTZIAN
    t = derivatives(curve, 1)
    dt = derivatives(curve, 2)
    eps_t = int(curve_causal_character(curve, tol).sign)
    deviation = np.abs(norm(t) - 1.0)
    if np.max(deviation) > speed_tol:
        raise exceptions.NotUnitSpeed(
            'spherical curve is not unit speed (max deviation {!r})'.format(float(np.max(deviation)))
        )
    q = cross(c, t)
    eps_q = -eps_c * eps_t
    case = CausalCase.from_signs((eps_c, eps_t, eps_q))
    kg = eps_q * det(c, t, dt)
    # q' = c x t' exactly, since c' x t vanishes
    dq = cross(c, dt)
    residual = max(
        float(np.max(euclidean_norm(dt - (-eps_c * eps_t * c + kg[:, None] * q)))),
        float(np.max(euclidean_norm(dq + (kg * eps_q * eps_t)[:, None] * t)))
    )
    logger.debug('sabban frame on %s sphere, case %s, residual %g', sphere.value, case.value, residual)
    return SabbanData(curve.params, c, t, q, kg, case, sphere, residual)


def sabban_residual(sd, trim = RESIDUAL_TRIM):
    """
    Compares numerical derivatives of a Sabban frame with the spherical Frenet
    equations ``c' = t``, ``t' = -ε_c ε_t c + k_g q``, ``q' = -ε_q ε_t k_g t``.
    """
    eps_c, eps_t, eps_q = sd.signs
    kg = sd.kg[:, None]
    lhs = tuple(differentiate(sd.params, v, 1) for v in (sd.c, sd.t, sd.q))
    rhs = (
        sd.t,
        -eps_c * eps_t * sd.c + kg * sd.q,
        -eps_q * eps_t * kg * sd.t,
    )
    return _max_residual(lhs, rhs, trim)
