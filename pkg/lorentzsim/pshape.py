"""
Similarity invariants of non-lightlike curves.

The p-shape of a curve is the pair ``κ̃ = -dκ / (κ dσ)`` and ``τ̃ = τ / κ`` as
functions of the spherical arc length ``σ``. Both are unchanged by orientation
preserving p-similarities; an orientation reversing one negates ``τ̃``.
"""

import enum
import logging
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline

from . import exceptions
from .curves import (
    CurveSamples,
    ParamKind,
    curve_causal_character,
    derivatives,
    differentiate,
    resample,
)
from .frenet import RESIDUAL_TRIM, CausalCase
from .minkowski import causal_signs, cross, det, euclidean_norm, inner, norm
from .settings import setting_or_default


logger = logging.getLogger(__name__)


class PShapeSource(enum.Enum):
    FROM_FRENET = 'from_frenet'
    FROM_DERIVATIVES = 'from_derivatives'
    PRESCRIBED = 'prescribed'


@dataclass(frozen = True, eq = False)
class PShapeProfile:
    """
    A sampled p-shape ``(σ, κ̃, τ̃)`` with the causal case of the curve's frame.
    """
    sigma: np.ndarray
    kappa_tilde: np.ndarray
    tau_tilde: np.ndarray
    causal_case: CausalCase
    source: PShapeSource = PShapeSource.PRESCRIBED

    def __post_init__(self):
        try:
            arrays = [np.array(v, dtype = float) for v in (self.sigma, self.kappa_tilde, self.tau_tilde)]
            case = CausalCase(self.causal_case)
            source = PShapeSource(self.source)
        except (TypeError, ValueError) as exc:
            raise exceptions.InvalidProfile('invalid p-shape profile: {}'.format(exc))
        sigma, kappa_tilde, tau_tilde = arrays
        if sigma.ndim != 1 or kappa_tilde.shape != sigma.shape or tau_tilde.shape != sigma.shape:
            raise exceptions.InvalidProfile('sigma, kappa_tilde and tau_tilde must be equal length 1-d arrays')
        if len(sigma) < 2:
            raise exceptions.InvalidProfile('a p-shape profile needs at least two samples')
        if not all(np.all(np.isfinite(a)) for a in arrays):
            raise exceptions.InvalidProfile('p-shape profile has non-finite values')
        if np.any(np.diff(sigma) <= 0):
            raise exceptions.InvalidProfile('sigma must be strictly increasing')
        object.__setattr__(self, 'sigma', sigma)
        object.__setattr__(self, 'kappa_tilde', kappa_tilde)
        object.__setattr__(self, 'tau_tilde', tau_tilde)
        object.__setattr__(self, 'causal_case', case)
        object.__setattr__(self, 'source', source)

    def __len__(self):
        return len(self.sigma)

    def interpolate(self, sigma):
        """
        Cubic spline values of ``(κ̃, τ̃)`` at the given spherical arc lengths.
        """
        values = np.column_stack((self.kappa_tilde, self.tau_tilde))
        interpolated = CubicSpline(self.sigma, values, axis = 0)(np.asarray(sigma, dtype = float))
        return interpolated[..., 0], interpolated[..., 1]

    def to_dict(self):
        return dict(
            causal_case = self.causal_case.value,
            source = self.source.value,
            samples = np.column_stack((self.sigma, self.kappa_tilde, self.tau_tilde)).tolist()
        )

    @classmethod
    def from_dict(cls, data):
        try:
            samples = np.array(data['samples'], dtype = float)
            if samples.ndim != 2 or samples.shape[1] != 3:
                raise ValueError('samples must be rows of [sigma, kappa_tilde, tau_tilde]')
            return cls(
                samples[:, 0],
                samples[:, 1],
                samples[:, 2],
                data['causal_case'],
                data.get('source', PShapeSource.PRESCRIBED.value)
            )
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            if isinstance(exc, exceptions.LorentzSimError):
                raise
            raise exceptions.InvalidProfile('invalid p-shape profile: {}'.format(exc))


def _kappa_tilde(fd):
    # -d log κ / dσ, with dσ/dt = κ |α'|
    return -differentiate(fd.params, np.log(fd.kappa), 1) / (fd.kappa * fd.speed)


def pshape_from_frenet(fd):
    """
    The p-shape from the curvature and torsion of a Frenet apparatus.
    """
    return PShapeProfile(
        fd.sigma,
        _kappa_tilde(fd),
        fd.tau / fd.kappa,
        fd.causal_case,
        PShapeSource.FROM_FRENET
    )


def pshape_from_derivatives(curve, n = None, floor = None, tol = None):
    """
    The p-shape from the derivatives of a curve parametrized by spherical arc length.

    Curves in other parametrizations are resampled first. With ``α`` primes for
    derivatives in ``σ``, ``κ̃ = <α'', α'> / <α', α'>`` and
    ``τ̃ = det(α', α'', α''') |α'|^3 / |α' x α''|^3``.
    """
    floor = setting_or_default(floor, 'OSCULATING_FLOOR')
    tol = setting_or_default(tol, 'TANGENT_LIGHTLIKE_TOLERANCE')
    if curve.param_kind is not ParamKind.SPHERICAL:
        curve = resample(curve, ParamKind.SPHERICAL, n, tol = tol)
    d1 = derivatives(curve, 1)
    d2 = derivatives(curve, 2)
    d3 = derivatives(curve, 3)
    osculating = cross(d1, d2)
    size = norm(osculating)
    # |α' x α''| grows like |α'|^2 under a p-similarity
    if np.min(size / norm(d1) ** 2) < floor:
        raise exceptions.DegenerateOsculating(
            'osculating plane is degenerate at sigma = {!r}'.format(curve.params[np.argmin(size)])
        )
    eps1 = curve_causal_character(curve, tol).sign
    # d1 x d2 is parallel to the binormal
    eps3 = causal_signs(osculating / euclidean_norm(osculating)[:, None], tol)
    if np.any(eps3 == 0) or np.any(eps3 != eps3[0]):
        raise exceptions.LightlikeNormal('osculating plane is lightlike or changes character')
    eps3 = int(eps3[0])
    case = CausalCase.from_signs((eps1, -eps1 * eps3, eps3))
    return PShapeProfile(
        curve.params,
        inner(d2, d1) / inner(d1, d1),
        det(d1, d2, d3) * norm(d1) ** 3 / size ** 3,
        case,
        PShapeSource.FROM_DERIVATIVES
    )


@dataclass(frozen = True, eq = False)
class FocalData:
    """
    Focal curvatures and osculating spheres along a curve.

    ``radius`` is ``|γ - α|``; ``printed_radius`` evaluates the closed-form radius
    ``sqrt(|ε2 / κ^2 + ε3 κ' / (κ^2 τ)|)`` for comparison.
    """
    params: np.ndarray
    m1: np.ndarray
    m2: np.ndarray
    center: np.ndarray
    radius: np.ndarray
    printed_radius: np.ndarray


def focal_data(fd, floor = None):
    """
    Computes the focal curvatures ``m1 = ε1 ε2 / κ`` and ``m2 = (ε1 ε3 / κ)' / τ``
    and the centers of the osculating spheres.

    The center is ``α + m1 e2 + ε3 m2 e3``: the binormal coefficient uses the torsion
    as it appears in the Frenet equations, which differs in sign from the
    determinant torsion when ``e3`` is timelike.
    """
    floor = setting_or_default(floor, 'TORSION_FLOOR')
    if np.min(np.abs(fd.tau)) < floor:
        raise exceptions.VanishingTorsion(
            'torsion vanishes at parameter {!r}'.format(fd.params[np.argmin(np.abs(fd.tau))])
        )
    eps1, eps2, eps3 = fd.signs
    # (1/κ)' in arc length is κ̃
    inverse_derivative = _kappa_tilde(fd)
    m1 = eps1 * eps2 / fd.kappa
    m2 = eps1 * eps3 * inverse_derivative / fd.tau
    center = fd.points + m1[:, None] * fd.e2 + (eps3 * m2)[:, None] * fd.e3
    radius = norm(center - fd.points)
    kappa_prime = -inverse_derivative * fd.kappa ** 2
    printed = np.sqrt(np.abs(eps2 / fd.kappa ** 2 + eps3 * kappa_prime / (fd.kappa ** 2 * fd.tau)))
    return FocalData(fd.params, m1, m2, center, radius, printed)


def focal_curve(fd, floor = None):
    """
    The focal curve, the curve of osculating sphere centers, as sampled points.
    """
    return CurveSamples(fd.params, focal_data(fd, floor).center)


@dataclass(frozen = True)
class PropositionCheck:
    """
    Residuals of ``κ̃ = ε1 ε2 m1'`` and ``τ̃ = ε1 ε3 m1' m1 / m2``.

    The second relation is only checked where ``|m2|`` exceeds the floor it was
    computed with; ``skipped`` counts the other nodes.
    """
    kappa_residual: float
    tau_residual: float
    skipped: int

    def to_dict(self):
        return dict(kappa_residual = self.kappa_residual, tau_residual = self.tau_residual, skipped = self.skipped)


def proposition_check(fd, floor = None, m2_floor = 1e-8, trim = RESIDUAL_TRIM):
    """
    Checks the relations between the p-shape and the focal curvatures.
    """
    focal = focal_data(fd, floor)
    profile = pshape_from_frenet(fd)
    eps1, eps2, eps3 = fd.signs
    m1_prime = differentiate(fd.params, focal.m1, 1) / fd.speed
    window = slice(trim, len(fd) - trim)
    kappa_residual = np.abs(profile.kappa_tilde - eps1 * eps2 * m1_prime)[window]
    usable = np.abs(focal.m2[window]) > m2_floor
    tau_residual = np.abs(
        profile.tau_tilde[window][usable]
        - eps1 * eps3 * m1_prime[window][usable] * focal.m1[window][usable] / focal.m2[window][usable]
    )
    skipped = int(np.count_nonzero(~usable))
    if skipped:
        logger.debug('skipped %d nodes with vanishing m2', skipped)
    return PropositionCheck(
        float(np.max(kappa_residual)),
        float(np.max(tau_residual)) if len(tau_residual) else 0.0,
        skipped
    )


@dataclass(frozen = True)
class PShapeDistance:
    """
    Sup-norm distances between two p-shapes on their common ``σ`` interval.

    ``flipped`` compares against the second p-shape with ``τ̃`` negated.
    """
    direct: float
    flipped: float
    nodes: int

    @property
    def value(self):
        return min(self.direct, self.flipped)

    @property
    def is_flipped(self):
        return self.flipped < self.direct

    def __float__(self):
        return self.value

    def to_dict(self):
        return dict(direct = self.direct, flipped = self.flipped, nodes = self.nodes)


def pshape_distance(p, q):
    """
    Returns the distance between two p-shapes.

    The second profile is interpolated onto the nodes of the first that lie in the
    common ``σ`` interval.
    """
    lo = max(p.sigma[0], q.sigma[0])
    hi = min(p.sigma[-1], q.sigma[-1])
    slack = 1e-12 * max(1.0, abs(lo), abs(hi))
    nodes = (p.sigma >= lo - slack) & (p.sigma <= hi + slack)
    if np.count_nonzero(nodes) < 3:
        raise exceptions.NoOverlap('p-shapes share fewer than 3 nodes in sigma')
    sigma = np.clip(p.sigma[nodes], q.sigma[0], q.sigma[-1])
    kappa_q, tau_q = q.interpolate(sigma)
    dk = np.abs(p.kappa_tilde[nodes] - kappa_q)
    direct = float(np.max(dk + np.abs(p.tau_tilde[nodes] - tau_q)))
    flipped = float(np.max(dk + np.abs(p.tau_tilde[nodes] + tau_q)))
    return PShapeDistance(direct, flipped, int(np.count_nonzero(nodes)))


def similarity_frame_residual(fd, profile = None, trim = RESIDUAL_TRIM):
    """
    Compares the derivatives of the frame ``e_i / κ`` in ``σ`` with the similarity
    Frenet equations.

    The frame ``e_i / κ`` is unchanged by orientation preserving p-similarities;
    its equations have coefficients ``κ̃`` on the diagonal and ``ε3 τ̃`` in place of
    the torsion.
    """
    profile = pshape_from_frenet(fd) if profile is None else profile
    kt = profile.kappa_tilde[:, None]
    tt = (fd.eps3 * profile.tau_tilde)[:, None]
    f1, f2, f3 = (e / fd.kappa[:, None] for e in (fd.e1, fd.e2, fd.e3))
    dsigma_dt = (fd.kappa * fd.speed)[:, None]
    lhs = [differentiate(fd.params, f, 1) / dsigma_dt for f in (f1, f2, f3)]
    rhs = [
        kt * f1 + f2,
        fd.eps3 * f1 + kt * f2 + tt * f3,
        fd.eps1 * tt * f2 + kt * f3,
    ]
    window = slice(trim, len(fd) - trim)
    return max(float(np.max(euclidean_norm(l[window] - r[window]))) for l, r in zip(lhs, rhs))
