"""
Curves with a prescribed p-shape.

A p-shape ``(z1, z2)`` and an initial frame determine a curve up to nothing: the
Sabban frame ``(c, t, q)`` of the curve's tangent indicatrix solves a linear
system driven by ``z2``, and the curve is recovered as
``α = x0 + b ∫ exp(∫ z1) c dσ``.
"""

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline

from . import exceptions
from .curves import CurveSamples, ParamKind, cumulative_integral, derivatives, differentiate
from .frenet import CausalCase
from .minkowski import cross, gram, pseudo_gram_schmidt
from .settings import setting_or_default


logger = logging.getLogger(__name__)


@dataclass(frozen = True, eq = False)
class PShapeSpec:
    """
    A prescribed p-shape on a ``σ`` interval.

    ``kappa_tilde`` and ``tau_tilde`` are vectorized functions of ``σ``. When
    known, ``dkappa`` is the derivative of ``kappa_tilde`` and ``rho`` its
    antiderivative vanishing at the start of the interval.
    """
    kappa_tilde: object
    tau_tilde: object
    sigma_range: tuple
    causal_case: CausalCase
    dkappa: object = None
    rho: object = None

    def __post_init__(self):
        try:
            start, stop = (float(v) for v in self.sigma_range)
        except (TypeError, ValueError):
            raise exceptions.InvalidProfile('sigma_range must be a pair of numbers')
        if not (np.isfinite(start) and np.isfinite(stop) and start < stop):
            raise exceptions.InvalidProfile('sigma_range must be a finite increasing interval')
        object.__setattr__(self, 'sigma_range', (start, stop))
        object.__setattr__(self, 'causal_case', CausalCase(self.causal_case))

    @property
    def start(self):
        return self.sigma_range[0]

    @property
    def stop(self):
        return self.sigma_range[1]

    @classmethod
    def constant(cls, kappa_tilde, tau_tilde, sigma_range, causal_case):
        k, t = float(kappa_tilde), float(tau_tilde)
        start = float(sigma_range[0])
        return cls(
            lambda s: np.full(np.shape(s), k),
            lambda s: np.full(np.shape(s), t),
            sigma_range,
            causal_case,
            dkappa = lambda s: np.zeros(np.shape(s)),
            rho = lambda s: k * (np.asarray(s, dtype = float) - start)
        )

    @classmethod
    def reciprocal(cls, tau_tilde, sigma_range, causal_case):
        """
        The p-shape ``(1/σ, tau_tilde)``.
        """
        start, stop = (float(v) for v in sigma_range)
        if start <= 0 <= stop:
            raise exceptions.InvalidProfile('sigma_range for a 1/sigma p-shape must exclude 0')
        t = float(tau_tilde)
        return cls(
            lambda s: 1.0 / np.asarray(s, dtype = float),
            lambda s: np.full(np.shape(s), t),
            sigma_range,
            causal_case,
            dkappa = lambda s: -1.0 / np.asarray(s, dtype = float) ** 2,
            rho = lambda s: np.log(np.asarray(s, dtype = float) / start)
        )

    @classmethod
    def from_profile(cls, profile, sigma_range = None):
        """
        Cubic spline interpolation of a sampled p-shape profile.
        """
        sigma_range = (profile.sigma[0], profile.sigma[-1]) if sigma_range is None else sigma_range
        start, stop = (float(v) for v in sigma_range)
        if start < profile.sigma[0] or stop > profile.sigma[-1]:
            raise exceptions.InvalidProfile('sigma_range lies outside the profile')
        kappa = CubicSpline(profile.sigma, profile.kappa_tilde)
        tau = CubicSpline(profile.sigma, profile.tau_tilde)
        antiderivative = kappa.antiderivative()
        origin = float(antiderivative(start))
        return cls(
            kappa,
            tau,
            (start, stop),
            profile.causal_case,
            dkappa = kappa.derivative(),
            rho = lambda s: antiderivative(s) - origin
        )


@dataclass(frozen = True, eq = False)
class InitialFrame:
    """
    A base point and a right-handed pseudo-orthonormal frame.
    """
    x0: np.ndarray
    e1: np.ndarray
    e2: np.ndarray
    e3: np.ndarray
    tol: float = field(default = 1e-10, repr = False)

    def __post_init__(self):
        try:
            vectors = [np.array(v, dtype = float).reshape(3) for v in (self.x0, self.e1, self.e2, self.e3)]
        except (TypeError, ValueError):
            raise exceptions.InputError('initial frame vectors must have three components')
        for name, vector in zip(('x0', 'e1', 'e2', 'e3'), vectors):
            object.__setattr__(self, name, vector)
        g = gram(self.matrix)
        signs = np.where(np.diag(g) < 0, -1, 1)
        if np.max(np.abs(g - np.diag(signs))) > self.tol or np.sum(signs < 0) != 1:
            raise exceptions.FrameDegenerate('initial frame is not pseudo-orthonormal')
        if np.max(np.abs(cross(self.e1, self.e2) - self.e3)) > self.tol:
            raise exceptions.FrameDegenerate('initial frame is not right-handed (e3 != e1 x e2)')

    @property
    def matrix(self):
        return np.stack((self.e1, self.e2, self.e3))

    @property
    def case(self):
        return CausalCase.from_signs(np.where(np.diag(gram(self.matrix)) < 0, -1, 1))

    def to_dict(self):
        return dict(x0 = self.x0.tolist(), e1 = self.e1.tolist(), e2 = self.e2.tolist(), e3 = self.e3.tolist())

    @classmethod
    def from_dict(cls, data):
        try:
            return cls(data['x0'], data['e1'], data['e2'], data['e3'])
        except (KeyError, TypeError) as exc:
            raise exceptions.InputError('invalid initial frame: {}'.format(exc))


def standard_frame(causal_case, x0 = (0.0, 0.0, 0.0)):
    """
    The coordinate frame with the timelike basis vector in the slot of the case.
    """
    u0, u1, u2 = np.eye(3)
    frames = {
        CausalCase.TIMELIKE_C: (u0, u1, u2),
        CausalCase.TIMELIKE_T: (u2, u0, u1),
        CausalCase.TIMELIKE_Q: (u2, u1, u0),
    }
    return InitialFrame(x0, *frames[CausalCase(causal_case)])


def example_frame(causal_case, a, x0 = (0.0, 0.0, 0.0)):
    """
    The initial frames that produce the constant p-shape example curves.

    Requires ``a^2 > 1`` for the timelike-c and timelike-q cases.
    """
    causal_case = CausalCase(causal_case)
    a = float(a)
    if causal_case is CausalCase.TIMELIKE_T:
        q = np.sqrt(1 + a * a)
        return InitialFrame(x0, (0.0, -1 / q, a / q), (1.0, 0.0, 0.0), (0.0, a / q, 1 / q))
    if a * a <= 1:
        raise exceptions.InvalidConstants('a^2 must exceed 1, got a = {!r}'.format(a))
    n = np.sqrt(a * a - 1)
    if causal_case is CausalCase.TIMELIKE_C:
        return InitialFrame(x0, (a / n, 0.0, 1 / n), (0.0, 1.0, 0.0), (1 / n, 0.0, a / n))
    return InitialFrame(x0, (1 / n, 0.0, a / n), (0.0, 1.0, 0.0), (a / n, 0.0, 1 / n))


def sabban_matrix(causal_case, z2):
    """
    Coefficient matrix of the Sabban system ``dX/dσ = M X``.

    ``z2`` may be a number or an array, in which case a stack of matrices is
    returned.
    """
    causal_case = CausalCase(causal_case)
    z2 = np.asarray(z2, dtype = float)
    m = np.zeros(z2.shape + (3, 3))
    if causal_case is CausalCase.TIMELIKE_T:
        m[..., 0, 1] = 1.0
        m[..., 1, 0] = 1.0
        m[..., 1, 2] = z2
        m[..., 2, 1] = z2
    elif causal_case is CausalCase.TIMELIKE_C:
        m[..., 0, 1] = -1.0
        m[..., 1, 0] = -1.0
        m[..., 1, 2] = z2
        m[..., 2, 1] = -z2
    else:
        m[..., 0, 1] = -1.0
        m[..., 1, 0] = 1.0
        m[..., 1, 2] = z2
        m[..., 2, 1] = z2
    return m


def _state_sign(causal_case):
    # The system for the timelike-c and timelike-q cases evolves (c, -t, -q)
    return 1.0 if causal_case is CausalCase.TIMELIKE_T else -1.0


def _grid(start, stop, step):
    steps = max(int(np.ceil((stop - start) / step - 1e-9)), 1)
    return np.linspace(start, stop, num = steps + 1)


def _gram_error(frames, signs):
    # max |I* X^T I* X - I*|
    expected = np.diag(np.asarray(signs, dtype = float))
    return np.max(np.abs(gram(frames) - expected), axis = (-2, -1))


def _drift(frames, signs):
    scale = np.maximum(1.0, np.max(np.abs(frames), axis = (-2, -1)) ** 2)
    return _gram_error(frames, signs) / scale


@dataclass(frozen = True, eq = False)
class SabbanSolution:
    """
    The Sabban frame ``(c, t, q)`` of a reconstruction on a uniform ``σ`` grid.

    ``frames`` is ``(n, 3, 3)`` with rows ``c``, ``t`` and ``q``. ``absolute_drift``
    is the largest deviation of the Gram matrix of the frame from ``diag(ε)`` seen
    during the integration. ``drift`` is the same deviation relative to the squared
    size of the frame, which is what ``drift_limit`` bounds.
    """
    sigma: np.ndarray
    frames: np.ndarray
    kg: np.ndarray
    case: CausalCase
    drift: float
    absolute_drift: float

    @property
    def c(self):
        return self.frames[:, 0]

    @property
    def t(self):
        return self.frames[:, 1]

    @property
    def q(self):
        return self.frames[:, 2]


def integrate_sabban(spec, init, step = None, reproject_every = None, drift_limit = None):
    """
    Integrates the Sabban system with the classical Runge-Kutta method.

    The frame is re-projected onto the pseudo-orthonormal frames by
    pseudo-Gram-Schmidt every ``reproject_every`` steps.
    """
    step = setting_or_default(step, 'STEP')
    reproject_every = setting_or_default(reproject_every, 'REPROJECT_EVERY')
    drift_limit = setting_or_default(drift_limit, 'DRIFT_LIMIT')
    if step <= 0:
        raise exceptions.InputError('integration step must be positive')
    case = spec.causal_case
    if init.case is not case:
        raise exceptions.CaseMismatch(
            'initial frame is {} but the p-shape is {}'.format(init.case.value, case.value)
        )
    signs = case.signs
    eps_q = signs[2]
    sigma = _grid(spec.start, spec.stop, step)
    h = sigma[1] - sigma[0]
    kg = eps_q * np.asarray(spec.tau_tilde(sigma), dtype = float) * np.ones_like(sigma)
    midpoints = sigma[:-1] + h / 2
    kg_mid = eps_q * np.asarray(spec.tau_tilde(midpoints), dtype = float) * np.ones_like(midpoints)
    if not (np.all(np.isfinite(kg)) and np.all(np.isfinite(kg_mid))):
        raise exceptions.InvalidProfile('p-shape torsion is not finite on the interval')
    m_nodes = sabban_matrix(case, kg)
    m_mid = sabban_matrix(case, kg_mid)
    sign = _state_sign(case)
    x = np.stack((init.e1, sign * init.e2, sign * init.e3))
    states = np.empty((len(sigma), 3, 3))
    states[0] = x
    worst = worst_absolute = 0.0
    for i in range(len(sigma) - 1):
        k1 = m_nodes[i] @ x
        k2 = m_mid[i] @ (x + h / 2 * k1)
        k3 = m_mid[i] @ (x + h / 2 * k2)
        k4 = m_nodes[i + 1] @ (x + h * k3)
        x = x + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        if reproject_every and (i + 1) % reproject_every == 0:
            drift = float(_drift(x, signs))
            worst = max(worst, drift)
            worst_absolute = max(worst_absolute, float(_gram_error(x, signs)))
            x = pseudo_gram_schmidt(x, signs)
            logger.debug('re-projected frame at sigma = %g, drift %g', sigma[i + 1], drift)
        states[i + 1] = x
    worst = max(worst, float(np.max(_drift(states, signs))))
    worst_absolute = max(worst_absolute, float(np.max(_gram_error(states, signs))))
    if worst > drift_limit:
        raise exceptions.FrameDegenerate(
            'frame drift {!r} exceeds {!r}'.format(worst, drift_limit),
            drift = worst
        )
    frames = states * np.array([1.0, sign, sign])[None, :, None]
    logger.debug('integrated %d steps of %g, drift %g (%g absolute)', len(sigma) - 1, h, worst, worst_absolute)
    return SabbanSolution(sigma, frames, kg, case, worst, worst_absolute)


def _weighted_curve(sigma, c, t, dt, k, dk, rho, b, x0):
    # α' = B c with B = b exp(ρ) and ρ' = k
    weight = (b * np.exp(rho))[:, None]
    k = k[:, None]
    dk = dk[:, None]
    d1 = weight * c
    d2 = weight * (k * c + t)
    d3 = weight * ((k * k + dk) * c + 2 * k * t + dt)
    points = np.asarray(x0, dtype = float) + cumulative_integral(sigma, d1)
    return CurveSamples(sigma, points, d1, d2, d3, ParamKind.SPHERICAL)


def reconstruct_curve(spec, init, b = 1.0, step = None, reproject_every = None, drift_limit = None):
    """
    Builds the curve with the given p-shape starting from the given frame.

    The result is parametrized by spherical arc length, starts at ``init.x0`` with
    Frenet frame ``init`` and carries exact derivative channels.
    """
    if b <= 0:
        raise exceptions.InputError('b must be positive')
    solution = integrate_sabban(spec, init, step, reproject_every, drift_limit)
    sigma = solution.sigma
    k = np.asarray(spec.kappa_tilde(sigma), dtype = float) * np.ones_like(sigma)
    if spec.rho is not None:
        rho = np.asarray(spec.rho(sigma), dtype = float) * np.ones_like(sigma)
    else:
        rho = cumulative_integral(sigma, k)
    if spec.dkappa is not None:
        dk = np.asarray(spec.dkappa(sigma), dtype = float) * np.ones_like(sigma)
    else:
        dk = differentiate(sigma, k, 1)
    eps_c, eps_t, _ = solution.case.signs
    # t' from the Sabban system
    dt = -eps_c * eps_t * solution.c + solution.kg[:, None] * solution.q
    curve = _weighted_curve(sigma, solution.c, solution.t, dt, k, dk, rho, b, init.x0)
    logger.info(
        'reconstructed %s curve on sigma in [%g, %g] with %d nodes (drift %g, %g absolute)',
        solution.case.value,
        spec.start,
        spec.stop,
        len(sigma),
        solution.drift,
        solution.absolute_drift
    )
    return curve


def curve_from_spherical(c, k, b = 1.0, x0 = (0.0, 0.0, 0.0)):
    """
    Builds ``α = x0 + b ∫ exp(∫ k dσ) c dσ`` from a unit speed spherical curve.

    ``c`` is a sampled curve parametrized by its arc length ``σ``; ``k`` is a
    function of ``σ`` or an array of its values. The result has p-shape curvature
    ``k`` and p-shape torsion ``ε_q k_g``, where ``k_g`` is the geodesic curvature
    of ``c``.
    """
    if b <= 0:
        raise exceptions.InputError('b must be positive')
    sigma = c.params
    k = np.asarray(k(sigma) if callable(k) else k, dtype = float) * np.ones_like(sigma)
    if k.shape != sigma.shape:
        raise exceptions.InputError('k must have one value per sample of c')
    rho = cumulative_integral(sigma, k)
    dk = differentiate(sigma, k, 1)
    return _weighted_curve(
        sigma,
        c.points,
        derivatives(c, 1),
        derivatives(c, 2),
        k,
        dk,
        rho,
        b,
        x0
    )
