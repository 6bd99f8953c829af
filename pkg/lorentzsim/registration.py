"""
Registration of curves with equal p-shapes.

Two curves with the same p-shape (or with p-shape torsions of opposite sign) are
related by a p-similarity. The p-similarity is recovered from the ratio of the
curvatures and from the Frenet frames at a single anchor node.
"""

import itertools
import logging
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicHermiteSpline, CubicSpline

from . import exceptions
from .curves import curvature, derivatives, speed, spherical_parameter
from .frenet import frenet_apparatus
from .minkowski import euclidean_norm
from .pshape import pshape_distance, pshape_from_frenet
from .quaternions import Orientation, PSimilarity, from_rotation_matrix
from .settings import setting_or_default


logger = logging.getLogger(__name__)


@dataclass(frozen = True, eq = False)
class MatchResult:
    """
    A p-similarity ``f`` with ``f(a) ≈ b`` and the quality of the fit.

    ``residual`` is the largest Euclidean distance between ``f(a)`` and ``b`` at
    common values of the spherical arc length. ``sign_pattern`` holds the signs
    ``s_i`` with ``L e_i(a) = s_i e_i(b)`` at the anchor, where ``L`` is the
    pseudo-orthogonal part of ``f`` scaled to have positive ratio.
    """
    f: PSimilarity
    residual: float
    mu_spread: float
    sign_pattern: tuple
    distance: float

    @property
    def orientation(self):
        return self.f.orientation

    def to_dict(self):
        return dict(
            self.f.to_dict(),
            residual = self.residual,
            mu_spread = self.mu_spread,
            orientation = self.orientation.value,
            sign_pattern = list(self.sign_pattern),
            distance = self.distance
        )


def _common_nodes(sigma_a, sigma_b):
    lo = max(sigma_a[0], sigma_b[0])
    hi = min(sigma_a[-1], sigma_b[-1])
    slack = 1e-12 * max(1.0, abs(lo), abs(hi))
    nodes = (sigma_a >= lo - slack) & (sigma_a <= hi + slack)
    if np.count_nonzero(nodes) < 3:
        raise exceptions.NoOverlap('curves share fewer than 3 nodes in spherical arc length')
    return nodes, np.clip(sigma_a[nodes], sigma_b[0], sigma_b[-1])


def _positions_in_sigma(sigma, points, tangent):
    # dα/dσ = e1 / κ
    return CubicHermiteSpline(sigma, points, tangent, axis = 0)


def estimate_similarity(a, b, threshold = None, floor = None, tol = None, quaternion_tol = None):
    """
    Estimates the p-similarity ``f`` with ``f(a) = b``.

    The curves must have the same causal character and p-shapes that agree, or
    agree after negating the p-shape torsion of ``b``, to within ``threshold``.
    """
    threshold = setting_or_default(threshold, 'MATCH_THRESHOLD')
    quaternion_tol = setting_or_default(quaternion_tol, 'QUATERNION_TOLERANCE')
    fa = frenet_apparatus(a, floor, tol)
    fb = frenet_apparatus(b, floor, tol)
    if fa.signs != fb.signs:
        raise exceptions.CausalMismatch(
            'curves have causal cases {} and {}'.format(fa.causal_case.value, fb.causal_case.value)
        )
    distance = pshape_distance(pshape_from_frenet(fa), pshape_from_frenet(fb))
    torsion_signs = [
        s3 for s3, d in ((1, distance.direct), (-1, distance.flipped)) if d <= threshold
    ]
    if not torsion_signs:
        raise exceptions.PShapeMismatch(distance.value, flipped = distance.flipped, direct = distance.direct)

    nodes, sigma = _common_nodes(fa.sigma, fb.sigma)
    positions_b = _positions_in_sigma(fb.sigma, fb.points, fb.e1 / fb.kappa[:, None])(sigma)
    frames_b = CubicSpline(fb.sigma, fb.frame, axis = 0)(sigma)
    log_kappa_b = CubicSpline(fb.sigma, np.log(fb.kappa))(sigma)
    positions_a = fa.points[nodes]
    frames_a = fa.frame[nodes]

    # κ(b) = κ(a) / |μ|
    log_ratio = np.log(fa.kappa[nodes]) - log_kappa_b
    scale = float(np.exp(np.mean(log_ratio)))
    mu_spread = float(np.max(np.abs(np.exp(log_ratio - np.mean(log_ratio)) - 1.0)))

    anchor = len(sigma) // 2
    inverse_a = np.linalg.inv(frames_a[anchor].T)
    best = None
    failure = None
    for s2, s3 in itertools.product((1, -1), torsion_signs):
        pattern = (1, s2, s3)
        target = np.array(pattern, dtype = float)[:, None] * frames_b[anchor]
        linear = target.T @ inverse_a
        try:
            q = from_rotation_matrix(linear, quaternion_tol)
            mu = scale
        except exceptions.QuaternionExtractionFailure as exc:
            try:
                q = from_rotation_matrix(-linear, quaternion_tol)
                mu = -scale
            except exceptions.QuaternionExtractionFailure:
                failure = exc
                continue
        rotated = mu * positions_a @ q.rotation_matrix().T
        translation = positions_b[anchor] - rotated[anchor]
        residual = float(np.max(euclidean_norm(rotated + translation - positions_b)))
        logger.debug('sign pattern %s: mu %g, residual %g', pattern, mu, residual)
        if best is None or residual < best[0]:
            best = (residual, pattern, mu, q, translation)
    if best is None:
        raise failure
    residual, pattern, mu, q, translation = best
    f = PSimilarity(mu, q, translation)
    logger.info(
        'matched curves with mu %g (%s), residual %g, sign pattern %s',
        mu,
        f.orientation.value,
        residual,
        pattern
    )
    return MatchResult(f, residual, mu_spread, pattern, distance.value)


def verify_match(a, b, f, floor = None, tol = None):
    """
    The largest distance between ``f(a)`` and ``b`` at common spherical arc
    lengths, relative to the bounding box diagonal of ``b``.
    """
    sigma_a = spherical_parameter(a, floor, tol)
    sigma_b = spherical_parameter(b, floor, tol)
    nodes, sigma = _common_nodes(sigma_a, sigma_b)
    dsigma_dt = curvature(b) * speed(b, tol)
    positions_b = _positions_in_sigma(sigma_b, b.points, derivatives(b, 1) / dsigma_dt[:, None])(sigma)
    mapped = f.apply(a.points[nodes])
    diameter = float(euclidean_norm(np.ptp(positions_b, axis = 0)))
    return float(np.max(euclidean_norm(mapped - positions_b))) / max(diameter, np.finfo(float).tiny)


@dataclass(frozen = True)
class SelfSimilarity:
    """
    Result of a self-similarity test. Truthy when the p-shape is constant.

    ``kappa_tilde`` and ``tau_tilde`` are the mean p-shape, ``deviation`` the
    largest deviation from it.
    """
    is_self_similar: bool
    kappa_tilde: float
    tau_tilde: float
    deviation: float

    def __bool__(self):
        return self.is_self_similar

    def to_dict(self):
        return dict(
            is_self_similar = self.is_self_similar,
            kappa_tilde = self.kappa_tilde,
            tau_tilde = self.tau_tilde,
            deviation = self.deviation
        )


def is_self_similar(curve, tol = None, floor = None):
    """
    Tests whether a curve has constant p-shape.
    """
    tol = setting_or_default(tol, 'MATCH_THRESHOLD')
    profile = pshape_from_frenet(frenet_apparatus(curve, floor))
    kappa_tilde = float(np.mean(profile.kappa_tilde))
    tau_tilde = float(np.mean(profile.tau_tilde))
    deviation = float(max(
        np.max(np.abs(profile.kappa_tilde - kappa_tilde)),
        np.max(np.abs(profile.tau_tilde - tau_tilde))
    ))
    return SelfSimilarity(deviation <= tol, kappa_tilde, tau_tilde, deviation)
