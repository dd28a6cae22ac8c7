"""
This work is licensed under CC BY-NC 4.0 International.

This document is part of the KiteCC central-configuration toolkit.
"""

"""
Curve Derivatives and the Mass Ratio Function
---------------------------------------------
Closed-form slopes g = N / D = d(alpha)/d(beta) of the four solution curves,
extremum localization for the noninjective families, the ratio
M(beta) = mu2 / mu1 along the concave mu = mu2 curve with its derivative,
and sampled verification of the sign claims behind curve monotonicity.

All alpha values are taken on the curve from the solver; nothing here
approximates alpha(beta) independently.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy.stats import qmc

from kite_config import CONFIG
from kite_errors import ConvergenceFailure, NoBracket, NoExtremum, NotOnCurve, OutOfDomain, ZeroDenominator
from core_modules.angles_domain import AnglePair, FamilyId
from core_modules.equal_mass_conditions import residual_full
from core_modules.mass_model import MassTriple, masses
from core_modules.solver import (
    DEG,
    NONINJECTIVE,
    THIRTY,
    CurveFamily,
    CurveSolver,
    SpecialLabel,
    SpecialPoint,
    bracketed_root,
    curve_solver,
)

logger = logging.getLogger(__name__)

BRACKET_HALF_WIDTH = 0.02 * DEG
EXTREMUM_MARGIN = 0.05 * DEG
M_SEARCH_START_DEG = 30.01


class ExtremumType(Enum):
    MINIMUM = "minimum"
    MAXIMUM = "maximum"


@dataclass(frozen=True)
class DerivativeEval:
    """Curve slope d(alpha)/d(beta) = numerator / denominator"""

    value: float
    numerator: float
    denominator: float


@dataclass(frozen=True)
class CurveExtremum:
    family: FamilyId
    angles: AnglePair
    kind: ExtremumType
    second_derivative: float


@dataclass(frozen=True)
class SignClaimReport:
    """Outcome of one sampled sign claim; witness is the first violating point"""

    claim: str
    family: FamilyId
    samples: int
    holds: bool
    witness: Optional[AnglePair] = None
    detail: str = ""

    def to_dict(self) -> Dict:
        return {
            "claim": self.claim,
            "family": self.family.value,
            "samples": self.samples,
            "holds": self.holds,
            "witness": None if self.witness is None else
            {"alpha_deg": self.witness.alpha_deg, "beta_deg": self.witness.beta_deg},
            "detail": self.detail,
        }


@dataclass(frozen=True)
class MRow:
    beta: float
    alpha: float
    ratio: float
    derivative: float
    masses: MassTriple


def derivative_terms(family: FamilyId, alpha, beta) -> Tuple[np.ndarray, np.ndarray]:
    """
    Numerator and denominator of the curve slope, vectorized

    Args:
        family: Solution family
        alpha: alpha in radians (on the curve), scalar or array
        beta: beta in radians, scalar or array

    Returns:
        (N, D) arrays
    """
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    sa, ca, ta = np.sin(alpha), np.cos(alpha), np.tan(alpha)
    sb, cb, tb = np.sin(beta), np.cos(beta), np.tan(beta)

    if family is FamilyId.CONVEX_MU1:
        cube = 2.0 / (ta + tb) ** 3
        numerator = 2.0 * cb * (3.0 * sb ** 2 - 1.0) + (0.25 + ca ** 3 + cube) / cb ** 2
        denominator = ca * (3.0 * sa ** 2 - 1.0) + 3.0 * sa * ca ** 2 * tb - cube / ca ** 2
    elif family is FamilyId.CONVEX_MU2:
        cube = 2.0 / (ta + tb) ** 3
        numerator = cb * (3.0 * sb ** 2 - 1.0) + 3.0 * sb * cb ** 2 * ta - cube / cb ** 2
        denominator = 2.0 * ca * (3.0 * sa ** 2 - 1.0) + (0.25 + cb ** 3 + cube) / ca ** 2
    elif family is FamilyId.CONCAVE_MU1:
        cube = 2.0 / (ta - tb) ** 3
        numerator = 2.0 * cb * (3.0 * sb ** 2 - 1.0) + (0.25 + ca ** 3 + cube) / cb ** 2
        denominator = 3.0 * sa * ca ** 2 * tb + ca - 3.0 * sa ** 2 * ca + cube / ca ** 2
    else:
        cube = 2.0 / (ta - tb) ** 3
        numerator = 3.0 * sb * cb * (cb * ta - sb) + cb + cube / cb ** 2
        denominator = 2.0 * ca * (3.0 * sa ** 2 - 1.0) + (0.25 + cb ** 3 + cube) / ca ** 2
    return numerator, denominator


def _evaluate(family: FamilyId, alpha: float, beta: float) -> DerivativeEval:
    numerator, denominator = (float(v) for v in derivative_terms(family, alpha, beta))
    if abs(denominator) < CONFIG["tolerances"]["derivative_zero"]:
        raise ZeroDenominator(
            f"{family.value}: slope denominator vanishes at beta={math.degrees(beta):.6f} deg",
            family=family, denominator=denominator,
        )
    return DerivativeEval(numerator / denominator, numerator, denominator)


def g_eval(family: FamilyId, p: AnglePair) -> DerivativeEval:
    """
    Slope d(alpha)/d(beta) of the family curve at a point on it

    Raises:
        NotOnCurve: p misses the family condition by more than 1e-9
        ZeroDenominator: |D| below the derivative_zero tolerance
    """
    residual = residual_full(p, family)
    if abs(residual) > 1e-9:
        raise NotOnCurve(f"{p} is not on the {family.value} curve (residual {residual:.3e})",
                         family=family, residual=residual)
    return _evaluate(family, p.alpha, p.beta)


def g_at_beta(family: FamilyId, beta: float, solver: Optional[CurveSolver] = None) -> DerivativeEval:
    solver = solver or curve_solver
    return _evaluate(family, solver.on_curve_alpha(family, beta), beta)


def _second_derivative(family: FamilyId, beta: float, solver: CurveSolver) -> float:
    step = CONFIG["analysis"]["finite_difference_step_rad"]
    ahead = g_at_beta(family, beta + step, solver).value
    behind = g_at_beta(family, beta - step, solver).value
    return (ahead - behind) / (2.0 * step)


def find_curve_extremum(family: FamilyId, solver: Optional[CurveSolver] = None) -> CurveExtremum:
    """
    Locate the interior extremum of a noninjective family as the root of
    the slope numerator along the curve

    Args:
        family: ConvexMu2 or ConcaveMu1
        solver: Curve solver supplying alpha(beta)

    Returns:
        CurveExtremum with the type from the sign of d2(alpha)/d(beta)2
    """
    if family not in NONINJECTIVE:
        raise NoExtremum(f"{family.value} is strictly monotone and has no interior extremum", family=family)
    solver = solver or curve_solver
    start, _ = solver.family_domain(family)
    upper = math.pi / 4 if family is FamilyId.CONVEX_MU2 else THIRTY
    lo, hi = start.angles.beta + EXTREMUM_MARGIN, upper - EXTREMUM_MARGIN

    def numerator(beta):
        beta = float(beta)
        return float(derivative_terms(family, solver.on_curve_alpha(family, beta), beta)[0])

    try:
        beta = bracketed_root(numerator, lo, hi, solver.xtol, solver.maxiter)
    except NoBracket as e:
        raise ConvergenceFailure(f"{family.value}: slope numerator has no root ({e.message})",
                                 module="appendix_analysis", family=family) from e

    angles = AnglePair(solver.on_curve_alpha(family, beta), beta)
    curvature = _second_derivative(family, beta, solver)
    kind = ExtremumType.MINIMUM if curvature > 0 else ExtremumType.MAXIMUM
    logger.info(f"{family.value} extremum ({kind.value}) at {angles}")
    return CurveExtremum(family, angles, kind, curvature)


def _m_domain() -> Tuple[float, float]:
    lo_deg, hi_deg = CONFIG["analysis"]["m_domain_deg"]
    return math.radians(lo_deg), math.radians(hi_deg)


def _check_m_domain(beta: float) -> None:
    lo, hi = _m_domain()
    tol = CONFIG["tolerances"]["line_rad"]
    if not lo - tol <= beta <= hi + tol:
        raise OutOfDomain(
            f"M is defined for beta in [{math.degrees(lo):.3f}, {math.degrees(hi):.3f}] deg, "
            f"got {math.degrees(beta):.6f}",
            beta_deg=math.degrees(beta),
        )


def _m_terms(alpha: float, beta: float) -> Tuple[float, float]:
    ta, tb = math.tan(alpha), math.tan(beta)
    ca3, cb3 = math.cos(alpha) ** 3, math.cos(beta) ** 3
    top = ca3 * (3.0 * ta - tb) - cb3 * (ta - tb) - ta / 4.0
    bottom = -2.0 * cb3 * tb + tb / 4.0
    return top, bottom


def mass_ratio_M(beta: float, family: FamilyId = FamilyId.CONCAVE_MU2,
                 solver: Optional[CurveSolver] = None) -> float:
    """
    Ratio mu2 / mu1 along a concave family curve

    On concave mu = mu2 this is the closed form in beta and alpha(beta);
    on concave mu = mu1 it is the mass-model ratio, taken as the two-sided
    limit at the singular point.

    Args:
        beta: beta in radians
        family: CONCAVE_MU2 (default) or CONCAVE_MU1
        solver: Curve solver supplying alpha(beta)

    Returns:
        M(beta)
    """
    _check_m_domain(beta)
    solver = solver or curve_solver
    if family is FamilyId.CONCAVE_MU2:
        top, bottom = _m_terms(solver.on_curve_alpha(family, beta), beta)
        return top / bottom
    if family is FamilyId.CONCAVE_MU1:
        if abs(beta - THIRTY) <= solver.line_tol:
            triple = solver.singular_limit_masses(family, beta)
        else:
            p = AnglePair(solver.on_curve_alpha(family, beta), beta)
            triple = masses(p, family.kind).unwrap()
        return triple.mu2 / triple.mu1
    raise OutOfDomain(f"M is defined on the concave families, got {family.value}", family=family)


def mass_ratio_derivative(beta: float, solver: Optional[CurveSolver] = None) -> float:
    """dM/d(beta) on the concave mu = mu2 curve, with d(alpha)/d(beta) from its slope"""
    _check_m_domain(beta)
    solver = solver or curve_solver
    family = FamilyId.CONCAVE_MU2
    alpha = solver.on_curve_alpha(family, beta)
    slope = _evaluate(family, alpha, beta).value

    sa, ca, ta = math.sin(alpha), math.cos(alpha), math.tan(alpha)
    sb, cb, tb = math.sin(beta), math.cos(beta), math.tan(beta)
    top, bottom = _m_terms(alpha, beta)
    top_rate = (
        slope * (3.0 * ca - 3.0 * sa * ca ** 2 * (3.0 * ta - tb) - (cb ** 3 + 0.25) / ca ** 2)
        + 3.0 * sb * cb ** 2 * (ta - tb) - ca ** 3 / cb ** 2 + cb
    )
    bottom_rate = 2.0 * cb * (3.0 * sb ** 2 - 1.0) + 1.0 / (4.0 * cb ** 2)
    return (top_rate * bottom - top * bottom_rate) / bottom ** 2


def m_masses(ratio: float) -> MassTriple:
    """Masses on concave mu = mu2 from M, using mu1 + 3 mu2 = 1"""
    mu1 = 1.0 / (1.0 + 3.0 * ratio)
    return MassTriple.from_pair(mu1, ratio * mu1)


def find_M_minimum(solver: Optional[CurveSolver] = None) -> AnglePair:
    """
    Minimum of M on concave mu = mu2, the root of dM/d(beta)

    Returns:
        Angle pair on the curve at the minimum
    """
    solver = solver or curve_solver
    _, hi = _m_domain()
    try:
        beta = bracketed_root(lambda b: mass_ratio_derivative(float(b), solver),
                              math.radians(M_SEARCH_START_DEG), hi, solver.xtol, solver.maxiter)
    except NoBracket as e:
        raise ConvergenceFailure(f"dM/dbeta has no root: {e.message}", module="appendix_analysis") from e
    p = AnglePair(solver.on_curve_alpha(FamilyId.CONCAVE_MU2, beta), beta)
    residual = solver.scaled_residual(FamilyId.CONCAVE_MU2, p)
    if residual > solver.curve_tol:
        raise ConvergenceFailure(f"M minimum {p} misses the curve by {residual:.3e}", module="appendix_analysis")
    return p


def m_star_point(solver: Optional[CurveSolver] = None) -> SpecialPoint:
    """Special point at the M minimum, where the mass of A peaks"""
    solver = solver or curve_solver
    p = find_M_minimum(solver)
    ratio = mass_ratio_M(p.beta, solver=solver)
    return SpecialPoint(SpecialLabel.M_STAR_POINT, p, m_masses(ratio),
                        family=FamilyId.CONCAVE_MU2, note="M minimum", ratio=1.0 / ratio)


def m_function_table(step_deg: float = 0.01, solver: Optional[CurveSolver] = None) -> List[MRow]:
    """M and dM/d(beta) on a beta grid spanning the domain of M, endpoints included"""
    solver = solver or curve_solver
    lo, hi = _m_domain()
    count = max(int(math.floor((math.degrees(hi) - math.degrees(lo)) / step_deg + 1e-9)), 1)
    betas = [lo + k * math.radians(step_deg) for k in range(count + 1) if lo + k * math.radians(step_deg) < hi]
    betas.append(hi)

    rows = []
    for beta in betas:
        alpha = solver.on_curve_alpha(FamilyId.CONCAVE_MU2, beta)
        ratio = mass_ratio_M(beta, solver=solver)
        rows.append(MRow(beta, alpha, ratio, mass_ratio_derivative(beta, solver), m_masses(ratio)))
    return rows


def _sample_curve(curve: CurveFamily, samples: int, solver: CurveSolver,
                  lo: Optional[float] = None) -> Tuple[np.ndarray, np.ndarray]:
    """Deterministic Halton betas on the family domain and their on-curve alphas"""
    family = curve.id
    trace_beta = np.array([p.beta for p in curve.points])
    trace_alpha = np.array([p.alpha for p in curve.points])
    start = trace_beta[0] if lo is None else lo
    end = trace_beta[-1]

    unit = qmc.Halton(d=1, scramble=False).random(samples + 1)[1:, 0]
    betas = np.sort(start + (end - start) * unit)
    guess = np.interp(betas, trace_beta, trace_alpha)
    alphas = solver.alpha_on_curve_many(family, betas, guess - BRACKET_HALF_WIDTH, guess + BRACKET_HALF_WIDTH)
    return alphas, betas


def _positive_claim(claim: str, family: FamilyId, values: np.ndarray,
                    alphas: np.ndarray, betas: np.ndarray) -> SignClaimReport:
    bad = np.flatnonzero(~(values > 0))
    if bad.size == 0:
        return SignClaimReport(claim, family, int(values.size), True, detail=f"min {values.min():.6g}")
    i = int(bad[0])
    witness = AnglePair(float(alphas[i]), float(betas[i]))
    logger.warning(f"Sign claim '{claim}' fails at {witness}: value {values[i]:.6g}")
    return SignClaimReport(claim, family, int(values.size), False, witness, detail=f"value {values[i]:.6g}")


def verify_sign_claims(samples: Optional[int] = None, solver: Optional[CurveSolver] = None) -> List[SignClaimReport]:
    """
    Check the slope sign claims on deterministic samples of each curve

    Args:
        samples: Points per curve (config sign_samples by default)
        solver: Curve solver supplying the traces and alpha(beta)

    Returns:
        One report per claim
    """
    samples = samples or int(CONFIG["analysis"]["sign_samples"])
    solver = solver or curve_solver
    reports = []

    family = FamilyId.CONVEX_MU1
    alphas, betas = _sample_curve(solver.trace_family(family), samples, solver)
    numerator, denominator = derivative_terms(family, alphas, betas)
    reports.append(_positive_claim("N1 > 0", family, numerator, alphas, betas))
    reports.append(_positive_claim("D1 > 0", family, denominator, alphas, betas))

    family = FamilyId.CONVEX_MU2
    alphas, betas = _sample_curve(solver.trace_family(family), samples, solver)
    numerator, denominator = derivative_terms(family, alphas, betas)
    reports.append(_positive_claim("D2 > 0", family, denominator, alphas, betas))
    signs = np.sign(numerator)
    changes = np.flatnonzero(signs[1:] * signs[:-1] < 0)
    witness = None
    if changes.size != 1:
        i = int(changes[1]) if changes.size > 1 else 0
        witness = AnglePair(float(alphas[i]), float(betas[i]))
    reports.append(SignClaimReport("N2 changes sign once", family, samples, changes.size == 1, witness,
                                   detail=f"{changes.size} sign changes"))

    family = FamilyId.CONCAVE_MU1
    concave_mu1 = solver.trace_family(family)
    alphas, betas = _sample_curve(concave_mu1, samples, solver)
    numerator, denominator = derivative_terms(family, alphas, betas)
    reports.append(_positive_claim("D3 > 0", family, denominator, alphas, betas))
    alphas, betas = _sample_curve(concave_mu1, samples, solver, lo=THIRTY)
    numerator, _ = derivative_terms(family, alphas, betas)
    reports.append(_positive_claim("N3 > 0 for beta >= 30 deg", family, numerator, alphas, betas))

    family = FamilyId.CONCAVE_MU2
    alphas, betas = _sample_curve(solver.trace_family(family), samples, solver)
    numerator, denominator = derivative_terms(family, alphas, betas)
    reports.append(_positive_claim("N4 > 0", family, numerator, alphas, betas))
    reports.append(_positive_claim("D4 > 0", family, denominator, alphas, betas))

    logger.info(f"Sign claims: {sum(r.holds for r in reports)} of {len(reports)} hold on {samples} samples")
    return reports
