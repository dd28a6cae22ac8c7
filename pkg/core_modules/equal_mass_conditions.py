"""
This work is licensed under CC BY-NC 4.0 International.

This document is part of the KiteCC central-configuration toolkit.
"""

"""
Three-Equal-Mass Conditions
---------------------------
Residuals of the conditions mu = mu1 and mu = mu2 in full trigonometric
form and in reduced coefficient form, plus the exceptional lines on which
the reduced conditions hold degenerately.

With c_a = cos^3(alpha), c_b = cos^3(beta), ta = tan(alpha), tb = tan(beta):

    convex  mu=mu1:  tb (c_a - 2 c_b + 1/4) + ta c_a - 1/(ta + tb)^2
    concave mu=mu1: -tb (c_a - 2 c_b + 1/4) + ta c_a - 1/(ta - tb)^2
    convex  mu=mu2:  ta (c_b - 2 c_a + 1/4) + tb c_b - 1/(ta + tb)^2
    concave mu=mu2:  ta (c_b - 2 c_a + 1/4) - tb c_b - 1/(ta - tb)^2
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from kite_config import CONFIG
from core_modules.angles_domain import AnglePair, ConfigKind, CriticalLine, FamilyId
from core_modules.mass_model import check_geometry, coefficients

logger = logging.getLogger(__name__)

__all__ = [
    "ExceptionalCase",
    "FamilyId",
    "exceptional_line_check",
    "residual_from_tangents",
    "residual_full",
    "residual_reduced",
]


@dataclass(frozen=True)
class ExceptionalCase:
    line: CriticalLine
    mu1: float
    mu2: float
    note: str


def residual_from_tangents(tan_alpha, tan_beta, family: FamilyId):
    """
    Full residual of the family condition, vectorized over tangents

    Args:
        tan_alpha: tan(alpha), scalar or array
        tan_beta: tan(beta), scalar or array
        family: Solution family

    Returns:
        Residual values (ndarray, or float for scalar input)
    """
    ta = np.asarray(tan_alpha, dtype=float)
    tb = np.asarray(tan_beta, dtype=float)
    c_a = (1.0 + ta * ta) ** -1.5
    c_b = (1.0 + tb * tb) ** -1.5
    # concave residuals are the convex ones with the sign of tan(beta) flipped
    sign = 1.0 if family.kind is ConfigKind.CONVEX else -1.0
    inverse = 1.0 / (ta + sign * tb) ** 2
    if family.equal_body == 1:
        value = sign * tb * (c_a - 2.0 * c_b + 0.25) + ta * c_a - inverse
    else:
        value = ta * (c_b - 2.0 * c_a + 0.25) + sign * tb * c_b - inverse
    return value if value.ndim else float(value)


def residual_full(p: AnglePair, family: FamilyId) -> float:
    tan_alpha, tan_beta = check_geometry(p, family.kind)
    return residual_from_tangents(tan_alpha, tan_beta, family)


def residual_reduced(p: AnglePair, family: FamilyId) -> float:
    """a0 - a1 - 3 b0 for mu = mu1 families, b0 - b1 - 3 a0 for mu = mu2"""
    c = coefficients(p, family.kind)
    if family.equal_body == 1:
        return c.a0 - c.a1 - 3.0 * c.b0
    return c.b0 - c.b1 - 3.0 * c.a0


def exceptional_line_check(p: AnglePair, kind: ConfigKind,
                           tolerance: Optional[float] = None) -> Optional[ExceptionalCase]:
    """
    Detect the exceptional lines: alpha + 2 beta = 90 deg for convex
    (mu1 = 1, mu2 = 0) and 2 alpha - beta = 90 deg for concave
    (mu1 = 0, mu2 = 1)
    """
    tol = tolerance if tolerance is not None else CONFIG["tolerances"]["line_rad"]
    if kind is ConfigKind.CONVEX:
        if abs(p.alpha + 2.0 * p.beta - math.pi / 2) / math.sqrt(5.0) <= tol:
            return ExceptionalCase(CriticalLine.ALPHA_PLUS_2BETA_90, 1.0, 0.0,
                                   "3 mu2 + mu1 = 1 holds degenerately")
        return None
    if abs(2.0 * p.alpha - p.beta - math.pi / 2) / math.sqrt(5.0) <= tol:
        return ExceptionalCase(CriticalLine.TWO_ALPHA_MINUS_BETA_90, 0.0, 1.0,
                               "3 mu1 + mu2 = 1 holds degenerately")
    return None
