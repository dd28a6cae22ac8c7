"""
This work is licensed under CC BY-NC 4.0 International.

This document is part of the KiteCC central-configuration toolkit.
"""

"""
Mass Model
----------
Coefficients a0, a1, b0, b1 of the kite centrality equations and the
nondimensional masses they determine:

    mu1 = (b1 + a0 - b0) b0 / D,  mu2 = (a1 + b0 - a0) a0 / D,
    D = a0 b1 + a1 b0 - a1 b1,    mu = (1 - mu1 - mu2) / 2
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from kite_config import CONFIG
from kite_errors import DegenerateGeometry, InvalidMasses, SingularDenominator
from core_modules.angles_domain import AnglePair, ConfigKind, CriticalLine

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Coefficients:
    a0: float
    a1: float
    b0: float
    b1: float

    @property
    def denominator(self) -> float:
        return self.a0 * self.b1 + self.a1 * self.b0 - self.a1 * self.b1

    @property
    def scale(self) -> float:
        return 1.0 + abs(self.a0 * self.b1) + abs(self.a1 * self.b0) + abs(self.a1 * self.b1)


@dataclass(frozen=True)
class MassTriple:
    """Nondimensional masses of A (mu1), B (mu2) and each of E, E' (mu)"""

    mu1: float
    mu2: float
    mu: float

    @classmethod
    def from_pair(cls, mu1: float, mu2: float) -> "MassTriple":
        return cls(float(mu1), float(mu2), (1.0 - mu1 - mu2) / 2.0)

    def body_masses(self) -> np.ndarray:
        """Masses in body order A, B, E, E'"""
        return np.array([self.mu1, self.mu2, self.mu, self.mu])

    @property
    def total(self) -> float:
        return self.mu1 + self.mu2 + 2.0 * self.mu


class MassStatus(Enum):
    OK = "ok"
    SINGULAR = "singular"
    INVALID = "invalid"


@dataclass(frozen=True)
class MassResult:
    """Outcome of the mass evaluation; raw values are kept for every status"""

    status: MassStatus
    raw_mu1: float
    raw_mu2: float
    denominator: float
    masses: Optional[MassTriple] = None

    @property
    def ok(self) -> bool:
        return self.status is MassStatus.OK

    def unwrap(self) -> MassTriple:
        if self.status is MassStatus.SINGULAR:
            raise SingularDenominator(
                f"mass denominator {self.denominator!r} vanishes", denominator=self.denominator,
            )
        if self.status is MassStatus.INVALID:
            raise InvalidMasses(
                f"masses mu1={self.raw_mu1!r}, mu2={self.raw_mu2!r} leave the admissible simplex",
                self.raw_mu1, self.raw_mu2,
            )
        return self.masses


@dataclass(frozen=True)
class LineMasses:
    """Mass values pinned along a critical line; None where unconstrained"""

    mu1: Optional[float] = None
    mu2: Optional[float] = None
    relation: str = ""


def coefficient_arrays(tan_alpha, tan_beta, kind: ConfigKind) -> Tuple[np.ndarray, ...]:
    """
    Vectorized coefficients from tangents

    Args:
        tan_alpha: tan(alpha), scalar or array
        tan_beta: tan(beta), scalar or array
        kind: Configuration kind

    Returns:
        Tuple (a0, a1, b0, b1) of arrays
    """
    ta = np.asarray(tan_alpha, dtype=float)
    tb = np.asarray(tan_beta, dtype=float)
    c_a = (1.0 + ta * ta) ** -1.5
    c_b = (1.0 + tb * tb) ** -1.5
    common = 0.125 - c_a - c_b
    a0 = (c_a - 0.125) * ta
    if kind is ConfigKind.CONVEX:
        inverse = 1.0 / (ta + tb) ** 2
        a1 = inverse + common * tb - ta / 8.0
        b0 = (c_b - 0.125) * tb
        b1 = inverse + common * ta - tb / 8.0
    else:
        inverse = 1.0 / (ta - tb) ** 2
        a1 = inverse - common * tb - ta / 8.0
        b0 = -(c_b - 0.125) * tb
        b1 = inverse + common * ta + tb / 8.0
    return a0, a1, b0, b1


def check_geometry(p: AnglePair, kind: ConfigKind) -> Tuple[float, float]:
    tan_alpha, tan_beta = p.tangents
    limit = CONFIG["tolerances"]["degenerate_tan"]
    if kind is ConfigKind.CONVEX:
        if abs(tan_alpha + tan_beta) < limit:
            raise DegenerateGeometry(f"tan(alpha) + tan(beta) vanishes at {p}",
                                     module="mass_model", alpha_deg=p.alpha_deg, beta_deg=p.beta_deg)
    elif p.alpha <= p.beta or abs(tan_alpha - tan_beta) < limit:
        raise DegenerateGeometry(f"concave coefficients need alpha > beta, got {p}",
                                 module="mass_model", alpha_deg=p.alpha_deg, beta_deg=p.beta_deg)
    return tan_alpha, tan_beta


def coefficients(p: AnglePair, kind: ConfigKind) -> Coefficients:
    tan_alpha, tan_beta = check_geometry(p, kind)
    return Coefficients(*(float(v) for v in coefficient_arrays(tan_alpha, tan_beta, kind)))


def masses_from_coefficients(coeff: Coefficients) -> MassResult:
    tolerances = CONFIG["tolerances"]
    denominator = coeff.denominator
    if abs(denominator) < tolerances["singular_relative"] * coeff.scale:
        return MassResult(MassStatus.SINGULAR, float("nan"), float("nan"), denominator)

    mu1 = (coeff.b1 + coeff.a0 - coeff.b0) * coeff.b0 / denominator
    mu2 = (coeff.a1 + coeff.b0 - coeff.a0) * coeff.a0 / denominator
    tol = tolerances["mass"]
    admissible = (
        -tol <= mu1 <= 1.0 + tol
        and -tol <= mu2 <= 1.0 + tol
        and -tol <= mu1 + mu2 <= 1.0 + tol
    )
    if not admissible:
        return MassResult(MassStatus.INVALID, mu1, mu2, denominator)
    return MassResult(MassStatus.OK, mu1, mu2, denominator, MassTriple.from_pair(mu1, mu2))


def masses(p: AnglePair, kind: ConfigKind) -> MassResult:
    """
    Masses at an angle pair

    Args:
        p: Angle pair
        kind: Configuration kind

    Returns:
        MassResult; status SINGULAR near the point S, INVALID outside the
        admissible simplex (raw values kept)
    """
    return masses_from_coefficients(coefficients(p, kind))


def require_masses(p: AnglePair, kind: ConfigKind) -> MassTriple:
    """Like masses(), raising SingularDenominator or InvalidMasses"""
    return masses(p, kind).unwrap()


def mass_arrays(tan_alpha, tan_beta, kind: ConfigKind) -> Tuple[np.ndarray, np.ndarray]:
    """Vectorized (mu1, mu2) without admissibility checks"""
    a0, a1, b0, b1 = coefficient_arrays(tan_alpha, tan_beta, kind)
    denominator = a0 * b1 + a1 * b0 - a1 * b1
    return (b1 + a0 - b0) * b0 / denominator, (a1 + b0 - a0) * a0 / denominator


_LINE_MASSES = {
    CriticalLine.ALPHA_60_CONVEX: LineMasses(mu2=0.0),
    CriticalLine.ALPHA_EQ_BETA: LineMasses(relation="mu1=mu2"),
    CriticalLine.ALPHA_PLUS_2BETA_90: LineMasses(mu1=1.0, mu2=0.0),
    CriticalLine.BETA_0: LineMasses(mu1=0.0),
    CriticalLine.ALPHA_60_CONCAVE: LineMasses(mu2=0.0),
    CriticalLine.TWO_ALPHA_MINUS_BETA_90: LineMasses(mu1=0.0, mu2=1.0),
    CriticalLine.BETA_60: LineMasses(mu1=0.0),
}


def critical_line_masses(line: CriticalLine) -> LineMasses:
    return _LINE_MASSES[line]


def barycenter_inside(p: AnglePair, triple: MassTriple) -> bool:
    """
    Concave configurations: True when the barycenter lies inside the deltoid
    (region C1), i.e. tan(beta) < mu1 tan(alpha) / (1 - mu2)
    """
    tan_alpha, tan_beta = p.tangents
    if triple.mu2 >= 1.0:
        return False
    return tan_beta < triple.mu1 * tan_alpha / (1.0 - triple.mu2)
