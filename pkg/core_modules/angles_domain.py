"""
This work is licensed under CC BY-NC 4.0 International.

This document is part of the KiteCC central-configuration toolkit.
"""

"""
Angle Coordinates and Admissible Regions
----------------------------------------
Angle pairs (alpha, beta) of a kite configuration, region classification in
the (beta, alpha) plane against the critical lines, reconstruction of the
planar frame, and the (k, l) coordinates used in the comparison literature.

Angles are radians internally; degrees only at the I/O boundary.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np

from kite_config import CONFIG
from kite_errors import DegenerateGeometry, InvalidAngles
from core_modules.nbody_oracle import KiteConfiguration

logger = logging.getLogger(__name__)

RIGHT_ANGLE = math.pi / 2
SIXTY = math.pi / 3
THIRTY = math.pi / 6
SQRT2 = math.sqrt(2.0)
SQRT5 = math.sqrt(5.0)


class ConfigKind(Enum):
    """Convex or concave deltoid"""
    CONVEX = "convex"
    CONCAVE = "concave"


class FamilyId(Enum):
    """Solution family: configuration kind times which mass equals mu"""
    CONVEX_MU1 = "convex-mu1"
    CONVEX_MU2 = "convex-mu2"
    CONCAVE_MU1 = "concave-mu1"
    CONCAVE_MU2 = "concave-mu2"

    @property
    def kind(self) -> ConfigKind:
        return ConfigKind.CONVEX if self.value.startswith("convex") else ConfigKind.CONCAVE

    @property
    def equal_body(self) -> int:
        """1 when mu = mu1, 2 when mu = mu2"""
        return 1 if self.value.endswith("mu1") else 2

    @classmethod
    def parse(cls, text: str) -> "FamilyId":
        """Accepts 'convex-mu1', 'convex_mu1', 'ConvexMu1' and the enum name"""
        key = text.strip().lower().replace("_", "").replace("-", "")
        for member in cls:
            if member.value.replace("-", "") == key:
                return member
        raise ValueError(f"unknown family {text!r}")


class CriticalLine(Enum):
    ALPHA_60_CONVEX = "alpha=60 (convex)"
    ALPHA_EQ_BETA = "alpha=beta"
    ALPHA_PLUS_2BETA_90 = "alpha+2beta=90"
    BETA_0 = "beta=0"
    ALPHA_60_CONCAVE = "alpha=60 (concave)"
    TWO_ALPHA_MINUS_BETA_90 = "2alpha-beta=90"
    BETA_60 = "beta=60"

    @property
    def kind(self) -> ConfigKind:
        if self in (CriticalLine.ALPHA_60_CONVEX, CriticalLine.ALPHA_EQ_BETA, CriticalLine.ALPHA_PLUS_2BETA_90):
            return ConfigKind.CONVEX
        return ConfigKind.CONCAVE


class SingularPointId(Enum):
    S_CONVEX = "S_convex"
    S_CONCAVE = "S_concave"


class RegionKind(Enum):
    CONVEX_INTERIOR = "ConvexInterior"
    CONCAVE_C1 = "ConcaveC1"
    CONCAVE_C2 = "ConcaveC2"
    ON_CRITICAL_LINE = "OnCriticalLine"
    SINGULAR_POINT = "SingularPoint"
    OUTSIDE = "Outside"


@dataclass(frozen=True)
class Region:
    kind: RegionKind
    line: Optional[CriticalLine] = None
    point: Optional[SingularPointId] = None

    def __str__(self):
        if self.line is not None:
            return f"{self.kind.value}({self.line.value})"
        if self.point is not None:
            return f"{self.kind.value}({self.point.value})"
        return self.kind.value


@dataclass(frozen=True)
class AnglePair:
    """Angle coordinates in radians, 0 <= alpha, beta < 90 degrees"""

    alpha: float
    beta: float

    def __post_init__(self):
        for name in ("alpha", "beta"):
            value = getattr(self, name)
            if not isinstance(value, (int, float, np.floating)) or not math.isfinite(value):
                raise InvalidAngles(f"{name} must be a finite number, got {value!r}", **{name: value})
            if not 0.0 <= value < RIGHT_ANGLE:
                raise InvalidAngles(
                    f"{name}={math.degrees(value):.6f} deg is outside [0, 90)",
                    **{f"{name}_deg": math.degrees(value)},
                )
            object.__setattr__(self, name, float(value))

    @classmethod
    def from_degrees(cls, alpha_deg: float, beta_deg: float) -> "AnglePair":
        return cls(math.radians(alpha_deg), math.radians(beta_deg))

    @property
    def alpha_deg(self) -> float:
        return math.degrees(self.alpha)

    @property
    def beta_deg(self) -> float:
        return math.degrees(self.beta)

    @property
    def tangents(self) -> Tuple[float, float]:
        return math.tan(self.alpha), math.tan(self.beta)

    def __str__(self):
        return f"(alpha={self.alpha_deg:.6f} deg, beta={self.beta_deg:.6f} deg)"


@dataclass(frozen=True)
class KLPoint:
    k: float
    l: float

    def __post_init__(self):
        if not (math.isfinite(self.k) and math.isfinite(self.l)):
            raise ValueError(f"(k, l) must be finite, got ({self.k}, {self.l})")


SINGULAR_POINTS: Dict[SingularPointId, Tuple[float, float]] = {
    # (beta, alpha)
    SingularPointId.S_CONVEX: (THIRTY, THIRTY),
    SingularPointId.S_CONCAVE: (THIRTY, SIXTY),
}


def _triangles(beta: float, alpha: float) -> List[Tuple[RegionKind, ConfigKind, List[Tuple[CriticalLine, float]]]]:
    # signed distances, positive on the interior side
    return [
        (RegionKind.CONVEX_INTERIOR, ConfigKind.CONVEX, [
            (CriticalLine.ALPHA_60_CONVEX, SIXTY - alpha),
            (CriticalLine.ALPHA_EQ_BETA, (alpha - beta) / SQRT2),
            (CriticalLine.ALPHA_PLUS_2BETA_90, (alpha + 2 * beta - RIGHT_ANGLE) / SQRT5),
        ]),
        (RegionKind.CONCAVE_C1, ConfigKind.CONCAVE, [
            (CriticalLine.BETA_0, beta),
            (CriticalLine.ALPHA_60_CONCAVE, SIXTY - alpha),
            (CriticalLine.TWO_ALPHA_MINUS_BETA_90, (2 * alpha - beta - RIGHT_ANGLE) / SQRT5),
        ]),
        (RegionKind.CONCAVE_C2, ConfigKind.CONCAVE, [
            (CriticalLine.ALPHA_60_CONCAVE, alpha - SIXTY),
            (CriticalLine.BETA_60, SIXTY - beta),
            (CriticalLine.TWO_ALPHA_MINUS_BETA_90, (RIGHT_ANGLE - 2 * alpha + beta) / SQRT5),
        ]),
    ]


def classify_region(p: AnglePair, kind: Optional[ConfigKind] = None,
                    tolerance: Optional[float] = None) -> Region:
    """
    Locate p in the (beta, alpha) plane

    The convex triangle overlaps the C1 triangle, so without a kind the convex
    reading wins. The open alpha = beta segment of the convex triangle is a
    symmetry edge (mu1 = mu2) and counts as interior.

    Args:
        p: Angle pair
        kind: Restrict to the regions of one configuration kind
        tolerance: On-line tolerance in radians (config line_rad by default)

    Returns:
        Region
    """
    tol = tolerance if tolerance is not None else CONFIG["tolerances"]["line_rad"]

    for point_id, (beta_s, alpha_s) in SINGULAR_POINTS.items():
        point_kind = ConfigKind.CONVEX if point_id is SingularPointId.S_CONVEX else ConfigKind.CONCAVE
        if kind not in (None, point_kind):
            continue
        if abs(p.beta - beta_s) <= tol and abs(p.alpha - alpha_s) <= tol:
            return Region(RegionKind.SINGULAR_POINT, point=point_id)

    for region_kind, triangle_kind, edges in _triangles(p.beta, p.alpha):
        if kind not in (None, triangle_kind):
            continue
        if any(d < -tol for _, d in edges):
            continue
        on_lines = [line for line, d in edges if abs(d) <= tol]
        if not on_lines:
            return Region(region_kind)
        if on_lines == [CriticalLine.ALPHA_EQ_BETA]:
            return Region(RegionKind.CONVEX_INTERIOR)
        return Region(RegionKind.ON_CRITICAL_LINE, line=on_lines[0])

    return Region(RegionKind.OUTSIDE)


def reconstruct_positions(p: AnglePair, kind: ConfigKind) -> KiteConfiguration:
    """
    Planar kite frame: E = (1, 0), E' = (-1, 0), A = (0, tan alpha),
    B = (0, -tan beta) convex or (0, tan beta) concave. Masses are unset.
    """
    tan_alpha, tan_beta = p.tangents
    limit = 1.0 / CONFIG["tolerances"]["degenerate_tan"]
    if tan_alpha > limit or tan_beta > limit:
        raise DegenerateGeometry(f"tangent overflow at {p}", alpha_deg=p.alpha_deg, beta_deg=p.beta_deg)
    if kind is ConfigKind.CONCAVE:
        if p.alpha <= p.beta:
            raise DegenerateGeometry(
                f"concave configuration requires alpha > beta, got {p}",
                alpha_deg=p.alpha_deg, beta_deg=p.beta_deg,
            )
        b_y = tan_beta
    else:
        if tan_alpha + tan_beta < CONFIG["tolerances"]["degenerate_tan"]:
            raise DegenerateGeometry(f"A and B coincide at {p}", alpha_deg=p.alpha_deg, beta_deg=p.beta_deg)
        b_y = -tan_beta
    positions = np.array([
        [0.0, tan_alpha],
        [0.0, b_y],
        [1.0, 0.0],
        [-1.0, 0.0],
    ])
    return KiteConfiguration(positions)


def to_kl(p: AnglePair, family: FamilyId) -> KLPoint:
    """
    (k, l) coordinates under the family's transform

    convex mu1: tan a = k, tan b = l; convex mu2: tan a = l, tan b = k;
    concave mu1: tan a = k, tan b = -l; concave mu2: tan a = l, tan b = -k.
    """
    tan_alpha, tan_beta = p.tangents
    if family is FamilyId.CONVEX_MU1:
        k, l = tan_alpha, tan_beta
    elif family is FamilyId.CONVEX_MU2:
        k, l = tan_beta, tan_alpha
    elif family is FamilyId.CONCAVE_MU1:
        k, l = tan_alpha, -tan_beta
    else:
        k, l = -tan_beta, tan_alpha
    # no negative zero in output
    return KLPoint(k + 0.0, l + 0.0)


def from_kl(point: KLPoint, family: FamilyId) -> AnglePair:
    """Inverse of to_kl"""
    if family is FamilyId.CONVEX_MU1:
        tan_alpha, tan_beta = point.k, point.l
    elif family is FamilyId.CONVEX_MU2:
        tan_alpha, tan_beta = point.l, point.k
    elif family is FamilyId.CONCAVE_MU1:
        tan_alpha, tan_beta = point.k, -point.l
    else:
        tan_alpha, tan_beta = point.l, -point.k
    return AnglePair(math.atan(tan_alpha) + 0.0, math.atan(tan_beta) + 0.0)
