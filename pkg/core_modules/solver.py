"""
This work is licensed under CC BY-NC 4.0 International.

This document is part of the KiteCC central-configuration toolkit.
"""

"""
Solution-Curve Solver
---------------------
Bracketed root finding for the implicit curves beta -> alpha(beta) of the
four equal-mass families, grid tracing over each family's beta interval,
the catalog of labeled special points, and branch lookup at fixed alpha.
"""

import logging
import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq

from kite_config import CONFIG
from kite_errors import ConvergenceFailure, KiteError, NoBracket, NoSolution, TraceFailure
from core_modules.angles_domain import AnglePair, ConfigKind, FamilyId, reconstruct_positions
from core_modules.equal_mass_conditions import exceptional_line_check, residual_from_tangents
from core_modules.mass_model import MassStatus, MassTriple, coefficient_arrays, mass_arrays, masses
from core_modules.nbody_oracle import verify_many

logger = logging.getLogger(__name__)

DEG = math.pi / 180.0
SIXTY = math.pi / 3
THIRTY = math.pi / 6
DERIVATIVE_STEP = 1e-6
DEDUP_RAD = 1e-9


class SpecialLabel(Enum):
    G = "G"
    S_CONVEX = "S_convex"
    S_CONCAVE = "S_concave"
    P1 = "P1"
    P2 = "P2"
    P3 = "P3"
    P4 = "P4"
    P5 = "P5"
    P7 = "P7"
    FOUR_EQUAL_CROSSING = "FourEqualCrossing"
    PALMORE_POINT = "PalmorePoint"
    M_STAR_POINT = "MStarPoint"


@dataclass(frozen=True)
class CurvePoint:
    """One traced point; masses is None at the singular passage"""

    family: FamilyId
    angles: AnglePair
    masses: Optional[MassTriple]
    residual_full: float
    oracle_residual: float = float("nan")
    lam: float = float("nan")
    note: str = ""

    @property
    def beta(self) -> float:
        return self.angles.beta

    @property
    def alpha(self) -> float:
        return self.angles.alpha


@dataclass(frozen=True)
class SpecialPoint:
    label: SpecialLabel
    angles: AnglePair
    masses: Optional[MassTriple]
    family: Optional[FamilyId] = None
    note: str = ""
    ratio: Optional[float] = None


@dataclass(frozen=True)
class CurveFamily:
    id: FamilyId
    points: Tuple[CurvePoint, ...]
    endpoints: Tuple[SpecialPoint, SpecialPoint]
    extremum: Optional[AnglePair] = None

    def __len__(self):
        return len(self.points)


FAMILY_ENDPOINTS = {
    FamilyId.CONVEX_MU1: (SpecialLabel.G, SpecialLabel.P1),
    FamilyId.CONVEX_MU2: (SpecialLabel.P2, SpecialLabel.G),
    FamilyId.CONCAVE_MU1: (SpecialLabel.P5, SpecialLabel.P7),
    FamilyId.CONCAVE_MU2: (SpecialLabel.P4, SpecialLabel.P3),
}

# family whose curve ends at the point; fixes the (k, l) transform
ENDPOINT_FAMILY = {
    SpecialLabel.G: FamilyId.CONVEX_MU1,
    SpecialLabel.P1: FamilyId.CONVEX_MU1,
    SpecialLabel.P2: FamilyId.CONVEX_MU2,
    SpecialLabel.P5: FamilyId.CONCAVE_MU1,
    SpecialLabel.P7: FamilyId.CONCAVE_MU1,
    SpecialLabel.P4: FamilyId.CONCAVE_MU2,
    SpecialLabel.P3: FamilyId.CONCAVE_MU2,
}

NONINJECTIVE = (FamilyId.CONVEX_MU2, FamilyId.CONCAVE_MU1)


def alpha_band(family: FamilyId, beta: float) -> Tuple[float, float]:
    """Admissible alpha interval at fixed beta (radians)"""
    if family.kind is ConfigKind.CONVEX:
        return max(beta, math.pi / 2 - 2.0 * beta), SIXTY
    edge = math.pi / 4 + beta / 2.0
    return min(SIXTY, edge), max(SIXTY, edge)


def beta_band(family: FamilyId, alpha: float) -> Tuple[float, float]:
    """Admissible beta interval at fixed alpha (radians)"""
    if family.kind is ConfigKind.CONVEX:
        return (math.pi / 2 - alpha) / 2.0, alpha
    if abs(alpha - SIXTY) <= CONFIG["tolerances"]["line_rad"]:
        return 0.0, SIXTY
    if alpha < SIXTY:
        return 0.0, 2.0 * alpha - math.pi / 2
    return 2.0 * alpha - math.pi / 2, SIXTY


def _scan_roots(fn: Callable[[np.ndarray], np.ndarray], lo: float, hi: float, resolution: float,
                xtol: float, maxiter: int, refine: bool = True) -> List[float]:
    """
    All sign changes of fn on [lo, hi], each polished with brentq

    Exact zeros at grid nodes count as roots. Where |fn| has an interior
    local minimum without a sign change, the two neighbouring cells are
    rescanned once at ten times the resolution.
    """
    cells = max(8, int(math.ceil((hi - lo) / resolution)))
    grid = np.linspace(lo, hi, cells + 1)
    with np.errstate(divide="ignore", invalid="ignore"):
        values = np.asarray(fn(grid), dtype=float)

    roots = [float(x) for x, v in zip(grid, values) if v == 0.0]
    for i in range(cells):
        left, right = values[i], values[i + 1]
        if not (np.isfinite(left) and np.isfinite(right)) or left == 0.0 or right == 0.0:
            continue
        if left * right < 0:
            roots.append(bracketed_root(fn, grid[i], grid[i + 1], xtol, maxiter))

    if refine:
        magnitude = np.abs(values)
        for i in range(1, cells):
            same_sign = values[i - 1] * values[i] > 0 and values[i] * values[i + 1] > 0
            if same_sign and magnitude[i] < magnitude[i - 1] and magnitude[i] < magnitude[i + 1]:
                logger.debug(f"Refining near-tangency at {math.degrees(grid[i]):.4f} deg")
                roots.extend(_scan_roots(fn, grid[i - 1], grid[i + 1], resolution / 10.0,
                                         xtol, maxiter, refine=False))

    roots.sort()
    unique: List[float] = []
    for root in roots:
        if not unique or root - unique[-1] > DEDUP_RAD:
            unique.append(root)
    return unique


def bracketed_root(fn: Callable, lo: float, hi: float, xtol: float, maxiter: int) -> float:
    scalar = lambda x: float(fn(np.asarray(x, dtype=float)))
    f_lo, f_hi = scalar(lo), scalar(hi)
    if f_lo == 0.0:
        return float(lo)
    if f_hi == 0.0:
        return float(hi)
    if not (np.isfinite(f_lo) and np.isfinite(f_hi)) or f_lo * f_hi > 0:
        raise NoBracket(
            f"no sign change on [{math.degrees(lo):.6f}, {math.degrees(hi):.6f}] deg",
            lo_deg=math.degrees(lo), hi_deg=math.degrees(hi), f_lo=f_lo, f_hi=f_hi,
        )
    try:
        return float(brentq(scalar, lo, hi, xtol=xtol, maxiter=maxiter))
    except RuntimeError as e:
        raise ConvergenceFailure(str(e), lo_deg=math.degrees(lo), hi_deg=math.degrees(hi)) from e


class CurveSolver:
    """
    Root finding and tracing for the equal-mass solution curves

    Special points are computed on first use and cached per instance, so
    repeated traces with one solver share endpoint solves.
    """

    def __init__(self, config=None):
        self.config = config or CONFIG
        tolerances = self.config.get("tolerances", {})
        solver = self.config.get("solver", {})
        self.xtol = tolerances.get("root_xtol_rad", 1e-12)
        self.maxiter = int(tolerances.get("root_maxiter", 200))
        self.line_tol = tolerances.get("line_rad", 1e-9)
        self.curve_tol = tolerances.get("curve_residual", 1e-10)
        self.resolution = solver.get("alpha_scan_resolution_deg", 0.1) * DEG
        self.default_step_deg = solver.get("default_step_deg", 0.05)
        self.max_failure_fraction = solver.get("max_failure_fraction", 0.01)
        self.limit_offset = solver.get("limit_offset_deg", 0.01) * DEG
        self._special: Dict[SpecialLabel, SpecialPoint] = {}

    # ------------------------------------------------------------------
    # Root finding at fixed beta
    # ------------------------------------------------------------------

    def _alpha_function(self, family: FamilyId, beta: float) -> Callable:
        tan_beta = math.tan(beta)
        return lambda a: residual_from_tangents(np.tan(a), tan_beta, family)

    def solve_alpha(self, family: FamilyId, beta: float, bracket: Tuple[float, float]) -> float:
        """
        Root of the family residual in alpha at fixed beta

        Args:
            family: Solution family
            beta: beta in radians
            bracket: (lo, hi) alpha interval in radians with a sign change

        Returns:
            alpha in radians
        """
        lo, hi = bracket
        return bracketed_root(self._alpha_function(family, beta), lo, hi, self.xtol, self.maxiter)

    def alpha_roots(self, family: FamilyId, beta: float) -> List[float]:
        """All alpha roots in the admissible band at fixed beta"""
        lo, hi = alpha_band(family, beta)
        fn = self._alpha_function(family, beta)
        if hi < lo - self.line_tol:
            return []
        if hi - lo < self.line_tol:
            value = float(fn(np.asarray(lo)))
            return [lo] if abs(value) <= self.curve_tol else []
        return _scan_roots(fn, lo, hi, self.resolution, self.xtol, self.maxiter)

    def on_curve_alpha(self, family: FamilyId, beta: float, previous: Optional[float] = None) -> float:
        """
        alpha(beta) on the family curve; with several roots, the one closest
        to previous (or the first) wins
        """
        roots = self.alpha_roots(family, beta)
        if not roots:
            raise NoSolution(
                f"{family.value}: no alpha root at beta={math.degrees(beta):.6f} deg",
                module="solver", family=family, beta_deg=math.degrees(beta),
            )
        if len(roots) > 1:
            logger.debug(f"{family.value}: {len(roots)} alpha roots at beta={math.degrees(beta):.6f} deg")
            if previous is not None:
                return min(roots, key=lambda a: abs(a - previous))
        return roots[0]

    def scaled_residual(self, family: FamilyId, p: AnglePair) -> float:
        """|F| / |dF/dalpha|, an estimate of the alpha distance to the curve"""
        tan_beta = math.tan(p.beta)
        value = residual_from_tangents(math.tan(p.alpha), tan_beta, family)
        slope = (
            residual_from_tangents(math.tan(p.alpha + DERIVATIVE_STEP), tan_beta, family)
            - residual_from_tangents(math.tan(p.alpha - DERIVATIVE_STEP), tan_beta, family)
        ) / (2.0 * DERIVATIVE_STEP)
        if slope == 0.0:
            return abs(value)
        return abs(value / slope)

    def alpha_on_curve_many(self, family: FamilyId, betas: np.ndarray, lo: np.ndarray, hi: np.ndarray,
                            iterations: int = 60) -> np.ndarray:
        """
        Vectorized bisection for alpha(beta) over many beta values

        Entries whose bracket has no sign change fall back to the scalar
        on-curve solve.
        """
        betas = np.asarray(betas, dtype=float)
        lo = np.array(lo, dtype=float)
        hi = np.array(hi, dtype=float)
        tan_beta = np.tan(betas)
        f_lo = residual_from_tangents(np.tan(lo), tan_beta, family)
        f_hi = residual_from_tangents(np.tan(hi), tan_beta, family)
        valid = np.isfinite(f_lo) & np.isfinite(f_hi) & (f_lo * f_hi <= 0)

        for _ in range(iterations):
            mid = 0.5 * (lo + hi)
            f_mid = residual_from_tangents(np.tan(mid), tan_beta, family)
            keep_left = np.sign(f_mid) == np.sign(f_lo)
            lo = np.where(keep_left, mid, lo)
            f_lo = np.where(keep_left, f_mid, f_lo)
            hi = np.where(keep_left, hi, mid)
        alphas = 0.5 * (lo + hi)

        for i in np.flatnonzero(~valid):
            alphas[i] = self.on_curve_alpha(family, float(betas[i]))
        return alphas

    # ------------------------------------------------------------------
    # Masses along the curves
    # ------------------------------------------------------------------

    def point_masses(self, p: AnglePair, kind: ConfigKind) -> Tuple[Optional[MassTriple], str]:
        """Masses at a curve point with the exceptional lines and S handled"""
        exceptional = exceptional_line_check(p, kind, tolerance=self.line_tol)
        if exceptional is not None:
            return MassTriple.from_pair(exceptional.mu1, exceptional.mu2), ""
        result = masses(p, kind)
        if result.status is MassStatus.OK:
            return result.masses, ""
        if result.status is MassStatus.SINGULAR:
            return None, "singular"
        logger.warning(f"Invalid masses mu1={result.raw_mu1!r}, mu2={result.raw_mu2!r} at {p}")
        return None, "invalid-masses"

    def singular_limit_masses(self, family: FamilyId, beta: float) -> MassTriple:
        """
        Two-sided limit of the masses along a family curve at beta, the mean
        of the values at beta -/+ the configured offset
        """
        mu1_values, mu2_values = [], []
        for b in (beta - self.limit_offset, beta + self.limit_offset):
            alpha = self.on_curve_alpha(family, b)
            mu1, mu2 = mass_arrays(math.tan(alpha), math.tan(b), family.kind)
            mu1_values.append(float(mu1))
            mu2_values.append(float(mu2))
        return MassTriple.from_pair(sum(mu1_values) / 2.0, sum(mu2_values) / 2.0)

    def _is_concave_s(self, p: AnglePair) -> bool:
        return abs(p.beta - THIRTY) <= self.line_tol and abs(p.alpha - SIXTY) <= self.line_tol

    def curve_point(self, family: FamilyId, p: AnglePair) -> CurvePoint:
        if family.kind is ConfigKind.CONCAVE and self._is_concave_s(p):
            if family is FamilyId.CONCAVE_MU2:
                return CurvePoint(family, p, MassTriple(0.25, 0.25, 0.25), 0.0, note="limit-S")
            return CurvePoint(family, p, None, 0.0, note="singular-S")
        triple, note = self.point_masses(p, family.kind)
        return CurvePoint(family, p, triple, self.scaled_residual(family, p), note=note)

    # ------------------------------------------------------------------
    # Special points
    # ------------------------------------------------------------------

    def _solve_1d(self, label: SpecialLabel, fn: Callable[[float], float], lo_deg: float, hi_deg: float) -> float:
        vector = np.vectorize(fn, otypes=[float])
        try:
            return bracketed_root(vector, lo_deg * DEG, hi_deg * DEG, self.xtol, self.maxiter)
        except NoBracket as e:
            raise ConvergenceFailure(f"{label.value}: {e.message}", module="solver", label=label) from e

    def _special_point(self, label: SpecialLabel, p: AnglePair, family: Optional[FamilyId]) -> SpecialPoint:
        kind = family.kind if family is not None else ConfigKind.CONCAVE
        triple, note = self.point_masses(p, kind)
        return SpecialPoint(label, p, triple, family=family, note=note)

    def _compute_special(self, label: SpecialLabel) -> SpecialPoint:
        f1 = lambda a, b: residual_from_tangents(math.tan(a), math.tan(b), FamilyId.CONVEX_MU1)
        f2 = lambda a, b: residual_from_tangents(math.tan(a), math.tan(b), FamilyId.CONVEX_MU2)
        f3 = lambda a, b: residual_from_tangents(math.tan(a), math.tan(b), FamilyId.CONCAVE_MU1)
        f4 = lambda a, b: residual_from_tangents(math.tan(a), math.tan(b), FamilyId.CONCAVE_MU2)

        if label is SpecialLabel.G:
            x = self._solve_1d(label, lambda x: f1(x, x), 31.0, 59.0)
            return self._special_point(label, AnglePair(x, x), FamilyId.CONVEX_MU1)
        if label is SpecialLabel.P1:
            b = self._solve_1d(label, lambda b: f1(SIXTY, b), 15.0, 59.9)
            return self._special_point(label, AnglePair(SIXTY, b), FamilyId.CONVEX_MU1)
        if label is SpecialLabel.P2:
            b = self._solve_1d(label, lambda b: f2(math.pi / 2 - 2.0 * b, b), 15.0, 30.0)
            return self._special_point(label, AnglePair(math.pi / 2 - 2.0 * b, b), FamilyId.CONVEX_MU2)
        if label is SpecialLabel.P4:
            a = self._solve_1d(label, lambda a: f4(a, 0.0), 45.0, 60.0)
            return self._special_point(label, AnglePair(a, 0.0), FamilyId.CONCAVE_MU2)
        if label is SpecialLabel.P5:
            b = self._solve_1d(label, lambda b: f3(SIXTY, b), 0.0, 29.0)
            return self._special_point(label, AnglePair(SIXTY, b), FamilyId.CONCAVE_MU1)
        if label is SpecialLabel.P7:
            b = self._solve_1d(label, lambda b: f3((math.pi / 2 + b) / 2.0, b), 30.5, 60.0)
            return self._special_point(label, AnglePair((math.pi / 2 + b) / 2.0, b), FamilyId.CONCAVE_MU1)
        if label is SpecialLabel.P3:
            a = self._solve_1d(label, lambda a: f4(a, SIXTY), 60.5, 75.0)
            return self._special_point(label, AnglePair(a, SIXTY), FamilyId.CONCAVE_MU2)
        if label is SpecialLabel.FOUR_EQUAL_CROSSING:
            crossing = lambda b: f3(self.on_curve_alpha(FamilyId.CONCAVE_MU2, b), b)
            b = self._solve_1d(label, crossing, 30.5, 47.0)
            p = AnglePair(self.on_curve_alpha(FamilyId.CONCAVE_MU2, b), b)
            return self._special_point(label, p, FamilyId.CONCAVE_MU2)
        if label is SpecialLabel.S_CONVEX:
            def denominator(x):
                a0, a1, b0, b1 = coefficient_arrays(math.tan(x), math.tan(x), ConfigKind.CONVEX)
                return float(a0 * b1 + a1 * b0 - a1 * b1)
            x = self._solve_1d(label, denominator, 27.0, 40.0)
            return SpecialPoint(label, AnglePair(x, x), None, note="singular: mu1 + mu2 = 1")
        if label is SpecialLabel.S_CONCAVE:
            def denominator(b):
                a0, a1, b0, b1 = coefficient_arrays(math.tan(SIXTY), math.tan(b), ConfigKind.CONCAVE)
                return float(a0 * b1 + a1 * b0 - a1 * b1)
            b = self._solve_1d(label, denominator, 20.0, 40.0)
            return SpecialPoint(label, AnglePair(SIXTY, b), None,
                                note="singular: mu1, mu2 individually undetermined")
        if label is SpecialLabel.PALMORE_POINT:
            s_point = self.special_point(SpecialLabel.S_CONCAVE)
            triple = self.singular_limit_masses(FamilyId.CONCAVE_MU1, s_point.angles.beta)
            return SpecialPoint(label, s_point.angles, triple, family=FamilyId.CONCAVE_MU1,
                                note="two-sided limit", ratio=triple.mu2 / triple.mu1)
        if label is SpecialLabel.M_STAR_POINT:
            # appendix_analysis depends on this module
            from core_modules.appendix_analysis import m_star_point
            return m_star_point(self)
        raise ValueError(f"unknown special point {label}")

    def special_point(self, label: SpecialLabel) -> SpecialPoint:
        if label not in self._special:
            point = self._compute_special(label)
            logger.debug(f"Special point {label.value} at {point.angles}")
            self._special[label] = point
        return self._special[label]

    def special_points(self) -> List[SpecialPoint]:
        """All twelve labeled points, each from a constrained root solve"""
        points = [self.special_point(label) for label in SpecialLabel]
        logger.info(f"Computed {len(points)} special points")
        return points

    # ------------------------------------------------------------------
    # Tracing
    # ------------------------------------------------------------------

    def family_domain(self, family: FamilyId) -> Tuple[SpecialPoint, SpecialPoint]:
        start, end = FAMILY_ENDPOINTS[family]
        return self.special_point(start), self.special_point(end)

    def _grid(self, lo_deg: float, hi_deg: float, step_deg: float) -> List[float]:
        betas = []
        k = math.floor(lo_deg / step_deg)
        while k * step_deg < hi_deg - 1e-9:
            value = k * step_deg
            if value > lo_deg + 1e-9:
                betas.append(value)
            k += 1
        return betas

    def trace_family(self, family: FamilyId, step_deg: Optional[float] = None) -> CurveFamily:
        """
        Trace a family on a beta grid between its two endpoints

        Grid points are the multiples of the step strictly inside the
        endpoint betas; both endpoints are added from their own solves.

        Args:
            family: Solution family
            step_deg: Grid step in degrees (config default_step_deg)

        Returns:
            CurveFamily with points ordered by beta
        """
        step_deg = step_deg if step_deg is not None else self.default_step_deg
        if not step_deg > 0:
            raise ValueError(f"step must be positive, got {step_deg}")
        start, end = self.family_domain(family)
        grid = self._grid(start.angles.beta_deg, end.angles.beta_deg, step_deg)

        points = [self._endpoint_curve_point(family, start)]
        previous = start.angles.alpha
        failures = 0
        for beta_deg in grid:
            beta = math.radians(beta_deg)
            try:
                alpha = self.on_curve_alpha(family, beta, previous)
                point = self.curve_point(family, AnglePair(alpha, beta))
            except KiteError as e:
                failures += 1
                logger.warning(f"{family.value}: point at beta={beta_deg:.6f} deg failed: {e.message}")
                continue
            points.append(point)
            previous = alpha
        points.append(self._endpoint_curve_point(family, end))

        if grid and failures > self.max_failure_fraction * len(grid):
            raise TraceFailure(
                f"{family.value}: {failures} of {len(grid)} grid points failed",
                family=family, failures=failures, grid_points=len(grid),
            )

        extremum = None
        if family in NONINJECTIVE:
            from core_modules.appendix_analysis import find_curve_extremum
            extremum = find_curve_extremum(family, solver=self).angles

        logger.info(f"Traced {family.value}: {len(points)} points, {failures} failures")
        return CurveFamily(family, tuple(points), (start, end), extremum)

    def _endpoint_curve_point(self, family: FamilyId, point: SpecialPoint) -> CurvePoint:
        return CurvePoint(family, point.angles, point.masses,
                          self.scaled_residual(family, point.angles), note=point.note)

    # ------------------------------------------------------------------
    # Branches at fixed alpha
    # ------------------------------------------------------------------

    def branch_values(self, family: FamilyId, alpha: float) -> List[Tuple[float, Optional[MassTriple]]]:
        """
        Every beta on the family curve at a given alpha, with masses

        Args:
            family: Solution family
            alpha: alpha in radians

        Returns:
            List of (beta, masses) ordered by beta
        """
        lo, hi = beta_band(family, alpha)
        start, end = self.family_domain(family)
        beta_lo, beta_hi = start.angles.beta, end.angles.beta
        if hi <= lo or lo < 0.0:
            raise NoSolution(f"{family.value}: alpha={math.degrees(alpha):.6f} deg outside the codomain",
                             module="solver", family=family, alpha_deg=math.degrees(alpha))

        tan_alpha = math.tan(alpha)
        fn = lambda b: residual_from_tangents(tan_alpha, np.tan(b), family)
        roots = [
            b for b in _scan_roots(fn, lo, hi, self.resolution, self.xtol, self.maxiter)
            if beta_lo - self.line_tol <= b <= beta_hi + self.line_tol
        ]
        if not roots:
            raise NoSolution(f"{family.value}: no curve point at alpha={math.degrees(alpha):.6f} deg",
                             module="solver", family=family, alpha_deg=math.degrees(alpha))
        branches = []
        for beta in roots:
            point = self.curve_point(family, AnglePair(alpha, beta))
            branches.append((beta, point.masses))
        return branches

    # ------------------------------------------------------------------
    # Verification
    # ------------------------------------------------------------------

    def verify_points(self, points: Sequence[CurvePoint], workers: Optional[int] = None) -> List[CurvePoint]:
        """Fill oracle_residual and lambda on every point with masses"""
        indices, configs = [], []
        for i, point in enumerate(points):
            if point.masses is None:
                continue
            frame = reconstruct_positions(point.angles, point.family.kind)
            indices.append(i)
            configs.append(frame.with_masses(point.masses.body_masses()))

        reports = verify_many(configs, workers=workers)
        verified = list(points)
        for i, report in zip(indices, reports):
            verified[i] = replace(verified[i], oracle_residual=report.max_relative_residual, lam=report.lam)
        return verified

    def verify_family(self, curve: CurveFamily, workers: Optional[int] = None) -> CurveFamily:
        points = self.verify_points(curve.points, workers)
        worst = max((p.oracle_residual for p in points if p.masses is not None), default=float("nan"))
        logger.info(f"Verified {curve.id.value}: {len(points)} points, worst oracle residual {worst:.3e}")
        return replace(curve, points=tuple(points))


curve_solver = CurveSolver()


def solve_alpha(family: FamilyId, beta: float, bracket: Tuple[float, float]) -> float:
    return curve_solver.solve_alpha(family, beta, bracket)


def alpha_roots(family: FamilyId, beta: float) -> List[float]:
    return curve_solver.alpha_roots(family, beta)


def on_curve_alpha(family: FamilyId, beta: float, previous: Optional[float] = None) -> float:
    return curve_solver.on_curve_alpha(family, beta, previous)


def alpha_on_curve_many(family: FamilyId, betas, lo, hi) -> np.ndarray:
    return curve_solver.alpha_on_curve_many(family, betas, lo, hi)


def trace_family(family: FamilyId, step_deg: Optional[float] = None) -> CurveFamily:
    return curve_solver.trace_family(family, step_deg)


def special_points() -> List[SpecialPoint]:
    return curve_solver.special_points()


def branch_values(family: FamilyId, alpha: float) -> List[Tuple[float, Optional[MassTriple]]]:
    return curve_solver.branch_values(family, alpha)


def singular_limit_masses(family: FamilyId, beta: float) -> MassTriple:
    return curve_solver.singular_limit_masses(family, beta)


def verify_family(curve: CurveFamily, workers: Optional[int] = None) -> CurveFamily:
    return curve_solver.verify_family(curve, workers)
