"""
This work is licensed under CC BY-NC 4.0 International.

This document is part of the KiteCC central-configuration toolkit.
"""

"""
Newtonian Central-Configuration Oracle
--------------------------------------
Independent first-principles check of solver output: pairwise Newtonian
accelerations (G = 1) and the proportionality a_i = -lambda * r_i about the
barycenter with one common positive lambda.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from kite_config import CONFIG, thread_count
from kite_errors import CollisionSingularity, DegenerateBody

logger = logging.getLogger(__name__)

BODY_LABELS = ("A", "B", "E", "E'")
MIN_DISTANCE = 1e-12


@dataclass(frozen=True, eq=False)
class KiteConfiguration:
    """
    Planar point-mass configuration

    positions has shape (n, 2); masses is None until attached. The kite
    frame uses n = 4 with bodies ordered A, B, E, E'.
    """

    positions: np.ndarray
    masses: Optional[np.ndarray] = None
    labels: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        positions = np.array(self.positions, dtype=float)
        if positions.ndim != 2 or positions.shape[1] != 2:
            raise ValueError(f"positions must have shape (n, 2), got {positions.shape}")
        positions.setflags(write=False)
        object.__setattr__(self, "positions", positions)

        n = positions.shape[0]
        if self.labels is None:
            labels = BODY_LABELS if n == 4 else tuple(f"body{i}" for i in range(n))
            object.__setattr__(self, "labels", labels)
        elif len(self.labels) != n:
            raise ValueError("one label per body is required")

        if self.masses is not None:
            masses = np.array(self.masses, dtype=float)
            if masses.shape != (n,):
                raise ValueError(f"expected {n} masses, got shape {masses.shape}")
            if not np.all(np.isfinite(masses)):
                raise ValueError("masses must be finite")
            tolerance = CONFIG["tolerances"]["mass"]
            if np.any(masses < -tolerance):
                raise ValueError(f"negative mass in {masses.tolist()}")
            if abs(masses.sum() - 1.0) > 1e-12:
                raise ValueError(f"masses must sum to 1, got {masses.sum()!r}")
            masses.setflags(write=False)
            object.__setattr__(self, "masses", masses)

    @property
    def size(self) -> int:
        return self.positions.shape[0]

    def with_masses(self, masses: Sequence[float]) -> "KiteConfiguration":
        return KiteConfiguration(self.positions, np.asarray(masses, dtype=float), self.labels)

    def translated(self, offset: Sequence[float]) -> "KiteConfiguration":
        return KiteConfiguration(self.positions + np.asarray(offset, dtype=float), self.masses, self.labels)

    def scaled(self, factor: float) -> "KiteConfiguration":
        return KiteConfiguration(self.positions * float(factor), self.masses, self.labels)

    def barycenter(self) -> np.ndarray:
        masses = self._require_masses()
        return masses @ self.positions / masses.sum()

    def _require_masses(self) -> np.ndarray:
        if self.masses is None:
            raise ValueError("configuration has no masses attached")
        return self.masses


@dataclass(frozen=True)
class CentralityReport:
    """Result of the centrality check; per-body lambda is NaN where undefined"""

    lam: float
    max_relative_residual: float
    per_body_lambda: Tuple[float, ...]
    barycenter_shift: Tuple[float, float]
    trivially_central: Tuple[str, ...] = ()

    @property
    def is_central(self) -> bool:
        return self.lam > 0 and self.max_relative_residual < CONFIG["tolerances"]["oracle_residual"]

    def to_dict(self) -> Dict:
        return {
            "lambda": self.lam,
            "max_relative_residual": self.max_relative_residual,
            "per_body_lambda": list(self.per_body_lambda),
            "barycenter_shift": list(self.barycenter_shift),
            "trivially_central": list(self.trivially_central),
        }


def _pair_geometry(positions: np.ndarray, labels: Tuple[str, ...]) -> Tuple[np.ndarray, np.ndarray]:
    # separation[i, j] = r_j - r_i
    separation = positions[np.newaxis, :, :] - positions[:, np.newaxis, :]
    distance = np.linalg.norm(separation, axis=-1)
    np.fill_diagonal(distance, np.inf)
    close = np.argwhere(distance < MIN_DISTANCE)
    if close.size:
        i, j = close[0]
        raise CollisionSingularity(
            f"bodies {labels[i]} and {labels[j]} coincide",
            first=labels[i], second=labels[j], distance=float(distance[i, j]),
        )
    return separation, distance


def accelerations(config: KiteConfiguration) -> np.ndarray:
    """
    Newtonian accelerations with unit gravitational constant

    Args:
        config: Configuration with masses attached

    Returns:
        Array of shape (n, 2), a_i = sum_j m_j (r_j - r_i) / r_ij^3
    """
    masses = config._require_masses()
    separation, distance = _pair_geometry(config.positions, config.labels)
    weights = masses[np.newaxis, :] / distance ** 3
    return np.einsum("ij,ijk->ik", weights, separation)


def verify_central(config: KiteConfiguration, tolerance: Optional[float] = None) -> CentralityReport:
    """
    Check a_i = -lambda r_i for every body in the barycentric frame

    Zero-mass bodies keep their own lambda consistency requirement but do not
    enter the mass-weighted lambda estimate. A body sitting at the barycenter
    is trivially central when its acceleration is negligible.

    Args:
        config: Configuration with masses attached
        tolerance: Mass threshold below which a body counts as massless

    Returns:
        CentralityReport
    """
    zero_mass = tolerance if tolerance is not None else CONFIG["tolerances"]["zero_mass"]
    masses = config._require_masses()
    shift = config.barycenter()
    positions = config.positions - shift
    acc = accelerations(config)

    radius = np.linalg.norm(positions, axis=1)
    scale = max(float(radius.max()), MIN_DISTANCE)
    at_center = radius < 1e-12 * scale

    per_body = np.full(config.size, np.nan)
    off_center = ~at_center
    per_body[off_center] = -np.einsum("ij,ij->i", acc[off_center], positions[off_center]) / radius[off_center] ** 2

    acc_norm = np.linalg.norm(acc, axis=1)
    typical = max(float(acc_norm[off_center].max()) if off_center.any() else 0.0, 1e-300)
    trivially_central = []
    center_residual = 0.0
    for i in np.flatnonzero(at_center):
        if acc_norm[i] <= 1e-9 * typical:
            trivially_central.append(config.labels[i])
        elif masses[i] > zero_mass:
            raise DegenerateBody(
                f"body {config.labels[i]} sits at the barycenter with nonzero acceleration",
                body=config.labels[i], acceleration=float(acc_norm[i]),
            )
        else:
            # massless body at the center with a net pull is never central
            center_residual = max(center_residual, float(acc_norm[i] / typical))

    weighted = off_center & (masses > zero_mass)
    if weighted.any():
        lam = float(np.average(per_body[weighted], weights=masses[weighted]))
    elif off_center.any():
        lam = float(per_body[off_center].mean())
    else:
        lam = float("nan")

    residual = center_residual
    for i in np.flatnonzero(off_center):
        deviation = np.linalg.norm(acc[i] + lam * positions[i])
        residual = max(residual, float(deviation / max(abs(lam) * radius[i], 1e-300)))

    return CentralityReport(
        lam=lam,
        max_relative_residual=residual,
        per_body_lambda=tuple(float(v) for v in per_body),
        barycenter_shift=(float(shift[0]), float(shift[1])),
        trivially_central=tuple(trivially_central),
    )


def verify_many(configs: List[KiteConfiguration], workers: Optional[int] = None) -> List[CentralityReport]:
    """
    Batch verification, parallel over configurations

    Args:
        configs: Configurations with masses attached
        workers: Worker count; KITECC_THREADS when omitted

    Returns:
        Reports in input order
    """
    workers = workers or thread_count()
    if workers <= 1 or len(configs) < 2:
        return [verify_central(c) for c in configs]
    logger.debug(f"Verifying {len(configs)} configurations on {workers} threads")
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(verify_central, configs))
