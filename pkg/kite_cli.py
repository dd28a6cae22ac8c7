"""
This work is licensed under CC BY-NC 4.0 International.

This document is part of the KiteCC central-configuration toolkit.
"""

"""
KiteCC command-line interface.

Usage:
    kitecc trace --family convex-mu1 --step 0.05 --format csv
    kitecc point --family concave-mu2 --beta 30 --verify
    kitecc special-points --format json
    kitecc branch --family convex-mu2 --alpha 42.5
    kitecc verify --family concave-mu1
    kitecc m-function --step 0.01
"""

import json
import logging
import math
import os
import sys
import traceback
from dataclasses import dataclass
from typing import Any, Dict, List, Optional

import click

from kite_config import CONFIG, tolerance_overrides
from kite_errors import InvalidArguments, KiteError
from kite_export import (
    FORMATS,
    Degrees,
    export_curve,
    export_points,
    export_report,
    export_special_points,
    write_output,
)
from core_modules.angles_domain import AnglePair, FamilyId
from core_modules.appendix_analysis import mass_ratio_derivative, m_function_table, verify_sign_claims
from core_modules.solver import CurvePoint, CurveSolver, SpecialLabel

logger = logging.getLogger(__name__)

COMMANDS = ("trace", "point", "special-points", "branch", "verify", "m-function")

__all__ = ["RunConfig", "cli", "run"]


@dataclass
class RunConfig:
    """One CLI invocation; angles in degrees"""

    command: str
    family: Optional[FamilyId] = None
    step_deg: float = 0.05
    output_format: str = "csv"
    output_path: Optional[str] = None
    beta_deg: Optional[float] = None
    alpha_deg: Optional[float] = None
    verify: bool = False
    claims: bool = False
    samples: Optional[int] = None
    line_tol: Optional[float] = None
    root_xtol: Optional[float] = None
    oracle_tol: Optional[float] = None

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise InvalidArguments(f"unknown command {self.command!r}", command=self.command)
        if self.output_format not in FORMATS:
            raise InvalidArguments(f"unknown format {self.output_format!r}", format=self.output_format)
        if not (isinstance(self.step_deg, (int, float)) and 0.0 < self.step_deg <= 1.0):
            raise InvalidArguments(f"step must lie in (0, 1] degrees, got {self.step_deg}", step_deg=self.step_deg)
        if self.command in ("trace", "branch", "point") and self.family is None:
            raise InvalidArguments(f"{self.command} requires --family", command=self.command)
        if self.command == "branch" and self.alpha_deg is None:
            raise InvalidArguments("branch requires --alpha", command=self.command)
        if self.command == "point" and (self.alpha_deg is None) == (self.beta_deg is None):
            raise InvalidArguments("point takes exactly one of --beta or --alpha", command=self.command)
        for name in ("beta_deg", "alpha_deg"):
            value = getattr(self, name)
            if value is not None and not (math.isfinite(value) and 0.0 <= value < 90.0):
                raise InvalidArguments(f"{name} must lie in [0, 90), got {value}", **{name: value})
        for name in ("line_tol", "root_xtol", "oracle_tol"):
            value = getattr(self, name)
            if value is not None and not value > 0:
                raise InvalidArguments(f"{name} must be positive, got {value}", **{name: value})
        if self.samples is not None and self.samples < 1:
            raise InvalidArguments(f"samples must be positive, got {self.samples}", samples=self.samples)

    def tolerances(self) -> Dict[str, Optional[float]]:
        return {
            "line_rad": self.line_tol,
            "root_xtol_rad": self.root_xtol,
            "oracle_residual": self.oracle_tol,
        }


def _branch_points(solver: CurveSolver, family: FamilyId, alpha_deg: float) -> List[CurvePoint]:
    alpha = math.radians(alpha_deg)
    return [solver.curve_point(family, AnglePair(alpha, beta)) for beta, _ in solver.branch_values(family, alpha)]


def _family_summary(points: List[CurvePoint], family: FamilyId, tolerance: float) -> Dict[str, Any]:
    checked = [p for p in points if p.masses is not None]
    worst = max((p.oracle_residual for p in checked), default=float("nan"))
    smallest_lambda = min((p.lam for p in checked), default=float("nan"))
    central = all(p.lam > 0 and p.oracle_residual < tolerance for p in checked)
    return {
        "family": family.value,
        "points": len(points),
        "verified": len(checked),
        "max_oracle_residual": worst,
        "min_lambda": smallest_lambda,
        "central": central,
    }


def _run_command(cfg: RunConfig, solver: CurveSolver) -> int:
    fmt = cfg.output_format

    if cfg.command == "trace":
        curve = solver.trace_family(cfg.family, cfg.step_deg)
        if cfg.verify:
            curve = solver.verify_family(curve)
        write_output(export_curve(curve, fmt), cfg.output_path)
        return 0

    if cfg.command in ("point", "branch"):
        if cfg.beta_deg is not None:
            beta = math.radians(cfg.beta_deg)
            points = [solver.curve_point(cfg.family, AnglePair(solver.on_curve_alpha(cfg.family, beta), beta))]
        else:
            points = _branch_points(solver, cfg.family, cfg.alpha_deg)
        if cfg.verify or cfg.command == "point":
            points = solver.verify_points(points)
        write_output(export_points(points, fmt), cfg.output_path)
        return 0

    if cfg.command == "special-points":
        write_output(export_special_points(solver.special_points(), fmt), cfg.output_path)
        return 0

    if cfg.command == "verify":
        tolerance = CONFIG["tolerances"]["oracle_residual"]
        families = [cfg.family] if cfg.family else list(FamilyId)
        records = []
        for family in families:
            curve = solver.verify_family(solver.trace_family(family, cfg.step_deg))
            records.append(_family_summary(list(curve.points), family, tolerance))
        passed = all(r["central"] for r in records)
        if cfg.claims:
            for report in verify_sign_claims(cfg.samples, solver):
                passed = passed and report.holds
                witness = report.witness
                records.append({
                    "family": report.family.value,
                    "claim": report.claim,
                    "samples": report.samples,
                    "holds": report.holds,
                    "witness_beta_deg": Degrees(witness.beta_deg) if witness else float("nan"),
                    "witness_alpha_deg": Degrees(witness.alpha_deg) if witness else float("nan"),
                    "detail": report.detail,
                })
        columns = ["family", "points", "verified", "max_oracle_residual", "min_lambda", "central"]
        if cfg.claims:
            columns += ["claim", "samples", "holds", "witness_beta_deg", "witness_alpha_deg", "detail"]
        write_output(export_report(records, fmt, columns), cfg.output_path)
        if not passed:
            logger.error("Verification failed; see the report for the failing rows")
        return 0 if passed else 1

    # m-function
    records = [
        {
            "beta_deg": Degrees(math.degrees(row.beta)),
            "alpha_deg": Degrees(math.degrees(row.alpha)),
            "M": row.ratio,
            "dM_dbeta": row.derivative,
            "mu1": row.masses.mu1,
            "mu2": row.masses.mu2,
            "note": "",
        }
        for row in m_function_table(cfg.step_deg, solver)
    ]
    star = solver.special_point(SpecialLabel.M_STAR_POINT)
    records.append({
        "beta_deg": Degrees(star.angles.beta_deg),
        "alpha_deg": Degrees(star.angles.alpha_deg),
        "M": 1.0 / star.ratio,
        "dM_dbeta": mass_ratio_derivative(star.angles.beta, solver),
        "mu1": star.masses.mu1,
        "mu2": star.masses.mu2,
        "note": "minimum",
    })
    columns = ["beta_deg", "alpha_deg", "M", "dM_dbeta", "mu1", "mu2", "note"]
    write_output(export_report(records, fmt, columns), cfg.output_path)
    return 0


def _emit_error(error: KiteError) -> None:
    sys.stderr.write(json.dumps(error.to_record(), sort_keys=True) + "\n")


def _failing_module(error: BaseException) -> str:
    """Module name of the innermost frame that raised error"""
    frames = traceback.extract_tb(error.__traceback__)
    if not frames:
        return KiteError.default_module
    return os.path.splitext(os.path.basename(frames[-1].filename))[0]


def run(cfg: RunConfig) -> int:
    """
    Execute one CLI invocation

    Args:
        cfg: Run configuration

    Returns:
        Exit status: 0 on success, 2 for invalid arguments, 1 for any other
        failure (a JSON error record goes to stderr)
    """
    try:
        cfg.validate()
        with tolerance_overrides(cfg.tolerances()):
            return _run_command(cfg, CurveSolver())
    except InvalidArguments as e:
        _emit_error(e)
        return 2
    except KiteError as e:
        logger.error(f"{type(e).__name__} in {e.module}: {e.message}")
        _emit_error(e)
        return 1
    except Exception as e:
        logger.exception(f"unexpected {type(e).__name__}")
        wrapped = KiteError(str(e) or type(e).__name__, module=_failing_module(e), cause=type(e).__name__)
        _emit_error(wrapped)
        return 1


def _setup_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose else getattr(logging, str(CONFIG["logging"].get("level", "INFO")).upper(),
                                                  logging.INFO)
    logging.basicConfig(
        level=level,
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


class FamilyChoice(click.ParamType):
    name = "family"

    def convert(self, value, param, ctx):
        if isinstance(value, FamilyId):
            return value
        try:
            return FamilyId.parse(value)
        except ValueError:
            self.fail(f"{value!r} is not one of {[f.value for f in FamilyId]}", param, ctx)


FAMILY = FamilyChoice()


def output_options(fn):
    fn = click.option("--output", "-o", "output_path", type=click.Path(dir_okay=False), default=None,
                      help="Output file (stdout when omitted)")(fn)
    fn = click.option("--format", "output_format", type=click.Choice(FORMATS), default="csv",
                      help="Output format")(fn)
    return fn


def tolerance_options(fn):
    fn = click.option("--oracle-tol", type=float, default=None, help="Oracle residual tolerance")(fn)
    fn = click.option("--root-xtol", type=float, default=None, help="Root-finder tolerance (rad)")(fn)
    fn = click.option("--line-tol", type=float, default=None, help="Critical-line tolerance (rad)")(fn)
    return fn


def _exit(cfg: RunConfig) -> None:
    sys.exit(run(cfg))


@click.group()
@click.version_option(version="1.0.0", prog_name="kitecc")
@click.option("--verbose", "-v", is_flag=True, help="Debug logging")
def cli(verbose: bool):
    """
    Kite central configurations of four bodies with three equal masses.

    Examples:

        kitecc trace --family convex-mu1          # Trace one solution curve

        kitecc special-points --format json       # Endpoints, crossings, extrema

        kitecc branch --family concave-mu1 --alpha 58
    """
    _setup_logging(verbose)


@cli.command()
@click.option("--family", "-f", type=FAMILY, required=True, help="Solution family")
@click.option("--step", "step_deg", type=float, default=0.05, show_default=True, help="Beta step (deg)")
@click.option("--verify", is_flag=True, help="Run the Newtonian oracle on every point")
@output_options
@tolerance_options
def trace(family, step_deg, verify, output_format, output_path, line_tol, root_xtol, oracle_tol):
    """Trace a solution curve on a beta grid."""
    _exit(RunConfig("trace", family, step_deg, output_format, output_path, verify=verify,
                    line_tol=line_tol, root_xtol=root_xtol, oracle_tol=oracle_tol))


@cli.command()
@click.option("--family", "-f", type=FAMILY, required=True, help="Solution family")
@click.option("--beta", "beta_deg", type=float, default=None, help="Beta (deg)")
@click.option("--alpha", "alpha_deg", type=float, default=None, help="Alpha (deg); every branch is reported")
@click.option("--verify", is_flag=True, help="Run the Newtonian oracle (always on for point)")
@output_options
@tolerance_options
def point(family, beta_deg, alpha_deg, verify, output_format, output_path, line_tol, root_xtol, oracle_tol):
    """Solve a single curve point at a given beta (or alpha)."""
    _exit(RunConfig("point", family, output_format=output_format, output_path=output_path,
                    beta_deg=beta_deg, alpha_deg=alpha_deg, verify=verify,
                    line_tol=line_tol, root_xtol=root_xtol, oracle_tol=oracle_tol))


@cli.command("special-points")
@output_options
@tolerance_options
def special_points(output_format, output_path, line_tol, root_xtol, oracle_tol):
    """List the labeled special points."""
    _exit(RunConfig("special-points", output_format=output_format, output_path=output_path,
                    line_tol=line_tol, root_xtol=root_xtol, oracle_tol=oracle_tol))


@cli.command()
@click.option("--family", "-f", type=FAMILY, required=True, help="Solution family")
@click.option("--alpha", "alpha_deg", type=float, required=True, help="Alpha (deg)")
@click.option("--verify", is_flag=True, help="Run the Newtonian oracle on every branch")
@output_options
@tolerance_options
def branch(family, alpha_deg, verify, output_format, output_path, line_tol, root_xtol, oracle_tol):
    """All betas on a curve at a fixed alpha."""
    _exit(RunConfig("branch", family, output_format=output_format, output_path=output_path,
                    alpha_deg=alpha_deg, verify=verify,
                    line_tol=line_tol, root_xtol=root_xtol, oracle_tol=oracle_tol))


@cli.command()
@click.option("--family", "-f", type=FAMILY, default=None, help="Solution family (all four by default)")
@click.option("--step", "step_deg", type=float, default=0.05, show_default=True, help="Beta step (deg)")
@click.option("--claims", is_flag=True, help="Also check the slope sign claims")
@click.option("--samples", type=int, default=None, help="Samples per curve for --claims")
@output_options
@tolerance_options
def verify(family, step_deg, claims, samples, output_format, output_path, line_tol, root_xtol, oracle_tol):
    """Trace and verify families against the Newtonian oracle."""
    _exit(RunConfig("verify", family, step_deg, output_format, output_path, claims=claims, samples=samples,
                    line_tol=line_tol, root_xtol=root_xtol, oracle_tol=oracle_tol))


@cli.command("m-function")
@click.option("--step", "step_deg", type=float, default=0.01, show_default=True, help="Beta step (deg)")
@output_options
@tolerance_options
def m_function(step_deg, output_format, output_path, line_tol, root_xtol, oracle_tol):
    """Tabulate the mass ratio M on the concave mu = mu2 curve."""
    _exit(RunConfig("m-function", step_deg=step_deg, output_format=output_format, output_path=output_path,
                    line_tol=line_tol, root_xtol=root_xtol, oracle_tol=oracle_tol))


if __name__ == "__main__":
    cli()
