"""
This work is licensed under CC BY-NC 4.0 International.

This document is part of the KiteCC central-configuration toolkit.
"""

"""
Error types for KiteCC

Every failure raised by the numerical modules derives from KiteError and
carries the name of the module it came from, so the CLI can surface a
machine-readable record with provenance.
"""

import math
from typing import Any, Dict, Optional


class KiteError(Exception):
    """Base class for all KiteCC failures"""

    default_module = "kitecc"

    def __init__(self, message: str, module: Optional[str] = None, **details: Any):
        super().__init__(message)
        self.message = message
        self.module = module or self.default_module
        self.details = details

    def to_record(self) -> Dict[str, Any]:
        """
        Build the error record written by the CLI

        Returns:
            Dictionary with error type, module, message and details
        """
        details = {}
        for key, value in self.details.items():
            if isinstance(value, float) and not math.isfinite(value):
                value = None
            elif hasattr(value, "value") and not isinstance(value, (int, float, str)):
                value = value.value
            details[key] = value
        return {
            "error": type(self).__name__,
            "module": self.module,
            "message": self.message,
            "details": details,
        }


class InvalidAngles(KiteError, ValueError):
    default_module = "angles_domain"


class DegenerateGeometry(KiteError, ValueError):
    default_module = "angles_domain"


class SingularDenominator(KiteError):
    default_module = "mass_model"


class InvalidMasses(KiteError):
    """Masses left the admissible simplex; raw values are kept"""

    default_module = "mass_model"

    def __init__(self, message: str, mu1: float, mu2: float, module: Optional[str] = None):
        super().__init__(message, module=module, mu1=mu1, mu2=mu2)
        self.mu1 = mu1
        self.mu2 = mu2


class ZeroDenominator(KiteError):
    default_module = "appendix_analysis"


class NotOnCurve(KiteError, ValueError):
    default_module = "appendix_analysis"


class NoExtremum(KiteError):
    default_module = "appendix_analysis"


class OutOfDomain(KiteError, ValueError):
    default_module = "appendix_analysis"


class NoBracket(KiteError):
    default_module = "solver"


class ConvergenceFailure(KiteError):
    default_module = "solver"


class NoSolution(KiteError):
    default_module = "solver"


class TraceFailure(KiteError):
    default_module = "solver"


class CollisionSingularity(KiteError):
    default_module = "nbody_oracle"


class DegenerateBody(KiteError):
    default_module = "nbody_oracle"


class InvalidArguments(KiteError, ValueError):
    default_module = "cli_io"


class IoFailure(KiteError):
    default_module = "cli_io"
