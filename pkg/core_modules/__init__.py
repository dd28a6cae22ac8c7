"""
This work is licensed under CC BY-NC 4.0 International.

This document is part of the KiteCC central-configuration toolkit.
"""

"""
KiteCC Core Modules
-------------------
Numerical core for kite central configurations of four bodies with three
equal masses:

1. angles_domain: angle pairs, regions of the (beta, alpha) plane, frames
2. mass_model: coefficients and the masses they determine
3. equal_mass_conditions: residuals of mu = mu1 and mu = mu2
4. solver: curve tracing, special points, branches
5. appendix_analysis: curve slopes, the ratio function M, sign claims
6. nbody_oracle: Newtonian central-configuration check
"""
