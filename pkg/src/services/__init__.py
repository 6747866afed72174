"""Services for the permstat project."""

from src.services.bijections import (
    critical_gap_nonexc_positions,
    critical_nonexc_positions,
    phi_den,
    phi_den_inverse,
    phi_gh_den,
    phi_gh_den_inverse,
    render_trace,
)
from src.services.distcheck import DistributionChecker, q_factorial
from src.services.statistics import (
    descent_profile,
    eval_stat,
    gap_level_den,
    gap_level_profile,
    inv_count,
    level_split,
)
from src.services.theorems import TheoremSuite

__all__ = [
    "DistributionChecker",
    "TheoremSuite",
    "q_factorial",
    "phi_den",
    "phi_den_inverse",
    "phi_gh_den",
    "phi_gh_den_inverse",
    "critical_nonexc_positions",
    "critical_gap_nonexc_positions",
    "render_trace",
    "inv_count",
    "descent_profile",
    "gap_level_profile",
    "gap_level_den",
    "level_split",
    "eval_stat",
]
