"""permstat - permutation statistics, Denert bijections and equidistribution checks."""

from src.config import settings
from src.services.distcheck import DistributionChecker
from src.services.theorems import TheoremSuite

__version__ = "0.1.0"
__all__ = ["DistributionChecker", "TheoremSuite", "settings"]
