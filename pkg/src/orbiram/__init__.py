"""Ramification of formal orbifolds over finite fields: differents, genera,
Riemann-Hurwitz residuals, geometricity verdicts and orbifold bundles."""

__version__ = "0.1.0"

from .errors import OrbiramError  # noqa: E402
from .localfield import RamificationProfile, WildComponent, degram  # noqa: E402
from .orbifold import BranchData, Curve, FormalOrbifold, MorphismDescriptor  # noqa: E402
from .genus import orbifold_genus, rh_residual  # noqa: E402
from .geometric import Verdict, geometric_verdict  # noqa: E402

__all__ = [
    "BranchData", "Curve", "FormalOrbifold", "MorphismDescriptor", "OrbiramError",
    "RamificationProfile", "Verdict", "WildComponent", "degram", "geometric_verdict",
    "orbifold_genus", "rh_residual",
]
