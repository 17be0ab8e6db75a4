"""dualcount: exact counting of SU(2)-subgroup homomorphisms into compact Lie groups."""

from .errors import NotCoveredError

__all__ = ["NotCoveredError"]

__version__ = "0.1.0"
