"""siegelforms: exact recomputation of genus-2 Siegel modular form data
from curve censuses over finite fields, with classical genus-1 expansions,
Satake/Hecke identities, critical L-values, and congruence verification."""

__version__ = "0.1.0"
