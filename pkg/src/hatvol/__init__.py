"""Exact invariants of monomial and toric singularities.

Normalized volumes, log canonical thresholds, Hilbert-Samuel
multiplicities and normalized colengths, computed in exact rational
arithmetic at desk scale, with a CLI front end and a built-in
verification suite.
"""

__version__ = "0.1.0"
