"""Local Igusa zeta functions of non-degenerate polynomials, their twisted and
motivic versions, and pole analysis for B1-facets."""

__version__ = "0.1.0"
