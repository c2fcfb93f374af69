"""apforge: verification and search toolkit for arithmetic progressions of
unlike perfect powers.

Subpackages:
  exactmath   exact rationals, binary forms, univariate polynomials
  numfield    arithmetic in the corpus number fields
  parametrize the ternary-equation parametrization families
  searcher    sieved exhaustive progression searches
  curvelab    curve derivations, point counts, Jacobian orders, local tests
  cli         command-line entry point
"""

__version__ = "0.1.0"
