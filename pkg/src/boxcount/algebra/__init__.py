"""
Exact arithmetic for equivariant counting

Laurent polynomials on a half-integer exponent lattice, rational
functions with binomial denominators, rational functions of linear
forms for the cohomological limit, and truncated series in ``z``.
"""
