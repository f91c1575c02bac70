"""Exact equilibrium enumeration for bimatrix games via labeled best-response
polytopes, with equilibrium indices, Lemke-Howson paths, and stable-set bounds
on polytope graphs."""

from nashpoly.rational import Matrix, Rational, det_sign, parse_rational, solve_linear

__all__ = [
    "Matrix",
    "Rational",
    "det_sign",
    "parse_rational",
    "solve_linear",
]
