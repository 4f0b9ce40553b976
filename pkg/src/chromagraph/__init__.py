"""Exact chromatic polynomials and sign checks for their log-derivatives on x < 0."""

__version__ = "0.1.0"
