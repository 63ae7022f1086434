"""Elliptic divisibility sequences, isogeny division polynomials, canonical
heights, explicit index bounds, and prime-power sieving over Q."""

__version__ = "0.1.0"
