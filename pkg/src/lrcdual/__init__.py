"""Refined weight invariants, duality transforms and dimension bounds for codes with locality."""

__version__ = "0.1.0"
