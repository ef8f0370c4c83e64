"""Exact computations in the Frobenius categories Sub Lambda_w of preprojective algebras."""

__version__ = "0.1.0"
