"""Kazhdan-Lusztig R^x-polynomials of refined pircons and related tools."""

__version__ = "0.1.0"
