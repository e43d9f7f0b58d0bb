"""Calibrated modules for the two-boundary Hecke-Clifford algebra, with exact oracles."""
__version__ = "0.1.0"
