"""Numerical exceptional collections, descent obstructions and Sarkisov links on del Pezzo surfaces."""

__version__ = "0.1.0"
