"""Exact computations in the Ramond and Neveu-Schwarz super-BMS3 superalgebras."""

__version__ = "0.1.0"
