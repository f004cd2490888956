"""Radial multiresolution analysis on the Bessel-Kingman hypergroup."""
__version__ = "0.1.0"
