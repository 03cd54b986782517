"""Personalized aesthetic preference scoring for interior design images."""

__version__ = "0.1.0"
