"""Extraction of a small dependently typed calculus to functional contract languages."""

__version__ = "0.1.0"
