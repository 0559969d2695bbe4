"""Gendered smartphone demand analysis over Banglish review comments."""

__version__ = "0.1.0"
