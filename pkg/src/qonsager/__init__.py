"""Exact symbolic workbench for the q-Onsager algebra and its current-algebra quotient."""

__version__ = "0.1.0"
