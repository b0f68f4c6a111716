"""Tools for a four-valued first-order logic with implication and falsity."""

__version__ = "0.1.0"
