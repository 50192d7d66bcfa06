"""Base-size certification for primitive actions of classical groups."""

__version__ = "0.1.0"
