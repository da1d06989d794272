"""Sandboxed plotting-script executor with canonical figure serialization."""

__version__ = "0.1.0"
