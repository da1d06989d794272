"""Chart grounding evaluation engine and dataset toolkit."""

__version__ = "0.1.0"
