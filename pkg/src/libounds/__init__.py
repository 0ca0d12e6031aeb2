"""High-precision truncated-asymptotic bounds for the logarithmic integral."""

__version__ = "0.1.0"
