"""Exact symbolic prover for plane geometry theorems."""

__version__ = "0.1.0"

from . import kernel  # noqa: E402
from .errors import PlaneProverError  # noqa: E402

__all__ = ["PlaneProverError", "__version__", "kernel"]
