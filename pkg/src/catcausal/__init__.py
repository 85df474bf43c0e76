"""Finite categories, simplicial nerves and categorical causal models."""
from __future__ import annotations

from .errors import CatCausalError, ParseError, ScaleExceeded, ValidationError

__version__ = "0.1.0"

__all__ = ["CatCausalError", "ParseError", "ScaleExceeded", "ValidationError", "__version__"]
