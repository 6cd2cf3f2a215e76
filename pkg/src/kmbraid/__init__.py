"""Exact computations with Kac-Moody Lie bialgebras and their braided pieces."""
from __future__ import annotations

__version__ = "0.1.0"
