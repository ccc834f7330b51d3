"""Exact Kauffman bracket skein computations in a punctured disk."""

from __future__ import annotations

__version__ = "0.1.0"
