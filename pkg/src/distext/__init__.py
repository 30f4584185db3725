"""Distinguishing colorings and precoloring extension on the circle, cycles
and free rotation groups."""
from __future__ import annotations

__version__ = "0.1.0"
