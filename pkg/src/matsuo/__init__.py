"""Exact Matsuo algebras of 3-transposition groups, flips and their radicals."""

__version__ = "0.1.0"
