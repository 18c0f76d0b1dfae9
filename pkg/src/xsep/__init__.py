"""Separability of three-qubit X-states through the norm ||.||_X and its dual."""

__version__ = "0.1.0"
