"""Exact Stiefel-Whitney classes of orthogonal representations of finite groups of Lie type."""

__version__ = "0.1.0"
