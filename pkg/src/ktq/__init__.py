"""Rational twisted equivariant K-theory of finite group actions, computed exactly."""

__version__ = "0.1.0"
