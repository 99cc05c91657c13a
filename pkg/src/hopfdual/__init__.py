"""Hopf algebroids given by structure constants, their dual algebras, comodules and modules."""

__version__ = "0.1.0"
