"""Symbolic workbench for finite Heyting/Brouwer lattices, free lattices over
posets, intermediate logics and finite-depth closed classes."""

__version__ = "0.1.0"
