"""Exact-arithmetic toolkit for exceptional toric systems on weak del Pezzo
surfaces: lattice arithmetic, class enumeration, surface types with their
negative curves, effectiveness decisions, toric-system operations,
admissible-sequence calculus, exceptionality checkers, augmentation searches
and the reproduction suites, all exposed through one CLI."""

__version__ = "0.1.0"
