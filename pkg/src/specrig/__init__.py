"""Exact invariants of meromorphic connections on the projective line.

Given a square matrix A of rational 1-forms A(z) dz, the package computes
per-pole formal data (HTL cells, irregularity), plane-curve-germ invariants
of the spectral curve det(yI - A) at infinity (Milnor numbers, delta
invariants), and global invariants (arithmetic genus, Euler characteristic
of the normalization, index of rigidity), cross-checking each identity
through two independent computation routes.
"""

__version__ = "0.1.0"
