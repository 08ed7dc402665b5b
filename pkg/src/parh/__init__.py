"""Exact-arithmetic partial group algebras and partial group (co)homology.

The package builds, for a finite group G (and for the integers in the
bounded-window setting), the partial group algebra K_par G together with its
idempotent subalgebra B, the groupoid of subsets of G containing 1, the
matrix models of the groupoid algebra, and the projective resolution of B
used to compute partial homology and cohomology.  Everything is done over
exact fields (the rationals or a prime field), so every reported dimension
is a theorem about the objects constructed, not a numerical estimate.
"""

__version__ = "0.1.0"
