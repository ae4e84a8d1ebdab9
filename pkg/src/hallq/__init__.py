"""Exact combinatorics of Jordan types over finite fields.

Subpackages cover integer partitions and tableaux, an exact symmetric-function
engine at fixed rational t, linear algebra over F_q, central measures on
unitriangular matrices, character formulas, a Monte Carlo growth sampler,
Schubert-cell combinatorics for Grassmannians over F_q, and towers of finite
groups with parabolic-style projections.
"""

__version__ = "0.1.0"
