"""Exact SL2 and sl2 actions on the cohomology of polarized abelian varieties.

Modules
-------
exactla
    Sparse linear algebra over the rationals.
extalg
    Exterior algebras with bitmask monomials.
abvar
    Cohomology model of ``A^m``: morphisms, theta, Pontryagin product, Fourier.
corr
    The correspondence algebra ``Corr(A)``.
sl2rep
    sl2 triples, lowest-weight decomposition, free modules, SL2(Q) action.
action
    The operators X, Y, H and the group action on ``H^*(A)``.
lefschetz
    Primitive decomposition and hard Lefschetz checks.
expr, suites, cli
    Class expressions, verification suites and the command line.
"""

from abelsl2.kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
