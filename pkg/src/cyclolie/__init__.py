"""Exact ordinary, cyclic and reduced cyclic cohomology of metric Lie algebras.

All arithmetic is over ``fractions.Fraction``.  The usual entry points::

    from cyclolie import catalog, cohomology_report
    e = catalog.load("W3")
    print(cohomology_report(e.algebra, e.form, range(4), e.label).render())
"""

from . import catalog
from .cochains import (
    AdjCochain,
    BilinearForm,
    LieAlgebra,
    TrivCochain,
    coboundary_adj,
    identity_cochain,
    is_cyclic,
    is_invariant,
    nr_bracket,
    parse_cochain,
    tilde,
)
from .cohomology import (
    adjoint_cohomology,
    cohomology_report,
    cyclic_cohomology,
    reduced_cyclic_cohomology,
    trivial_cohomology,
)
from .deformations import Deformation, check_isomorphism, check_jacobi_at, versal_order2
from .polynomial import Polynomial
from .scalar_linalg import Matrix

__version__ = "0.1.0"

__all__ = [
    "catalog",
    "AdjCochain",
    "TrivCochain",
    "LieAlgebra",
    "BilinearForm",
    "Matrix",
    "Polynomial",
    "Deformation",
    "parse_cochain",
    "identity_cochain",
    "nr_bracket",
    "coboundary_adj",
    "tilde",
    "is_cyclic",
    "is_invariant",
    "adjoint_cohomology",
    "trivial_cohomology",
    "cyclic_cohomology",
    "reduced_cyclic_cohomology",
    "cohomology_report",
    "check_jacobi_at",
    "check_isomorphism",
    "versal_order2",
]
