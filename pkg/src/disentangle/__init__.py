"""Multiple point spaces of corank-one germs and the rational homology of their images."""

from .bounds import (GermProfile, admissible_total_degrees, check_betti,
                     displayed_formula_degrees, first_page_mask)
from .equivariant import (ChainComplex, EquivariantComplex, SymmetricAction, alt_homology_dims,
                          alt_projector, alternating_subcomplex, from_simplicial, homology_dims,
                          validate)
from .groebner import (GroebnerBasis, MonomialOrder, buchberger, contains_one, monomial_dim,
                       normal_form)
from .image_homology import (MultiplePointDiagram, analyze, build_double_complex,
                             h1_component_criterion, image_betti, phi, spectral_pages)
from .linalg import SparseMatrix, image_basis, kernel_basis, rank, subquotient_dim
from .multipoint import (MapGerm, corank_at_origin, dim_check, dk_ideal, expected_dim)
from .poly import Polynomial, arith, divided_difference_chain, exact_divide

__version__ = "0.1.0"
