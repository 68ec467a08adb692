"""Exact invariants of commuting pairs on modules over Q[z1..zd].

Koszul homology dimensions, Fredholm indices, Hilbert functions and
Samuel multiplicities, and the symmetric-Fock-space invariant suite
(fibre dimension, curvature, occupancy), all in exact rational
arithmetic over four module representations.
"""

from .errors import (CrossCheckMismatch, DegreeOverflow, IllConditioned,
                     InvalidParams, KmultError, NonCommutingTuple, NotCofinite,
                     NotContained, NotEventuallyPolynomial, NotFredholm,
                     NotOrthogonal, NotUnimodular, NoStabilization, ParseError,
                     UnknownModel, ValidationError, ZeroInput)
from .fock import (FockSubmodule, additivity_check, coinvariant_hilbert,
                   coinvariant_samuel, curvature, dashboard, fibre_dimension,
                   localized_codim, monomial_norm_sq, monotonicity_check,
                   occupying_family, phi, sigma, trace_projection_ratio)
from .groebner import (GroebnerBasis, SyzygyPresentation, buchberger, membership,
                       normal_form, standard_monomial_count, syzygies, syzygy_module)
from .hilbert import (NumericalPolynomial, SamuelReport, delta,
                      fit_numerical_polynomial, lech_check, prop7_check,
                      samuel_multiplicity, theorem8_sandwich)
from .koszul import (ELimits, HomologyReport, SingleOpReport, e_limits,
                     fredholm_index, h_grid, h_sequence, homology_dims,
                     homology_dims_windowed, index_multiplicativity_check,
                     presentation_isomorphism_invariance, pythagorean_rotation,
                     rotate_pair, single_op_report)
from .linalg import RatMatrix, kernel_basis, quotient_dim, rank
from .models import build, catalog_names, random_battery
from .modules import (FilteredModel, MatrixModule, PresentedModule,
                      SubmoduleModule, box_quotient_dim, check_commuting,
                      dim_mod_max_ideal, ideal_power_quotient_dim,
                      quotient_by_first, slice_quotient_dim)
from .parsing import (canonical_model_text, parse_model_file, parse_model_text,
                      parse_polynomial, parse_vector_polynomial)
from .poly import (Polynomial, VectorPolynomial, evaluate,
                   homogeneous_component, order_at_origin, truncate)
from .util import INFINITE

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
