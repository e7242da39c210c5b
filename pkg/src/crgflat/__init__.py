"""Exact flat coordinates and Saito structures for finite complex reflection groups."""

from .errors import DomainError
from .exactnum import CycloNumber, Rational, rational, root_of_unity, sqrt_rational
from .polyring import MultiPoly, VarFrame
from .exactla import Matrix
from .groups import ReflectionGroup, BasicInvariantSet, catalog_group, list_groups
from .triplets import AdmissibleTriplet, find_admissible_triplet, graded_frame, verify_triplet
from .goodinv import (GoodInvariantRecord, make_compatible, make_good, check_good,
                      express_in_basic, span_equal, good_invariants)
from .saito import (potential_vector_field, structure_constants_direct, hessian_structure_constants,
                    omega_oracle, verify_flat_and_consistent)
from .coxeter import (invariant_bilinear_form, eta_split, potential_function,
                      satake_structure_constants, coxeter_data)

__version__ = "0.1.0"
