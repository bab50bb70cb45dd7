"""Exact workbench for reflection-group invariants of Laurent polynomials and
(localized) Weyl algebras, and the map from the localized Weyl algebra to the
shift algebra."""

from .arith import CycloNum, cyclo_inverse, cyclotomic_polynomial
from .group_algebra import CyclicElement, idempotents, symmetrizer
from .groups import GroupElement, GroupSpec, act, determinant, enumerate_group, reflection_data, skew_invariant_J, stabilizer
from .laurent import LaurentPoly, elementary_symmetric, evaluate, lex_leading, substitute_monomial
from .shift import ShiftElement, epsilon_R, phi, phi_inverse, shift_mul, verify_intertwining
from .torus import Decomposition, bn_generators, decompose, dn_generators, dn_relation, orbit_sum, reynolds, torus_discriminant
from .weyl import WeylElement, apply_to_laurent, clear_discriminant, epsilon, group_act_weyl, reynolds_weyl, weyl_mul

__version__ = "0.1.0"
