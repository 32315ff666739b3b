"""Quantum homology over the Novikov ring, Seidel elements of circle actions
and the Künneth-side product theorems, all in exact arithmetic."""

from .errors import QHError
from .homology import HomologyClass, ManifoldModel, dual_basis, intersect, load_manifold
from .novikov import NovikovScalar, nv_add, nv_degree, nv_mul, parse_scalar
from .qring import QuantumElement, identity_element, parse_element, qmul, try_inverse, unit_order
from .gw import gw3, product_gw, validate_table
from .kunneth import kappa, kappa_prime, kappa_zero, product_manifold, tensor
from .seidel import (
    CircleActionData,
    SeidelElement,
    check_homomorphism,
    constant_loop,
    diagonal_leading_term,
    is_nontrivial,
    lift_trivial_factor,
    seidel_circle,
    verify_thm1,
    verify_thm2,
)
from .catalog import get_manifold

__version__ = "0.1.0"
