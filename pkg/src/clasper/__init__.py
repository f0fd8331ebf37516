"""Exact algebra for the Y2-classification of closed 3-manifolds by their invariant records."""
from .fgab import (
    DualGroup,
    FgAbelianGroup,
    GroupElement,
    Homomorphism,
    InfiniteGroup,
    dual_group,
    enumerate_isomorphisms,
    group_from_presentation,
    pair,
    smith_normal_form,
    tensor_mod,
)
from .trivector import Trivector, TrivectorSpace, basis_coefficient, detect_nonzero, pairing_n, wedge
from .ygraph import SpecialPair, Y, YTerm, normal_form, y_group, y_of_morphism
from .spinspace import AffineFn, CubicFn, PElement, SpinSpace, cubic_product, d3, kappa
from .invariants import BElement, InvariantRecord, LinkingPairing, QuadFn, quad_value, validate_record
from .surgery import FormalYGraph, apply_y_surgery, check_square, map_E, map_N, surgery_S
from .decide import Certificate, InfiniteSearchSpace, decide, decide_y1_spin, decide_y2

__all__ = [name for name in dir() if not name.startswith("_")]
