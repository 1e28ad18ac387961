"""Exact Grothendieck-Witt classes over finite fields and pi_0 of the K(1)-local sphere."""
from k1witt.finite_field import Residue, smallest_nonsquare, square_class
from k1witt.quad_forms import (
    GramForm,
    GWClass,
    brute_force_equivalent,
    class_of,
    diagonalize,
    direct_sum,
    equivalent,
    tensor,
)
from k1witt.equivariant import (
    EquivariantForm,
    FiniteGroup,
    Representation,
    alpha2_forms,
    cardinality_via_forms,
    coinvariants,
    norm_map,
    pushforward,
    restrict_hom,
    restrict_trivial,
    sym2_rank_det,
    total_square,
)
from k1witt.padic import PadicInt, div_exact, log_one_plus, log_unit, valuation
from k1witt.k1_ring import (
    EPS,
    K1Element,
    PiFiniteSpace,
    alpha,
    delta,
    en_module_cardinality,
    functional_defect,
    homotopy_cardinality,
    k1_cardinality,
    nu,
    rezk_log,
    theta,
    wreath_c2_cardinality,
)

__version__ = "0.1.0"
