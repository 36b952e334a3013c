"""boxcong: exact verification of prime-power congruences for polynomial
zero counts over residue boxes, and the zero-sum constants they control."""

from .congruence import (
    AxKatzInstance,
    Box,
    MultiPoly,
    binomial_product_box_sum,
    box_weighted_count,
    hypothesis_margin,
    parse_multipoly,
    verify_axkatz,
    weisman_fleck_check,
    weisman_fleck_value,
    wilson_approx,
)
from .errors import CapExceeded
from .exactmod import (
    PrimePower,
    binom_int,
    euler_phi_pp,
    sum_of_powers_mod,
    vp,
    vp_factorial,
)
from .intpoly import (
    DiffTable,
    IntValuedPoly,
    newton_coeffs,
    parse_poly,
    to_binomial_basis,
)
from .invariants import (
    davenport_exact,
    det_hypothesis,
    guaranteed_k_ranges,
    kemnitz_check,
    s_X_exact,
    s_kq_exact,
    sxq_bound,
    transfer_extend,
)
from .reports import CongruenceReport, InvariantResult
from .residues import ResidueSystem, build_unit_system, hensel_lift, validate_system
from .zerosum import (
    AbelianPGroup,
    GroupSequence,
    check_altsum,
    check_altsum_q,
    count_by_length,
    extremal_sequence,
    parse_group,
    sigma,
    sigma_X_contains_zero,
)

__version__ = "0.1.0"
