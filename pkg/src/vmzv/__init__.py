"""Exact v-adic and infinity-adic Carlitz multiple polylogarithms and multiple zeta values."""

from .algebra import GF, BiPoly, FiniteField, Place, Poly, Rational, enumerate_places, is_irreducible, ord_exact
from .andersonthakur import at_coeffs, at_poly
from .carlitz import (
    IndexComposition,
    b_weight,
    bracket,
    carlitz_gamma,
    compositions,
    d_factor,
    gamma_index,
    gamma_ord_bound,
    l_factor,
    mzv_bound,
    ord_closed,
)
from .cmspl import (
    cmspl_continued_v,
    cmspl_direct_v,
    cmspl_inf,
    cmspl_v,
    functional_equation_check,
    stuffle_depth1_check,
)
from .errors import ConvergenceError, CostGuardError, MathError, MembershipError, PrecisionError, ZeroValuationError
from .localfields import InfAdicNumber, VAdicNumber, infadic_from_rational, vadic_from_rational
from .mzv import (
    MzvResult,
    adelic_scan,
    decompose_index,
    finite_zeta,
    power_sum,
    zeta_inf_cmspl,
    zeta_inf_series,
    zeta_v,
)
from .tmodule import (
    apply_rho_poly,
    apply_rho_t,
    build_tmodule,
    continuation_poly,
    log_row,
    log_row_oracle,
    log_top_coordinate,
    special_point,
)

__version__ = "0.1.0"
