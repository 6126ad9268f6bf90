"""Positive linear operators, Korovkin test sets and L^p convergence on a grid."""

from .grid import (
    GridFunction,
    GridMismatchError,
    Interval,
    is_strictly_positive,
    lattice_abs,
    lattice_inf,
    lattice_sup,
    linear_combination,
    make_monomial,
)
from .quadrature import QuadratureScheme, integrate, lp_norm
from .operators import (
    LandauStieltjesKernel,
    OperatorFamily,
    apply_bernstein,
    apply_landau_stieltjes,
    bernstein_family,
    degree_bound_check,
    kernel_value,
    landau_stieltjes_family,
    operator_l1_norm,
)
from .simplex import LPResult, simplex_solve
from .korovkin import (
    MomentSystem,
    extension_space_contains,
    is_determined,
    representing_measure_extremes,
    verify_korovkin_set,
)
from .harness import (
    check_extension_implication,
    run_convergence,
    run_landau_l1_experiment,
)

__version__ = "0.1.0"
