"""Exact Diophantine approximation: pigeonhole approximations, Pell and
linear equations, irrationality witnesses, Beukers-type zeta sequences and
Siegel's lemma, all certified with exact rationals and interval enclosures.
"""

from .approx import (
    ApproxResult,
    LinearFormResult,
    MultiApproxResult,
    dirichlet_approx,
    good_approx_stream,
    iter_good_approximations,
    linear_form_approx,
    multidim_approx,
    simultaneous_approx,
    small_linear_forms,
)
from .errors import (
    CertificationFailed,
    ComputationLimit,
    DegenerateBound,
    DimensionError,
    DirichletError,
    InfeasibleEnumeration,
    IrrationalRequired,
    NonTrivialCase,
    NotCoprime,
    PrecisionExhausted,
    PreconditionError,
    SquareInput,
    V3BoundFailed,
)
from .exactnum import (
    CantorSeries,
    DyadicInterval,
    EulerE,
    LinearForm,
    Rational,
    RealOracle,
    Sqrt,
    Zeta2,
    Zeta3,
    floor_fract,
    lcm_upto,
    prime_count,
)
from .pell import (
    PellSolution,
    QuadInt,
    pell_construction,
    pell_powers,
    solve_pell,
    solve_pell_trivial,
    solve_unit_linear,
)
from .siegel import IntLinearSystem, SiegelSolution, siegel_brute_min, siegel_solve
from .witness import cantor_partials, cantor_preset, find_witness, rational_obstruction
from .zeta import (
    check_zeta2_bound,
    check_zeta3_bound,
    kernel_max_estimate,
    legendre_type,
    zeta2_witness,
    zeta3_witness,
)

__version__ = "0.1.0"

__all__ = [
    "ApproxResult",
    "CantorSeries",
    "CertificationFailed",
    "ComputationLimit",
    "DegenerateBound",
    "DimensionError",
    "DirichletError",
    "DyadicInterval",
    "EulerE",
    "InfeasibleEnumeration",
    "IntLinearSystem",
    "IrrationalRequired",
    "LinearForm",
    "LinearFormResult",
    "MultiApproxResult",
    "NonTrivialCase",
    "NotCoprime",
    "PellSolution",
    "PrecisionExhausted",
    "PreconditionError",
    "QuadInt",
    "Rational",
    "RealOracle",
    "SiegelSolution",
    "Sqrt",
    "SquareInput",
    "V3BoundFailed",
    "Zeta2",
    "Zeta3",
    "cantor_partials",
    "cantor_preset",
    "check_zeta2_bound",
    "check_zeta3_bound",
    "dirichlet_approx",
    "find_witness",
    "floor_fract",
    "good_approx_stream",
    "iter_good_approximations",
    "kernel_max_estimate",
    "lcm_upto",
    "legendre_type",
    "linear_form_approx",
    "multidim_approx",
    "pell_construction",
    "pell_powers",
    "prime_count",
    "rational_obstruction",
    "siegel_brute_min",
    "siegel_solve",
    "simultaneous_approx",
    "small_linear_forms",
    "solve_pell",
    "solve_pell_trivial",
    "solve_unit_linear",
    "zeta2_witness",
    "zeta3_witness",
]
