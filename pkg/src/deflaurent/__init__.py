"""Exact arithmetic in deformed Laurent series rings and Weyl algebra completions.

Coefficients live in Q(alpha); series are truncated at an explicit precision
floor.  The main entry points:

* :func:`make_spec` builds the delta-family for parameters (r, s).
* :class:`DeformedSeries` with :func:`mul`, :func:`inverse`, :func:`commutator`.
* :class:`WeylElement` and :func:`embed` for p -> alpha T^r, q -> T^s.
* :func:`make_generators`, :func:`rebase`, :func:`centralizer_solve`.
"""

from .binomial_kit import (
    bracket,
    check_f12,
    check_poly_interpolation,
    check_vandermonde_shift,
    gen_binom,
    phi0_closed_form,
    phi_closed_form,
    phi_composition_sum,
)
from .completion import (
    GeneratorPair,
    RebasedSeries,
    case2_leading_constraint,
    centralizer_solve,
    evaluate_rebased,
    make_generators,
    rebase,
)
from .deformation import (
    CoproductTerm,
    DeformationSpec,
    DiffOp,
    check_condition,
    coproduct,
    delta_apply,
    make_custom_spec,
    make_spec,
)
from .errors import (
    DeflaurentError,
    DivisionByZero,
    EvalError,
    InvalidParameter,
    NotInCompletion,
    NotSolvable,
    ParseError,
    PrecisionExhausted,
    SpecMismatch,
)
from .exact_arith import NEG_INF, Poly, Rat, RatFun, in_power_subfield, ratfun_arith, ratfun_derivative
from .series import (
    DeformedSeries,
    RightSeries,
    anti_iso,
    commutator,
    equal_to_floor,
    in_valuation_ring,
    inverse,
    lambda_coeff,
    mul,
    mul_oracle,
    mul_right,
    power,
)
from .weyl import DegreeParams, GradedSymbol, WeylElement, embed, equivalent, symbol, v_degree, weyl_mul

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
