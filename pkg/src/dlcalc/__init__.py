"""Dyer-Lashof operation calculus over F_p.

Exact symbolic arithmetic with power-operation composites: degrees and
allowability of sequences, Cartan-formula expansion, free E_k-algebra bases
and bigraded Poincare series, and quotient-ring models of cofibers with
nilpotence certificates.
"""

from .algebra import (
    Generator,
    Monomial,
    MonomialIdeal,
    Polynomial,
    ideal_member,
    mul,
    poly_pow,
    poly_to_json,
    poly_to_text,
)
from .cartan import FormalExpansion, apply_op, apply_seq, total_operation
from .cofiber import (
    CofiberPresentation,
    build_cofiber,
    check_nilpotent_in_cofiber,
    check_p_power_rule,
    check_qnilpotent_identity,
    e1_filtration_stage,
    kill_ideal,
    mixed_term_coefficient,
)
from .ops import (
    FERMIONIC,
    MIXED_BOSONIC,
    PURELY_BOSONIC,
    DLOp,
    classify,
    is_allowable,
    is_basis_shape,
    is_bounded,
    lower_from_upper,
    scale_seq,
    seq_degree,
)
from .parser import ParseError, parse_expr, parse_seq, render
from .series import (
    BigradedSeries,
    enumerate_generators,
    poincare_series,
    verify_decomposition,
)

__version__ = "0.1.0"
