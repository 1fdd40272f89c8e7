"""Exact verification of four-functions-type correlation inequalities.

The public API re-exports the lattice constructors, the Birkhoff embedding,
the inequality checkers, the proof reductions and the counterexample search.
"""
__version__ = "0.1.0"

from .birkhoff import (
    BirkhoffEmbedding,
    BooleanFrame,
    birkhoff_embed,
    boolean_frame,
    join_irreducibles,
    verify_embedding,
)
from .errors import (
    BudgetExceeded,
    CycleError,
    FormatError,
    LatticeIneqError,
    NotALattice,
    NotBoolean,
    NotDistributive,
    ParamError,
    PreconditionFailed,
)
from .inequalities import (
    DECREASING,
    INCREASING,
    WeightFunction,
    WeightQuadruple,
    check_4ft_conclusion,
    check_ad_hypothesis,
    check_fkg_q,
    check_q4ft,
    check_q4ft_stronger,
    check_setminus_lemma,
    family_join,
    family_meet,
    is_log_supermodular,
    is_monotone,
    q_weighted_polynomial,
)
from .lattice import (
    Lattice,
    boolean,
    build_lattice,
    chain,
    check_rank_modularity,
    divisor,
    is_distributive,
    powerset,
    product,
    rank_function,
    standard_lattice,
)
from .polynomial import QPolynomial, poly_dominates
from .reduction import (
    coefficient_slice_check,
    complement_transform,
    diagonal_construction,
    extend_via_embedding,
    fkg_quadruple,
    interval_restriction,
    replay_q4ft,
)
from .search import (
    SearchConfig,
    check_conjecture9,
    reference_quadruple,
    random_ad_quadruple,
    random_log_supermodular,
    random_monotone,
    search_counterexamples,
    verify_paper_counterexample,
)
from .verdict import Verdict
