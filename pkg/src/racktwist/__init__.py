"""Exact computational toolkit for racks, cocycle twists, spin covers, and graded ranks."""

from .cocycle import (
    GaugeFunction,
    RackCocycle,
    TwistTable,
    check_cocycle,
    check_twist_condition,
    chi_cocycle,
    constant_cocycle,
    find_gauge,
    gauge_transform,
    lift_to_order,
    minus_one_cocycle,
    twist,
)
from .errors import DimensionCapError, OrbitTooLargeError, RackTwistError, SectionConsistencyError
from .hilbert import (
    HilbertReport,
    IntPolynomial,
    RankCertificate,
    compare_twist_series,
    expand_closed_form,
    graded_dims,
    rank,
    t_integer,
)
from .braided import (
    BraidWord,
    MonomialOperator,
    SymmetrizerMatrix,
    braiding_c,
    check_braid_equation,
    matsumoto_word,
    rho,
    symmetrizer,
)
from .rack import (
    FiniteRack,
    Permutation,
    TranspositionLabel,
    check_rack_axioms,
    conjugacy_class_rack,
    is_indecomposable,
    transposition_labels,
    transposition_pairs,
    transposition_rack,
)
from .spincover import (
    CliffordElement,
    GroupCocycleBit,
    QuadScalar,
    SpinElement,
    bracket,
    clifford_mul,
    conj_by_perm,
    generator_t,
    phi,
    phi_psi_table,
    section_s,
    verify_conjugation_lemmas,
    verify_group_cocycle,
    verify_main_theorem,
    verify_presentation,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
