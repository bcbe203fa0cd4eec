"""Enumeration of regular quaternion/dihedral subgroups of holomorphs of
finite abelian groups, the braces they induce, and the associated counts of
braces and Hopf-Galois structures."""

from .abelian import Element, GroupSpec, make_group, parse_group, sylow_decompose
from .brace import BraceTable, brace_from_subgroup, verify_brace, ybe_solution
from .counts import (
    CensusResult,
    census,
    d_closed,
    d_computed,
    hgs_count,
    hgs_reduce,
    q_closed,
    q_computed,
    table1_report,
    table3_report,
    table4_report,
)
from .endo import AutGroup, EndoMatrix, enumerate_aut, sylow_p_aut
from .errors import (
    CapacityError,
    HolobraceError,
    InternalConsistencyError,
    InvalidInputError,
)
from .holomorph import (
    HolElement,
    exponent_bound,
    hol_apply,
    hol_compose,
    hol_invert,
    hol_order,
    order_spectrum,
)
from .oddpart import TauMap, reduce_counts, semidirect_subgroup, tau_set
from .presentations import (
    TargetKind,
    admissible_types,
    aut_order,
    classify_subgroup,
    parse_kind,
)
from .regular import (
    ConjugacyClass,
    RegularSubgroup,
    classify,
    find_regular,
    find_regular_sylow,
    generate_closure,
    is_regular,
    search_regular,
)
from .structured import (
    StructuredCensus,
    StructuredGeneratorPair,
    StructuredRangeError,
    solve_cyclic,
    solve_rank2,
)

__version__ = "0.1.0"
