"""Colour reduction on directed paths and cycles.

Implements the fast one-round reductions (subset-code and bit-pairing),
the slow shift reducer, greedy reduction schedules, the round speed-up
transform with its successor/output relations, neighbourhood and
worst-case successor graphs, exact graph colouring, and log*/tetration
round-complexity bounds.
"""

from .errors import BudgetExceeded
from .model import (
    CYCLE,
    ONE_SIDED,
    PATH,
    TWO_SIDED,
    BoundsReport,
    ColourWindow,
    Palette,
    PathInstance,
    ReductionAlgorithm,
    TowerValue,
    bounds_report,
    canonical_label,
    exhaustive_properness_check,
    format_instance,
    identity_algorithm,
    is_proper,
    log_star,
    one_sided_from_two_sided,
    parse_instance,
    proper_sequences,
    random_proper_instance,
    run_algorithm,
    sampled_properness_check,
    tower,
    two_sided_from_one_sided,
)
from .reduce import (
    Pipeline,
    SubsetCode,
    colex_rank,
    colex_unrank,
    compose,
    cv_algorithm,
    four_to_three,
    ns_algorithm,
    ns_schedule,
    shift_reduce,
)
from .speedup import (
    ColourFamily,
    ColourRelation,
    SpeedUpTower,
    compose_colouring,
    exhaustive_one_round_lower_bound,
    iterate_speed_up,
    output_relation,
    random_proper_table,
    speed_up,
    successor_relation,
)
from .graphs import (
    ColourClassPartition,
    UGraph,
    explicit_sixteen_classes,
    from_dimacs,
    neighbourhood_graph,
    successor_graph_of,
    to_dimacs,
    verify_partition,
    worst_case_successor_graph,
)
from .chroma import (
    ColouringCertificate,
    chromatic_number,
    export_cnf,
    k_colourable,
)

__all__ = [
    "BudgetExceeded",
    "CYCLE",
    "ONE_SIDED",
    "PATH",
    "TWO_SIDED",
    "BoundsReport",
    "ColourClassPartition",
    "ColourFamily",
    "ColourRelation",
    "ColourWindow",
    "ColouringCertificate",
    "Palette",
    "PathInstance",
    "Pipeline",
    "ReductionAlgorithm",
    "SpeedUpTower",
    "SubsetCode",
    "TowerValue",
    "UGraph",
    "bounds_report",
    "canonical_label",
    "chromatic_number",
    "colex_rank",
    "colex_unrank",
    "compose",
    "compose_colouring",
    "cv_algorithm",
    "exhaustive_one_round_lower_bound",
    "exhaustive_properness_check",
    "explicit_sixteen_classes",
    "export_cnf",
    "format_instance",
    "four_to_three",
    "from_dimacs",
    "identity_algorithm",
    "is_proper",
    "iterate_speed_up",
    "k_colourable",
    "log_star",
    "neighbourhood_graph",
    "ns_algorithm",
    "ns_schedule",
    "one_sided_from_two_sided",
    "output_relation",
    "parse_instance",
    "proper_sequences",
    "random_proper_instance",
    "random_proper_table",
    "run_algorithm",
    "sampled_properness_check",
    "shift_reduce",
    "speed_up",
    "successor_graph_of",
    "successor_relation",
    "to_dimacs",
    "tower",
    "two_sided_from_one_sided",
    "verify_partition",
    "worst_case_successor_graph",
]
