"""Discrete Sugeno integrals on bounded chains, exactly.

Evaluation (three equivalent formulas), capacities and their
pushforwards, axiomatic recognizers on explicit tables, chain
congruences as interval partitions, scale epimorphisms, and exhaustive
desk-scale verifiers for the compatibility and scale-invariance
characterizations.
"""

from .chain import (
    Chain,
    ChainMismatchError,
    ChainValue,
    compare,
    format_fraction,
    join,
    median3,
    meet,
)
from .capacity import (
    Capacity,
    CapacityViolation,
    SizeCapError,
    capacity_from_table,
    cardinality_capacity,
    enumerate_capacities,
    format_subset,
    parse_subset,
    pushforward_capacity,
    require_valid,
    subset_indices,
    subset_mask,
    validate_capacity,
)
from .integral import (
    AggregationTable,
    ArityMismatchError,
    Counterexample,
    FORMULAS,
    ScoreVector,
    TableInvalidError,
    check_comonotone_maxitive,
    check_idempotent,
    check_median_decomposable,
    check_min_homogeneous,
    comonotone,
    recognize_sugeno,
    sugeno_eval,
    sugeno_table,
)
from .congruence import (
    CongruenceViolation,
    EquivalenceRelation,
    IntervalPartition,
    Prop1Report,
    Theorem1Report,
    UnitBlock,
    classes_are_intervals,
    enumerate_aggregation_tables,
    enumerate_equivalence_relations,
    enumerate_interval_partitions,
    is_compatible,
    is_compatible_all,
    is_congruence,
    partition_from_relation,
    relation_from_partition,
    verify_prop1,
    verify_theorem1,
)
from .scale import (
    BUILTIN_NAMES,
    Epimorphism,
    EpimorphismInvalidError,
    Theorem2Report,
    builtin_epimorphism,
    check_scale_invariance,
    enumerate_epimorphisms,
    make_epimorphism,
    verify_theorem2,
)

__version__ = "0.1.0"

__all__ = [
    "AggregationTable",
    "ArityMismatchError",
    "BUILTIN_NAMES",
    "Capacity",
    "CapacityViolation",
    "Chain",
    "ChainMismatchError",
    "ChainValue",
    "CongruenceViolation",
    "Counterexample",
    "Epimorphism",
    "EpimorphismInvalidError",
    "EquivalenceRelation",
    "FORMULAS",
    "IntervalPartition",
    "Prop1Report",
    "ScoreVector",
    "SizeCapError",
    "TableInvalidError",
    "Theorem1Report",
    "Theorem2Report",
    "UnitBlock",
    "builtin_epimorphism",
    "capacity_from_table",
    "cardinality_capacity",
    "check_comonotone_maxitive",
    "check_idempotent",
    "check_median_decomposable",
    "check_min_homogeneous",
    "check_scale_invariance",
    "classes_are_intervals",
    "comonotone",
    "compare",
    "enumerate_aggregation_tables",
    "enumerate_capacities",
    "enumerate_epimorphisms",
    "enumerate_equivalence_relations",
    "enumerate_interval_partitions",
    "format_fraction",
    "format_subset",
    "is_compatible",
    "is_compatible_all",
    "is_congruence",
    "join",
    "make_epimorphism",
    "median3",
    "meet",
    "parse_subset",
    "partition_from_relation",
    "pushforward_capacity",
    "recognize_sugeno",
    "relation_from_partition",
    "require_valid",
    "subset_indices",
    "subset_mask",
    "sugeno_eval",
    "sugeno_table",
    "validate_capacity",
    "verify_prop1",
    "verify_theorem1",
    "verify_theorem2",
]
