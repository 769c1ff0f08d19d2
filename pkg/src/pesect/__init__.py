"""Branching laws and graph invariants of permutative endomorphisms of the Cuntz algebras."""

from .errors import GuardError, PesectError, UsageError, ValidationError
from .words import (
    RotationClassRep,
    Word,
    canonical_rotation,
    minimal_words,
    parse_word,
    precedes,
    rank_word,
    rotate,
    unrank_word,
)
from .perms import (
    EndoFormula,
    PermutationTable,
    direct_sum,
    endo_formula,
    from_entries,
    identity,
    inverse,
    iter_all,
    random_table,
)
from .sigma_io import load_sigma, loads_sigma
from .mealy import (
    BranchingLaw,
    CycleDecomposition,
    MealyMachine,
    SectorSignature,
    branching,
    build_machine,
    cycle_decomposition,
    run,
    signature,
)
from .graphs import (
    AdjacencyMatrix,
    GraphClass,
    adjacency,
    canonical_form,
    cycle_index,
    cycle_index_oracle,
    is_isomorphic,
    machine_adjacency,
    to_dot,
)
from .census import (
    CensusTable,
    SignaturePartition,
    completeness_check,
    partition_by_signature,
    run_census,
    verify_against_fixture,
)

__version__ = "0.1.0"
