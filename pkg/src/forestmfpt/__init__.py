"""Mean first passage times, stationary distributions and spanning-forest
weights of ergodic Markov chains."""
from .chain import (
    LaplacianMatrix,
    TransitionMatrix,
    WeightedDigraph,
    check_irreducible,
    digraph_of,
    laplacian,
    load_chain,
    parse_chain,
    random_chain,
    transition_matrix,
)
from .cli import AnalysisBundle, analyze
from .enumeration import (
    InForest,
    enumerate_in_forests,
    oracle_accumulator,
    oracle_sigma_q,
    oracle_tree_and_two_tree,
)
from .exceptions import (
    ChainError,
    EnumerationLimitError,
    ForestDimensionError,
    NotIrreducibleError,
    ParseError,
    SingularSystemError,
    StepCapExceeded,
    ValidationError,
)
from .forests import (
    Diagonal,
    ForestAccumulator,
    MfptMatrix,
    TreeWeights,
    TwoTreeWeights,
    forest_analysis,
    forest_recurrence,
    mfpt_forest,
    stationary_from_trees,
    tree_weights,
    two_tree_weights,
)
from .group_inverse import GroupInverse, group_inverse, meyer_analysis, mfpt_meyer, stationary_direct
from .simulation import SimulationReport, estimate_mfpt, estimate_stationary, sample_first_passage

__version__ = "0.1.0"
