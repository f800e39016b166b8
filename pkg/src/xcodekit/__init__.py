"""Toolkit for constant-weight X-codes: construction, verification, and
compaction simulation."""

from .bitcore import Codeword, add, covers, fold_or, fold_xor, superimpose
from .galois import FieldElement, PrimeField, is_prime
from .verifier import (
    BudgetExceededError,
    FullMode,
    GveReport,
    Hypergraph,
    PackingReport,
    SampledMode,
    TriplePacking,
    VerificationReport,
    Witness,
    XCode,
    find_even_configuration,
    find_named_configuration,
    full_check_estimate,
    girth,
    girth_at_least,
    is_gve_free,
    is_linear,
    is_r_even_free,
    is_superimposed,
    is_x_code,
    witness_is_valid,
)
from .constructions import (
    ApFreeSet,
    ConstructionError,
    ConstructionResult,
    Packing,
    Provenance,
    ap_free_xcode,
    behrend_set,
    even_free_packing,
    evenfree_to_xcode,
    girth5_hypergraph,
    girth5_xcode,
    greedy_packing,
    is_ap_free,
    linear_system_xcode,
    packing_to_xcode,
    random_sparse_xcode,
)
from .simulator import (
    FaultScenario,
    Response,
    X,
    compact,
    is_detectable,
    semantic_x_code_check,
)

__version__ = "0.1.0"
