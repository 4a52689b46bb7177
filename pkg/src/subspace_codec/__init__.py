"""Subspace codes under the injection distance.

Finite-field arithmetic, subspace distances, lifted Gabidulin codes with
puncturing, Singleton-type bounds and an operator-channel simulator.
"""

from .bounds import (
    count_subspaces_up_to,
    figure1_table,
    gabidulin_bound_exact,
    gabidulin_bound_loose,
    gaussian_coefficient,
    lemma4_ratio,
    log_q_big,
    rate,
    singleton_bound,
)
from .channel import (
    ChannelInstance,
    Outcome,
    TrialReport,
    correction_guarantee_trials,
    decode,
    exhaustive_adversary,
    random_transfer,
    transmit,
)
from .errors import SubspaceCodecError
from .finite_field import (
    FieldElement,
    FieldSpec,
    compress,
    expand,
    extension_field,
    field_create,
    frobenius,
    galois_field,
)
from .gabidulin import (
    CodeType,
    GabidulinParams,
    LinearizedPoly,
    SubspaceCode,
    encode_rank,
    enumerate_code,
    evaluate_linearized,
    example_sequence,
    expand_to_matrix,
    lift,
    min_injection_distance,
    puncture,
)
from .gf_linalg import MatrixGF, kernel, rank, rref
from .subspace import (
    Subspace,
    delta_rho,
    delta_rho_bruteforce,
    dual,
    injection_distance,
    intersection_dim,
    subspace_distance,
    subspace_from_rows,
    sum_dim,
)

__version__ = "0.1.0"
