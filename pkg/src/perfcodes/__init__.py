"""Perfect 1-error-correcting q-ary codes built from and split into mu-components."""

from .census import BoundReport, generate_assemblies, generate_distinct_codes, lower_bound
from .codespace import (
    Check,
    Code,
    CodeParameters,
    MonomialTransform,
    apply_monomial,
    hamming_distance,
    is_perfect,
    min_distance,
    rank,
    sigma_profile,
    span,
)
from .combiner import Assembly, assembly_rank_bound_check, combine
from .components import (
    MuComponent,
    build_mollard_phelps,
    build_phelps,
    component_shift,
    component_verify,
)
from .decomposer import Decomposition, decompose, decomposition_verify
from .gfq import FieldTable, field_add, field_inv, field_make, field_mul
from .hamming import (
    ParityCheckMatrix,
    PerfectPartition,
    hamming_code,
    perfect_partition,
    projective_points,
)
from .quasigroup import (
    MultaryQuasigroup,
    SigmaFamily,
    qg_check,
    qg_count,
    qg_enumerate,
    qg_linear,
    sigma_from_component_law,
    vh_pair_check,
)

__version__ = "0.1.0"

__all__ = [
    "Assembly",
    "BoundReport",
    "Check",
    "Code",
    "CodeParameters",
    "Decomposition",
    "FieldTable",
    "MonomialTransform",
    "MuComponent",
    "MultaryQuasigroup",
    "ParityCheckMatrix",
    "PerfectPartition",
    "SigmaFamily",
    "apply_monomial",
    "assembly_rank_bound_check",
    "build_mollard_phelps",
    "build_phelps",
    "combine",
    "component_shift",
    "component_verify",
    "decompose",
    "decomposition_verify",
    "field_add",
    "field_inv",
    "field_make",
    "field_mul",
    "generate_assemblies",
    "generate_distinct_codes",
    "hamming_code",
    "hamming_distance",
    "is_perfect",
    "lower_bound",
    "min_distance",
    "perfect_partition",
    "projective_points",
    "qg_check",
    "qg_count",
    "qg_enumerate",
    "qg_linear",
    "rank",
    "sigma_from_component_law",
    "sigma_profile",
    "span",
    "vh_pair_check",
]
