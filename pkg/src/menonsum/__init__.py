"""Exact Dirichlet characters and the twisted Menon gcd sum."""

from .arith import (
    Factorization,
    crt_combine,
    crt_split,
    divisors,
    euler_phi,
    factorize,
    moebius,
    sigma_k,
)
from .characters import (
    DirichletCharacter,
    PrimePowerLocal,
    char_sum_on_unit_subgroup,
    character_from_index,
    character_group,
    conductor,
    crt_product,
    enumerate_unit_subgroup,
    evaluate,
    prime_power_local,
    primitive_character,
    restrict,
)
from .cyclotomic import (
    ONE,
    ZERO,
    CyclotomicSum,
    NonInteger,
    RootOfUnity,
    cyclotomic_polynomial,
    extract_integer,
)
from .errors import DomainError, IntegralityError, ResourceError
from .menon import (
    MODES,
    MenonEvaluation,
    gcd_char_sum,
    gcd_char_sum_closed,
    menon,
    menon_closed,
    menon_grouped,
    menon_grouped_batch,
    menon_local,
    menon_naive,
    tuple_gcd_count,
)
from .verify import VerificationReport, run_verification

__version__ = "0.1.0"
