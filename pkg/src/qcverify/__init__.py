"""Exact-arithmetic tooling for synchronous nonlocal games over free products
of cyclic groups: certified spectral-projection approximants, relaxed trace
requirements, witnessed candidate enumeration, and a semi-decision verifier
with offline recheckable certificates."""

from .enumerator import (
    Candidate,
    decode_candidate,
    encode_candidate,
    enumerate_X,
    is_member_witnessed,
)
from .errors import (
    ModulusError,
    NotATraceError,
    ParameterError,
    TraceDomainError,
)
from .fields import Cyclotomic, GaussianRational, cyclotomic_to_gaussian
from .games import (
    Correlation,
    NonlocalGame,
    antimirror_game,
    classical_sync_value,
    deterministic_correlation,
    game_value,
    is_synchronous,
    mirror_game,
)
from .requirements import DeltaBound, Requirement, delta_for_k, requirement
from .ring import (
    RingElement,
    ring_add,
    ring_element,
    ring_l1_bound,
    ring_mul,
    ring_star,
)
from .spectral import CertifiedApprox, approx_product_s, projection, projection_product
from .traces import (
    CyclotomicTrace,
    PartialTrace,
    character_trace,
    check_relaxed,
    correlation_from_trace,
    is_k_adapted,
    is_k_approximate,
    partial_trace,
    rationalize_pair,
    regular_trace,
    required_support,
)
from .verifier import (
    Accept,
    BudgetExhausted,
    GameFamily,
    QcModulus,
    TOY_FAMILY,
    VerdictCertificate,
    get_family,
    recheck_certificate,
    stability_probe,
    verify,
)
from .words import (
    GroupParams,
    Word,
    enumerate_words,
    normalize,
    word_conj,
    word_inv,
    word_mul,
)

__version__ = "0.1.0"
