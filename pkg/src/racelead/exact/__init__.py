"""Exhaustive enumeration engines and executable bijections."""
from .compositions import (
    MAJORIZATION_CAP,
    Composition,
    compositions,
    decode_composition,
    encode_composition,
    majorization_probability_exact,
    majorizes_weak,
    motzkin_from_bitpair,
)
from .orders import RANK_ORACLE_CAP, alternation_rank_oracle, dominance_count, ownership_event_probability
from .paths import (
    CycleSequence,
    Path,
    contract_to_motzkin,
    count_paths_dp,
    spitzer_rotation,
    updown_bijection_to_endzero,
    updown_bijection_to_nonneg,
)
from .signed import (
    BALLOT_CAP,
    GENERICITY_CAP,
    GenericSet,
    SignedPermutation,
    ballot_signed_perms,
    collision_deltas,
    collision_hops,
    collision_step_map,
    count_ballot_signed_perms,
    count_ballot_signed_perms_naive,
    has_ballot_property,
    is_collision_free,
    is_generic,
    random_generic_set,
    to_fraction,
)

__all__ = [name for name in dir() if not name.startswith("_")]
