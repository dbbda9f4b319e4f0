"""Bounds, constructions and verification for Sperner partition systems."""

from ._sperner import (
    NotApplicable,
    ParseError,
    PartitionSystem,
    admissible_alt_u,
    admissible_main_u,
    almost_uniform,
    alt_construction_p,
    binom,
    bounds,
    brute_force,
    construct,
    exact_known,
    ll_eval,
    ll_leq,
    main_construction_p,
    mms,
    mms_floor,
    nlb,
    product,
    table,
    thm_upper,
    verify,
    verify_detecting,
)

__all__ = [name for name in dir() if not name.startswith("_")]
