"""c-nilpotent multipliers of nilpotent products of cyclic groups."""

from ._core import (
    AbelianStructure,
    DomainError,
    GroupContext,
    PreconditionError,
    SizeError,
    UnsupportedError,
    chi_partial_sum,
    count_involving_last,
    gcd_zero_aware,
    hall_basis,
    mobius,
    multiplier_closed_form,
    multiplier_general,
    multiplier_two_factor,
    normal_form,
    validate_spec,
    verify_multiplier,
    witt_chi,
)

__all__ = [
    "AbelianStructure",
    "DomainError",
    "GroupContext",
    "PreconditionError",
    "SizeError",
    "UnsupportedError",
    "chi_partial_sum",
    "count_involving_last",
    "gcd_zero_aware",
    "hall_basis",
    "mobius",
    "multiplier_closed_form",
    "multiplier_general",
    "multiplier_two_factor",
    "normal_form",
    "validate_spec",
    "verify_multiplier",
    "witt_chi",
]
