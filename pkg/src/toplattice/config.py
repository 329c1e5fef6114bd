"""Size caps and their defaults.

Every enumerating operation refuses (raises ResourceLimitError) instead of
degrading when a cap would be exceeded.  All caps are configurable per call
but bounded by the hard limits below.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

from .errors import InvalidArgumentError

HARD_MAX_ORDER = 512
HARD_MAX_LATTICE = 20000

ENV_MAX_ORDER = "TOPLAT_MAX_ORDER"


@dataclass(frozen=True)
class Caps:
    """Configurable resource limits with conservative defaults."""

    assoc_verify_order: int = 128     # associativity checked up to this group order
    subgroup_enum_order: int = 64     # subgroup enumeration allowed up to this order
    lattice_elements: int = HARD_MAX_LATTICE
    chain_count: int = 10 ** 6        # maximal-chain enumeration cap per interval
    lattice_iso_elements: int = 2048  # lattice isomorphism search cap
    group_iso_order: int = 16         # brute-force group isomorphism cap
    prodanov_coatoms: int = 20        # power-set enumeration cap
    settop_enum_points: int = 5       # full topology enumeration cap
    settop_lattice_points: int = 4    # full toplattice construction cap
    settop_birkhoff_points: int = 3   # all-pairs dual-Birkhoff sweep cap

    def with_max_order(self, n: int) -> "Caps":
        """Return a copy with the subgroup enumeration cap set to ``n``."""
        if n < 1:
            raise InvalidArgumentError(f"max order must be positive, got {n}")
        if n > HARD_MAX_ORDER:
            raise InvalidArgumentError(
                f"max order {n} exceeds the hard limit {HARD_MAX_ORDER}"
            )
        return replace(self, subgroup_enum_order=n)


DEFAULT_CAPS = Caps()


def caps_from_env(base: Caps = DEFAULT_CAPS) -> Caps:
    """Apply the TOPLAT_MAX_ORDER environment override, if present."""
    raw = os.environ.get(ENV_MAX_ORDER)
    if raw is None:
        return base
    try:
        value = int(raw)
    except ValueError as exc:
        raise InvalidArgumentError(f"{ENV_MAX_ORDER} must be an integer, got {raw!r}") from exc
    return base.with_max_order(value)
