"""Brute-force budgets shared by the exhaustive checkers.

Every exhaustive code path (verification by enumeration, the ground-truth
oracle, circuit global/homogeneity checks) refuses to run above a configured
number of free features.  Exceeding a cap raises :class:`CapExceeded`; nothing
is ever silently truncated.  The environment variable ``XPLAIN_BRUTE_CAP``
overrides all caps at once.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

ENV_CAP = "XPLAIN_BRUTE_CAP"


class CapExceeded(RuntimeError):
    """A brute-force enumeration was asked to search too many free features."""


@dataclass(frozen=True)
class BruteCaps:
    verify: int = 24          # free features in verification by enumeration
    oracle_local: int = 16    # |F| for the exhaustive oracle, local kinds
    oracle_global: int = 12   # |F| for the exhaustive oracle, global kinds
    circuit: int = 24         # free input gates in circuit checks

    @staticmethod
    def from_env() -> "BruteCaps":
        raw = os.environ.get(ENV_CAP)
        if raw is None:
            return BruteCaps()
        cap = int(raw)
        if cap < 0:
            raise ValueError(f"{ENV_CAP} must be nonnegative, got {cap}")
        return BruteCaps(verify=cap, oracle_local=cap, oracle_global=cap, circuit=cap)


DEFAULT_CAPS = BruteCaps.from_env()


def require_cap(free: int, cap: int, what: str) -> None:
    if free > cap:
        raise CapExceeded(f"{what}: {free} free features exceed the cap of {cap}")
