"""Enumeration budgets, overridable through the environment."""

import os

# Candidates examined per prime block when enumerating Aut(N).  The largest
# block needed by the shipped tables is 2^16 (binary 4x4 matrices).
DEFAULT_AUT_CANDIDATE_CAP = 1 << 21

# Above this many elements Hol(N) is not scanned in full; searches fall back
# to the Sylow-restricted path.
DEFAULT_FULL_HOL_CAP = 1 << 16


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw, 0)
    except ValueError:
        return default


def aut_candidate_cap() -> int:
    return _env_int("HOLOBRACE_CAP", DEFAULT_AUT_CANDIDATE_CAP)


def full_hol_cap() -> int:
    return _env_int("HOLOBRACE_HOL_CAP", DEFAULT_FULL_HOL_CAP)
