"""Size caps shared by the enumerating operations."""

import os
from contextlib import contextmanager
from dataclasses import dataclass, replace

DEFAULT_MAX_ORDER = 20160
DEFAULT_MAX_ENUM = 10**7
DEFAULT_MAX_SEMIDIRECT = 10**4
DEFAULT_MAX_COMPLEMENT_G = 12
DEFAULT_MAX_COCHAIN_RANK = 4096
# classes keep their full member lists below this many derivations
DESK_SCALE = 10**5


@dataclass(frozen=True)
class Limits:
    max_order: int = DEFAULT_MAX_ORDER
    max_enum: int = DEFAULT_MAX_ENUM
    max_semidirect: int = DEFAULT_MAX_SEMIDIRECT
    max_complement_g: int = DEFAULT_MAX_COMPLEMENT_G
    max_cochain_rank: int = DEFAULT_MAX_COCHAIN_RANK
    # skip sampled associativity checks on tables above the exhaustive bound
    trust_tables: bool = False


def _from_env() -> Limits:
    raw = os.environ.get("NACH1_MAX_ENUM")
    if raw:
        return Limits(max_enum=int(raw))
    return Limits()


_current = _from_env()


def limits() -> Limits:
    return _current


def set_limits(**changes) -> Limits:
    """Replace the process-wide caps; returns the previous value."""
    global _current
    old = _current
    _current = replace(_current, **changes)
    return old


@contextmanager
def override_limits(**changes):
    """Temporarily change the caps inside a ``with`` block."""
    global _current
    old = set_limits(**changes)
    try:
        yield _current
    finally:
        _current = old
