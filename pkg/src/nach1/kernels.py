"""Selects the compiled kernels when available.

Set ``NACH1_PURE_PYTHON=1`` to force the pure-Python implementations.
"""

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("NACH1_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        pass

associativity_witness = _impl.associativity_witness
associativity_witness_sampled = _impl.associativity_witness_sampled
derivation_tables = _impl.derivation_tables
principal_orbit = _impl.principal_orbit

__all__ = [
    "BACKEND",
    "associativity_witness",
    "associativity_witness_sampled",
    "derivation_tables",
    "principal_orbit",
]
