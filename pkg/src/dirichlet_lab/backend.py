"""Kernel backend selection.

The hot scans have a numba-jitted implementation and a pure-numpy fallback
with an identical contract.  Selection happens once, at first use, from the
environment variable DIRICHLET_LAB_BACKEND:

    auto   (default) numba if importable, else numpy
    numba  require the jitted kernels
    numpy  force the pure-numpy path

Kernel results are exact int64 arithmetic either way; the guard below tells
callers when inputs are too large for int64 and must take the big-integer
path instead.
"""

from __future__ import annotations

import os
from typing import Callable

import numpy as np

from .errors import DomainError

# q * num stays below this for every q <= Q and num < den, with headroom.
MAX_SAFE_PRODUCT = 1 << 62

_ENV_VAR = "DIRICHLET_LAB_BACKEND"

_backend_name: str | None = None
_residue_norm_scan: Callable[[np.ndarray, int, int], np.ndarray] | None = None


def _resolve() -> None:
    global _backend_name, _residue_norm_scan
    choice = os.environ.get(_ENV_VAR, "auto").lower()
    if choice not in ("auto", "numba", "numpy"):
        raise DomainError(f"{_ENV_VAR} must be auto, numba, or numpy; got {choice!r}")
    if choice in ("auto", "numba"):
        try:
            from . import _kernels_numba as mod

            _backend_name, _residue_norm_scan = "numba", mod.residue_norm_scan
            return
        except ImportError:
            if choice == "numba":
                raise
    from . import _kernels_numpy as mod

    _backend_name, _residue_norm_scan = "numpy", mod.residue_norm_scan


def backend_name() -> str:
    if _backend_name is None:
        _resolve()
    return _backend_name  # type: ignore[return-value]


def reset_backend() -> None:
    """Drop the cached choice so the env var is re-read (used by tests)."""
    global _backend_name, _residue_norm_scan
    _backend_name = None
    _residue_norm_scan = None


def int64_scan_ok(den: int, Q: int) -> bool:
    return den * Q < MAX_SAFE_PRODUCT


def residue_norm_scan(nums: np.ndarray, den: int, Q: int) -> np.ndarray:
    if _residue_norm_scan is None:
        _resolve()
    return _residue_norm_scan(nums, den, Q)  # type: ignore[misc]
