"""Pure-numpy implementations of the hot integer kernels.

Same contract as `_kernels_numba`; selected via DIRICHLET_LAB_BACKEND=numpy
or automatically when numba is unavailable.  All arithmetic stays in int64;
callers guarantee Q * den fits (see backend.MAX_SAFE_PRODUCT).
"""

import numpy as np

_CHUNK = 1 << 18


def residue_norm_scan(nums: np.ndarray, den: int, Q: int) -> np.ndarray:
    """Numerators of max-norm residues of q*x mod Z^d for q = 1..Q.

    nums holds the coordinate numerators of x over the common denominator
    den, already reduced into [0, den).  out[q - 1] = den * ||qx mod Z^d||
    where each coordinate folds into (-1/2, 1/2].
    """
    out = np.empty(Q, dtype=np.int64)
    for start in range(1, Q + 1, _CHUNK):
        stop = min(start + _CHUNK, Q + 1)
        q = np.arange(start, stop, dtype=np.int64)
        t = (q[:, None] * nums[None, :]) % den
        np.minimum(t, den - t, out=t)
        out[start - 1 : stop - 1] = t.max(axis=1)
    return out
