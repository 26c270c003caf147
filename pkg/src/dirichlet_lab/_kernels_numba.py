"""Numba-jitted implementations of the hot integer kernels.

The scan over denominators q = 1..Q dominates every brute-force oracle run;
this version avoids the temporary Q x d arrays of the numpy path and fuses
the fold/max reduction into one pass.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def residue_norm_scan(nums: np.ndarray, den: int, Q: int) -> np.ndarray:
    """Numerators of max-norm residues of q*x mod Z^d for q = 1..Q.

    Contract identical to `_kernels_numpy.residue_norm_scan`.
    """
    d = nums.shape[0]
    out = np.empty(Q, dtype=np.int64)
    for q in range(1, Q + 1):
        best = np.int64(0)
        for i in range(d):
            t = (q * nums[i]) % den
            u = den - t
            if u < t:
                t = u
            if t > best:
                best = t
        out[q - 1] = best
    return out
