"""Compiled inner loop for scoring candidate pixel values.

Changing hologram pixel p by delta shifts every replay sample n by
delta * P_n (rank-1), so the candidate replay power at sample n is

    s_n = |R_n|^2 + 2*Re(delta)*Re(P_n conj(R_n)) - 2*Im(delta)*Im(P_n conj(R_n))
          + |delta|^2 / N

and the metric needs sum_n w_n * sqrt(s_n) with w the target magnitudes.
This is the only O(L*N) hot path in a search step; everything else is O(N)
or O(L).

Each candidate's accumulation below is a self-contained pass over n, so the
result for a given delta is bit-identical no matter which other candidates
share the batch. The exact-superset-dominance guarantee relies on this, and
it is why the batch is NOT evaluated as a matrix product (BLAS results vary
with operand shape).
"""

import numba
import numpy as np


@numba.njit(
    "float64[:](float64[:], float64[:], float64[:], float64[:], float64[:], float64[:], float64[:])",
    cache=True,
    fastmath=True,
)
def weighted_root_cross(a, gr, gi, w, dr2, di2, dn):
    """out[l] = sum_n w[n] * sqrt(max(a[n] + dr2[l]*gr[n] - di2[l]*gi[n] + dn[l], 0)).

    a: current replay power per sample; gr/gi: real/imag of P*conj(R);
    w: target magnitudes; dr2/di2: 2*Re(delta), 2*Im(delta) per candidate;
    dn: |delta|^2/N per candidate. The max(., 0) clamp absorbs tiny negative
    rounding residue when a candidate nearly cancels a sample.
    """
    count = dr2.shape[0]
    n = a.shape[0]
    out = np.empty(count)
    for l in range(count):
        cr = dr2[l]
        ci = di2[l]
        shift = dn[l]
        acc = 0.0
        for k in range(n):
            s = a[k] + cr * gr[k] - ci * gi[k] + shift
            if s > 0.0:
                acc += w[k] * np.sqrt(s)
        out[l] = acc
    return out
