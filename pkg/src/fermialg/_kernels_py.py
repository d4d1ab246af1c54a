"""Pure-Python blade product kernels.

Fallback for the compiled extension module, with the same calling
convention: coefficient tables arrive as parallel (mask, value) arrays and
the nonzero entries of the product come back in the same layout. Masks
index blades by generator bits; values are complex doubles.
"""

from __future__ import annotations

import numpy as np


def mul_parity(s: int, t: int) -> int:
    """Parity of the transpositions merging ascending monomials e_s and e_t.

    Counts pairs (a in s, b in t) with a > b; shared generators contribute
    the same count whether they contract (Clifford) or annihilate (wedge).
    """
    parity = 0
    while t:
        low = t & -t
        parity ^= (s >> low.bit_length()).bit_count() & 1
        t ^= low
    return parity


def wedge_dense(masks_a, vals_a, masks_b, vals_b, dim: int):
    acc = np.zeros(1 << dim, dtype=np.complex128)
    for ma, va in zip(masks_a.tolist(), vals_a.tolist()):
        for mb, vb in zip(masks_b.tolist(), vals_b.tolist()):
            if ma & mb:
                continue
            v = va * vb
            acc[ma | mb] += -v if mul_parity(ma, mb) else v
    nz = np.flatnonzero(acc)
    return nz.astype(np.int64), acc[nz]


def clifford_dense(masks_a, vals_a, masks_b, vals_b, dim: int):
    # Generators square to +1, so contracting a shared generator costs only
    # the transpositions that bring it next to its partner.
    acc = np.zeros(1 << dim, dtype=np.complex128)
    for ma, va in zip(masks_a.tolist(), vals_a.tolist()):
        for mb, vb in zip(masks_b.tolist(), vals_b.tolist()):
            v = va * vb
            acc[ma ^ mb] += -v if mul_parity(ma, mb) else v
    nz = np.flatnonzero(acc)
    return nz.astype(np.int64), acc[nz]
