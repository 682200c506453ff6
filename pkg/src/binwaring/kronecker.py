"""Kronecker-substitution multiplication for GF(p) coefficient lists.

Each coefficient is written into a fixed-width little-endian slot of a
big integer, the two integers are multiplied with GMP, and the product
slots are read back and reduced mod p.  The slot width is chosen so the
convolution coefficients (bounded by min(n, m) * (p-1)^2) can never
overlap, which makes the round trip exact.

For the Mersenne prime 2^61 - 1 the slot reduction is fully vectorized
with numpy (2^64 == 2^3 mod p, so each 64-bit limb folds with a shift);
other primes take a plain-Python reduction pass, which is still
softly-linear, just with a bigger constant.
"""

import gmpy2
import numpy as np

_M61 = (1 << 61) - 1
_MASK61 = np.uint64(_M61)
_S61 = np.uint64(61)


def _pack(coeffs, limbs):
    # every coefficient fits a single 64-bit limb (p < 2^62)
    arr = np.zeros((len(coeffs), limbs), dtype="<u8")
    arr[:, 0] = np.asarray(coeffs, dtype="<u8")
    return gmpy2.mpz(int.from_bytes(arr.tobytes(), "little"))


def _reduce_mersenne(limb_cols):
    acc = np.zeros_like(limb_cols[0])
    for j, col in enumerate(limb_cols):
        r = (col >> _S61) + (col & _MASK61)           # < 2^61 + 8
        r = (r >> _S61) + (r & _MASK61)               # <= 2^61
        r = np.where(r >= _MASK61, r - _MASK61, r)    # < p
        s = (64 * j) % 61
        if s:
            lo_bits = np.uint64(61 - s)
            lo_mask = np.uint64((1 << (61 - s)) - 1)
            r = (r >> lo_bits) + ((r & lo_mask) << np.uint64(s))
        acc += r                                      # <= 3 * (2^61 + 2^60)
    acc = (acc >> _S61) + (acc & _MASK61)
    acc = (acc >> _S61) + (acc & _MASK61)
    acc = np.where(acc >= _MASK61, acc - _MASK61, acc)
    return acc


def poly_mul_mod(a, b, p):
    """Exact convolution of two GF(p) coefficient lists, reduced mod p."""
    n_out = len(a) + len(b) - 1
    bound_bits = 2 * (p - 1).bit_length() + min(len(a), len(b)).bit_length()
    limbs = (bound_bits + 63) // 64
    slot_bytes = 8 * limbs
    prod = _pack(a, limbs) * _pack(b, limbs)
    buf = int(prod).to_bytes(slot_bytes * n_out, "little")
    slots = np.frombuffer(buf, dtype="<u8").reshape(n_out, limbs)
    if p == _M61:
        return _reduce_mersenne([slots[:, j] for j in range(limbs)]).tolist()
    shifts = [pow(2, 64 * j, p) for j in range(limbs)]
    cols = [slots[:, j].tolist() for j in range(limbs)]
    out = cols[0]
    for i in range(n_out):
        v = out[i]
        for j in range(1, limbs):
            v += cols[j][i] * shifts[j]
        out[i] = v % p
    return out
