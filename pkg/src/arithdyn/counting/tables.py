"""Zech-logarithm tables for F_{p^n}.

Nonzero elements are written as powers of a fixed generator g, so the hot
loops work with integer exponents only: multiplication is addition mod q-1,
and addition goes through the Zech table zech[d] = log_g(1 + g^d).  The
exponent -1 is the sentinel for the zero element throughout.

Table construction is vectorized: powers of g are produced column-block by
column-block with matrix powers of the multiplication-by-g matrix over F_p,
then packed into base-p codes to index discrete logs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ..errors import GuardError
from .. import ffield as ff

NEG = -1  # exponent sentinel for the zero field element
MAX_TABLE_SIZE = 1 << 24
_BLOCK_COLS = 1 << 20


@dataclass(frozen=True, eq=False)
class ZechTable:
    p: int
    n: int
    q: int
    modulus: tuple[int, ...]
    gen_code: int  # packed base-p code of the generator
    zech: np.ndarray  # int32[q-1], zech[d] = log(1 + g^d), NEG if 1 + g^d = 0
    dlog: np.ndarray = field(repr=False)  # int32[q], code -> exponent, NEG at 0

    def unit_log(self, c: int) -> int:
        """Discrete log of a prime-subfield constant c (c != 0 mod p)."""
        return int(self.dlog[c % self.p])


def _mul_matrix(elem: ff.FieldElem) -> np.ndarray:
    """n x n matrix over F_p of multiplication by elem in the power basis."""
    F = elem.field
    cols = []
    x_i = ff.one(F)
    x = ff.from_coeffs(F, [0, 1]) if F.n > 1 else ff.one(F)
    for _ in range(F.n):
        cols.append((elem * x_i).coeffs)
        x_i = x_i * x
    return np.array(cols, dtype=np.int64).T


@lru_cache(maxsize=6)
def build_table(p: int, n: int) -> ZechTable:
    q = p ** n
    if q > MAX_TABLE_SIZE:
        raise GuardError(
            f"field size p^n = {q} exceeds the Zech-table guard 2^24")
    F = ff.build_extension(p, n)
    g = ff.multiplicative_generator(F)
    qm1 = q - 1

    # powers[:, e] = coefficient vector of g^e, built by block doubling
    Mg = _mul_matrix(g) % p
    powers = np.zeros((n, max(qm1, 1)), dtype=np.uint8)
    powers[0, 0] = 1  # g^0 = 1
    filled = 1
    Mcur = Mg.copy()  # invariant: Mcur = Mg^filled
    while filled < qm1:
        take = min(filled, qm1 - filled, _BLOCK_COLS)
        block = Mcur @ powers[:, :take].astype(np.int64)
        powers[:, filled:filled + take] = (block % p).astype(np.uint8)
        filled += take
        if filled < qm1:
            Mtake = np.eye(n, dtype=np.int64)
            e, sq = take, Mg.copy()
            while e:
                if e & 1:
                    Mtake = Mtake @ sq % p
                sq = sq @ sq % p
                e >>= 1
            Mcur = Mcur @ Mtake % p

    codes = np.zeros(qm1, dtype=np.int32)
    scale = 1
    for i in range(n):
        codes += powers[i].astype(np.int32) * scale
        scale *= p

    dlog = np.full(q, NEG, dtype=np.int32)
    dlog[codes] = np.arange(qm1, dtype=np.int32)

    # code of g^e + 1: bump the constant coefficient mod p
    c0 = codes % p
    plus1 = codes - c0 + (c0 + 1) % p
    zech = dlog[plus1]

    gen_code = int(codes[1]) if qm1 > 1 else 1
    return ZechTable(p, n, q, F.modulus, gen_code, zech, dlog)


def clear_table_cache():
    build_table.cache_clear()
