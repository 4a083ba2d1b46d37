"""Pure-numpy fallback for the counting kernels.

Vectorizes over the candidate chunk instead of compiling the per-point
loop; must produce exactly the same counts as _kernels_numba.
"""

from __future__ import annotations

import numpy as np

NAME = "numpy"


def _zadd(a, b, zech, qm1):
    """Elementwise log of g^a + g^b with -1 as the zero sentinel."""
    res = np.where(a == -1, b, a).astype(np.int64)
    both = (a != -1) & (b != -1)
    if both.any():
        av, bv = a[both], b[both]
        z = zech[(bv - av) % qm1]
        res[both] = np.where(z == -1, -1, (av + z) % qm1)
    return res


def _eval_poly(L, logc, exps, zech, qm1):
    """Vanishing mask is acc == -1; L is (m, nv) coordinate logs."""
    m = L.shape[0]
    acc = np.full(m, -1, dtype=np.int64)
    for t in range(logc.shape[0]):
        tl = np.full(m, logc[t], dtype=np.int64)
        dead = np.zeros(m, dtype=bool)
        for j in range(exps.shape[1]):
            e = exps[t, j]
            if e == 0:
                continue
            Lj = L[:, j]
            dead |= Lj == -1
            tl += e * Lj
        tv = tl % qm1
        tv[dead] = -1
        acc = _zadd(acc, tv, zech, qm1)
    return acc


def count_block(start, stop, q, nv, lead, poly_off, logc, exps, zech, qm1):
    m = stop - start
    L = np.empty((m, nv), dtype=np.int64)
    first_free = 0 if lead == -1 else lead + 1
    if lead >= 0:
        L[:, :lead] = -1
        L[:, lead] = 0
    idx = np.arange(start, stop, dtype=np.int64)
    for j in range(first_free, nv):
        L[:, j] = idx % q - 1
        idx = idx // q
    alive = np.ones(m, dtype=bool)
    for s in range(poly_off.shape[0] - 1):
        sl = slice(poly_off[s], poly_off[s + 1])
        acc = _eval_poly(L[alive], logc[sl], exps[sl], zech, qm1)
        alive[alive] = acc == -1
        if not alive.any():
            break
    return int(alive.sum())


def hyper_block(start, stop, logf, zech, qm1):
    d = np.arange(start, stop, dtype=np.int64)
    lx = d - 1
    acc = np.full(d.shape[0], -1, dtype=np.int64)
    for i in range(logf.shape[0]):
        lc = logf[i]
        if lc == -1:
            continue
        if i == 0:
            tv = np.full(d.shape[0], lc, dtype=np.int64)
        else:
            tv = np.where(lx == -1, -1, (lc + i * lx) % qm1)
        acc = _zadd(acc, tv, zech, qm1)
    per_x = np.where(acc == -1, 1, np.where(acc % 2 == 0, 2, 0))
    return int(per_x.sum())
