"""Hot counting loops, compiled with numba.

Mirrors _kernels_numpy exactly; both operate on Zech-log data and must
produce identical integer counts for any chunking.
"""

from __future__ import annotations

import numpy as np
from numba import njit

NAME = "numba"


@njit(cache=True)
def _on_variety(L, poly_off, logc, exps, zech, qm1):
    """True when every polynomial of the system vanishes at the point whose
    coordinate logs are L (-1 encodes the zero element)."""
    nv = L.shape[0]
    for s in range(poly_off.shape[0] - 1):
        acc = np.int64(-1)
        for t in range(poly_off[s], poly_off[s + 1]):
            tl = logc[t]
            dead = False
            for j in range(nv):
                e = exps[t, j]
                if e != 0:
                    lj = L[j]
                    if lj == -1:
                        dead = True
                        break
                    tl += e * lj
            if dead:
                continue
            tv = tl % qm1
            if acc == -1:
                acc = tv
            else:
                d = (tv - acc) % qm1
                z = zech[d]
                acc = np.int64(-1) if z == -1 else (acc + z) % qm1
        if acc != -1:
            return False
    return True


@njit(cache=True)
def count_block(start, stop, q, nv, lead, poly_off, logc, exps, zech, qm1):
    """Count variety points among candidates [start, stop) of one block.

    lead == -1: affine block, all nv coordinates are base-q digits of the
    candidate index (digit d encodes log d-1, i.e. 0 -> zero element).
    lead >= 0: projective block with coordinates 0..lead-1 zero, coordinate
    lead fixed to one, and the remaining nv-lead-1 coordinates digits.
    """
    cnt = 0
    L = np.empty(nv, dtype=np.int64)
    first_free = 0 if lead == -1 else lead + 1
    if lead >= 0:
        for j in range(lead):
            L[j] = -1
        L[lead] = 0  # log of the element 1
    for idx in range(start, stop):
        t = idx
        for j in range(first_free, nv):
            L[j] = t % q - 1
            t //= q
        if _on_variety(L, poly_off, logc, exps, zech, qm1):
            cnt += 1
    return cnt


@njit(cache=True)
def hyper_block(start, stop, logf, zech, qm1):
    """Points (x, y) with y^2 = f(x), x ranging over digits [start, stop).

    Digit d encodes x = 0 (d = 0) or x = g^{d-1}.  logf[i] is the discrete
    log of the coefficient of x^i, -1 for absent terms.  Uses that g^e is a
    square in F_q (q odd) exactly when e is even.
    """
    total = 0
    deg1 = logf.shape[0]
    for d in range(start, stop):
        lx = d - 1
        acc = np.int64(-1)
        for i in range(deg1):
            lc = logf[i]
            if lc == -1:
                continue
            if i > 0 and lx == -1:
                continue
            tv = lc if i == 0 else (lc + i * lx) % qm1
            if acc == -1:
                acc = tv
            else:
                dd = (tv - acc) % qm1
                z = zech[dd]
                acc = np.int64(-1) if z == -1 else (acc + z) % qm1
        if acc == -1:
            total += 1
        elif acc % 2 == 0:
            total += 2
    return total
