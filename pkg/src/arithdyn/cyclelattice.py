"""Exact rational lattice models of cycle groups and middle cohomology.

Dual bases, Gram-Schmidt orthogonalization for a (possibly indefinite)
symmetric bilinear form, and the algebraic/transcendental splitting with
its projection.  Everything here is exact rational arithmetic; no floats.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateError, InputError
from .ratlinalg import (
    det,
    inverse,
    mat,
    mat_vec,
    pair,
    parse_rational,
    rank,
    solve,
    transpose,
    vec,
    vec_add,
    vec_scale,
    vec_sub,
)
from .verdict import FAIL, PASS, Verdict


@dataclass(frozen=True)
class GradedLattice:
    """Free modules N^0..N^k with pairings N^i x N^{k-i} -> Q."""

    k: int
    ranks: tuple
    pairings: tuple  # pairings[i]: ranks[i] x ranks[k-i] rational matrix

    @classmethod
    def make(cls, k, ranks, pairings):
        if len(ranks) != k + 1 or len(pairings) != k + 1:
            raise InputError(f"need {k + 1} ranks and pairings for k={k}")
        ranks = tuple(int(r) for r in ranks)
        if any(r < 1 for r in ranks):
            raise InputError("all ranks must be >= 1")
        ms = tuple(mat(p) for p in pairings)
        for i in range(k + 1):
            j = k - i
            if ranks[i] != ranks[j]:
                raise InputError(f"ranks[{i}] != ranks[{j}]; pairing cannot "
                                 f"be nondegenerate")
            if len(ms[i]) != ranks[i] or len(ms[i][0]) != ranks[j]:
                raise InputError(f"pairing {i} has wrong shape")
            if ms[i] != transpose(ms[j]):
                raise InputError(f"pairing {i} is not the transpose of "
                                 f"pairing {j}")
            if det(ms[i]) == 0:
                raise InputError(f"pairing {i} is degenerate")
        return cls(k, ranks, ms)


@dataclass(frozen=True)
class MiddlePairing:
    """Middle-degree model: symmetric form plus a span of algebraic classes."""

    dim: int
    gram: list
    alg_span: tuple

    @classmethod
    def make(cls, dim, gram, alg_span):
        if dim % 2 != 0 or dim < 2:
            raise InputError(f"middle model needs even ambient degree, "
                             f"got {dim}")
        G = mat(gram)
        if G != transpose(G):
            raise InputError("gram matrix must be symmetric")
        if det(G) == 0:
            raise InputError("gram matrix must be nondegenerate")
        span = tuple(vec(v) for v in alg_span)
        if not span:
            raise InputError("alg_span must be nonempty")
        if any(len(v) != len(G) for v in span):
            raise InputError("alg_span vector length does not match gram")
        if rank([list(v) for v in span]) != len(span):
            raise InputError("alg_span vectors are linearly dependent")
        return cls(dim, G, span)


@dataclass(frozen=True)
class Decomposition:
    x_alg: tuple
    x_tr: tuple


def restricted_gram(gram, xs):
    """Matrix of the form on span(xs): entry (i, j) = <x_i, x_j>."""
    G = mat(gram)
    vs = [vec(x) for x in xs]
    return [[pair(u, G, w) for w in vs] for u in vs]


def nondegeneracy_check(gram) -> Verdict:
    """PASS iff the (symmetric) restricted Gram matrix has nonzero exact
    determinant."""
    G = mat(gram)
    if G != transpose(G):
        raise InputError("nondegeneracy check expects a symmetric matrix")
    d = det(G)
    status = PASS if d != 0 else FAIL
    return Verdict("nondegeneracy", status, {"det": str(d)})


def _dependent_combination(R):
    """A nonzero rational kernel vector of the singular matrix R."""
    n = len(R)
    M = [row[:] for row in R]
    perm = list(range(n))
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, n) if M[i][col] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv_p = 1 / M[r][col]
        M[r] = [v * inv_p for v in M[r]]
        for i in range(n):
            if i != r and M[i][col] != 0:
                f = M[i][col]
                M[i] = [v - f * w for v, w in zip(M[i], M[r])]
        perm[r] = col
        r += 1
    pivots = perm[:r]
    free = next(c for c in range(n) if c not in pivots)
    combo = [Fraction(0)] * n
    combo[free] = Fraction(1)
    for row_i, col in enumerate(pivots):
        combo[col] = -M[row_i][free]
    return combo


def dual_basis(gram, xs):
    """y_1..y_m in span(xs) with <x_i, y_j> = delta_ij, via the exact
    inverse of the restricted Gram matrix."""
    R = restricted_gram(gram, xs)
    if det(R) == 0:
        combo = _dependent_combination(R)
        terms = " + ".join(f"({c})*x{i + 1}" for i, c in enumerate(combo)
                           if c != 0)
        raise DegenerateError(
            f"restricted form is degenerate: {terms} pairs to zero with "
            f"the whole span")
    Rinv = inverse(R)
    vs = [vec(x) for x in xs]
    ys = []
    for i in range(len(vs)):
        y = [Fraction(0)] * len(vs[0])
        for j in range(len(vs)):
            y = vec_add(y, vec_scale(vs[j], Rinv[j][i]))
        ys.append(y)
    return ys


def dual_basis_inductive(gram, xs):
    """The same dual basis by induction on the span size: used as an
    independent oracle.  Requires every leading principal restricted Gram
    minor to be invertible (the generic situation)."""
    G = mat(gram)
    vs = [vec(x) for x in xs]
    ys: list = []
    for m, x_new in enumerate(vs):
        z = x_new
        for j in range(m):
            z = vec_sub(z, vec_scale(ys[j], pair(vs[j], G, x_new)))
        denom = pair(x_new, G, z)
        if denom == 0:
            raise DegenerateError(
                f"inductive step {m + 1} hit a vanishing leading minor")
        y_new = vec_scale(z, Fraction(1) / denom)
        ys = [vec_sub(y, vec_scale(y_new, pair(x_new, G, y)))
              for y in ys]
        ys.append(y_new)
    return ys


def orthogonalize(basis, gram):
    """Exact Gram-Schmidt without normalization.

    Pivot order is deterministic: take the first remaining vector with
    nonzero self-pairing; if all are isotropic, add the first later vector
    with nonzero cross-pairing onto the current one (characteristic zero
    makes the sum non-isotropic).  A nondegenerate symmetric form always
    yields a full orthogonal basis this way.
    """
    G = mat(gram)
    vs = [vec(v) for v in basis]
    m = len(vs)
    for i in range(m):
        piv = next((j for j in range(i, m) if pair(vs[j], G, vs[j]) != 0),
                   None)
        if piv is not None:
            vs[i], vs[piv] = vs[piv], vs[i]
        else:
            found = False
            for a in range(i, m):
                for b in range(a + 1, m):
                    if pair(vs[a], G, vs[b]) != 0:
                        vs[i], vs[a] = vs[a], vs[i]
                        vs[i] = vec_add(vs[i], vs[b])
                        found = True
                        break
                if found:
                    break
            if not found:
                raise DegenerateError(
                    "remaining vectors pair to zero: restricted form is "
                    "degenerate")
        self_p = pair(vs[i], G, vs[i])
        for j in range(i + 1, m):
            c = pair(vs[i], G, vs[j]) / self_p
            if c != 0:
                vs[j] = vec_sub(vs[j], vec_scale(vs[i], c))
    return vs


def decompose(x, mp: MiddlePairing) -> Decomposition:
    """Split x into its algebraic projection and the complement,
    x_alg = sum <x, a_i>/<a_i, a_i> a_i over an orthogonal basis a_i."""
    alphas = orthogonalize(mp.alg_span, mp.gram)
    xv = vec(x)
    x_alg = [Fraction(0)] * len(xv)
    for a in alphas:
        c = pair(xv, mp.gram, a) / pair(a, mp.gram, a)
        x_alg = vec_add(x_alg, vec_scale(a, c))
    return Decomposition(tuple(x_alg), tuple(vec_sub(xv, x_alg)))


def tau(x, mp: MiddlePairing):
    """Projection to the algebraic part; idempotent by construction."""
    return decompose(x, mp).x_alg


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def _rat_str_matrix(M):
    return [[str(v) for v in row] for row in M]


def lattice_to_json(lat: GradedLattice) -> dict:
    return {"k": lat.k, "ranks": list(lat.ranks),
            "pairings": [_rat_str_matrix(p) for p in lat.pairings]}


def lattice_from_json(data) -> GradedLattice:
    try:
        return GradedLattice.make(int(data["k"]), data["ranks"],
                                  data["pairings"])
    except (KeyError, TypeError) as e:
        raise InputError(f"malformed lattice data: {e!r}") from None


def middle_from_json(data) -> MiddlePairing:
    try:
        return MiddlePairing.make(int(data["dim"]), data["gram"],
                                  data["alg_span"])
    except (KeyError, TypeError) as e:
        raise InputError(f"malformed pairing data: {e!r}") from None


def load_middle_pairing(path) -> MiddlePairing:
    try:
        with open(path) as fh:
            return middle_from_json(json.load(fh))
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"cannot read pairing file {path}: {e}") from None


def decomposition_to_json(d: Decomposition) -> dict:
    return {"x_alg": [str(v) for v in d.x_alg],
            "x_tr": [str(v) for v in d.x_tr]}


def unique_decomposition(x, mp: MiddlePairing) -> Decomposition:
    """Independent construction of the same splitting by solving the linear
    system directly (u in span, x - u orthogonal to the span); used to
    cross-check decompose."""
    span = [list(v) for v in mp.alg_span]
    m = len(span)
    R = restricted_gram(mp.gram, span)
    rhs = [pair(vec(x), mp.gram, s) for s in span]
    coeffs = solve(R, rhs)
    u = [Fraction(0)] * len(span[0])
    for c, s in zip(coeffs, span):
        u = vec_add(u, vec_scale(s, c))
    return Decomposition(tuple(u), tuple(vec_sub(vec(x), u)))
