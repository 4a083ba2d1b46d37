"""Correspondence models: monomial self-maps of P^k and graded matrix actions.

Two concrete model classes are provided.

* :class:`MonomialMap` — a self-map of P^k whose components are monomials,
  stored as a (k+1) x (k+1) exponent matrix over non-negative integers.
  Composition is the exponent-matrix product followed by removal of the
  common monomial factor, which makes degree growth under iteration an
  exact integer computation.
* :class:`GradedMatrixCorr` — a graded lattice (from :mod:`.cyclelattice`)
  together with one rational action matrix per degree, modelling pullback
  on numerical cycle groups.  Pushforward is derived from the pairing
  adjoint, so the projection formula holds by construction.

Torus convention: dehomogenize by the *last* coordinate, i.e. work with
u_l = x_l / x_k for l < k.  A monomial map then acts on the torus by
u -> u^A for an integer matrix A, and composition of maps corresponds to
the product of torus matrices.  Under this convention the standard Cremona
involution has torus matrix -I (so A^2 = I).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from . import ratlinalg as rl
from .cyclelattice import GradedLattice, lattice_from_json, lattice_to_json
from .errors import DominanceError, GuardError, InputError

MAX_ITERATES = 64


# ---------------------------------------------------------------------------
# Monomial maps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MonomialMap:
    """Monomial self-map of P^k given by its exponent matrix.

    ``exps[i]`` is the exponent vector of the i-th component; all rows sum
    to the common ``degree`` and the componentwise column minimum is zero
    (no common monomial factor).  ``dominant`` records whether the induced
    torus matrix is invertible; composition can legitimately produce
    non-dominant maps — including fully collapsed degree-0 constants — so
    this is a flag rather than a hard invariant.
    """

    k: int
    exps: tuple
    degree: int
    dominant: bool

    @staticmethod
    def make(k, exps) -> "MonomialMap":
        if not isinstance(k, int) or k < 1:
            raise InputError(f"dimension k must be a positive integer, got {k!r}")
        rows = [tuple(int(e) for e in row) for row in exps]
        if len(rows) != k + 1 or any(len(r) != k + 1 for r in rows):
            raise InputError(
                f"need (k+1)={k + 1} exponent vectors of length {k + 1}")
        if any(e < 0 for r in rows for e in r):
            raise InputError("exponents must be non-negative")
        sums = {sum(r) for r in rows}
        if len(sums) != 1:
            raise InputError(f"exponent rows have unequal degrees {sorted(sums)}")
        d = sums.pop()
        colmins = [min(r[j] for r in rows) for j in range(k + 1)]
        if any(c != 0 for c in colmins):
            raise InputError(
                "exponent matrix carries a common monomial factor "
                f"(column minima {colmins}); supply the reduced map")
        f = MonomialMap(k, tuple(rows), d, False)
        A = torus_matrix(f)
        dominant = rl.det(A) != 0
        return MonomialMap(k, tuple(rows), d, dominant)


@dataclass(frozen=True)
class DegreeSequence:
    """Exact degrees deg(f^n) for n = 1..n_max."""

    degs: tuple

    @staticmethod
    def make(degs) -> "DegreeSequence":
        ds = tuple(int(d) for d in degs)
        if any(d < 1 for d in ds):
            raise InputError("degrees must be positive integers")
        return DegreeSequence(ds)


def identity_map(k) -> MonomialMap:
    rows = [[int(i == j) for j in range(k + 1)] for i in range(k + 1)]
    return MonomialMap.make(k, rows)


def cremona_map() -> MonomialMap:
    """The standard plane Cremona involution [x1 x2 : x2 x0 : x0 x1]."""
    return MonomialMap.make(2, [[0, 1, 1], [1, 0, 1], [1, 1, 0]])


def _reduce_rows(rows, k):
    colmins = [min(r[j] for r in rows) for j in range(k + 1)]
    return [tuple(r[j] - colmins[j] for j in range(k + 1)) for r in rows]


def compose_monomial(f: MonomialMap, g: MonomialMap) -> MonomialMap:
    """f after g: substitute g's monomials into f, then drop the common factor.

    Exponent matrices multiply (E_{f.g} = E_f E_g); reduction subtracts the
    columnwise minimum, which shrinks the degree when the raw composition
    has a common monomial factor.  The result may be non-dominant even
    though it is a well-formed map; callers iterating should check the
    ``dominant`` flag.
    """
    if f.k != g.k:
        raise InputError(f"dimension mismatch: {f.k} vs {g.k}")
    k = f.k
    raw = [tuple(sum(f.exps[i][m] * g.exps[m][l] for m in range(k + 1))
                 for l in range(k + 1))
           for i in range(k + 1)]
    return MonomialMap.make(k, _reduce_rows(raw, k))


def iterate_degrees(f: MonomialMap, n_max) -> DegreeSequence:
    """Degrees of the reduced iterates f, f^2, ..., f^{n_max}."""
    if not isinstance(n_max, int) or n_max < 1:
        raise InputError(f"n_max must be a positive integer, got {n_max!r}")
    if n_max > MAX_ITERATES:
        raise GuardError(f"n_max={n_max} exceeds the iteration guard "
                         f"{MAX_ITERATES}")
    degs = []
    cur = f
    for n in range(1, n_max + 1):
        if n > 1:
            cur = compose_monomial(f, cur)
        if not cur.dominant:
            raise DominanceError(
                f"iterate {n} is not dominant (torus matrix singular)", step=n)
        degs.append(cur.degree)
    return DegreeSequence.make(degs)


def torus_matrix(f: MonomialMap):
    """k x k integer matrix A with f acting on the torus by u -> u^A.

    Dehomogenization is by the last coordinate (u_l = x_l / x_k); by
    homogeneity the x_k exponents cancel and A[i][l] = exps[i][l] -
    exps[k][l].  Composition of maps corresponds to the product of torus
    matrices, and reduction does not change A.
    """
    k = f.k
    return [[f.exps[i][l] - f.exps[k][l] for l in range(k)] for i in range(k)]


def monomial_from_torus(A) -> MonomialMap:
    """Lift a k x k integer matrix to a monomial self-map of P^k.

    Each column is shifted by the smallest amount that clears negative
    entries, and the last column absorbs the homogenizing degree.  The
    lift satisfies torus_matrix(lift(A)) == A.
    """
    k = len(A)
    rows_a = [[int(x) for x in row] for row in A]
    if any(len(r) != k for r in rows_a):
        raise InputError("torus matrix must be square")
    shifts = [max(0, -min(rows_a[i][j] for i in range(k))) for j in range(k)]
    body = [[rows_a[i][j] + shifts[j] for j in range(k)] for i in range(k)]
    body.append(list(shifts))
    d = max(sum(r) for r in body)
    rows = [tuple(r) + (d - sum(r),) for r in body]
    return MonomialMap.make(k, _reduce_rows(rows, k))


# ---------------------------------------------------------------------------
# Graded matrix correspondences
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GradedMatrixCorr:
    """Rational action matrices on each degree of a graded lattice.

    ``actions[i]`` models pullback on the degree-i group.  ``functorial``
    records whether iterates are modeled as matrix powers; non-functorial
    models must supply per-iterate data to the estimators instead.
    ``adjoint_consistent`` asserts that every pairing is invertible so the
    pushforward adjoint is well defined (guaranteed for lattices built by
    :func:`arithdyn.cyclelattice.GradedLattice.make`).
    """

    lattice: GradedLattice
    actions: tuple
    functorial: bool
    adjoint_consistent: bool

    @staticmethod
    def make(lattice: GradedLattice, actions, functorial) -> "GradedMatrixCorr":
        k = lattice.k
        acts = [rl.mat(a) for a in actions]
        if len(acts) != k + 1:
            raise InputError(f"need {k + 1} action matrices, got {len(acts)}")
        for i, a in enumerate(acts):
            r = lattice.ranks[i]
            if len(a) != r or any(len(row) != r for row in a):
                raise InputError(
                    f"action {i} must be {r}x{r} to match the lattice rank")
        if lattice.ranks[0] != 1 or lattice.ranks[k] != 1:
            raise InputError("degree 0 and top-degree groups must have rank 1")
        frozen = tuple(tuple(tuple(row) for row in a) for a in acts)
        return GradedMatrixCorr(lattice, frozen, bool(functorial), True)


def pullback_class(c: GradedMatrixCorr, i, v):
    """Apply the degree-i pullback action to a class vector."""
    _check_degree(c, i)
    w = rl.vec(v)
    if len(w) != c.lattice.ranks[i]:
        raise InputError(f"vector length {len(w)} does not match rank "
                         f"{c.lattice.ranks[i]} in degree {i}")
    return rl.mat_vec(rl.mat(c.actions[i]), w)


def pushforward_class(c: GradedMatrixCorr, i, v):
    """Pairing adjoint of pullback: <f^* a, b> = <a, f_* b> exactly.

    For b in degree i the adjoint is taken against degree k-i, giving
    f_* = P^{-1} M^T P with M the degree-(k-i) action and P the
    degree-(k-i) pairing matrix.
    """
    _check_degree(c, i)
    if not c.adjoint_consistent:
        raise InputError("pushforward undefined: model is not adjoint-consistent")
    w = rl.vec(v)
    if len(w) != c.lattice.ranks[i]:
        raise InputError(f"vector length {len(w)} does not match rank "
                         f"{c.lattice.ranks[i]} in degree {i}")
    k = c.lattice.k
    P = rl.mat(c.lattice.pairings[k - i])
    M = rl.mat(c.actions[k - i])
    return rl.mat_vec(rl.mat_mul(rl.inverse(P), rl.transpose(M)),
                      rl.mat_vec(P, w))


def _check_degree(c: GradedMatrixCorr, i):
    if not isinstance(i, int) or not 0 <= i <= c.lattice.k:
        raise InputError(f"degree {i!r} out of range 0..{c.lattice.k}")


def frobenius_model(q, k) -> GradedMatrixCorr:
    """Rank-one-per-degree model with action q^i on degree i; functorial."""
    if not isinstance(q, int) or q < 2:
        raise InputError(f"q must be an integer >= 2, got {q!r}")
    if not isinstance(k, int) or k < 1:
        raise InputError(f"k must be a positive integer, got {k!r}")
    lattice = GradedLattice.make(k, [1] * (k + 1), [[[1]]] * (k + 1))
    actions = [[[q ** i]] for i in range(k + 1)]
    return GradedMatrixCorr.make(lattice, actions, functorial=True)


def identity_model(k) -> GradedMatrixCorr:
    """Identity correspondence on the rank-one-per-degree lattice."""
    lattice = GradedLattice.make(k, [1] * (k + 1), [[[1]]] * (k + 1))
    return GradedMatrixCorr.make(lattice, [[[1]]] * (k + 1), functorial=True)


def _block_diag(blocks):
    n = sum(len(b) for b in blocks)
    m = sum(len(b[0]) for b in blocks)
    out = [[Fraction(0)] * m for _ in range(n)]
    r = c = 0
    for b in blocks:
        for i, row in enumerate(b):
            out[r + i][c:c + len(row)] = row
        r += len(b)
        c += len(b[0])
    return out


def _kunneth_summands(kg, kh, p):
    """Pairs (i, j) with i + j = p, 0 <= i <= kg, 0 <= j <= kh, ascending i."""
    lo = max(0, p - kh)
    hi = min(kg, p)
    return [(i, p - i) for i in range(lo, hi + 1)]


def product_model(g: GradedMatrixCorr, h: GradedMatrixCorr) -> GradedMatrixCorr:
    """Product correspondence on the product lattice.

    Degree-p groups decompose as the direct sum over i + j = p of tensor
    products of the factor groups; actions act blockwise as tensor
    (Kronecker) products, and the pairing pairs each (i, j) block with the
    complementary (kg-i, kh-j) block via the product of factor pairings.
    """
    if not (g.functorial and h.functorial):
        raise InputError("product model requires functorial factors")
    kg, kh = g.lattice.k, h.lattice.k
    k = kg + kh
    ranks = []
    actions = []
    pairings = []
    for p in range(k + 1):
        summands = _kunneth_summands(kg, kh, p)
        ranks.append(sum(g.lattice.ranks[i] * h.lattice.ranks[j]
                         for i, j in summands))
        actions.append(_block_diag(
            [rl.kron(rl.mat(g.actions[i]), rl.mat(h.actions[j]))
             for i, j in summands]))
        cosummands = _kunneth_summands(kg, kh, k - p)
        rows = sum(g.lattice.ranks[i] * h.lattice.ranks[j]
                   for i, j in summands)
        cols = sum(g.lattice.ranks[i] * h.lattice.ranks[j]
                   for i, j in cosummands)
        P = [[Fraction(0)] * cols for _ in range(rows)]
        r0 = 0
        for i, j in summands:
            c0 = 0
            for i2, j2 in cosummands:
                blk_rows = g.lattice.ranks[i] * h.lattice.ranks[j]
                blk_cols = g.lattice.ranks[i2] * h.lattice.ranks[j2]
                if i2 == kg - i and j2 == kh - j:
                    blk = rl.kron(rl.mat(g.lattice.pairings[i]),
                                  rl.mat(h.lattice.pairings[j]))
                    for a in range(blk_rows):
                        P[r0 + a][c0:c0 + blk_cols] = blk[a]
                c0 += blk_cols
            r0 += blk_rows
        pairings.append(P)
    lattice = GradedLattice.make(k, ranks, pairings)
    return GradedMatrixCorr.make(lattice, actions, functorial=True)


def bundled_functorial_models():
    """Named functorial models used by the property and acceptance suites."""
    models = []
    for q in (2, 3, 5):
        for k in (1, 2, 3):
            models.append((f"frobenius_q{q}_k{k}", frobenius_model(q, k)))
    models.append(("identity_k2", identity_model(2)))
    models.append(("product_frob2x3",
                   product_model(frobenius_model(2, 1), frobenius_model(3, 1))))
    models.append(("product_frob5x5",
                   product_model(frobenius_model(5, 1), frobenius_model(5, 2))))
    return models


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def monomial_to_json(f: MonomialMap) -> dict:
    return {"k": f.k, "monomials": [list(r) for r in f.exps]}


def monomial_from_json(data) -> MonomialMap:
    try:
        return MonomialMap.make(data["k"], data["monomials"])
    except (KeyError, TypeError) as e:
        raise InputError(f"malformed monomial map data: {e!r}") from None


def load_monomial(path) -> MonomialMap:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"cannot read monomial file {path}: {e}") from None
    return monomial_from_json(data)


def model_to_json(c: GradedMatrixCorr) -> dict:
    data = lattice_to_json(c.lattice)
    data["actions"] = [[[str(Fraction(x)) for x in row] for row in a]
                       for a in c.actions]
    data["functorial"] = c.functorial
    return data


def model_from_json(data) -> GradedMatrixCorr:
    try:
        lattice = lattice_from_json(data)
        return GradedMatrixCorr.make(lattice, data["actions"],
                                     data["functorial"])
    except (KeyError, TypeError) as e:
        raise InputError(f"malformed model data: {e!r}") from None


def load_model(path) -> GradedMatrixCorr:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"cannot read model file {path}: {e}") from None
    return model_from_json(data)
