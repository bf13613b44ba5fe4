"""Bigraded Hochschild and Harrison cohomology by exact linear algebra.

Every cochain space C^{n,k} is coordinatised by its elementary maps
``word -> target basis element`` (Hochschild coordinates).  A Harrison basis
is a list of vectors in those coordinates, so the same differential matrix
serves both theories.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from . import linalg
from .cochains import Cochain, GradedAlgebra, GradedBimodule, coboundary_shifted, is_harrison
from .tensor import letter_parities, shuffle_subspace_basis, words

HOCHSCHILD = "hochschild"
HARRISON = "harrison"
THEORIES = (HOCHSCHILD, HARRISON)


class NotACocycleError(ValueError):
    """solve_coboundary was handed a cochain with nonzero coboundary."""


def _theory(theory: str) -> str:
    t = theory.lower()
    if t not in THEORIES:
        raise ValueError(f"unknown theory {theory!r}; expected one of {THEORIES}")
    return t


def _module(A: GradedAlgebra, M: GradedBimodule | None) -> GradedBimodule:
    return _own_bimodule(A) if M is None else M


@lru_cache(maxsize=None)
def _own_bimodule(A):
    return A.as_bimodule()


@dataclass(frozen=True)
class _Coordinates:
    """Elementary-map coordinates of C^{n,k}(A, M)."""

    pairs: tuple  # ((word, target), ...)
    index: dict

    def __len__(self):
        return len(self.pairs)


@lru_cache(maxsize=None)
def _coordinates(A: GradedAlgebra, M: GradedBimodule, n: int, k: int) -> _Coordinates:
    src, tgt = A.space, M.space
    pairs = []
    for w in words(src, n):
        q = sum(src.degrees[i] for i in w) + k
        for t in tgt.of_degree(q):
            pairs.append((w, t))
    pairs = tuple(pairs)
    return _Coordinates(pairs, {p: i for i, p in enumerate(pairs)})


def _to_coords(coords: _Coordinates, f: Cochain) -> dict:
    out = {}
    for w, vec in f.values.items():
        for t, c in vec.items():
            out[coords.index[(w, t)]] = c
    return out


def _from_coords(A, M, coords: _Coordinates, n: int, k: int, x: dict) -> Cochain:
    vals: dict = {}
    for i, c in x.items():
        w, t = coords.pairs[i]
        vals.setdefault(w, {})[t] = c
    return Cochain(A.space, M.space, n, k, vals)


@lru_cache(maxsize=None)
def _harrison_vectors(A: GradedAlgebra, M: GradedBimodule, n: int, k: int) -> tuple:
    """Harrison basis of C^{n,k} as coordinate vectors (honest, unshifted values)."""
    coords = _coordinates(A, M, n, k)
    if n <= 1:
        return tuple({i: 1} for i in range(len(coords)))
    src = A.space
    par = letter_parities(src)
    field = A.field
    out = []
    for t in range(M.space.dim):
        q = M.space.degrees[t] - k - n  # shifted word degree
        basis_words = words(src, n, q)
        if not basis_words:
            continue
        sh = shuffle_subspace_basis(src, n, q)
        for vec in linalg.nullspace(sh, len(basis_words), field):
            x = {}
            for i, c in sorted(vec.items()):
                w = basis_words[i]
                # shifted value c on w -> honest value
                e = 0
                for j, a in enumerate(w):
                    if par[a] and (n - 1 - j) & 1:
                        e ^= 1
                x[coords.index[(w, t)]] = field.reduce(-c if e else c)
            out.append(x)
    return tuple(out)


def _combine(basis, x: dict, field) -> dict:
    """sum_j x_j basis[j] in Hochschild coordinates."""
    acc: dict = {}
    for j, a in x.items():
        for i, v in basis[j].items():
            acc[i] = acc.get(i, 0) + a * v
    return {i: r for i, v in acc.items() if (r := field.reduce(v))}


def _basis_vectors(A, M, n, k, theory):
    if theory == HOCHSCHILD:
        return tuple({i: 1} for i in range(len(_coordinates(A, M, n, k))))
    return _harrison_vectors(A, M, n, k)


def cochain_basis(A: GradedAlgebra, M: GradedBimodule | None, n: int, k: int, theory: str = HOCHSCHILD) -> list[Cochain]:
    """Ordered basis of C^{n,k}(A, M) (Hochschild) or of its Harrison subspace."""
    if n < 0:
        raise ValueError("arity must be non-negative")
    theory = _theory(theory)
    M = _module(A, M)
    coords = _coordinates(A, M, n, k)
    return [_from_coords(A, M, coords, n, k, x) for x in _basis_vectors(A, M, n, k, theory)]


def cochain_dim(A, M, n, k, theory=HOCHSCHILD) -> int:
    M = _module(A, M)
    return len(_basis_vectors(A, M, n, k, _theory(theory)))


def _delta_column(A, M, coords_out, n, k, x: dict, coords_in) -> dict:
    """delta applied to the cochain with coordinates x, in output coordinates."""
    src = A.space
    par = letter_parities(src)
    vals: dict = {}
    for i, c in x.items():
        w, t = coords_in.pairs[i]
        e = 0
        for j, a in enumerate(w):
            if par[a] and (n - 1 - j) & 1:
                e ^= 1
        vals.setdefault(w, {})[t] = -c if e else c
    out = coboundary_shifted(A, M, vals, n + k - 1)
    col = {}
    for w, vec in out.items():
        e = 0
        for j, a in enumerate(w):
            if par[a] and (n - j) & 1:
                e ^= 1
        for t, c in vec.items():
            col[coords_out.index[(w, t)]] = -c if e else c
    return col


@lru_cache(maxsize=None)
def delta_columns(A: GradedAlgebra, M: GradedBimodule, n: int, k: int, theory: str) -> tuple:
    """Sparse columns of delta: C^{n,k} -> C^{n+1,k}, one per basis vector of the domain.

    Rows are Hochschild coordinates of C^{n+1,k}.
    """
    cin = _coordinates(A, M, n, k)
    cout = _coordinates(A, M, n + 1, k)
    return tuple(_delta_column(A, M, cout, n, k, x, cin) for x in _basis_vectors(A, M, n, k, theory))


@dataclass
class BidegreeMatrixPair:
    """The two differentials around C^{n,k}, as sparse column lists.

    Columns are indexed by the domain basis; rows by Hochschild coordinates.
    """

    n: int
    k: int
    theory: str
    incoming: tuple  # delta: C^{n-1,k} -> C^{n,k}
    outgoing: tuple  # delta: C^{n,k} -> C^{n+1,k}
    domain_basis: tuple  # basis of C^{n,k} as Hochschild coordinate vectors
    algebra: GradedAlgebra
    module: GradedBimodule

    def composite_vanishes(self) -> bool:
        """delta applied to every incoming column is exactly zero."""
        A, M = self.algebra, self.module
        cin = _coordinates(A, M, self.n, self.k)
        cout = _coordinates(A, M, self.n + 1, self.k)
        return all(not _delta_column(A, M, cout, self.n, self.k, col, cin) for col in self.incoming)

    def rank_nullity_holds(self) -> bool:
        field = self.algebra.field
        ncols = len(_coordinates(self.algebra, self.module, self.n + 1, self.k))
        r = linalg.rank(list(self.outgoing), field, ncols)
        kernel = linalg.nullspace(linalg.transpose(self.outgoing) if self.outgoing else [], len(self.outgoing), field)
        return r + len(kernel) == len(self.domain_basis)


def matrix_pair(A, M, n, k, theory=HOCHSCHILD) -> BidegreeMatrixPair:
    theory = _theory(theory)
    M = _module(A, M)
    incoming = delta_columns(A, M, n - 1, k, theory) if n >= 1 else ()
    outgoing = delta_columns(A, M, n, k, theory)
    return BidegreeMatrixPair(n, k, theory, incoming, outgoing, _basis_vectors(A, M, n, k, theory), A, M)


@dataclass(frozen=True)
class CohomologyData:
    n: int
    k: int
    theory: str
    cochains: int
    rank_in: int
    rank_out: int

    @property
    def dim(self) -> int:
        return self.cochains - self.rank_in - self.rank_out

    @property
    def cocycles(self) -> int:
        return self.cochains - self.rank_out


def _permuted(columns, nrows, rng):
    perm = list(range(nrows))
    rng.shuffle(perm)
    cols = [{perm[i]: v for i, v in c.items()} for c in columns]
    rng.shuffle(cols)
    return cols


def cohomology_data(A, M, n: int, k: int, theory=HOCHSCHILD, permutation_seed=None) -> CohomologyData:
    """Ranks around C^{n,k}; ``permutation_seed`` reorders both bases before eliminating."""
    theory = _theory(theory)
    M = _module(A, M)
    field = A.field
    dim = len(_basis_vectors(A, M, n, k, theory))
    outgoing = delta_columns(A, M, n, k, theory)
    incoming = delta_columns(A, M, n - 1, k, theory) if n >= 1 else ()
    if permutation_seed is not None:
        rng = random.Random(permutation_seed)
        outgoing = _permuted(outgoing, len(_coordinates(A, M, n + 1, k)), rng)
        incoming = _permuted(incoming, len(_coordinates(A, M, n, k)), rng)
    # rank(M) = rank(M^T): feed columns as rows
    r_out = linalg.rank(list(outgoing), field, len(_coordinates(A, M, n + 1, k)))
    r_in = linalg.rank(list(incoming), field, len(_coordinates(A, M, n, k)))
    return CohomologyData(n, k, theory, dim, r_in, r_out)


def cohomology_dim(A, M, n: int, k: int, theory=HOCHSCHILD, permutation_seed=None) -> int:
    """dim Hoch^{n,k}(A, M) or Harr^{n,k}(A, M)."""
    return cohomology_data(A, M, n, k, theory, permutation_seed).dim


def degree_range(A: GradedAlgebra, M: GradedBimodule | None, n: int) -> range:
    """Internal degrees k for which C^{n,k}(A, M) can be nonzero."""
    M = _module(A, M)
    lo, hi = A.space.window()
    mlo, mhi = M.space.window()
    return range(mlo - n * hi, mhi - n * lo + 1)


@dataclass
class CohomologyClass:
    """A cocycle standing for its class in Hoch^{n,k} or Harr^{n,k}."""

    representative: Cochain
    theory: str
    algebra: GradedAlgebra

    def __post_init__(self):
        from .cochains import coboundary

        if not coboundary(self.algebra, self.representative).is_zero():
            raise NotACocycleError("class representative is not a cocycle")

    @property
    def bidegree(self) -> tuple[int, int]:
        return self.representative.bidegree

    def is_zero(self) -> bool:
        return is_coboundary(self.algebra, None, self.representative, self.theory)


def solve_coboundary(A: GradedAlgebra, M: GradedBimodule | None, c: Cochain, theory=HOCHSCHILD) -> Cochain | None:
    """A cochain p with delta p = c (Harrison if requested), or None.

    The particular solution has all free variables zero in the chosen basis.
    Raises :class:`NotACocycleError` when delta c != 0.
    """
    from .cochains import coboundary

    theory = _theory(theory)
    M = _module(A, M)
    if not coboundary(A, c, M).is_zero():
        raise NotACocycleError(f"cochain of bidegree {c.bidegree} is not a cocycle")
    if theory == HARRISON and not is_harrison(c):
        raise ValueError("Harrison solve needs a Harrison cochain")
    n, k = c.bidegree
    if n == 0:
        return None
    field = A.field
    cols = delta_columns(A, M, n - 1, k, theory)
    coords_c = _coordinates(A, M, n, k)
    rhs = _to_coords(coords_c, c)
    x = linalg.solve(linalg.transpose(cols) if cols else [], rhs, len(cols), field)
    if x is None:
        return None
    acc = _combine(_basis_vectors(A, M, n - 1, k, theory), x, field)
    return _from_coords(A, M, _coordinates(A, M, n - 1, k), n - 1, k, acc)


def is_coboundary(A, M, c: Cochain, theory=HOCHSCHILD) -> bool:
    if c.is_zero():
        return True
    return solve_coboundary(A, M, c, theory) is not None


def cocycle_basis(A, M, n: int, k: int, theory=HOCHSCHILD) -> list[Cochain]:
    """Basis of the cocycles in C^{n,k} (or in its Harrison subspace)."""
    theory = _theory(theory)
    M = _module(A, M)
    cols = delta_columns(A, M, n, k, theory)
    basis = _basis_vectors(A, M, n, k, theory)
    rows = linalg.transpose(cols) if cols else []
    coords = _coordinates(A, M, n, k)
    out = []
    for x in linalg.nullspace(rows, len(cols), A.field):
        out.append(_from_coords(A, M, coords, n, k, _combine(basis, x, A.field)))
    return out
