"""The tensor coalgebra T(M): words, deconcatenation and the shuffle product.

A word is a tuple of basis indices into a :class:`GradedSpace`; the empty
tuple is the unit.  Each letter carries its degree shifted down by one, so a
word of length n has degree ``sum(deg) - n``.  Every sign inside T(M) is the
Koszul sign for these shifted degrees.  A ``WordSum`` is a plain
``{word: scalar}`` dict without zero coefficients.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product

from . import linalg
from .graded import GradedSpace

Word = tuple
WordSum = dict


def word_degree(space: GradedSpace, word: Word) -> int:
    degs = space.degrees
    return sum(degs[i] for i in word) - len(word)


def letter_parities(space: GradedSpace) -> tuple[int, ...]:
    """Parity of each basis element's shifted degree."""
    return tuple((d - 1) & 1 for d in space.degrees)


@lru_cache(maxsize=None)
def words(space: GradedSpace, n: int, q: int | None = None) -> tuple[Word, ...]:
    """Words of length ``n``, lexicographic in basis order, optionally of degree ``q``."""
    if n < 0:
        raise ValueError("negative word length")
    if q is None:
        return tuple(product(range(space.dim), repeat=n))
    # Branch and bound on the remaining degree budget.
    degs = space.degrees
    lo, hi = space.window()
    target = q + n
    out = []

    def rec(prefix, remaining, budget):
        if remaining == 0:
            if budget == 0:
                out.append(tuple(prefix))
            return
        for i in range(space.dim):
            b = budget - degs[i]
            if lo * (remaining - 1) <= b <= hi * (remaining - 1):
                prefix.append(i)
                rec(prefix, remaining - 1, b)
                prefix.pop()

    rec([], n, target)
    return tuple(out)


def deconcatenate(w: Word, i: int) -> list[tuple[Word, ...]]:
    """All splittings of ``w`` into ``i`` consecutive, possibly empty blocks.

    This is the iterated coproduct: ``i = 1`` is the identity, ``i = 2`` the
    deconcatenation coproduct, each with coefficient +1.
    """
    if i < 1:
        raise ValueError("the iterated coproduct needs i >= 1")
    if i == 1:
        return [(w,)]
    # nabla^i = (id x nabla^(i-1)) nabla
    return [(w[:k],) + rest for k in range(len(w) + 1) for rest in deconcatenate(w[k:], i - 1)]


def projection(s: WordSum, i: int) -> WordSum:
    return {w: c for w, c in s.items() if len(w) == i}


def add_into(acc: WordSum, other: WordSum, coef, field) -> WordSum:
    for w, c in other.items():
        v = field.reduce(acc.get(w, 0) + coef * c)
        if v:
            acc[w] = v
        else:
            acc.pop(w, None)
    return acc


@lru_cache(maxsize=None)
def shuffle_positions(n: int, m: int) -> tuple[tuple[int, ...], ...]:
    """(n, m)-shuffles, as the positions taken by the first word, in colex order."""
    return tuple(sorted(combinations(range(n + m), n), key=lambda c: c[::-1]))


def shuffle_terms(space: GradedSpace, u: Word, v: Word) -> list[tuple[int, Word]]:
    """Signed merged words of the shuffle product, before collecting terms."""
    par = letter_parities(space)
    n, m = len(u), len(v)
    out = []
    for pos in shuffle_positions(n, m):
        merged = [None] * (n + m)
        taken = set(pos)
        for k, p in enumerate(pos):
            merged[p] = u[k]
        j = 0
        for p in range(n + m):
            if p not in taken:
                merged[p] = v[j]
                j += 1
        # a u-letter passed by v-letters picks up the product of parities
        e = 0
        vj = 0
        ui = 0
        odd_v = 0
        for p in range(n + m):
            if p in taken:
                if par[u[ui]]:
                    e ^= odd_v
                ui += 1
            else:
                odd_v ^= par[v[vj]]
                vj += 1
        out.append((-1 if e else 1, tuple(merged)))
    return out


def shuffle_product(space: GradedSpace, u: Word, v: Word) -> WordSum:
    field = space.field
    acc: WordSum = {}
    for s, w in shuffle_terms(space, u, v):
        c = field.reduce(acc.get(w, 0) + s)
        if c:
            acc[w] = c
        else:
            acc.pop(w, None)
    return acc


def shuffle_sums(space: GradedSpace, a: WordSum, b: WordSum) -> WordSum:
    """Bilinear extension of :func:`shuffle_product` to word sums."""
    field = space.field
    acc: WordSum = {}
    for u, cu in a.items():
        for v, cv in b.items():
            add_into(acc, shuffle_product(space, u, v), cu * cv, field)
    return acc


@lru_cache(maxsize=None)
def _shuffle_basis(space: GradedSpace, n: int, q: int):
    basis_words = words(space, n, q)
    if n <= 1 or not basis_words:
        return basis_words, ()
    index = {w: i for i, w in enumerate(basis_words)}
    field = space.field
    rows = []
    for k in range(1, n // 2 + 1):
        # mu(u, v) = +-mu(v, u), so k <= n - k suffices
        for u in words(space, k):
            du = word_degree(space, u)
            for v in words(space, n - k, q - du):
                prod = shuffle_product(space, u, v)
                if prod:
                    rows.append({index[w]: c for w, c in prod.items()})
    red = linalg.rref(rows, field, len(basis_words))
    return basis_words, tuple(row for _, row in red)


def shuffle_subspace_basis(space: GradedSpace, n: int, q: int) -> list[dict]:
    """Basis of Sh^n(M) in word degree ``q`` (reduced echelon coordinate vectors).

    Coordinates index ``words(space, n, q)``.
    """
    return [dict(r) for r in _shuffle_basis(space, n, q)[1]]


def ch_dimension(space: GradedSpace, n: int, q: int) -> int:
    """dim (tensor^n M)_q - dim Sh^n(M)_q."""
    basis_words, sh = _shuffle_basis(space, n, q)
    return len(basis_words) - len(sh)
