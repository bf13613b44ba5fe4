"""A-infinity structures, twisting cochains, the bar construction and trivialization.

An A-infinity structure with m_1 = 0 on a graded algebra A is stored as its
higher operations m_3, m_4, ... (bidegree (i, 2 - i)); m_2 is the
multiplication of A.  The same cochains, read as a = m_3 + m_4 + ..., form a
twisting cochain: ``delta a = a cup1 a``.

Everything is truncated at an arity N.  A structure truncated at N stores
m_i for i <= N and is *valid* when every identity that involves only those
operations holds, which means arities up to N + 1 for the Stasheff identities
and for the twisting condition.  Morphism identities are checked up to N.

Internally all sums are computed on shifted maps (see :mod:`ainfty.cochains`),
where m~ = b + a~ has degree 1 and every morphism component has degree 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product

from .cochains import (
    Cochain,
    GradedAlgebra,
    _clean,
    _clean_map,
    _vec_add,
    brace,
    coboundary,
    coboundary_shifted,
    cup,
    cup1,
    cup1_multi,
    is_harrison,
)
from .cohomology import HARRISON, HOCHSCHILD, CohomologyClass, _theory, solve_coboundary
from .tensor import add_into, deconcatenate, letter_parities, shuffle_sums, word_degree, words


class InternalConsistencyError(RuntimeError):
    """A fact that must hold by theory failed; this indicates a bug, not bad input."""


def _split_by_arity(values: dict) -> dict:
    out: dict = {}
    for w, vec in values.items():
        out.setdefault(len(w), {})[w] = vec
    return out


def _merge(*maps) -> dict:
    acc: dict = {}
    for m in maps:
        for w, vec in m.items():
            _vec_add(acc.setdefault(w, {}), vec, 1)
    return acc


def _sum_maps(terms, field) -> dict:
    """Sum of ``(coef, shifted_map)`` pairs."""
    acc: dict = {}
    for coef, m in terms:
        for w, vec in m.items():
            _vec_add(acc.setdefault(w, {}), vec, coef)
    return _clean_map(acc, field)


def _require_truncation(n: int):
    if n < 2:
        raise ValueError("truncation must be at least 2")


# -- structures -----------------------------------------------------------------

@dataclass(eq=False)
class AInfStructure:
    """Operations m_2 = multiplication of ``algebra`` and ``higher[i]`` = m_i for 3 <= i <= N."""

    algebra: GradedAlgebra
    higher: dict = dc_field(default_factory=dict)
    truncation: int = 6
    commutative: bool = False

    def __post_init__(self):
        _require_truncation(self.truncation)
        S = self.algebra.space
        clean = {}
        for i, m in sorted(self.higher.items()):
            if i < 3 or i > self.truncation:
                raise ValueError(f"operation of arity {i} outside 3..{self.truncation}")
            if m.bidegree != (i, 2 - i):
                raise ValueError(f"m_{i} has bidegree {m.bidegree}; expected ({i}, {2 - i})")
            if m.source != S or m.target != S:
                raise ValueError(f"m_{i} is not an operation on the algebra's space")
            if not m.is_zero():
                clean[i] = m
        self.higher = clean
        if self.commutative:
            if not self.algebra.commutative:
                raise ValueError("a commutative structure needs a graded-commutative multiplication")
            for i, m in clean.items():
                if not is_harrison(m):
                    raise ValueError(f"m_{i} does not vanish on shuffles")

    @classmethod
    def trivial(cls, algebra: GradedAlgebra, truncation: int = 6, commutative: bool | None = None) -> AInfStructure:
        if commutative is None:
            commutative = algebra.commutative
        return cls(algebra, {}, truncation, commutative)

    @property
    def space(self):
        return self.algebra.space

    @property
    def field(self):
        return self.algebra.field

    def operation(self, i: int) -> Cochain:
        if i == 2:
            return self.algebra.multiplication_cochain()
        if i in self.higher:
            return self.higher[i]
        return Cochain.zero(self.space, self.space, i, 2 - i)

    def is_trivial(self) -> bool:
        return not self.higher

    def shifted_total(self) -> dict:
        """m~ = b + sum of the shifted higher operations, as one mixed-arity map."""
        return _merge(self.algebra.shifted_product(), *(m.shifted() for m in self.higher.values()))


@dataclass(eq=False)
class TwistingCochain:
    """a = a^3 + ... + a^N with a^i of bidegree (i, 2 - i)."""

    algebra: GradedAlgebra
    components: dict = dc_field(default_factory=dict)
    truncation: int = 6
    theory: str = HOCHSCHILD

    def __post_init__(self):
        _require_truncation(self.truncation)
        self.theory = _theory(self.theory)
        S = self.algebra.space
        clean = {}
        for i, c in sorted(self.components.items()):
            if i < 3 or i > self.truncation:
                raise ValueError(f"component of arity {i} outside 3..{self.truncation}")
            if c.bidegree != (i, 2 - i):
                raise ValueError(f"component a^{i} has bidegree {c.bidegree}; expected ({i}, {2 - i})")
            if c.source != S or c.target != S:
                raise ValueError(f"component a^{i} is not a cochain in C(A, A)")
            if self.theory == HARRISON and not is_harrison(c):
                raise ValueError(f"component a^{i} is not a Harrison cochain")
            if not c.is_zero():
                clean[i] = c
        self.components = clean
        if self.theory == HARRISON and not self.algebra.commutative:
            raise ValueError("Harrison twisting cochains need a graded-commutative algebra")

    @classmethod
    def zero(cls, algebra, truncation=6, theory=HOCHSCHILD) -> TwistingCochain:
        return cls(algebra, {}, truncation, theory)

    def component(self, i: int) -> Cochain:
        S = self.algebra.space
        return self.components.get(i) or Cochain.zero(S, S, i, 2 - i)

    def is_zero(self) -> bool:
        return not self.components

    def lowest_arity(self) -> int | None:
        return min(self.components) if self.components else None

    def residuals(self) -> list[tuple[int, Cochain]]:
        """delta a^{n-1} - sum_{i+j=n+1} a^i cup1 a^j for n = 4..N+1."""
        A = self.algebra
        out = []
        for n in range(4, self.truncation + 2):
            r = coboundary(A, self.component(n - 1))
            for i in range(3, n - 1):
                j = n + 1 - i
                if i in self.components and j in self.components:
                    r = r - cup1(self.components[i], self.components[j])
            out.append((n, r))
        return out

    def is_valid(self) -> bool:
        return all(r.is_zero() for _, r in self.residuals())

    def shifted_total(self) -> dict:
        return _merge(*(c.shifted() for c in self.components.values()))


def first_failure(residuals) -> int | None:
    """Smallest arity with a nonzero residual, or None."""
    for n, r in residuals:
        if not r.is_zero():
            return n
    return None


def stasheff_residuals(S: AInfStructure, n_max: int | None = None) -> list[tuple[int, Cochain]]:
    """The Stasheff identities sum_{i+j=n+1} m~_i{m~_j} for arities 3..n_max.

    ``n_max`` defaults to the last arity checkable from the stored
    operations, N + 1.
    """
    if n_max is None:
        n_max = S.truncation + 1
    if n_max > S.truncation + 1:
        raise ValueError(f"n_max={n_max} exceeds the checkable range {S.truncation + 1}")
    total = S.shifted_total()
    par = letter_parities(S.space)
    square = _split_by_arity(brace(total, [(total, 1)], par, S.field, n_max))
    sp = S.space
    return [(n, Cochain.from_shifted(sp, sp, n, 3 - n, square.get(n, {}))) for n in range(3, n_max + 1)]


def structure_to_twisting(S: AInfStructure) -> TwistingCochain:
    theory = HARRISON if S.commutative else HOCHSCHILD
    return TwistingCochain(S.algebra, dict(S.higher), S.truncation, theory)


def twisting_to_structure(A: GradedAlgebra, a: TwistingCochain) -> AInfStructure:
    if a.algebra is not A and a.algebra.space != A.space:
        raise ValueError("twisting cochain lives over a different algebra")
    bad = first_failure(a.residuals())
    if bad is not None:
        raise ValueError(f"delta a = a cup1 a fails at arity {bad}")
    return AInfStructure(A, dict(a.components), a.truncation, a.theory == HARRISON)


# -- morphisms ------------------------------------------------------------------

@dataclass(eq=False)
class AInfMorphism:
    """Components f_1, ..., f_{N-1} (bidegree (i, 1 - i)) from ``source`` to ``target``."""

    source: AInfStructure
    target: AInfStructure
    components: dict
    commutative: bool = False

    def __post_init__(self):
        S, T = self.source.space, self.target.space
        if self.source.field != self.target.field:
            raise ValueError("source and target are over different fields")
        clean = {}
        for i, f in sorted(self.components.items()):
            if i < 1:
                raise ValueError("morphism components start at arity 1")
            if f.bidegree != (i, 1 - i):
                raise ValueError(f"f_{i} has bidegree {f.bidegree}; expected ({i}, {1 - i})")
            if f.source != S or f.target != T:
                raise ValueError(f"f_{i} does not map the source space to the target space")
            if self.commutative and not is_harrison(f):
                raise ValueError(f"f_{i} does not vanish on shuffles")
            if not f.is_zero():
                clean[i] = f
        self.components = clean

    @classmethod
    def identity(cls, S: AInfStructure) -> AInfMorphism:
        return cls(S, S, {1: S.algebra.identity_cochain()}, S.commutative)

    @classmethod
    def from_perturbation(cls, source, target, p: dict) -> AInfMorphism:
        """{id, p_2, p_3, ...} between structures on the same algebra."""
        comps = {1: source.algebra.identity_cochain()}
        comps.update(p)
        return cls(source, target, comps)

    @property
    def truncation(self) -> int:
        return min(self.source.truncation, self.target.truncation)

    def component(self, i: int) -> Cochain:
        if i in self.components:
            return self.components[i]
        return Cochain.zero(self.source.space, self.target.space, i, 1 - i)

    def perturbation(self) -> dict:
        """The components of arity >= 2."""
        return {i: f for i, f in self.components.items() if i >= 2}

    def shifted_total(self) -> dict:
        return _merge(*(f.shifted() for f in self.components.values()))


def _fill_all_slots(m: dict, F: dict, par, field, n_max) -> dict:
    """sum_t m_t{F, ..., F} with one copy of F per slot of m_t."""
    acc: dict = {}
    for t, mt in _split_by_arity(m).items():
        if t == 0:
            continue
        part = brace(mt, [(F, 0)] * t, par, field, n_max)
        for w, vec in part.items():
            _vec_add(acc.setdefault(w, {}), vec, 1)
    return _clean_map(acc, field)


def morphism_residuals(F: AInfMorphism, n_max: int | None = None) -> list[tuple[int, Cochain]]:
    """f~{m~} - sum_t m~'_t{f~, ..., f~} for arities 2..n_max (default N)."""
    if n_max is None:
        n_max = F.truncation
    src, tgt = F.source, F.target
    par = letter_parities(src.space)
    field = src.field
    f = F.shifted_total()
    lhs = brace(f, [(src.shifted_total(), 1)], par, field, n_max)
    rhs = _fill_all_slots(tgt.shifted_total(), f, par, field, n_max)
    diff = _split_by_arity(_sum_maps([(1, lhs), (-1, rhs)], field))
    return [
        (n, Cochain.from_shifted(src.space, tgt.space, n, 2 - n, diff.get(n, {})))
        for n in range(2, n_max + 1)
    ]


def compose(F: AInfMorphism, G: AInfMorphism) -> AInfMorphism:
    """F after G: (F o G)~ = sum_t F~_t{G~, ..., G~}."""
    if G.target is not F.source and G.target.space != F.source.space:
        raise ValueError("morphisms are not composable")
    n_max = min(F.truncation, G.truncation)
    par = letter_parities(G.source.space)
    vals = _split_by_arity(_fill_all_slots(F.shifted_total(), G.shifted_total(), par, G.source.field, n_max))
    S, T = G.source.space, F.target.space
    comps = {i: Cochain.from_shifted(S, T, i, 1 - i, v) for i, v in vals.items()}
    return AInfMorphism(G.source, F.target, comps, F.commutative and G.commutative)


# -- the bar construction -------------------------------------------------------

class BarComplex:
    """T(sA) with the differential induced by all operations, on words of length <= ``length``.

    d(x_1..x_L) = sum (-1)^{|x_1..x_k|} x_1..x_k m~_j(x_{k+1}..x_{k+j}) x_{k+j+1}..x_L
    raises the shifted word degree by one.
    """

    def __init__(self, structure: AInfStructure, length: int | None = None):
        self.structure = structure
        self.length = structure.truncation + 1 if length is None else length
        self.space = structure.space
        self.field = structure.field
        self._par = letter_parities(self.space)
        self._ops = structure.shifted_total()
        self._arities = sorted({len(w) for w in self._ops})
        self._cache: dict = {}

    def differential(self, word) -> dict:
        word = tuple(word)
        hit = self._cache.get(word)
        if hit is not None:
            return hit
        par, ops, field = self._par, self._ops, self.field
        acc: dict = {}
        left = 0
        L = len(word)
        for k in range(L):
            for j in self._arities:
                if k + j > L:
                    break
                out = ops.get(word[k:k + j])
                if out:
                    head, tail = word[:k], word[k + j:]
                    for t, c in out.items():
                        w = head + (t,) + tail
                        acc[w] = acc.get(w, 0) + (-c if left else c)
            left ^= par[word[k]]
        acc = _clean(acc, field)
        self._cache[word] = acc
        return acc

    def apply(self, s: dict) -> dict:
        acc: dict = {}
        for w, c in s.items():
            add_into(acc, self.differential(w), c, self.field)
        return acc

    def square(self, word) -> dict:
        return self.apply(self.differential(word))

    def first_square_failure(self) -> int | None:
        """Shortest word length on which d o d is nonzero (None if d o d = 0 in range)."""
        for L in range(1, self.length + 1):
            for w in words(self.space, L):
                if self.square(w):
                    return L
        return None

    def squares_to_zero(self) -> bool:
        return self.first_square_failure() is None

    def coderivation_defect(self, max_length: int | None = None) -> list:
        """Words w with nabla d w != (d x id + id x d) nabla w."""
        max_length = self.length if max_length is None else max_length
        bad = []
        field = self.field
        for L in range(0, max_length + 1):
            for w in words(self.space, L):
                lhs: dict = {}
                for v, c in self.differential(w).items():
                    for u1, u2 in deconcatenate(v, 2):
                        key = (u1, u2)
                        lhs[key] = lhs.get(key, 0) + c
                rhs: dict = {}
                for u1, u2 in deconcatenate(w, 2):
                    for v, c in self.differential(u1).items():
                        rhs[(v, u2)] = rhs.get((v, u2), 0) + c
                    s = -1 if word_degree(self.space, u1) & 1 else 1
                    for v, c in self.differential(u2).items():
                        rhs[(u1, v)] = rhs.get((u1, v), 0) + s * c
                if _clean(lhs, field) != _clean(rhs, field):
                    bad.append(w)
        return bad

    def is_coderivation(self, max_length: int | None = None) -> bool:
        return not self.coderivation_defect(max_length)

    def shuffle_derivation_defect(self, max_total: int = 4) -> list:
        """Pairs (u, v) with d(u * v) != du * v + (-1)^|u| u * dv (shuffle product *)."""
        sp, field = self.space, self.field
        bad = []
        for n in range(1, max_total):
            for m in range(1, max_total - n + 1):
                for u in words(sp, n):
                    for v in words(sp, m):
                        lhs = self.apply(shuffle_sums(sp, {u: 1}, {v: 1}))
                        rhs = shuffle_sums(sp, self.differential(u), {v: 1})
                        s = -1 if word_degree(sp, u) & 1 else 1
                        add_into(rhs, shuffle_sums(sp, {u: 1}, self.differential(v)), s, field)
                        if lhs != rhs:
                            bad.append((u, v))
        return bad

    def is_shuffle_derivation(self, max_total: int = 4) -> bool:
        return not self.shuffle_derivation_defect(max_total)


def bar_differential(S: AInfStructure, length: int | None = None) -> BarComplex:
    return BarComplex(S, length)


class BarMorphism:
    """B(f)(w) = sum over splittings w = w_1...w_r into nonempty blocks of f~(w_1) x ... x f~(w_r)."""

    def __init__(self, F: AInfMorphism):
        self.morphism = F
        self.field = F.source.field
        self._f = F.shifted_total()
        self._cache: dict = {}

    def _compositions(self, L):
        if L == 0:
            yield ()
            return
        for first in range(1, L + 1):
            for rest in self._compositions(L - first):
                yield (first,) + rest

    def image(self, word) -> dict:
        word = tuple(word)
        hit = self._cache.get(word)
        if hit is not None:
            return hit
        f = self._f
        acc: dict = {}
        for comp in self._compositions(len(word)):
            pieces = []
            pos = 0
            for size in comp:
                out = f.get(word[pos:pos + size])
                if not out:
                    break
                pieces.append(list(out.items()))
                pos += size
            else:
                for choice in product(*pieces):
                    c = 1
                    for _, x in choice:
                        c *= x
                    w = tuple(t for t, _ in choice)
                    acc[w] = acc.get(w, 0) + c
        acc = _clean(acc, self.field)
        self._cache[word] = acc
        return acc

    def apply(self, s: dict) -> dict:
        acc: dict = {}
        for w, c in s.items():
            add_into(acc, self.image(w), c, self.field)
        return acc

    def chain_map_defect(self, max_length: int | None = None) -> list:
        """Words w with B(f)(d w) != d'(B(f) w)."""
        F = self.morphism
        max_length = F.truncation if max_length is None else max_length
        d, d2 = BarComplex(F.source, max_length), BarComplex(F.target, max_length)
        bad = []
        for L in range(1, max_length + 1):
            for w in words(F.source.space, L):
                if self.apply(d.differential(w)) != d2.apply(self.image(w)):
                    bad.append(w)
        return bad

    def coalgebra_defect(self, max_length: int) -> list:
        """Words w with nabla B(f) w != (B(f) x B(f)) nabla w."""
        field = self.field
        bad = []
        for L in range(0, max_length + 1):
            for w in words(self.morphism.source.space, L):
                lhs: dict = {}
                for v, c in self.image(w).items():
                    for u1, u2 in deconcatenate(v, 2):
                        lhs[(u1, u2)] = lhs.get((u1, u2), 0) + c
                rhs: dict = {}
                for u1, u2 in deconcatenate(w, 2):
                    for v1, c1 in self.image(u1).items():
                        for v2, c2 in self.image(u2).items():
                            rhs[(v1, v2)] = rhs.get((v1, v2), 0) + c1 * c2
                if _clean(lhs, field) != _clean(rhs, field):
                    bad.append(w)
        return bad


def bar_morphism(F: AInfMorphism) -> BarMorphism:
    return BarMorphism(F)


# -- equivalence of twisting cochains --------------------------------------------

def _p_components(p: dict, A: GradedAlgebra) -> dict:
    S = A.space
    out = {}
    for i, c in p.items():
        if i < 2:
            raise ValueError("perturbation components start at arity 2")
        if c.bidegree != (i, 1 - i):
            raise ValueError(f"p_{i} has bidegree {c.bidegree}; expected ({i}, {1 - i})")
        if c.source != S or c.target != S:
            raise ValueError(f"p_{i} is not a cochain in C(A, A)")
        if not c.is_zero():
            out[i] = c
    return out


def _compositions_of_p(parts, slots, budget):
    """Ordered tuples of arities from ``parts`` of length 2..slots whose extra arity fits ``budget``."""
    def rec(prefix, extra):
        if len(prefix) >= 2:
            yield tuple(prefix)
        if len(prefix) == slots:
            return
        for i in parts:
            if extra + i - 1 <= budget:
                prefix.append(i)
                yield from rec(prefix, extra + i - 1)
                prefix.pop()

    yield from rec([], 0)


def equivalence_residuals(a: TwistingCochain, a2: TwistingCochain, p: dict) -> list[tuple[int, Cochain]]:
    """Per-arity residual of the equivalence a ~ a2 realised by p = p_2 + p_3 + ...

        a - a2 + delta p + p cup1 a - a2 cup1 p - p cup p - sum_{k>=2} a2 cup1 (p, ..., p)

    for arities 3..N, computed with the cochain operations.
    """
    A = a.algebra
    if a2.algebra.space != A.space:
        raise ValueError("twisting cochains live over different algebras")
    N = min(a.truncation, a2.truncation)
    p = _p_components(p, A)
    S = A.space
    acc = {n: Cochain.zero(S, S, n, 2 - n) for n in range(2, N + 1)}

    def add(c: Cochain, coef=1):
        if c.arity <= N and not c.is_zero():
            acc[c.arity] = acc[c.arity] + (c if coef == 1 else c.scale(coef))

    for i, c in a.components.items():
        add(c)
    for i, c in a2.components.items():
        add(c, -1)
    for i, c in p.items():
        if i + 1 <= N:
            add(coboundary(A, c))
        for j, x in a.components.items():
            if i + j - 1 <= N:
                add(cup1(c, x))
        for j, x in a2.components.items():
            if i + j - 1 <= N:
                add(cup1(x, c), -1)
        for j, d in p.items():
            if i + j <= N:
                add(cup(A, c, d), -1)
    parts = sorted(p)
    for j, x in a2.components.items():
        for tup in _compositions_of_p(parts, j, N - j):
            add(cup1_multi(x, [p[i] for i in tup]), -1)
    return [(n, acc[n]) for n in range(3, N + 1)]


def transport(a: TwistingCochain, p: dict, truncation: int | None = None) -> TwistingCochain:
    """The unique a2 with a ~ a2 realised by p, solved arity by arity.

    At arity r the unknown component a2^r enters the equivalence linearly with
    coefficient one; every other term involving a2 carries a p and so only
    uses components of lower arity.
    """
    A = a.algebra
    N = a.truncation if truncation is None else truncation
    p = _p_components(p, A)
    field = A.field
    par = letter_parities(A.space)
    P = _merge(*(c.shifted() for c in p.values()))
    at = a.shifted_total()
    b = A.shifted_product()
    base = _sum_maps(
        [
            (1, at),
            (1, coboundary_shifted(A, A.as_bimodule(), P, 0, N)),
            (1, brace(P, [(at, 1)], par, field, N)),
            (-1, brace(b, [(P, 0), (P, 0)], par, field, N)),
        ],
        field,
    )
    base = _split_by_arity(base)
    found: dict = {}
    S = A.space
    for r in range(3, N + 1):
        lower = _merge(*found.values())
        terms = [(1, base.get(r, {}))]
        if lower and P:
            for k in range(1, r - 2):
                part = brace(lower, [(P, 0)] * k, par, field, r)
                terms.append((-1, {w: v for w, v in part.items() if len(w) == r}))
        vals = _sum_maps(terms, field)
        if vals:
            found[r] = vals
    comps = {r: Cochain.from_shifted(S, S, r, 2 - r, v) for r, v in found.items()}
    return TwistingCochain(A, comps, N, a.theory)


def perturb(a: TwistingCochain, p: Cochain) -> TwistingCochain:
    """Perturb a by a single cochain p of bidegree (n, 1 - n).

    Components below arity n + 1 are unchanged and the new component at
    arity n + 1 is a^{n+1} + delta p.  The result is re-verified.
    """
    n = p.arity
    if n < 2 or p.degree != 1 - n:
        raise ValueError(f"perturbation has bidegree {p.bidegree}; expected (n, 1 - n) with n >= 2")
    if a.theory == HARRISON and not is_harrison(p):
        raise ValueError("a Harrison twisting cochain can only be perturbed by a Harrison cochain")
    out = transport(a, {n: p})
    bad = first_failure(out.residuals())
    if bad is not None:
        raise InternalConsistencyError(f"perturbed cochain fails the twisting condition at arity {bad}")
    return out


@dataclass
class Trivialization:
    """Outcome of :func:`trivialize`.

    On success ``morphism`` is {id, p_2, p_3, ...} from the input structure to
    the trivial one; otherwise ``obstruction`` holds the class that blocked
    the step.  ``steps`` lists every intermediate twisting cochain.
    """

    truncation: int
    theory: str
    morphism: AInfMorphism | None = None
    obstruction: CohomologyClass | None = None
    steps: list = dc_field(default_factory=list)
    solutions: list = dc_field(default_factory=list)

    @property
    def succeeded(self) -> bool:
        return self.obstruction is None

    @property
    def p(self) -> dict:
        """The equivalence data p_2 + p_3 + ... (empty on failure or when a = 0)."""
        return self.morphism.perturbation() if self.morphism is not None else {}


def trivialize(a: TwistingCochain) -> Trivialization:
    """Kill a twisting cochain one arity at a time, or report the obstruction.

    At each step the lowest component a^n is a cocycle; if it is a coboundary
    delta q, perturbing by -q removes it.  Otherwise its class is returned.
    """
    bad = first_failure(a.residuals())
    if bad is not None:
        raise ValueError(f"delta a = a cup1 a fails at arity {bad}")
    A, N, theory = a.algebra, a.truncation, a.theory
    source = twisting_to_structure(A, a)
    total = AInfMorphism.identity(source)
    result = Trivialization(N, theory, steps=[a])
    cur = a
    for n in range(3, N + 1):
        c = cur.components.get(n)
        if c is None:
            continue
        if any(i < n for i in cur.components):
            raise InternalConsistencyError("a lower component survived an earlier step")
        if not coboundary(A, c).is_zero():
            raise InternalConsistencyError(f"lowest component a^{n} is not a cocycle")
        q = solve_coboundary(A, None, c, theory)
        if q is None:
            result.obstruction = CohomologyClass(c, theory, A)
            return result
        result.solutions.append(q)
        nxt = perturb(cur, -q)
        for i in range(3, n + 1):
            if not nxt.component(i).is_zero():
                raise InternalConsistencyError(f"perturbation left arity {i} nonzero")
        step = AInfMorphism.from_perturbation(
            twisting_to_structure(A, cur), twisting_to_structure(A, nxt), {n - 1: -q}
        )
        total = compose(step, total)
        result.steps.append(nxt)
        cur = nxt
    target = AInfStructure.trivial(A, N, source.commutative)
    morphism = AInfMorphism(source, target, total.components, source.commutative)
    bad = first_failure(morphism_residuals(morphism))
    if bad is not None:
        raise InternalConsistencyError(f"trivializing morphism fails at arity {bad}")
    result.morphism = morphism
    return result
