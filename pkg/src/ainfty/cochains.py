"""Graded algebras, bimodules and Hochschild cochains.

Sign conventions
----------------
A cochain ``f`` in C^{n,k}(A, M) is stored with its honest values
``f(a_1 x ... x a_n)``.  All operations pass through its *shifted* form
``f~ = s f (s^-1)^{x n}``, a map on the tensor coalgebra of the shifted space
whose letters have degree ``|a| - 1``.  Concretely

    f~(a_1 ... a_n) = (-1)**sum_j (n - j)(|a_j| - 1) * f(a_1 ... a_n),

and ``f~`` has degree ``n + k - 1``.  On shifted maps every operation is a
brace with plain Koszul signs:

* ``b`` is the shifted multiplication, ``b(a, c) = (-1)**(|a|-1) a.c``;
* ``delta f~ = (-1)**|f~| f~{b} - b{f~}``;
* ``f cup1 g`` is the brace ``f~{g~}`` and ``f cup1 (g_1..g_k)`` is
  ``f~{g~_1, ..., g~_k}``;
* ``f cup g (a' a'') = (-1)**(t * |a'|~) f(a') g(a'')`` where ``|a'|~`` is the
  shifted degree of the first m inputs; this equals ``(-1)**|f~| b{f~, g~}``.

With these choices delta squares to zero, a twisting cochain satisfies
``delta a = a cup1 a`` exactly when ``mu + a`` satisfies the Stasheff
identities, and a cochain is Harrison iff ``f~`` kills the shuffles of T(sA).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .graded import FieldSpec, GradedSpace
from .tensor import deconcatenate, letter_parities, shuffle_subspace_basis, word_degree, words

Vector = dict  # {basis index: scalar}, no zero entries


class AlgebraError(ValueError):
    """A structure table violates a claimed property."""


def _clean(vec: dict, field: FieldSpec) -> dict:
    out = {}
    for i, v in vec.items():
        v = field.reduce(v)
        if v:
            out[i] = v
    return out


def _vec_add(acc: dict, vec: dict, coef) -> None:
    for i, v in vec.items():
        acc[i] = acc.get(i, 0) + coef * v


class GradedAlgebra:
    """A finite-dimensional graded algebra given by its multiplication table.

    ``table`` maps pairs of basis indices to vectors; missing pairs multiply
    to zero.  Claimed properties are verified on construction.
    """

    def __init__(self, space: GradedSpace, table, *, associative=True, commutative=False, unit=None):
        self.space = space
        self.field = space.field
        self.associative = associative
        self.commutative = commutative
        self.unit = unit
        clean = {}
        for (i, j), vec in table.items():
            vec = _clean(vec, self.field)
            if vec:
                clean[(i, j)] = vec
        self.table = clean
        self._shifted = None
        self._check()

    def _check(self):
        degs = self.space.degrees
        for (i, j), vec in self.table.items():
            for k in vec:
                if degs[k] != degs[i] + degs[j]:
                    raise AlgebraError(
                        f"product {self.space.names[i]}*{self.space.names[j]} has a term "
                        f"{self.space.names[k]} of degree {degs[k]}, expected {degs[i] + degs[j]}"
                    )
        if self.associative:
            bad = self.associativity_defect()
            if bad:
                names = self.space.names
                i, j, k = bad[0]
                raise AlgebraError(f"not associative on ({names[i]}, {names[j]}, {names[k]})")
        if self.commutative:
            for i in range(self.space.dim):
                for j in range(i, self.space.dim):
                    s = -1 if (degs[i] * degs[j]) & 1 else 1
                    lhs = self.mul_basis(i, j)
                    rhs = {k: self.field.reduce(s * v) for k, v in self.mul_basis(j, i).items()}
                    if lhs != rhs:
                        names = self.space.names
                        raise AlgebraError(f"not graded-commutative on ({names[i]}, {names[j]})")
        if self.unit is not None:
            for i in range(self.space.dim):
                if self.mul_basis(self.unit, i) != {i: 1} or self.mul_basis(i, self.unit) != {i: 1}:
                    raise AlgebraError(f"{self.space.names[self.unit]} is not a two-sided unit")

    def mul_basis(self, i: int, j: int) -> Vector:
        return self.table.get((i, j), {})

    def mul(self, u: Vector, v: Vector) -> Vector:
        acc: dict = {}
        for i, a in u.items():
            for j, b in v.items():
                prod = self.table.get((i, j))
                if prod:
                    _vec_add(acc, prod, a * b)
        return _clean(acc, self.field)

    def associativity_defect(self) -> list[tuple[int, int, int]]:
        n = self.space.dim
        bad = []
        for i, j, k in product(range(n), repeat=3):
            if self.mul(self.mul_basis(i, j), {k: 1}) != self.mul({i: 1}, self.mul_basis(j, k)):
                bad.append((i, j, k))
        return bad

    def shifted_product(self) -> dict:
        """The multiplication as a shifted map ``{(i, j): vector}`` of degree 1."""
        if self._shifted is None:
            par = letter_parities(self.space)
            self._shifted = {
                (i, j): ({k: -v for k, v in vec.items()} if par[i] else dict(vec))
                for (i, j), vec in self.table.items()
            }
        return self._shifted

    def as_bimodule(self) -> GradedBimodule:
        return GradedBimodule(self, self.space, self.table, self.table, check=False)

    def multiplication_cochain(self) -> Cochain:
        return Cochain(self.space, self.space, 2, 0, {k: dict(v) for k, v in self.table.items()})

    def identity_cochain(self) -> Cochain:
        return Cochain(self.space, self.space, 1, 0, {(i,): {i: 1} for i in range(self.space.dim)})

    def __repr__(self):
        return f"GradedAlgebra({list(zip(self.space.names, self.space.degrees))}, over {self.field})"


class GradedBimodule:
    """A graded bimodule over a :class:`GradedAlgebra`.

    ``left[(a, m)]`` and ``right[(m, a)]`` are vectors in ``space``.
    """

    def __init__(self, algebra: GradedAlgebra, space: GradedSpace, left, right, check=True):
        if space.field != algebra.field:
            raise AlgebraError("bimodule and algebra are over different fields")
        self.algebra = algebra
        self.space = space
        self.field = space.field
        self.left = {k: _clean(v, self.field) for k, v in left.items()}
        self.right = {k: _clean(v, self.field) for k, v in right.items()}
        self.left = {k: v for k, v in self.left.items() if v}
        self.right = {k: v for k, v in self.right.items() if v}
        self._is_algebra = space is algebra.space and not check
        if check:
            self._check()

    @property
    def is_algebra_itself(self) -> bool:
        return self._is_algebra

    def act_left(self, u: Vector, m: Vector) -> Vector:
        acc: dict = {}
        for i, a in u.items():
            for j, b in m.items():
                r = self.left.get((i, j))
                if r:
                    _vec_add(acc, r, a * b)
        return _clean(acc, self.field)

    def act_right(self, m: Vector, u: Vector) -> Vector:
        acc: dict = {}
        for j, b in m.items():
            for i, a in u.items():
                r = self.right.get((j, i))
                if r:
                    _vec_add(acc, r, a * b)
        return _clean(acc, self.field)

    def _check(self):
        A = self.algebra
        da, dm = A.space.degrees, self.space.degrees
        for (i, j), vec in self.left.items():
            for k in vec:
                if dm[k] != da[i] + dm[j]:
                    raise AlgebraError("left action is not degree-additive")
        for (j, i), vec in self.right.items():
            for k in vec:
                if dm[k] != dm[j] + da[i]:
                    raise AlgebraError("right action is not degree-additive")
        na, nm = A.space.dim, self.space.dim
        for a, b, m in product(range(na), range(na), range(nm)):
            if self.act_left({a: 1}, self.act_left({b: 1}, {m: 1})) != self.act_left(A.mul_basis(a, b), {m: 1}):
                raise AlgebraError("left action is not associative")
            if self.act_right(self.act_right({m: 1}, {a: 1}), {b: 1}) != self.act_right({m: 1}, A.mul_basis(a, b)):
                raise AlgebraError("right action is not associative")
        for a, m, b in product(range(na), range(nm), range(na)):
            if self.act_right(self.act_left({a: 1}, {m: 1}), {b: 1}) != self.act_left({a: 1}, self.act_right({m: 1}, {b: 1})):
                raise AlgebraError("left and right actions do not commute")

    def is_symmetric(self) -> bool:
        """a.m = (-1)^{|a||m|} m.a on all basis pairs."""
        da, dm = self.algebra.space.degrees, self.space.degrees
        for a in range(self.algebra.space.dim):
            for m in range(self.space.dim):
                s = -1 if (da[a] * dm[m]) & 1 else 1
                r = {k: self.field.reduce(s * v) for k, v in self.right.get((m, a), {}).items()}
                if self.left.get((a, m), {}) != r:
                    return False
        return True


def _sign_parity(word: tuple, par) -> int:
    """Parity of sum_j (n - j)(|a_j| - 1): the shift sign for one input word."""
    e = 0
    n = len(word)
    for j, x in enumerate(word):
        if par[x] and (n - 1 - j) & 1:
            e ^= 1
    return e


@dataclass(eq=False)
class Cochain:
    """An element of C^{n,k}: an arity-n multilinear map of internal degree k.

    ``values`` maps words (tuples of source basis indices) to vectors in
    ``target``; zero values are dropped.
    """

    source: GradedSpace
    target: GradedSpace
    arity: int
    degree: int
    values: dict

    def __post_init__(self):
        field = self.source.field
        if self.target.field != field:
            raise ValueError("source and target are over different fields")
        sd, td = self.source.degrees, self.target.degrees
        clean = {}
        for w, vec in self.values.items():
            w = tuple(w)
            if len(w) != self.arity:
                raise ValueError(f"word {w} has length {len(w)}, expected arity {self.arity}")
            vec = _clean(vec, field)
            if not vec:
                continue
            q = sum(sd[i] for i in w)
            for t in vec:
                if td[t] != q + self.degree:
                    raise ValueError(
                        f"value on {w} has a term of degree {td[t]}; a degree-{self.degree} "
                        f"cochain must land in degree {q + self.degree}"
                    )
            clean[w] = vec
        self.values = clean

    @property
    def field(self) -> FieldSpec:
        return self.source.field

    @property
    def bidegree(self) -> tuple[int, int]:
        return (self.arity, self.degree)

    @property
    def shifted_degree(self) -> int:
        return self.arity + self.degree - 1

    @classmethod
    def zero(cls, source, target, arity, degree) -> Cochain:
        return cls(source, target, arity, degree, {})

    def is_zero(self) -> bool:
        return not self.values

    def nnz(self) -> int:
        return sum(len(v) for v in self.values.values())

    def evaluate(self, word) -> Vector:
        return dict(self.values.get(tuple(word), {}))

    def shifted(self) -> dict:
        par = letter_parities(self.source)
        return {
            w: ({t: -c for t, c in vec.items()} if _sign_parity(w, par) else vec)
            for w, vec in self.values.items()
        }

    @classmethod
    def from_shifted(cls, source, target, arity, degree, values) -> Cochain:
        par = letter_parities(source)
        return cls(
            source,
            target,
            arity,
            degree,
            {w: ({t: -c for t, c in vec.items()} if _sign_parity(w, par) else vec) for w, vec in values.items()},
        )

    def _compatible(self, other: Cochain):
        if (self.source, self.target, self.arity, self.degree) != (other.source, other.target, other.arity, other.degree):
            raise ValueError(f"cochains of bidegree {self.bidegree} and {other.bidegree} cannot be added")

    def __add__(self, other: Cochain) -> Cochain:
        self._compatible(other)
        vals = {w: dict(v) for w, v in self.values.items()}
        for w, vec in other.values.items():
            acc = vals.setdefault(w, {})
            _vec_add(acc, vec, 1)
        return Cochain(self.source, self.target, self.arity, self.degree, vals)

    def __neg__(self) -> Cochain:
        return self.scale(-1)

    def __sub__(self, other: Cochain) -> Cochain:
        return self + (-other)

    def scale(self, c) -> Cochain:
        return Cochain(
            self.source, self.target, self.arity, self.degree,
            {w: {t: c * v for t, v in vec.items()} for w, vec in self.values.items()},
        )

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return self.target == other.target and self.source == other.source
        return (
            (self.source, self.target, self.arity, self.degree) == (other.source, other.target, other.arity, other.degree)
            and self.values == other.values
        )

    def __repr__(self):
        return f"Cochain(bidegree={self.bidegree}, nnz={self.nnz()})"


# -- shifted brace machinery -------------------------------------------------

def _by_output(g: dict) -> dict:
    """Index a shifted map by output letter: ``{letter: [(word, coef), ...]}``."""
    idx: dict = {}
    for u, vec in g.items():
        for t, c in vec.items():
            idx.setdefault(t, []).append((u, c))
    return idx


def brace(f: dict, gs, par, field: FieldSpec, max_arity: int | None = None) -> dict:
    """Shifted brace ``f{g_1, ..., g_k}``: insert the g's, in order, into distinct slots of f.

    ``gs`` is a list of ``(shifted_map, shifted_degree)``; ``par`` gives the
    shifted parity of each input letter.  Maps may mix arities.
    """
    k = len(gs)
    idx = [_by_output(g) for g, _ in gs]
    odd = [d & 1 for _, d in gs]
    wpar = {}
    acc: dict = {}

    def parity(word):
        p = wpar.get(word)
        if p is None:
            p = 0
            for x in word:
                p ^= par[x]
            wpar[word] = p
        return p

    for w, vec in f.items():
        n = len(w)
        if k > n:
            continue

        def rec(i, j, prefix, coef, sgn, left, length):
            if j == k:
                word = prefix + w[i:]
                if max_arity is not None and len(word) > max_arity:
                    return
                c = -coef if sgn else coef
                out = acc.get(word)
                if out is None:
                    out = acc[word] = {}
                for t, v in vec.items():
                    out[t] = out.get(t, 0) + c * v
                return
            for pos in range(i, n - (k - j) + 1):
                skipped = w[i:pos]
                l = left ^ parity(skipped)
                base = prefix + skipped
                for u, c in idx[j].get(w[pos], ()):
                    newlen = length - 1 + len(u)
                    if max_arity is not None and newlen - (k - j - 1) > max_arity:
                        continue
                    rec(pos + 1, j + 1, base + u, coef * c, sgn ^ (odd[j] & l), l ^ parity(u), newlen)

        rec(0, 0, (), 1, 0, 0, n)
    return _clean_map(acc, field)


def _clean_map(acc: dict, field: FieldSpec) -> dict:
    out = {}
    for w, vec in acc.items():
        vec = _clean(vec, field)
        if vec:
            out[w] = vec
    return out


def _module_brace(F: dict, deg: int, M: GradedBimodule) -> dict:
    """``b{F}`` for F with values in a bimodule: act on the outer letters."""
    field = M.field
    apar = letter_parities(M.algebra.space)
    mpar = letter_parities(M.space)
    na = M.algebra.space.dim
    odd = deg & 1
    acc: dict = {}
    for w, vec in F.items():
        for z in range(na):
            # b(F(x_1..x_n) x z) = (-1)^{|m|-1} m.z
            out: dict = {}
            for m, c in vec.items():
                r = M.right.get((m, z))
                if r:
                    _vec_add(out, r, -c if mpar[m] else c)
            if out:
                tgt = acc.setdefault(w + (z,), {})
                _vec_add(tgt, out, 1)
            # b(x x F(...)) with F passing x, then (-1)^{|x|-1} x.m
            out = {}
            for m, c in vec.items():
                r = M.left.get((z, m))
                if r:
                    _vec_add(out, r, c)
            if out:
                s = (odd & apar[z]) ^ apar[z]
                tgt = acc.setdefault((z,) + w, {})
                _vec_add(tgt, out, -1 if s else 1)
    return _clean_map(acc, field)


def _check_algebra(A: GradedAlgebra, f: Cochain, role="cochain"):
    if f.source != A.space:
        raise ValueError(f"{role} is defined over a different algebra")


def _bimodule_for(A: GradedAlgebra, M, f: Cochain) -> GradedBimodule:
    if M is None:
        M = A.as_bimodule()
    if M.algebra is not A and M.algebra.space != A.space:
        raise ValueError("bimodule is over a different algebra")
    if f.target != M.space:
        raise ValueError("cochain does not take values in the given bimodule")
    return M


def coboundary_shifted(A: GradedAlgebra, M: GradedBimodule, F: dict, deg: int, max_arity=None) -> dict:
    """delta on a shifted map of shifted degree ``deg`` (arities may be mixed)."""
    field = A.field
    par = letter_parities(A.space)
    b = A.shifted_product()
    inner = brace(F, [(b, 1)], par, field, max_arity)
    if M.is_algebra_itself:
        outer = brace(b, [(F, deg)], par, field, max_arity)
    else:
        outer = _module_brace(F, deg, M)
        if max_arity is not None:
            outer = {w: v for w, v in outer.items() if len(w) <= max_arity}
    acc: dict = {}
    s = -1 if deg & 1 else 1
    for w, vec in inner.items():
        _vec_add(acc.setdefault(w, {}), vec, s)
    for w, vec in outer.items():
        _vec_add(acc.setdefault(w, {}), vec, -1)
    return _clean_map(acc, field)


def coboundary(A: GradedAlgebra, f: Cochain, M: GradedBimodule | None = None) -> Cochain:
    """Hochschild coboundary C^{n,k}(A, M) -> C^{n+1,k}(A, M)."""
    _check_algebra(A, f)
    M = _bimodule_for(A, M, f)
    vals = coboundary_shifted(A, M, f.shifted(), f.shifted_degree)
    return Cochain.from_shifted(f.source, f.target, f.arity + 1, f.degree, vals)


def cup(A: GradedAlgebra, f: Cochain, g: Cochain) -> Cochain:
    """f cup g (a_1..a_{m+n}) = +-f(a_1..a_m) . g(a_{m+1}..a_{m+n}).

    The sign is (-1)^{t s} with t the degree of g and s the shifted degree
    sum(|a_i| - 1) of the first m inputs.
    """
    _check_algebra(A, f)
    _check_algebra(A, g)
    if f.target != A.space or g.target != A.space:
        raise ValueError("cup needs cochains with values in the algebra itself")
    degs = A.space.degrees
    t_odd = g.degree & 1
    acc: dict = {}
    for w1, v1 in f.values.items():
        odd = t_odd and ((sum(degs[i] for i in w1) - len(w1)) & 1)
        for w2, v2 in g.values.items():
            prod = A.mul(v1, v2)
            if prod:
                _vec_add(acc.setdefault(w1 + w2, {}), prod, -1 if odd else 1)
    return Cochain(A.space, A.space, f.arity + g.arity, f.degree + g.degree, acc)


def cup1(f: Cochain, g: Cochain) -> Cochain:
    """Gerstenhaber's f cup1 g: g inserted into each slot of f, Koszul-signed."""
    return cup1_multi(f, [g])


def cup1_multi(f: Cochain, gs) -> Cochain:
    """f cup1 (g_1, ..., g_k): order-preserving insertion into distinct slots."""
    if f.arity == 0 and gs:
        raise ValueError("cup1 needs a cochain of positive arity on the left")
    for g in gs:
        if g.source != f.source:
            raise ValueError("cochains live over different algebras")
        if g.target != f.source:
            raise ValueError("inserted cochains must take values in the algebra")
    par = letter_parities(f.source)
    vals = brace(f.shifted(), [(g.shifted(), g.shifted_degree) for g in gs], par, f.field)
    arity = f.arity + sum(g.arity - 1 for g in gs)
    degree = f.degree + sum(g.degree for g in gs)
    return Cochain.from_shifted(f.source, f.target, arity, degree, vals)


# -- coproduct formulations (independent evaluation paths) --------------------

def _apply_shifted(values: dict, letters, field) -> dict:
    """Evaluate a shifted map on a word whose letters are vectors."""
    acc: dict = {}
    for choice in product(*(list(l.items()) for l in letters)):
        word = tuple(i for i, _ in choice)
        vec = values.get(word)
        if not vec:
            continue
        c = 1
        for _, x in choice:
            c *= x
        _vec_add(acc, vec, c)
    return _clean(acc, field)


def cup1_multi_via_coproduct(f: Cochain, gs) -> Cochain:
    """f~ (id x g_1 x id x ... x g_k x id) nabla^{2k+1}, evaluated word by word."""
    src = f.source
    field = f.field
    par = letter_parities(src)
    fs = f.shifted()
    gsh = [(g.shifted(), g.shifted_degree, g.arity) for g in gs]
    k = len(gs)
    arity = f.arity + sum(g.arity - 1 for g in gs)
    degree = f.degree + sum(g.degree for g in gs)
    vals = {}
    if f.arity < k:
        return Cochain.zero(src, f.target, arity, degree)
    for w in words(src, arity):
        acc: dict = {}
        for blocks in deconcatenate(w, 2 * k + 1):
            if any(len(blocks[2 * j + 1]) != gsh[j][2] for j in range(k)):
                continue
            if sum(len(blocks[2 * j]) for j in range(k + 1)) + k != f.arity:
                continue
            letters = []
            sgn = 0
            left = 0
            ok = True
            for j in range(k + 1):
                for x in blocks[2 * j]:
                    letters.append({x: 1})
                    left ^= par[x]
                if j == k:
                    break
                g, gdeg, _ = gsh[j]
                out = g.get(blocks[2 * j + 1])
                if not out:
                    ok = False
                    break
                sgn ^= (gdeg & 1) & left
                letters.append(out)
                for x in blocks[2 * j + 1]:
                    left ^= par[x]
            if not ok:
                continue
            _vec_add(acc, _apply_shifted(fs, letters, field), -1 if sgn else 1)
        acc = _clean(acc, field)
        if acc:
            vals[w] = acc
    return Cochain.from_shifted(src, f.target, arity, degree, vals)


def cup1_via_coproduct(f: Cochain, g: Cochain) -> Cochain:
    return cup1_multi_via_coproduct(f, [g])


# -- Harrison condition --------------------------------------------------------

def restrict_to_shuffles(f: Cochain) -> list[tuple[dict, dict]]:
    """Values of f on a basis of the shuffle subspace Sh^n.

    Returns ``[(shuffle_vector, value)]`` for every basis element of Sh^n(A)
    on which f does not vanish; an empty list means f is a Harrison cochain.
    The shuffle vectors are word sums in T(sA).
    """
    if f.arity <= 1:
        return []
    src = f.source
    field = f.field
    fs = f.shifted()
    degrees = sorted({word_degree(src, w) for w in fs})
    out = []
    for q in degrees:
        basis_words = words(src, f.arity, q)
        for vec in shuffle_subspace_basis(src, f.arity, q):
            acc: dict = {}
            for i, c in vec.items():
                val = fs.get(basis_words[i])
                if val:
                    _vec_add(acc, val, c)
            acc = _clean(acc, field)
            if acc:
                out.append(({basis_words[i]: c for i, c in vec.items()}, acc))
    return out


def is_harrison(f: Cochain) -> bool:
    return not restrict_to_shuffles(f)
