"""Small named algebras and random generators used by tests and the CLI demos."""

from __future__ import annotations

import random
from itertools import product

from .cochains import Cochain, GradedAlgebra, GradedBimodule
from .graded import QQ, FieldSpec, GradedSpace
from .tensor import words


def ground_field(field: FieldSpec = QQ, degree_window: tuple[int, int] | None = None) -> GradedAlgebra:
    """The field itself: one basis element e with e.e = e in degree 0."""
    S = GradedSpace(("e",), (0,), field)
    return GradedAlgebra(S, {(0, 0): {0: 1}}, commutative=True, unit=0)


def product_of_fields(r: int, field: FieldSpec = QQ) -> GradedAlgebra:
    names = tuple(f"e{i}" for i in range(1, r + 1))
    S = GradedSpace(names, (0,) * r, field)
    return GradedAlgebra(S, {(i, i): {i: 1} for i in range(r)}, commutative=True)


def dual_numbers(degree: int = 0, field: FieldSpec = QQ) -> GradedAlgebra:
    """k[x]/(x^2) with |x| = degree."""
    S = GradedSpace(("1", "x"), (0, degree), field)
    table = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}
    return GradedAlgebra(S, table, commutative=True, unit=0)


def truncated_polynomial(degree: int, height: int, field: FieldSpec = QQ) -> GradedAlgebra:
    """k[x]/(x^height) with |x| = degree (degree must be even unless height <= 2)."""
    names = tuple("1" if i == 0 else ("x" if i == 1 else f"x{i}") for i in range(height))
    S = GradedSpace(names, tuple(i * degree for i in range(height)), field)
    table = {(i, j): {i + j: 1} for i in range(height) for j in range(height) if i + j < height}
    return GradedAlgebra(S, table, commutative=(degree % 2 == 0 or height <= 2), unit=0)


def exterior_algebra(degrees=(1,), field: FieldSpec = QQ) -> GradedAlgebra:
    """Free graded-commutative algebra on odd generators (one or two)."""
    gens = list(degrees)
    if len(gens) == 1:
        (d,) = gens
        return dual_numbers(d, field)
    if len(gens) != 2:
        raise ValueError("at most two generators")
    dx, dy = gens
    S = GradedSpace(("1", "x", "y", "xy"), (0, dx, dy, dx + dy), field)
    table = {}
    for i in range(4):
        table[(0, i)] = {i: 1}
        table[(i, 0)] = {i: 1}
    table[(1, 2)] = {3: 1}
    table[(2, 1)] = {3: -1 if (dx * dy) % 2 else 1}
    return GradedAlgebra(S, table, commutative=True, unit=0)


def path_algebra_a2(arrow_degree: int = 1, field: FieldSpec = QQ) -> GradedAlgebra:
    """Path algebra of the quiver 1 -> 2 (upper triangular 2x2 matrices)."""
    S = GradedSpace(("e1", "e2", "a"), (0, 0, arrow_degree), field)
    table = {(0, 0): {0: 1}, (1, 1): {1: 1}, (0, 2): {2: 1}, (2, 1): {2: 1}}
    return GradedAlgebra(S, table)


def matrix_algebra(degree: int = 1, field: FieldSpec = QQ) -> GradedAlgebra:
    """M_2(k) graded by |e12| = degree, |e21| = -degree."""
    names = ("e11", "e12", "e21", "e22")
    S = GradedSpace(names, (0, degree, -degree, 0), field)
    pos = {(0, 0): 0, (0, 1): 1, (1, 0): 2, (1, 1): 3}
    table = {}
    for (i, j), a in pos.items():
        for (k, l), b in pos.items():
            if j == k:
                table[(a, b)] = {pos[(i, l)]: 1}
    return GradedAlgebra(S, table)


def zero_algebra(degrees=(1, 2), field: FieldSpec = QQ) -> GradedAlgebra:
    """Zero multiplication on the given degrees."""
    names = tuple(f"z{i}" for i in range(len(degrees)))
    return GradedAlgebra(GradedSpace(names, tuple(degrees), field), {}, commutative=True)


def square_zero_extension(degrees=(1, 1, 2), field: FieldSpec = QQ) -> GradedAlgebra:
    """k + V with unit 1 and V.V = 0; graded-commutative for any degrees."""
    names = ("1",) + tuple(f"v{i}" for i in range(len(degrees)))
    S = GradedSpace(names, (0,) + tuple(degrees), field)
    table = {}
    for i in range(len(names)):
        table[(0, i)] = {i: 1}
        table[(i, 0)] = {i: 1}
    return GradedAlgebra(S, table, commutative=True, unit=0)


def monomial_algebra(letter_degrees, monomials, field: FieldSpec = QQ, unital=True) -> GradedAlgebra:
    """k<letters> modulo every word outside ``monomials`` (a factor-closed set of words)."""
    mons = [tuple(m) for m in monomials]
    for m in mons:
        for i in range(len(m)):
            for j in range(i + 1, len(m) + 1):
                if m[i:j] not in mons:
                    raise ValueError(f"monomial set is not factor-closed: {m[i:j]} missing")
    basis = ([()] if unital else []) + [m for m in mons if m]
    index = {m: i for i, m in enumerate(basis)}
    names = tuple("1" if not m else "".join(f"x{c}" for c in m) for m in basis)
    degrees = tuple(sum(letter_degrees[c] for c in m) for m in basis)
    table = {}
    for u, v in product(basis, repeat=2):
        w = u + v
        if w in index:
            table[(index[u], index[v])] = {index[w]: 1}
    return GradedAlgebra(GradedSpace(names, degrees, field), table, unit=0 if unital else None)


def _random_invertible(rng: random.Random, n: int, field: FieldSpec):
    while True:
        m = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
        inv = _invert(m, field)
        if inv is not None:
            return [[field.reduce(x) for x in row] for row in m], inv


def _invert(m, field):
    n = len(m)
    a = [[field.reduce(x) for x in row] + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = field.inv(a[col][col])
        a[col] = [field.reduce(x * inv) for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [field.reduce(x - f * y) for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def change_basis(A: GradedAlgebra, rng: random.Random) -> GradedAlgebra:
    """An isomorphic copy of A under a random degree-preserving change of basis."""
    field = A.field
    S = A.space
    n = S.dim
    P = [[0] * n for _ in range(n)]  # column j: new basis vector j in old coordinates
    Pinv = [[0] * n for _ in range(n)]
    for q in sorted(set(S.degrees)):
        idx = S.of_degree(q)
        m, mi = _random_invertible(rng, len(idx), field)
        for a, i in enumerate(idx):
            for b, j in enumerate(idx):
                P[i][j] = m[a][b]
                Pinv[i][j] = mi[a][b]

    def col(j):
        return {i: P[i][j] for i in range(n) if P[i][j]}

    table = {}
    for i in range(n):
        for j in range(n):
            prod = A.mul(col(i), col(j))
            new = {}
            for k in range(n):
                v = field.reduce(sum(Pinv[k][l] * c for l, c in prod.items()))
                if v:
                    new[k] = v
            if new:
                table[(i, j)] = new
    return GradedAlgebra(S, table, associative=A.associative, commutative=A.commutative)


def random_associative(rng: random.Random, field: FieldSpec = QQ) -> GradedAlgebra:
    """A random associative graded algebra with at most four basis elements."""
    kind = rng.choice(["monomial", "monomial", "path", "matrix", "exterior", "zero", "polynomial"])
    if kind == "monomial":
        dx, dy = rng.randint(0, 3), rng.randint(0, 3)
        options = [
            [(0,), (1,), (0, 1)],
            [(0,), (1,), (1, 0)],
            [(0,), (0, 0), (0, 0, 0)],
            [(0,), (1,)],
            [(0,), (0, 0), (1,)],
        ]
        mons = rng.choice(options)
        A = monomial_algebra([dx, dy], mons, field, unital=len(mons) < 4 and rng.random() < 0.7)
    elif kind == "path":
        A = path_algebra_a2(rng.randint(0, 3), field)
    elif kind == "matrix":
        A = matrix_algebra(rng.randint(0, 2), field)
    elif kind == "exterior":
        A = exterior_algebra((rng.choice([1, 3]), rng.choice([1, 3])), field)
    elif kind == "zero":
        A = zero_algebra(tuple(rng.randint(0, 3) for _ in range(rng.randint(1, 3))), field)
    else:
        A = truncated_polynomial(rng.choice([0, 2]), rng.randint(2, 4), field)
    return change_basis(A, rng)


def random_commutative(rng: random.Random, field: FieldSpec = QQ) -> GradedAlgebra:
    """A random graded-commutative algebra with at most four basis elements."""
    kind = rng.choice(["exterior1", "exterior2", "polynomial", "mixed", "zero"])
    if kind == "exterior1":
        A = exterior_algebra((rng.choice([1, 3]),), field)
    elif kind == "exterior2":
        A = exterior_algebra((rng.choice([1, 3]), rng.choice([1, 3])), field)
    elif kind == "polynomial":
        A = truncated_polynomial(rng.choice([0, 2]), rng.randint(2, 4), field)
    elif kind == "mixed":
        A = exterior_algebra((1, 2), field)
    else:
        A = zero_algebra(tuple(rng.randint(0, 3) for _ in range(rng.randint(1, 3))), field)
    return change_basis(A, rng)


def radical_bimodule(A: GradedAlgebra, ideal) -> GradedBimodule:
    """The two-sided ideal spanned by the basis elements ``ideal``, as an A-bimodule."""
    ideal = list(ideal)
    pos = {b: i for i, b in enumerate(ideal)}
    S = GradedSpace(tuple(A.space.names[b] for b in ideal), tuple(A.space.degrees[b] for b in ideal), A.field)

    def restrict(vec):
        if any(k not in pos for k in vec):
            raise ValueError("basis subset does not span an ideal")
        return {pos[k]: v for k, v in vec.items()}

    left, right = {}, {}
    for a in range(A.space.dim):
        for b in ideal:
            left[(a, pos[b])] = restrict(A.mul_basis(a, b))
            right[(pos[b], a)] = restrict(A.mul_basis(b, a))
    return GradedBimodule(A, S, left, right)


def random_cochain(rng: random.Random, source: GradedSpace, target: GradedSpace, n: int, k: int,
                   density: float = 0.5, scale: int = 3) -> Cochain:
    vals = {}
    for w in words(source, n):
        q = sum(source.degrees[i] for i in w) + k
        targets = target.of_degree(q)
        if targets and rng.random() < density:
            vec = {t: rng.randint(-scale, scale) for t in targets}
            vals[w] = vec
    return Cochain(source, target, n, k, vals)


def random_combination(rng: random.Random, basis, scale: int = 3, density: float = 0.7):
    """A random linear combination of cochains of a common bidegree (None if basis empty)."""
    if not basis:
        return None
    total = basis[0].scale(0)
    for b in basis:
        if rng.random() < density:
            total = total + b.scale(rng.randint(-scale, scale))
    return total


def random_twisting_cochain(rng: random.Random, A: GradedAlgebra, truncation: int = 5,
                            theory: str = "hochschild", scale: int = 3, start=None, attempts: int = 20):
    """A random solution of delta a = a cup1 a, built one arity at a time.

    Each a^n is a particular solution of its defining equation plus a random
    cocycle.  ``start`` fixes a^3 (it must be a cocycle).  When some arity
    cannot be solved the choices are redrawn; after ``attempts`` failures the
    cochain is cut off below that arity (higher components zero) and the
    result is returned only if it is still valid.
    """
    from .ainf import TwistingCochain
    from .cochains import coboundary, cup1
    from .cohomology import cocycle_basis, solve_coboundary

    S = A.space
    for _ in range(attempts):
        comps = {}
        ok = True
        for n in range(3, truncation + 1):
            rhs = Cochain.zero(S, S, n + 1, 2 - n)
            for i in range(3, n):
                j = n + 2 - i
                if i in comps and j in comps:
                    rhs = rhs + cup1(comps[i], comps[j])
            if n == 3 and start is not None:
                comps[3] = start
                continue
            x = solve_coboundary(A, None, rhs, theory) if not rhs.is_zero() else Cochain.zero(S, S, n, 2 - n)
            if x is None:
                ok = False
                break
            extra = random_combination(rng, cocycle_basis(A, None, n, 2 - n, theory), scale)
            comps[n] = x if extra is None else x + extra
        if ok:
            return TwistingCochain(A, comps, truncation, theory)
    a = TwistingCochain(A, comps, truncation, theory)
    if not a.is_valid():
        raise RuntimeError("could not extend a random twisting cochain")
    return a


def random_nonassociative(rng: random.Random, field: FieldSpec = QQ) -> GradedAlgebra:
    """A random degree-additive product that fails associativity somewhere."""
    while True:
        A = random_associative(rng, field)
        S = A.space
        pairs = [(i, j) for i in range(S.dim) for j in range(S.dim) if S.of_degree(S.degrees[i] + S.degrees[j])]
        if not pairs:
            continue
        i, j = rng.choice(pairs)
        table = {key: dict(v) for key, v in A.table.items()}
        vec = table.setdefault((i, j), {})
        t = rng.choice(S.of_degree(S.degrees[i] + S.degrees[j]))
        vec[t] = vec.get(t, 0) + rng.choice([1, 2, -1])
        B = GradedAlgebra(S, table, associative=False)
        if B.associativity_defect():
            return B
