import random

import pytest
from hypothesis import given, settings, strategies as st

from ainfty import _kernels_py, linalg
from ainfty.graded import QQ, FieldSpec
from oracles import dense_rank

F7 = FieldSpec.prime(7)


def random_rows(rng, nrows, ncols, density, field):
    rows = []
    for _ in range(nrows):
        row = {}
        for j in range(ncols):
            if rng.random() < density:
                v = field.reduce(rng.randint(-4, 4))
                if v:
                    row[j] = v
        rows.append(row)
    return rows


def dense(rows, ncols):
    return [[r.get(j, 0) for j in range(ncols)] for r in rows]


@pytest.mark.parametrize("field", [QQ, F7, FieldSpec.prime(32003)])
def test_rank_matches_dense_oracle(field):
    rng = random.Random(1)
    for _ in range(60):
        m, n = rng.randint(1, 12), rng.randint(1, 12)
        rows = random_rows(rng, m, n, rng.random(), field)
        assert linalg.rank(rows, field, n) == dense_rank(dense(rows, n), field.characteristic)


@pytest.mark.skipif(not linalg.compiled_available(), reason="compiled kernels not built")
@pytest.mark.parametrize("field", [QQ, F7])
def test_backends_agree(field):
    rng = random.Random(2)
    try:
        for _ in range(80):
            m, n = rng.randint(1, 15), rng.randint(1, 15)
            rows = random_rows(rng, m, n, rng.random(), field)
            linalg.use_backend("python")
            a = linalg.rref(rows, field, n)
            linalg.use_backend("cython")
            b = linalg.rref(rows, field, n)
            assert a == b
    finally:
        linalg.use_backend("cython")


def test_python_backend_is_selectable():
    before = linalg.backend()
    try:
        linalg.use_backend("python")
        assert linalg.backend() == _kernels_py.BACKEND == "python"
    finally:
        linalg.use_backend(before)
    with pytest.raises(ValueError):
        linalg.use_backend("fortran")


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from([QQ, F7]))
def test_nullspace_and_solve(seed, field):
    rng = random.Random(seed)
    m, n = rng.randint(1, 8), rng.randint(1, 8)
    rows = random_rows(rng, m, n, 0.5, field)
    kernel = linalg.nullspace(rows, n, field)
    assert len(kernel) + linalg.rank(rows, field, n) == n
    for x in kernel:
        for r in rows:
            assert field.reduce(sum(r.get(j, 0) * v for j, v in x.items())) == 0
    # a consistent right-hand side is always solved exactly
    x0 = {j: field.reduce(rng.randint(-3, 3)) for j in range(n)}
    rhs = {i: field.reduce(sum(r.get(j, 0) * v for j, v in x0.items())) for i, r in enumerate(rows)}
    rhs = {i: v for i, v in rhs.items() if v}
    x = linalg.solve(rows, rhs, n, field)
    assert x is not None
    for i, r in enumerate(rows):
        assert field.reduce(sum(r.get(j, 0) * v for j, v in x.items())) == rhs.get(i, 0)


def test_solve_inconsistent():
    rows = [{0: 1, 1: 1}, {0: 2, 1: 2}]
    assert linalg.solve(rows, {0: 1, 1: 3}, 2, QQ) is None
    assert linalg.solve(rows, {0: 1, 1: 2}, 2, QQ) == {0: 1}
