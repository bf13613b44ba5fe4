"""Exact sparse linear algebra over a :class:`~ainfty.graded.FieldSpec`.

Vectors and matrix rows are ``{index: scalar}`` dicts without zero entries.
The elimination kernels come from the compiled ``_kernels`` extension when it
is importable, otherwise from ``_kernels_py``; set ``AINFTY_PURE_PYTHON=1`` to
force the fallback.
"""

from __future__ import annotations

import os
from collections import Counter
from fractions import Fraction

from . import _kernels_py

if os.environ.get("AINFTY_PURE_PYTHON"):
    _kernels = _kernels_py
else:
    try:
        from . import _kernels  # type: ignore[attr-defined]
    except ImportError:
        _kernels = _kernels_py

BACKEND = _kernels.BACKEND


def use_backend(name: str) -> None:
    """Switch kernels at runtime ("cython" or "python"); used by tests and benchmarks."""
    global _kernels, BACKEND
    if name == "python":
        _kernels = _kernels_py
    elif name == "cython":
        from . import _kernels as compiled  # type: ignore[attr-defined]

        _kernels = compiled
    else:
        raise ValueError(f"unknown backend {name!r}")
    BACKEND = _kernels.BACKEND


def backend() -> str:
    """Name of the active elimination kernel."""
    return _kernels.BACKEND


def compiled_available() -> bool:
    try:
        from . import _kernels  # noqa: F401
    except ImportError:
        return False
    return True


def _ncols(rows, ncols):
    if ncols is not None:
        return ncols
    return 1 + max((max(r) for r in rows if r), default=-1)


def echelon(rows, field, ncols=None):
    """Row echelon form as ``[(pivot_col, row)]``; rows are normalised to lead 1."""
    rows = [r for r in rows if r]
    n = _ncols(rows, ncols)
    if field.characteristic:
        return _kernels.echelon_modp(rows, n, field.characteristic)
    out = []
    for c, row in _kernels.echelon_qq(rows, n):
        lead = row[c]
        if lead == 1:
            out.append((c, dict(row)))
        else:
            out.append((c, {k: field.reduce(Fraction(v, lead)) for k, v in row.items()}))
    return out


def _sparse_first(rows):
    """Relabel columns by occupancy and sort rows by length.

    Rank does not see the order, but fill-in (and integer growth over Q)
    drops sharply when the sparsest columns are eliminated first.
    """
    count = Counter(c for r in rows for c in r)
    label = {c: i for i, c in enumerate(sorted(count, key=lambda c: (count[c], c)))}
    return sorted(({label[c]: v for c, v in r.items()} for r in rows), key=len), len(label)


def rank(rows, field, ncols=None) -> int:
    rows = [r for r in rows if r]
    if not rows:
        return 0
    rows, n = _sparse_first(rows)
    if field.characteristic:
        return len(_kernels.echelon_modp(rows, n, field.characteristic))
    return len(_kernels.echelon_qq(rows, n))


def rref(rows, field, ncols=None):
    """Reduced row echelon form, sorted by pivot column."""
    ech = sorted(echelon(rows, field, ncols), key=lambda t: t[0])
    reduced = {}
    for c, row in reversed(ech):
        row = dict(row)
        for c2 in [k for k in row if k != c and k in reduced]:
            v = row.pop(c2)
            for k, w in reduced[c2].items():
                if k == c2:
                    continue
                nv = field.reduce(row.get(k, 0) - v * w)
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        reduced[c] = row
    return [(c, reduced[c]) for c, _ in ech]


def nullspace(rows, ncols: int, field) -> list[dict]:
    """Basis of ``{x : row . x = 0 for every row}`` in ``field**ncols``.

    One vector per free column, in increasing column order, with a 1 in that
    column and zeros in the other free columns.
    """
    red = rref(rows, field, ncols)
    pivot_cols = {c for c, _ in red}
    basis = []
    for f in range(ncols):
        if f in pivot_cols:
            continue
        x = {f: 1}
        for c, row in red:
            v = row.get(f)
            if v:
                x[c] = field.reduce(-v)
        basis.append(x)
    return basis


def solve(rows, rhs, ncols: int, field):
    """A solution of ``rows . x = rhs`` with free variables zero, or None.

    ``rhs`` is a ``{row_index: value}`` dict aligned with ``rows``.
    """
    aug = []
    for i, r in enumerate(rows):
        row = dict(r)
        b = rhs.get(i)
        if b:
            row[ncols] = b
        aug.append(row)
    for i in rhs:
        if i >= len(rows) and rhs[i]:
            return None
    red = rref(aug, field, ncols + 1)
    x = {}
    for c, row in red:
        if c == ncols:
            return None
        b = row.get(ncols)
        if b:
            x[c] = b
    return x


def transpose(columns) -> list[dict]:
    """Rows of the matrix whose j-th column is the sparse vector ``columns[j]``."""
    rows: dict[int, dict] = {}
    for j, col in enumerate(columns):
        for i, v in col.items():
            rows.setdefault(i, {})[j] = v
    if not rows:
        return []
    return [rows.get(i, {}) for i in range(max(rows) + 1)]


def matmul_vec(columns, x, field) -> dict:
    """``M x`` for ``M`` given by sparse columns."""
    out: dict = {}
    for j, a in x.items():
        for i, v in columns[j].items():
            out[i] = out.get(i, 0) + a * v
    return {i: r for i, v in out.items() if (r := field.reduce(v))}
