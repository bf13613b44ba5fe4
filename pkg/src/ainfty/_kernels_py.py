"""Pure-Python sparse elimination kernels (fallback for ``_kernels``).

Rows are ``{column: value}`` dicts.  Both kernels return the echelon form as a
list of ``(pivot_column, row)`` pairs in insertion order; every row is reduced
at all pivot columns that existed when it was inserted, and has no entries
left of its pivot.
"""

from heapq import heapify, heappop, heappush
from math import gcd

BACKEND = "python"


def echelon_modp(rows, ncols, p):
    pivots = {}
    out = []
    for r in rows:
        acc = {}
        for c, v in r.items():
            v %= p
            if v:
                acc[c] = v
        heap = list(acc)
        heapify(heap)
        while heap:
            c = heappop(heap)
            v = acc.get(c)
            if not v:
                continue
            prow = pivots.get(c)
            if prow is None:
                inv = pow(v, -1, p)
                new = {cc: vv * inv % p for cc, vv in acc.items()}
                pivots[c] = new
                out.append((c, new))
                break
            del acc[c]
            for c2, w in prow.items():
                if c2 == c:
                    continue
                old = acc.get(c2)
                nv = ((old or 0) - v * w) % p
                if nv:
                    if old is None:
                        heappush(heap, c2)
                    acc[c2] = nv
                elif old is not None:
                    del acc[c2]
    return out


def _integer_row(r):
    den = 1
    for v in r.values():
        d = getattr(v, "denominator", 1)
        if d != 1:
            den = den * d // gcd(den, d)
    row = {}
    for c, v in r.items():
        if v:
            row[c] = int(v * den)
    return row


def _primitive(row):
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g != 1:
        row = {c: v // g for c, v in row.items()}
    return row


def echelon_qq(rows, ncols):
    """Fraction-free elimination over Q; pivot rows are primitive integer rows."""
    pivots = {}
    out = []
    for r in rows:
        acc = _integer_row(r)
        heap = list(acc)
        heapify(heap)
        while heap:
            c = heappop(heap)
            v = acc.get(c)
            if not v:
                continue
            prow = pivots.get(c)
            if prow is None:
                new = _primitive(acc)
                pivots[c] = new
                out.append((c, new))
                break
            lead = prow[c]
            g = gcd(lead, v)
            s, t = lead // g, v // g
            del acc[c]
            if s != 1:
                for k in acc:
                    acc[k] *= s
            for c2, w in prow.items():
                if c2 == c:
                    continue
                old = acc.get(c2)
                nv = (old or 0) - t * w
                if nv:
                    if old is None:
                        heappush(heap, c2)
                    acc[c2] = nv
                elif old is not None:
                    del acc[c2]
            if s != 1 and acc:
                acc = _primitive(acc)
    return out
