# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled sparse elimination kernels.

Same contract as ``_kernels_py``: rows in, ``(pivot_column, row)`` pairs out.
The mod-p kernel keeps pivot rows in C++ vectors and reduces each incoming row
in a dense int64 accumulator, visiting columns through a min-heap.
"""

from libc.stdlib cimport malloc, calloc, free
from libcpp.vector cimport vector
from libcpp.pair cimport pair
from libcpp.queue cimport priority_queue
from math import gcd

BACKEND = "cython"

ctypedef long long i64
ctypedef pair[int, i64] entry


cdef inline i64 _inv(i64 a, i64 p):
    cdef i64 t = 0, nt = 1, r = p, nr = a % p, q, tmp
    if nr < 0:
        nr += p
    while nr:
        q = r // nr
        tmp = t - q * nt; t = nt; nt = tmp
        tmp = r - q * nr; r = nr; nr = tmp
    if t < 0:
        t += p
    return t


def echelon_modp(rows, int ncols, i64 p):
    cdef vector[vector[entry]] prows
    cdef vector[int] pcols
    cdef int* pivot_of = <int*> malloc(ncols * sizeof(int))
    cdef i64* acc = <i64*> calloc(ncols, sizeof(i64))
    cdef char* queued = <char*> calloc(ncols, sizeof(char))
    cdef priority_queue[int] heap
    cdef vector[int] touched
    cdef vector[entry] new
    cdef int c, c2, k, pr
    cdef i64 v, w, inv
    cdef size_t j
    if pivot_of == NULL or acc == NULL or queued == NULL:
        free(pivot_of); free(acc); free(queued)
        raise MemoryError()
    try:
        for c in range(ncols):
            pivot_of[c] = -1
        for r in rows:
            touched.clear()
            for key, val in r.items():
                c = key
                v = val % p
                if v:
                    acc[c] = v
                    queued[c] = 1
                    touched.push_back(c)
                    heap.push(-c)
            while not heap.empty():
                c = -heap.top()
                heap.pop()
                queued[c] = 0
                v = acc[c]
                if v == 0:
                    continue
                pr = pivot_of[c]
                if pr < 0:
                    inv = _inv(v, p)
                    new.clear()
                    new.push_back(entry(c, 1))
                    acc[c] = 0
                    while not heap.empty():
                        c2 = -heap.top()
                        heap.pop()
                        if not queued[c2]:
                            continue
                        queued[c2] = 0
                        if acc[c2]:
                            new.push_back(entry(c2, acc[c2] * inv % p))
                            acc[c2] = 0
                    pivot_of[c] = <int> prows.size()
                    prows.push_back(new)
                    pcols.push_back(c)
                    break
                acc[c] = 0
                for j in range(1, prows[pr].size()):
                    c2 = prows[pr][j].first
                    w = prows[pr][j].second
                    acc[c2] = (acc[c2] - v * w) % p
                    if acc[c2] < 0:
                        acc[c2] += p
                    if not queued[c2]:
                        queued[c2] = 1
                        touched.push_back(c2)
                        heap.push(-c2)
            for j in range(touched.size()):
                acc[touched[j]] = 0
                queued[touched[j]] = 0
            while not heap.empty():
                heap.pop()
        out = []
        for k in range(<int> prows.size()):
            out.append((pcols[k], {prows[k][j].first: prows[k][j].second for j in range(prows[k].size())}))
        return out
    finally:
        free(pivot_of)
        free(acc)
        free(queued)


cdef dict _integer_row(dict r):
    cdef object den = 1
    for v in r.values():
        d = getattr(v, "denominator", 1)
        if d != 1:
            den = den * d // gcd(den, d)
    return {c: int(v * den) for c, v in r.items() if v}


cdef dict _primitive(dict row):
    cdef object g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    if row[min(row)] < 0:
        g = -g
    if g != 1:
        row = {c: v // g for c, v in row.items()}
    return row


def echelon_qq(rows, int ncols):
    cdef dict pivots = {}
    cdef list out = []
    cdef priority_queue[int] heap
    cdef dict acc, prow
    cdef int c, c2
    for r in rows:
        acc = _integer_row(r)
        for c in acc:
            heap.push(-c)
        while not heap.empty():
            c = -heap.top()
            heap.pop()
            v = acc.get(c)
            if not v:
                continue
            prow = pivots.get(c)
            if prow is None:
                acc = _primitive(acc)
                pivots[c] = acc
                out.append((c, acc))
                break
            lead = prow[c]
            g = gcd(lead, v)
            s = lead // g
            t = v // g
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
                        heap.push(-c2)
                    acc[c2] = nv
                elif old is not None:
                    del acc[c2]
            if s != 1 and acc:
                acc = _primitive(acc)
        while not heap.empty():
            heap.pop()
    return out
