# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twins of the loops in ``_kernels_py``."""

from libc.stdlib cimport malloc, free


cdef int* _flat(table, Py_ssize_t rows, Py_ssize_t cols) except NULL:
    cdef int* buf = <int*> malloc(max(rows * cols, 1) * sizeof(int))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j
    for i in range(rows):
        row = table[i]
        for j in range(cols):
            buf[i * cols + j] = row[j]
    return buf


cdef int* _vec(seq, Py_ssize_t n) except NULL:
    cdef int* buf = <int*> malloc(max(n, 1) * sizeof(int))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        buf[i] = seq[i]
    return buf


def associativity_witness(mul):
    cdef Py_ssize_t n = len(mul)
    cdef int* m = _flat(mul, n, n)
    cdef Py_ssize_t x, y, z
    cdef int xy
    try:
        for x in range(n):
            for y in range(n):
                xy = m[x * n + y]
                for z in range(n):
                    if m[xy * n + z] != m[x * n + m[y * n + z]]:
                        return (x, y, z)
        return None
    finally:
        free(m)


def associativity_witness_sampled(mul, triples):
    cdef Py_ssize_t n = len(mul)
    cdef int* m = _flat(mul, n, n)
    cdef int x, y, z
    try:
        for t in triples:
            x, y, z = t
            if m[m[x * n + y] * n + z] != m[x * n + m[y * n + z]]:
                return (x, y, z)
        return None
    finally:
        free(m)


def derivation_tables(mul_g, mul_a, act, gens, order, parent, via):
    cdef Py_ssize_t n = len(mul_g)
    cdef Py_ssize_t na = len(mul_a)
    cdef Py_ssize_t k = len(gens)
    cdef Py_ssize_t no = len(order)
    cdef int* mg = _flat(mul_g, n, n)
    cdef int* ma = _flat(mul_a, na, na)
    cdef int* ac = _flat(act, n, na)
    cdef int* gs = _vec(gens, k)
    cdef int* od = _vec(order, no)
    cdef int* par = _vec(parent, n)
    cdef int* vi = _vec(via, n)
    cdef int* values = <int*> malloc(max(n, 1) * sizeof(int))
    cdef int* assign = <int*> malloc(max(k, 1) * sizeof(int))
    cdef Py_ssize_t i, j, x, g, h, e, p
    cdef bint ok
    found = []
    try:
        for i in range(n):
            values[i] = 0
        for i in range(k):
            assign[i] = 0
        if na == 0:
            return found
        while True:
            for j in range(no):
                e = od[j]
                p = par[e]
                values[e] = ma[values[p] * na + ac[p * na + assign[vi[e]]]]
            ok = True
            for x in range(n):
                for i in range(k):
                    if values[mg[x * n + gs[i]]] != ma[values[x] * na + ac[x * na + assign[i]]]:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                for g in range(n):
                    for h in range(n):
                        if values[mg[g * n + h]] != ma[values[g] * na + ac[g * na + values[h]]]:
                            ok = False
                            break
                    if not ok:
                        break
            if ok:
                found.append(tuple([values[i] for i in range(n)]))
            # odometer, last generator fastest (matches itertools.product)
            i = k - 1
            while i >= 0:
                assign[i] += 1
                if assign[i] < na:
                    break
                assign[i] = 0
                i -= 1
            if i < 0:
                break
        return found
    finally:
        free(mg); free(ma); free(ac); free(gs); free(od); free(par); free(vi)
        free(values); free(assign)


def principal_orbit(values, mul_a, inv_a, act):
    cdef Py_ssize_t n = len(values)
    cdef Py_ssize_t na = len(mul_a)
    cdef int* ma = _flat(mul_a, na, na)
    cdef int* ac = _flat(act, n, na)
    cdef int* iv = _vec(inv_a, na)
    cdef int* vals = _vec(values, n)
    cdef Py_ssize_t a, g
    cdef int left
    out = []
    try:
        for a in range(na):
            left = iv[a]
            out.append(tuple([ma[ma[left * na + vals[g]] * na + ac[g * na + a]] for g in range(n)]))
        return out
    finally:
        free(ma); free(ac); free(iv); free(vals)
