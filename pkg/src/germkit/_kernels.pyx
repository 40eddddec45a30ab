# cython: language_level=3
# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled verification kernels over multiplication tables.

Mirror of _kernels_py with tight C loops; selected by germkit.kernels when
the build produced this extension.  Scan order matches the fallback exactly
so witness encodings agree across backends.
"""

import numpy as np

from libc.stdint cimport int32_t, uint8_t, uint64_t

cdef extern from *:
    """
    #if defined(_MSC_VER)
    #include <intrin.h>
    static int ctz64(unsigned long long x) { unsigned long i; _BitScanForward64(&i, x); return (int)i; }
    #else
    static int ctz64(unsigned long long x) { return __builtin_ctzll(x); }
    #endif
    """
    int ctz64(uint64_t x) nogil


def associativity_witness(int32_t[:, ::1] table):
    cdef Py_ssize_t n = table.shape[0]
    cdef Py_ssize_t a, b, c
    cdef int32_t ab
    for a in range(n):
        for b in range(n):
            ab = table[a, b]
            for c in range(n):
                if table[ab, c] != table[a, table[b, c]]:
                    return a * n * n + b * n + c
    return -1


def inverse_scan(int32_t[:, ::1] table):
    cdef Py_ssize_t n = table.shape[0]
    inv_arr = np.full(n, -1, dtype=np.int32)
    counts_arr = np.zeros(n, dtype=np.int32)
    cdef int32_t[::1] inv = inv_arr
    cdef int32_t[::1] counts = counts_arr
    cdef Py_ssize_t a, b
    for a in range(n):
        for b in range(n):
            if table[table[a, b], a] == a and table[table[b, a], b] == b:
                counts[a] += 1
                if inv[a] < 0:
                    inv[a] = <int32_t> b
    return inv_arr, counts_arr


def leq_matrix(int32_t[:, ::1] table, int32_t[::1] inv):
    cdef Py_ssize_t n = table.shape[0]
    leq_arr = np.zeros((n, n), dtype=np.uint8)
    cdef uint8_t[:, ::1] leq = leq_arr
    cdef Py_ssize_t a, b
    for a in range(n):
        for b in range(n):
            if table[table[b, inv[a]], a] == a:
                leq[a, b] = 1
    return leq_arr


cdef inline Py_ssize_t _extreme_search(uint64_t[:, ::1] bound, uint64_t[::1] scratch,
                                       Py_ssize_t words, Py_ssize_t a, Py_ssize_t b) nogil:
    # glb/lub of {a, b} given bound[x] = bitset of elements below (above) x;
    # candidates scanned in ascending index for determinism.
    cdef Py_ssize_t w, w2, c
    cdef uint64_t bits
    cdef int ok
    for w in range(words):
        scratch[w] = bound[a, w] & bound[b, w]
    for w in range(words):
        bits = scratch[w]
        while bits:
            c = (w << 6) + ctz64(bits)
            ok = 1
            for w2 in range(words):
                if scratch[w2] & ~bound[c, w2]:
                    ok = 0
                    break
            if ok:
                return c
            bits &= bits - 1
    return -1


cdef _extreme_table(uint8_t[:, ::1] member, bint by_column):
    cdef Py_ssize_t n = member.shape[0]
    cdef Py_ssize_t words = (n + 63) >> 6
    bound_arr = np.zeros((n, words), dtype=np.uint64)
    cdef uint64_t[:, ::1] bound = bound_arr
    cdef Py_ssize_t a, c
    for a in range(n):
        for c in range(n):
            if (member[c, a] if by_column else member[a, c]):
                bound[a, c >> 6] |= (<uint64_t> 1) << (c & 63)
    out_arr = np.full((n, n), -1, dtype=np.int32)
    cdef int32_t[:, ::1] out = out_arr
    scratch_arr = np.zeros(words, dtype=np.uint64)
    cdef uint64_t[::1] scratch = scratch_arr
    cdef Py_ssize_t b, found
    for a in range(n):
        for b in range(a, n):
            found = _extreme_search(bound, scratch, words, a, b)
            out[a, b] = <int32_t> found
            out[b, a] = <int32_t> found
    return out_arr


def meet_table(uint8_t[:, ::1] leq):
    return _extreme_table(leq, True)


def join_table(uint8_t[:, ::1] leq):
    return _extreme_table(leq, False)


def orthogonality_matrix(int32_t[:, ::1] table, int32_t[::1] inv, int zero):
    cdef Py_ssize_t n = table.shape[0]
    orth_arr = np.zeros((n, n), dtype=np.uint8)
    cdef uint8_t[:, ::1] orth = orth_arr
    cdef Py_ssize_t a, b
    for a in range(n):
        for b in range(n):
            if table[a, inv[b]] == zero and table[inv[a], b] == zero:
                orth[a, b] = 1
    return orth_arr


def additivity_witness(int32_t[:, ::1] table, uint8_t[:, ::1] orth, int32_t[:, ::1] join):
    cdef Py_ssize_t n = table.shape[0]
    cdef Py_ssize_t a, b, chi
    cdef int32_t j, sub
    for a in range(n):
        for b in range(n):
            if not orth[a, b]:
                continue
            j = join[a, b]
            if j < 0:
                continue
            for chi in range(n):
                sub = join[table[chi, a], table[chi, b]]
                if sub != table[chi, j]:
                    return ((a * n + b) * n + chi) * 2
            for chi in range(n):
                sub = join[table[a, chi], table[b, chi]]
                if sub != table[j, chi]:
                    return ((a * n + b) * n + chi) * 2 + 1
    return -1
