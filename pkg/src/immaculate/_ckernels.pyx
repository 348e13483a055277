# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels in ``_pykernels``.

Entries are held in int64; any overflow risk aborts with OverflowError so
the caller can rerun the exact pure-Python path.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint64_t
from libc.stdlib cimport malloc, free

cdef int64_t LIMIT = (<int64_t>1) << 40


def unit_eliminate(rows, Py_ssize_t ncols):
    cdef Py_ssize_t nrows = len(rows)
    if nrows == 0 or ncols == 0:
        return 0, [dict(r) for r in rows if r]
    cdef cnp.ndarray[int64_t, ndim=2] arr = np.zeros((nrows, ncols), dtype=np.int64)
    cdef int64_t[:, :] A = arr
    cdef Py_ssize_t i, j, k, c, t, best_c, best_n, nnz
    cdef int64_t v, f, sign, nv
    for i, r in enumerate(rows):
        for c, v in r.items():
            A[i, c] = v
    cdef cnp.ndarray[int64_t, ndim=1] colcount_arr = np.count_nonzero(arr, axis=0).astype(np.int64)
    cdef int64_t[:] colcount = colcount_arr
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] alive_arr = (np.count_nonzero(arr, axis=1) > 0).astype(np.uint8)
    cdef cnp.uint8_t[:] alive = alive_arr
    cdef cnp.ndarray[Py_ssize_t, ndim=1] nzcols_arr = np.zeros(ncols, dtype=np.intp)
    cdef Py_ssize_t[:] nzcols = nzcols_arr
    cdef Py_ssize_t count = 0
    cdef bint progress = True
    while progress:
        progress = False
        for i in range(nrows):
            if not alive[i]:
                continue
            best_c = -1
            best_n = 0
            nnz = 0
            for c in range(ncols):
                v = A[i, c]
                if v != 0:
                    nzcols[nnz] = c
                    nnz += 1
                    if (v == 1 or v == -1) and (best_c < 0 or colcount[c] < best_n):
                        best_c = c
                        best_n = colcount[c]
            if nnz == 0:
                alive[i] = 0
                continue
            if best_c < 0:
                continue
            sign = A[i, best_c]
            for k in range(nrows):
                if k == i or not alive[k]:
                    continue
                f = A[k, best_c]
                if f == 0:
                    continue
                f = f * sign
                for t in range(nnz):
                    c = nzcols[t]
                    v = A[i, c]
                    nv = A[k, c] - f * v
                    if nv > LIMIT or nv < -LIMIT:
                        raise OverflowError("entry growth beyond int64 safety margin")
                    if A[k, c] == 0 and nv != 0:
                        colcount[c] += 1
                    elif A[k, c] != 0 and nv == 0:
                        colcount[c] -= 1
                    A[k, c] = nv
            for t in range(nnz):
                c = nzcols[t]
                colcount[c] -= 1
                A[i, c] = 0
            alive[i] = 0
            count += 1
            progress = True
    rest = []
    for i in range(nrows):
        if alive[i]:
            d = {}
            for c in range(ncols):
                if A[i, c] != 0:
                    d[c] = int(A[i, c])
            if d:
                rest.append(d)
    return count, rest


cdef void _rec(uint64_t[:, :] out, Py_ssize_t words, uint64_t* cand, Py_ssize_t depth,
               Py_ssize_t length, Py_ssize_t* seq, list results):
    cdef Py_ssize_t w, b, t
    cdef uint64_t bits, low
    cdef uint64_t* nxt
    if depth == length:
        results.append(tuple([seq[t] for t in range(length)]))
        return
    nxt = <uint64_t*> malloc(words * sizeof(uint64_t))
    try:
        for w in range(words):
            bits = cand[w]
            while bits:
                low = bits & (~bits + 1)
                b = 0
                while (low >> b) != 1:
                    b += 1
                bits ^= low
                seq[depth] = w * 64 + b
                for t in range(words):
                    nxt[t] = cand[t] & out[w * 64 + b, t]
                _rec(out, words, nxt, depth + 1, length, seq, results)
    finally:
        free(nxt)


def extend_sequences(out, Py_ssize_t start, Py_ssize_t length):
    cdef Py_ssize_t n = len(out)
    cdef Py_ssize_t words = max(1, (n + 63) // 64)
    cdef Py_ssize_t i, w
    if length <= 0:
        return []
    if length == 1:
        return [(start,)]
    arr = np.zeros((n, words), dtype=np.uint64)
    mask = (1 << 64) - 1
    for i in range(n):
        x = out[i]
        for w in range(words):
            arr[i, w] = (x >> (64 * w)) & mask
    cdef uint64_t[:, :] O = arr
    cdef cnp.ndarray[uint64_t, ndim=1] cand_arr = arr[start].copy()
    cdef uint64_t[:] cand = cand_arr
    cdef cnp.ndarray[Py_ssize_t, ndim=1] seq_arr = np.zeros(length, dtype=np.intp)
    cdef Py_ssize_t[:] seq = seq_arr
    seq[0] = start
    results = []
    _rec(O, words, &cand[0], 1, length, &seq[0], results)
    return results
