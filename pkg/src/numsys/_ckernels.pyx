# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same contracts as ``numsys._pykernels``."""

from libc.stdlib cimport malloc, free, qsort


def vecmat_mod(tuple vec, const long long[:] indptr, const long long[:] indices,
               const long long[:] data, long long q):
    cdef Py_ssize_t dim = len(vec), g, t
    cdef long long c, j
    cdef long long *out = <long long *> malloc(dim * sizeof(long long))
    if out == NULL:
        raise MemoryError()
    try:
        for g in range(dim):
            out[g] = 0
        for g in range(dim):
            c = vec[g]
            if c == 0:
                continue
            for t in range(indptr[g], indptr[g + 1]):
                j = indices[t]
                out[j] = (out[j] + (c * data[t]) % q) % q
        return tuple([out[g] for g in range(dim)])
    finally:
        free(out)


def dot_mod(tuple vec, const long long[:] col, long long q):
    cdef Py_ssize_t i, n = len(vec)
    cdef long long a, total = 0
    for i in range(n):
        a = vec[i]
        if a and col[i]:
            total = (total + (a * col[i]) % q) % q
    return total


cdef int _cmp_ll(const void *a, const void *b) noexcept nogil:
    cdef long long x = (<const long long *> a)[0]
    cdef long long y = (<const long long *> b)[0]
    return (x > y) - (x < y)


def moore_classes(const long long[:] delta, Py_ssize_t n_states, Py_ssize_t n_letters, init):
    cdef Py_ssize_t n = n_states, s, j, i
    cdef long long *cls = <long long *> malloc(n * sizeof(long long) + 1)
    cdef long long *new = <long long *> malloc(n * sizeof(long long) + 1)
    cdef long long *keys = <long long *> malloc(n * sizeof(long long) + 1)
    cdef long long *remap = <long long *> malloc(n * sizeof(long long) + 1)
    cdef long long count, ncount, prev, k, idx
    if cls == NULL or new == NULL or keys == NULL or remap == NULL:
        free(cls); free(new); free(keys); free(remap)
        raise MemoryError()
    try:
        ids = {}
        for s in range(n):
            cls[s] = ids.setdefault(init[s], len(ids))
        count = len(ids)
        while True:
            for s in range(n):
                new[s] = cls[s]
            for j in range(n_letters):
                for s in range(n):
                    keys[s] = (new[s] * n + cls[delta[s * n_letters + j]]) * n + s
                qsort(keys, n, sizeof(long long), _cmp_ll)
                ncount = -1
                prev = -1
                for i in range(n):
                    k = keys[i] // n
                    idx = keys[i] % n
                    if k != prev:
                        ncount += 1
                        prev = k
                    new[idx] = ncount
            ncount = 0
            for s in range(n):
                remap[s] = -1
            for s in range(n):
                if remap[new[s]] < 0:
                    remap[new[s]] = ncount
                    ncount += 1
                new[s] = remap[new[s]]
            if ncount == count:
                return [new[s] for s in range(n)]
            count = ncount
            for s in range(n):
                cls[s] = new[s]
    finally:
        free(cls); free(new); free(keys); free(remap)
