# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the hot kernels; see _kernels_py for the contract."""

from libc.stdlib cimport malloc, free


def free_reduce(letters):
    cdef Py_ssize_t m = len(letters)
    cdef Py_ssize_t top = 0
    cdef Py_ssize_t i
    cdef long x
    cdef long *stack = <long *> malloc((m + 1) * sizeof(long))
    if stack == NULL:
        raise MemoryError()
    try:
        for i in range(m):
            x = letters[i]
            if top > 0 and stack[top - 1] == -x:
                top -= 1
            else:
                stack[top] = x
                top += 1
        return tuple([stack[i] for i in range(top)])
    finally:
        free(stack)


cdef int _relabel(const int *flat, int n, int k, int *inv, int *new,
                  int *order, int *out) noexcept nogil:
    # returns 1 and fills `out` when transitive, else 0
    cdef int j, x, y, t, base, head, tail
    for j in range(n):
        base = j * k
        for x in range(k):
            inv[base + flat[base + x]] = x
    for x in range(k):
        new[x] = -1
    new[0] = 0
    order[0] = 0
    head = 0
    tail = 1
    while head < tail:
        x = order[head]
        head += 1
        for j in range(n):
            for t in range(2):
                if t == 0:
                    y = flat[j * k + x]
                else:
                    y = inv[j * k + x]
                if new[y] < 0:
                    new[y] = tail
                    order[tail] = y
                    tail += 1
    if tail < k:
        return 0
    for j in range(n):
        base = j * k
        for x in range(k):
            out[base + new[x]] = new[flat[base + x]]
    return 1


def canonical_action(flat, int n, int k):
    cdef int size = n * k
    cdef int i
    cdef int *buf = <int *> malloc((3 * size + 2 * k + 1) * sizeof(int))
    if buf == NULL:
        raise MemoryError()
    cdef int *src = buf
    cdef int *inv = buf + size
    cdef int *out = buf + 2 * size
    cdef int *new = buf + 3 * size
    cdef int *order = new + k
    try:
        for i in range(size):
            src[i] = flat[i]
        if not _relabel(src, n, k, inv, new, order, out):
            return None
        return tuple([out[i] for i in range(size)])
    finally:
        free(buf)


cdef int _next_perm(int *p, int k) noexcept nogil:
    # lexicographic successor in place; 0 when p was the last permutation
    cdef int i = k - 2
    cdef int j, tmp
    while i >= 0 and p[i] >= p[i + 1]:
        i -= 1
    if i < 0:
        return 0
    j = k - 1
    while p[j] <= p[i]:
        j -= 1
    tmp = p[i]; p[i] = p[j]; p[j] = tmp
    i += 1
    j = k - 1
    while i < j:
        tmp = p[i]; p[i] = p[j]; p[j] = tmp
        i += 1
        j -= 1
    return 1


def enumerate_canonical_actions(int n, int k):
    cdef long nperm = 1
    cdef int i, j, d, same
    for i in range(2, k + 1):
        nperm *= i
    cdef int size = n * k
    cdef int *table = <int *> malloc(nperm * k * sizeof(int))
    cdef int *idx = <int *> malloc((n + 1) * sizeof(int))
    cdef int *flat = <int *> malloc((3 * size + 2 * k + 1) * sizeof(int))
    if table == NULL or idx == NULL or flat == NULL:
        free(table); free(idx); free(flat)
        raise MemoryError()
    cdef int *inv = flat + size
    cdef int *out = flat + 2 * size
    cdef int *new = flat + 3 * size
    cdef int *order = new + k
    cdef int *p = table
    found = []
    try:
        for i in range(k):
            p[i] = i
        for i in range(1, nperm):
            for j in range(k):
                table[i * k + j] = table[(i - 1) * k + j]
            _next_perm(table + i * k, k)
        for j in range(n):
            idx[j] = 0
        while True:
            for j in range(n):
                for i in range(k):
                    flat[j * k + i] = table[idx[j] * k + i]
            if _relabel(flat, n, k, inv, new, order, out):
                same = 1
                for i in range(size):
                    if out[i] != flat[i]:
                        same = 0
                        break
                if same:
                    found.append(tuple([flat[i] for i in range(size)]))
            # odometer over n permutation indices, last digit fastest
            d = n - 1
            while d >= 0:
                idx[d] += 1
                if idx[d] < nperm:
                    break
                idx[d] = 0
                d -= 1
            if d < 0:
                break
    finally:
        free(table)
        free(idx)
        free(flat)
    found.sort()
    return found
