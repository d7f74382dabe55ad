# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled chart kernels; same contract as _kernels_py.

Arithmetic is done in 64-bit integers with an explicit headroom check;
OverflowError is raised when a value could leave the safe range, and the
dispatcher then retries in pure Python.
"""

from libc.stdlib cimport malloc, free

cdef long long LIMIT = 1LL << 62


cdef inline long long _step(long long b, long long u, long long v) except? -1:
    # b*u - v with overflow guard
    if u != 0 and (u > LIMIT // b or -u > LIMIT // b):
        raise OverflowError("chart coordinate exceeds 64-bit headroom")
    cdef long long r = b * u - v
    if r > LIMIT or r < -LIMIT:
        raise OverflowError("chart coordinate exceeds 64-bit headroom")
    return r


def chart_count(cycle, long long T):
    cdef long long total = 0
    cdef long long tri = T * (T - 1) // 2
    cdef long long b
    for b in cycle:
        total += (b - 2) * tri
    return total


def chart_points(cycle, long long T):
    cdef Py_ssize_t r = len(cycle)
    cdef long long *bs = <long long *> malloc(r * sizeof(long long))
    if bs == NULL:
        raise MemoryError()
    cdef Py_ssize_t j, i
    cdef long long p, q, u, v, t, b
    out = []
    try:
        for j in range(r):
            bs[j] = cycle[j]
        for j in range(r):
            b = bs[j]
            for q in range(1, T):
                for p in range(q + 1, (b - 1) * q + 1):
                    u = p
                    v = q
                    for i in range(j - 1, -1, -1):
                        t = _step(bs[i], u, v)
                        v = u
                        u = t
                    out.append((j, p, q, u, v))
    finally:
        free(bs)
    return out


def min_trace(cycle, t_m1, t_0, long long max_steps=100000):
    cdef Py_ssize_t r = len(cycle)
    cdef long long prev = t_m1
    cdef long long cur = t_0
    cdef long long nxt
    cdef long long j = 0
    cdef long long steps = 0
    while prev <= cur:
        if prev <= 0 or steps > max_steps:
            raise ValueError("trace sequence is not bounded below by a positive value")
        j -= 1
        nxt = _step(cycle[((j % r) + r) % r], prev, cur)
        cur = prev
        prev = nxt
        steps += 1
    while True:
        nxt = _step(cycle[((j % r) + r) % r], cur, prev)
        if nxt >= cur:
            break
        if nxt <= 0 or steps > max_steps:
            raise ValueError("trace sequence is not bounded below by a positive value")
        prev = cur
        cur = nxt
        j += 1
        steps += 1
    if cur <= 0:
        raise ValueError("trace sequence is not bounded below by a positive value")
    return cur, j
