# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled xoshiro256** Bernoulli kernels; same contract as ``_pykernels``."""

from libc.stdint cimport uint64_t


cdef inline uint64_t _rotl(uint64_t x, int k) nogil:
    return (x << k) | (x >> (64 - k))


cdef inline uint64_t _next(uint64_t* s) nogil:
    cdef uint64_t result = _rotl(s[1] * 5, 7) * 9
    cdef uint64_t t = s[1] << 17
    s[2] ^= s[0]
    s[3] ^= s[1]
    s[1] ^= s[2]
    s[0] ^= s[3]
    s[2] ^= t
    s[3] = _rotl(s[3], 45)
    return result


cdef inline void _load(tuple state, uint64_t* s):
    s[0] = state[0]
    s[1] = state[1]
    s[2] = state[2]
    s[3] = state[3]


def next_u64(tuple state, Py_ssize_t count):
    cdef uint64_t s[4]
    cdef Py_ssize_t i
    _load(state, s)
    out = [0] * count
    for i in range(count):
        out[i] = _next(s)
    return out, (s[0], s[1], s[2], s[3])


def bernoulli_draws(tuple state, uint64_t threshold, Py_ssize_t count):
    cdef uint64_t s[4]
    cdef Py_ssize_t i
    _load(state, s)
    cdef bytearray buf = bytearray(count)
    cdef unsigned char[:] view = buf
    with nogil:
        for i in range(count):
            view[i] = 1 if (_next(s) >> 11) < threshold else 0
    return bytes(buf), (s[0], s[1], s[2], s[3])


def bernoulli_count(tuple state, uint64_t threshold, Py_ssize_t count):
    cdef uint64_t s[4]
    cdef Py_ssize_t i
    cdef Py_ssize_t hits = 0
    _load(state, s)
    with nogil:
        for i in range(count):
            if (_next(s) >> 11) < threshold:
                hits += 1
    return hits, (s[0], s[1], s[2], s[3])
