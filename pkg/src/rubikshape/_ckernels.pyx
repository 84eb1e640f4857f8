# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled BFS kernels over packed color states (2 bits per edge)."""

import numpy as np

cdef enum:
    UNSEEN = 255


def expand(const unsigned int[::1] frontier, const signed char[:, ::1] images):
    """Apply every move to every state; output is state-major, move-minor."""
    cdef Py_ssize_t n = frontier.shape[0]
    cdef Py_ssize_t m = images.shape[0]
    cdef Py_ssize_t e = images.shape[1]
    out = np.empty(n * m, dtype=np.uint32)
    cdef unsigned int[::1] o = out
    cdef Py_ssize_t i, mv, x
    cdef unsigned int s, t
    with nogil:
        for i in range(n):
            s = frontier[i]
            for mv in range(m):
                t = 0
                for x in range(e):
                    t |= ((s >> (2 * x)) & 3u) << (2 * images[mv, x])
                o[i * m + mv] = t
    return out


def merge(const unsigned int[::1] candidates, unsigned char[::1] dist,
          unsigned char[::1] parent, int level, int n_moves):
    """Mark first-seen candidates with ``level``; return them in order."""
    cdef Py_ssize_t n = candidates.shape[0]
    out = np.empty(n, dtype=np.uint32)
    cdef unsigned int[::1] o = out
    cdef Py_ssize_t i, c = 0
    cdef unsigned int s
    with nogil:
        for i in range(n):
            s = candidates[i]
            if dist[s] == UNSEEN:
                dist[s] = level
                parent[s] = i % n_moves
                o[c] = s
                c += 1
    return out[:c]
