# cython: boundscheck=False, wraparound=False
"""Compiled canonicalization kernel.

min_coset is the innermost loop of the whole library: every element
construction, group action, pair canonicalization and orbit dedup
funnels through it.
"""


def min_coset(tuple t, tuple perms):
    """Lexicographically least tuple among { (t[p[0]], ..., t[p[n-1]]) : p in perms }.

    ``perms`` must contain the identity (it always does for a group).
    """
    cdef tuple best = t
    cdef tuple cand
    cdef tuple p
    cdef Py_ssize_t i, n = len(t)
    for p in perms:
        cand = tuple([t[<Py_ssize_t> p[i]] for i in range(n)])
        if cand < best:
            best = cand
    return best


def apply_positions(tuple t, tuple p):
    """Permute tuple positions: result[i] = t[p[i]]."""
    cdef Py_ssize_t i, n = len(t)
    return tuple([t[<Py_ssize_t> p[i]] for i in range(n)])
