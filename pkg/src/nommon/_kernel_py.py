"""Pure-Python canonicalization kernel (fallback for the compiled one)."""


def min_coset(t, perms):
    """Lexicographically least tuple among { (t[p[0]], ..., t[p[n-1]]) : p in perms }."""
    best = t
    for p in perms:
        cand = tuple(t[i] for i in p)
        if cand < best:
            best = cand
    return best


def apply_positions(t, p):
    """Permute tuple positions: result[i] = t[p[i]]."""
    return tuple(t[i] for i in p)
