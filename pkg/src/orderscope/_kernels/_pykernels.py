"""Pure-Python zero-sum search kernels.

Group elements are integer indices into a flat addition table
``add[i * n + j]``; index 0 is the identity.  Sets of subsequence sums are
Python int bitmasks.  ``_ckernels.pyx`` implements the same functions.
"""


def _translate(add, n, mask, g):
    out = 0
    while mask:
        low = mask & -mask
        h = low.bit_length() - 1
        out |= 1 << add[h * n + g]
        mask ^= low
    return out


def _extend(add, n, mask, g):
    return mask | (1 << g) | _translate(add, n, mask, g)


def reachable_sums(add, n, elems):
    """Bitmask of the sums of all nonempty subsequences of ``elems``."""
    mask = 0
    for g in elems:
        mask = _extend(add, n, mask, g)
    return mask


def zero_sum_free(add, neg, n, elems):
    mask = 0
    for g in elems:
        if g == 0 or (mask >> neg[g]) & 1:
            return False
        mask = _extend(add, n, mask, g)
    return True


def max_zero_sum_free(add, neg, n):
    """Longest zero-sum free sequence, as (length, index tuple)."""
    best = [0, ()]
    stack = []

    def dfs(start, mask):
        if len(stack) > best[0]:
            best[0] = len(stack)
            best[1] = tuple(stack)
        for g in range(max(start, 1), n):
            if (mask >> neg[g]) & 1:
                continue
            stack.append(g)
            dfs(g, _extend(add, n, mask, g))
            stack.pop()

    dfs(1, 0)
    return best[0], best[1]


def zero_sum_free_sequences(add, neg, n, maxlen):
    """All zero-sum free sequences of length <= maxlen (nondecreasing indices)."""
    out = []
    stack = []

    def dfs(start, mask):
        out.append(tuple(stack))
        if len(stack) == maxlen:
            return
        for g in range(max(start, 1), n):
            if (mask >> neg[g]) & 1:
                continue
            stack.append(g)
            dfs(g, _extend(add, n, mask, g))
            stack.pop()

    dfs(1, 0)
    return out


def zsf_subsequences(add, neg, n, support, mults, target):
    """Multiplicity vectors ``c <= mults`` over ``support`` whose subsequence
    is zero-sum free and sums to ``target``."""
    k = len(support)
    out = []
    chosen = [0] * k

    def dfs(i, mask, s):
        if i == k:
            if s == target:
                out.append(tuple(chosen))
            return
        g = support[i]
        dfs(i + 1, mask, s)
        m = mask
        for c in range(1, mults[i] + 1):
            if g == 0 or (m >> neg[g]) & 1:
                break
            m = _extend(add, n, m, g)
            s = add[s * n + g]
            chosen[i] = c
            dfs(i + 1, m, s)
        chosen[i] = 0

    dfs(0, 0, 0)
    return out
