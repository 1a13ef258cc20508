# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled zero-sum search kernels; same API as ``_pykernels``.

Sum sets are kept as ``unsigned char`` arrays of length |G|, one per
recursion level, so the inner loops never touch Python objects.
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memcpy, memset


cdef int* _int_array(seq) except NULL:
    cdef Py_ssize_t i, m = len(seq)
    cdef int* out = <int*> malloc((m + 1) * sizeof(int))
    if out == NULL:
        raise MemoryError()
    for i in range(m):
        out[i] = seq[i]
    return out


cdef inline void _extend(const int* add, int n, const unsigned char* src,
                         unsigned char* dst, int g) nogil:
    cdef int h
    memcpy(dst, src, n)
    dst[g] = 1
    for h in range(n):
        if src[h]:
            dst[add[h * n + g]] = 1


def reachable_sums(add, int n, elems):
    cdef int* a = _int_array(add)
    cdef unsigned char* cur = <unsigned char*> malloc(n)
    cdef unsigned char* nxt = <unsigned char*> malloc(n)
    cdef unsigned char* tmp
    cdef int h
    try:
        memset(cur, 0, n)
        for g in elems:
            _extend(a, n, cur, nxt, g)
            tmp = cur; cur = nxt; nxt = tmp
        mask = 0
        for h in range(n):
            if cur[h]:
                mask |= 1 << h
        return mask
    finally:
        free(a); free(cur); free(nxt)


def zero_sum_free(add, neg, int n, elems):
    cdef int* a = _int_array(add)
    cdef int* ng = _int_array(neg)
    cdef unsigned char* cur = <unsigned char*> malloc(n)
    cdef unsigned char* nxt = <unsigned char*> malloc(n)
    cdef unsigned char* tmp
    cdef int g
    try:
        memset(cur, 0, n)
        for x in elems:
            g = x
            if g == 0 or cur[ng[g]]:
                return False
            _extend(a, n, cur, nxt, g)
            tmp = cur; cur = nxt; nxt = tmp
        return True
    finally:
        free(a); free(ng); free(cur); free(nxt)


cdef struct _Search:
    int n
    int maxlen
    const int* add
    const int* neg
    unsigned char* masks   # (maxlen + 1) * n
    int* stack
    int best
    int* best_stack


cdef void _max_dfs(_Search* s, int depth, int start) nogil:
    cdef int g, i
    cdef int n = s.n
    cdef unsigned char* cur = s.masks + depth * n
    if depth > s.best:
        s.best = depth
        for i in range(depth):
            s.best_stack[i] = s.stack[i]
    if depth == s.maxlen:
        return
    if start < 1:
        start = 1
    for g in range(start, n):
        if cur[s.neg[g]]:
            continue
        s.stack[depth] = g
        _extend(s.add, n, cur, cur + n, g)
        _max_dfs(s, depth + 1, g)


def max_zero_sum_free(add, neg, int n):
    cdef _Search s
    cdef int i
    s.n = n
    s.maxlen = n        # D(G) <= |G|
    s.add = _int_array(add)
    s.neg = _int_array(neg)
    s.masks = <unsigned char*> malloc((n + 1) * n)
    s.stack = <int*> malloc((n + 1) * sizeof(int))
    s.best_stack = <int*> malloc((n + 1) * sizeof(int))
    s.best = 0
    try:
        memset(s.masks, 0, n)
        with nogil:
            _max_dfs(&s, 0, 1)
        return s.best, tuple(s.best_stack[i] for i in range(s.best))
    finally:
        free(<void*> s.add); free(<void*> s.neg)
        free(s.masks); free(s.stack); free(s.best_stack)


cdef int _all_dfs(_Search* s, int depth, int start, list out) except -1:
    cdef int g
    cdef int n = s.n
    cdef unsigned char* cur = s.masks + depth * n
    out.append(tuple([s.stack[i] for i in range(depth)]))
    if depth == s.maxlen:
        return 0
    if start < 1:
        start = 1
    for g in range(start, n):
        if cur[s.neg[g]]:
            continue
        s.stack[depth] = g
        _extend(s.add, n, cur, cur + n, g)
        _all_dfs(s, depth + 1, g, out)
    return 0


def zero_sum_free_sequences(add, neg, int n, int maxlen):
    cdef _Search s
    cdef list out = []
    if maxlen > n:
        maxlen = n
    s.n = n
    s.maxlen = maxlen
    s.add = _int_array(add)
    s.neg = _int_array(neg)
    s.masks = <unsigned char*> malloc((maxlen + 1) * n)
    s.stack = <int*> malloc((maxlen + 1) * sizeof(int))
    s.best_stack = NULL
    try:
        memset(s.masks, 0, n)
        _all_dfs(&s, 0, 1, out)
        return out
    finally:
        free(<void*> s.add); free(<void*> s.neg)
        free(s.masks); free(s.stack)


cdef struct _Sub:
    int n
    int k
    int target
    const int* add
    const int* neg
    const int* support
    const int* mults
    unsigned char* masks   # (total + 1) * n, indexed by copies chosen so far
    int* chosen


cdef int _sub_dfs(_Sub* s, int i, int level, int total, list out) except -1:
    cdef int c, g, m, n = s.n
    cdef int depth
    cdef unsigned char* cur
    if i == s.k:
        if total == s.target:
            out.append(tuple([s.chosen[j] for j in range(s.k)]))
        return 0
    g = s.support[i]
    _sub_dfs(s, i + 1, level, total, out)
    depth = level
    for c in range(1, s.mults[i] + 1):
        cur = s.masks + depth * n
        if g == 0 or cur[s.neg[g]]:
            break
        _extend(s.add, n, cur, cur + n, g)
        depth += 1
        total = s.add[total * n + g]
        s.chosen[i] = c
        _sub_dfs(s, i + 1, depth, total, out)
    s.chosen[i] = 0
    return 0


def zsf_subsequences(add, neg, int n, support, mults, int target):
    cdef _Sub s
    cdef list out = []
    cdef int total = sum(mults)
    s.n = n
    s.k = len(support)
    s.target = target
    s.add = _int_array(add)
    s.neg = _int_array(neg)
    s.support = _int_array(support)
    s.mults = _int_array(mults)
    s.masks = <unsigned char*> malloc((total + 1) * n)
    s.chosen = <int*> malloc((s.k + 1) * sizeof(int))
    try:
        memset(s.masks, 0, n)
        memset(s.chosen, 0, (s.k + 1) * sizeof(int))
        _sub_dfs(&s, 0, 0, 0, out)
        return out
    finally:
        free(<void*> s.add); free(<void*> s.neg)
        free(<void*> s.support); free(<void*> s.mults)
        free(s.masks); free(s.chosen)
