# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: cyclic overlap scans and clique branch-and-bound.

Mirrors _kernels.pure exactly (same signatures, same results); element
masks arrive as Python ints and are unpacked into uint64 words, all inner
loops run without the GIL.
"""

from cpython.bytes cimport PyBytes_AsString
from libc.stdlib cimport calloc, free, malloc
from libc.string cimport memcpy, memset
from posix.time cimport CLOCK_MONOTONIC, clock_gettime, timespec

ctypedef unsigned long long u64

cdef extern from *:
    """
    #define POPCNT64(x) __builtin_popcountll(x)
    #define CTZ64(x) __builtin_ctzll(x)
    """
    int POPCNT64(unsigned long long x) nogil
    int CTZ64(unsigned long long x) nogil

NAME = "speed"


cdef double _now() nogil:
    cdef timespec ts
    clock_gettime(CLOCK_MONOTONIC, &ts)
    return ts.tv_sec + ts.tv_nsec * 1e-9


cdef int _int_to_words(obj, u64 *dst, int nwords) except -1:
    """Unpack a nonnegative Python int into little-endian uint64 words."""
    cdef bytes raw = obj.to_bytes(nwords * 8, "little")
    memcpy(dst, PyBytes_AsString(raw), nwords * 8)
    return 0


cdef inline long long _overlap_at(u64 *a, u64 *bb, int offset, int nwords) nogil:
    """popcount(A & (BB >> offset)) over nwords words."""
    cdef int ws = offset >> 6
    cdef int bs = offset & 63
    cdef long long total = 0
    cdef int i
    cdef u64 w
    if bs == 0:
        for i in range(nwords):
            total += POPCNT64(a[i] & bb[i + ws])
    else:
        for i in range(nwords):
            w = (bb[i + ws] >> bs) | (bb[i + ws + 1] << (64 - bs))
            total += POPCNT64(a[i] & w)
    return total


cdef long long _max_overlap(
    u64 *a, u64 *bb, int nbits, int nwords, int s_lo, int s_hi, long long stop_above
) nogil:
    """max over s in [s_lo, s_hi) of the shifted overlap; early exit once
    the running max exceeds stop_above (pass a huge value to disable)."""
    cdef long long best = 0, ov
    cdef int s
    for s in range(s_lo, s_hi):
        ov = _overlap_at(a, bb, nbits - s, nwords)
        if ov > best:
            best = ov
            if best > stop_above:
                return best
    return best


def max_autocorrelation(mask, int nbits, int period):
    """max over shifts s not divisible by period of |A ∩ (A shifted by s)|;
    0 when period == 1.  Equals the scan over [1, period) when the mask is
    genuinely period-periodic (orbit masks are)."""
    if period <= 1:
        return 0
    cdef int nwords = (nbits + 63) >> 6
    cdef long long result = 0, ov
    cdef int s
    cdef u64 *a = <u64 *> calloc(nwords, 8)
    cdef u64 *bb = <u64 *> calloc(2 * nwords + 1, 8)
    if a == NULL or bb == NULL:
        free(a); free(bb)
        raise MemoryError()
    try:
        _int_to_words(mask, a, nwords)
        _int_to_words(mask | (mask << nbits), bb, 2 * nwords + 1)
        with nogil:
            for s in range(1, nbits):
                if s % period == 0:
                    continue
                ov = _overlap_at(a, bb, nbits - s, nwords)
                if ov > result:
                    result = ov
        return result
    finally:
        free(a)
        free(bb)


def max_crosscorrelation(a_mask, b_mask, int nbits):
    """max over s in [0, nbits) of |A ∩ (B shifted by s)|."""
    cdef int nwords = (nbits + 63) >> 6
    cdef long long result
    cdef u64 *a = <u64 *> calloc(nwords, 8)
    cdef u64 *bb = <u64 *> calloc(2 * nwords + 1, 8)
    if a == NULL or bb == NULL:
        free(a); free(bb)
        raise MemoryError()
    try:
        _int_to_words(a_mask, a, nwords)
        _int_to_words(b_mask | (b_mask << nbits), bb, 2 * nwords + 1)
        with nogil:
            result = _max_overlap(a, bb, nbits, nwords, 0, nbits, 1 << 62)
        return result
    finally:
        free(a)
        free(bb)


def compat_rows(masks, int nbits, long long limit, rows):
    """Upper-triangle adjacency rows: bit j set (j > i) iff the pair's
    maximal shifted overlap stays <= limit."""
    cdef int V = len(masks)
    cdef int nwords = (nbits + 63) >> 6
    cdef int dbl = 2 * nwords + 1
    cdef int rowbytes = (V + 7) >> 3
    cdef u64 *amat = <u64 *> calloc(<size_t> V * nwords, 8)
    cdef u64 *bmat = <u64 *> calloc(<size_t> V * dbl, 8)
    cdef unsigned char *rowbuf = <unsigned char *> malloc(rowbytes)
    if amat == NULL or bmat == NULL or rowbuf == NULL:
        free(amat); free(bmat); free(rowbuf)
        raise MemoryError()
    cdef int i, j, idx
    cdef long long ov
    out = []
    try:
        for i in range(V):
            _int_to_words(masks[i], amat + i * nwords, nwords)
            _int_to_words(masks[i] | (masks[i] << nbits), bmat + i * dbl, dbl)
        for idx in range(len(rows)):
            i = rows[idx]
            memset(rowbuf, 0, rowbytes)
            with nogil:
                for j in range(i + 1, V):
                    ov = _max_overlap(
                        amat + i * nwords, bmat + j * dbl, nbits, nwords, 0, nbits, limit
                    )
                    if ov <= limit:
                        rowbuf[j >> 3] |= 1 << (j & 7)
            out.append(int.from_bytes(rowbuf[:rowbytes], "little"))
        return out
    finally:
        free(amat)
        free(bmat)
        free(rowbuf)


# -- weighted clique branch and bound ----------------------------------------

cdef struct SolveState:
    int V
    int W
    u64 *adj            # V rows of W words
    long long *weights
    long long best_w
    int *best_list
    int best_len
    int *cur_list
    long long target
    bint has_target
    bint done
    bint timed_out
    long long nodes
    double deadline
    bint has_deadline
    # per-depth scratch: rest | avail | work | child (4*W words), order, bounds
    u64 **bufs
    int **orders
    long long **bounds
    int depth_cap


cdef bint _ensure_depth(SolveState *st, int depth) nogil:
    if st.bufs[depth] == NULL:
        st.bufs[depth] = <u64 *> malloc(4 * st.W * 8)
        st.orders[depth] = <int *> malloc(st.V * sizeof(int))
        st.bounds[depth] = <long long *> malloc(st.V * sizeof(long long))
        if st.bufs[depth] == NULL or st.orders[depth] == NULL or st.bounds[depth] == NULL:
            return 0
    return 1


cdef void _expand(SolveState *st, int depth, long long cur_w, u64 *cand) nogil:
    cdef int W = st.W
    cdef int i, v, w_idx, cnt, class_start, idx
    cdef long long cls_max, prefix, wv
    cdef u64 *rest
    cdef u64 *avail
    cdef u64 *work
    cdef u64 *child
    cdef u64 word
    cdef bint empty

    st.nodes += 1
    if st.has_deadline and (st.nodes & 8191) == 0 and _now() > st.deadline:
        st.timed_out = 1
    if st.done or st.timed_out:
        return

    empty = 1
    for i in range(W):
        if cand[i]:
            empty = 0
            break
    if empty:
        if cur_w > st.best_w:
            st.best_w = cur_w
            st.best_len = depth
            memcpy(st.best_list, st.cur_list, depth * sizeof(int))
            if st.has_target and cur_w >= st.target:
                st.done = 1
        return

    if not _ensure_depth(st, depth):
        st.timed_out = 1  # allocation failure: degrade to best-so-far
        return
    rest = st.bufs[depth]
    avail = rest + W
    work = avail + W
    child = work + W
    memcpy(rest, cand, W * 8)
    memcpy(work, cand, W * 8)

    # greedy colouring; orders[] lists vertices class by class and
    # bounds[idx] carries the running sum of class maxima
    cnt = 0
    prefix = 0
    while True:
        empty = 1
        for i in range(W):
            if rest[i]:
                empty = 0
                break
        if empty:
            break
        memcpy(avail, rest, W * 8)
        cls_max = 0
        class_start = cnt
        while True:
            v = -1
            for i in range(W):
                word = avail[i]
                if word:
                    v = (i << 6) + CTZ64(word)
                    break
            if v < 0:
                break
            avail[v >> 6] &= ~(<u64> 1 << (v & 63))
            rest[v >> 6] &= ~(<u64> 1 << (v & 63))
            for i in range(W):
                avail[i] &= ~st.adj[v * W + i]
            st.orders[depth][cnt] = v
            cnt += 1
            wv = st.weights[v]
            if wv > cls_max:
                cls_max = wv
        prefix += cls_max
        for i in range(class_start, cnt):
            st.bounds[depth][i] = prefix

    for idx in range(cnt - 1, -1, -1):
        if cur_w + st.bounds[depth][idx] <= st.best_w:
            return
        v = st.orders[depth][idx]
        st.cur_list[depth] = v
        for i in range(W):
            child[i] = work[i] & st.adj[v * W + i]
        _expand(st, depth + 1, cur_w + st.weights[v], child)
        if st.done or st.timed_out:
            return
        work[v >> 6] &= ~(<u64> 1 << (v & 63))


def solve_max_weight_clique(
    adj, weights, cand_mask, target=None, deadline=None, initial_best=0
):
    """Exact maximum-weight clique inside the induced subgraph cand_mask.

    Same contract as the pure twin: returns (best_weight, best_mask,
    proved, nodes); proved is False only when the deadline cut the search.
    """
    cdef int V = len(adj)
    cdef int W = (V + 63) >> 6 if V else 1
    cdef SolveState st
    cdef int i
    cdef u64 *cand
    memset(&st, 0, sizeof(st))
    st.V = V
    st.W = W
    st.best_w = initial_best
    if target is not None:
        st.has_target = 1
        st.target = target
        if target - 1 > st.best_w:
            st.best_w = target - 1
    if deadline is not None:
        st.has_deadline = 1
        st.deadline = deadline

    st.adj = <u64 *> calloc(<size_t> max(V, 1) * W, 8)
    st.weights = <long long *> malloc(max(V, 1) * sizeof(long long))
    st.best_list = <int *> malloc(max(V, 1) * sizeof(int))
    st.cur_list = <int *> malloc(max(V, 1) * sizeof(int))
    st.bufs = <u64 **> calloc(V + 2, sizeof(void *))
    st.orders = <int **> calloc(V + 2, sizeof(void *))
    st.bounds = <long long **> calloc(V + 2, sizeof(void *))
    cand = <u64 *> calloc(W, 8)
    if (
        st.adj == NULL or st.weights == NULL or st.best_list == NULL
        or st.cur_list == NULL or st.bufs == NULL or st.orders == NULL
        or st.bounds == NULL or cand == NULL
    ):
        _free_state(&st, cand, V)
        raise MemoryError()
    try:
        for i in range(V):
            _int_to_words(adj[i], st.adj + i * W, W)
            st.weights[i] = weights[i]
        _int_to_words(cand_mask, cand, W)
        with nogil:
            _expand(&st, 0, 0, cand)
        # best_w is the incumbent threshold (== the found optimum when a
        # witness was recorded; the entry threshold when nothing beat it)
        best_mask = 0
        for i in range(st.best_len):
            best_mask |= 1 << st.best_list[i]
        return st.best_w, best_mask, not st.timed_out, st.nodes
    finally:
        _free_state(&st, cand, V)


cdef void _free_state(SolveState *st, u64 *cand, int V):
    cdef int i
    if st.bufs != NULL:
        for i in range(V + 2):
            if st.bufs[i] != NULL:
                free(st.bufs[i])
        free(st.bufs)
    if st.orders != NULL:
        for i in range(V + 2):
            if st.orders[i] != NULL:
                free(st.orders[i])
        free(st.orders)
    if st.bounds != NULL:
        for i in range(V + 2):
            if st.bounds[i] != NULL:
                free(st.bounds[i])
        free(st.bounds)
    free(st.adj)
    free(st.weights)
    free(st.best_list)
    free(st.cur_list)
    free(cand)
