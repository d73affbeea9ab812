"""Pure-Python kernels: cyclic overlap scans and clique branch-and-bound.

Element sets live in bitmasks over Z_{q^n-1} (Python ints).  The overlap
of two sets under every cyclic shift is a cross-correlation; it is read
off in one shot from a big-integer product with one byte (or two) per
position, which beats a per-shift rotate loop by a wide margin here.
"""

from __future__ import annotations

import time

NAME = "pure"


def _field_width(max_count: int) -> int:
    # one byte per position unless counts could overflow it
    return 8 if max_count < 256 else 16


def _spread(mask: int, width: int) -> int:
    """Place one field of `width` bits per set position: sum of 2^(width*e)."""
    out = 0
    m = mask
    while m:
        e = (m & -m).bit_length() - 1
        out |= 1 << (width * e)
        m &= m - 1
    return out


def _spread_reversed(mask: int, nbits: int, width: int) -> int:
    """Like _spread with positions negated mod nbits (for correlation)."""
    out = 0
    m = mask
    while m:
        e = (m & -m).bit_length() - 1
        out |= 1 << (width * ((nbits - e) % nbits))
        m &= m - 1
    return out


def _correlation_counts(sa: int, rb: int, nbits: int, width: int):
    """Folded cyclic cross-correlation counts c_s for s in [0, nbits)."""
    prod = sa * rb
    lo = prod & ((1 << (width * nbits)) - 1)
    folded = lo + (prod >> (width * nbits))
    raw = folded.to_bytes(nbits * (width // 8) + 8, "little")
    if width == 8:
        return raw[:nbits]
    return [raw[2 * i] | (raw[2 * i + 1] << 8) for i in range(nbits)]


def max_autocorrelation(mask: int, nbits: int, period: int) -> int:
    """max over s in [1, period) of |A ∩ (A shifted by s)|; 0 when period == 1."""
    if period <= 1:
        return 0
    width = _field_width(mask.bit_count())
    sa = _spread(mask, width)
    rb = _spread_reversed(mask, nbits, width)
    counts = list(_correlation_counts(sa, rb, nbits, width))
    for s in range(0, nbits, period):
        counts[s] = 0
    return max(counts)


def max_crosscorrelation(a: int, b: int, nbits: int) -> int:
    """max over s in [0, nbits) of |A ∩ (B shifted by s)|."""
    width = _field_width(min(a.bit_count(), b.bit_count()))
    counts = _correlation_counts(_spread(a, width), _spread_reversed(b, nbits, width), nbits, width)
    return max(counts)


def compat_rows(masks: list[int], nbits: int, limit: int, rows: list[int]) -> list[int]:
    """Upper-triangle adjacency rows: bit j set (j > i) iff the pair's
    maximal shifted overlap stays <= limit."""
    width = _field_width(max((m.bit_count() for m in masks), default=0))
    spreads = [_spread(m, width) for m in masks]
    rspreads = [_spread_reversed(m, nbits, width) for m in masks]
    n = len(masks)
    out = []
    for i in rows:
        si = spreads[i]
        row = 0
        for j in range(i + 1, n):
            if max(_correlation_counts(si, rspreads[j], nbits, width)) <= limit:
                row |= 1 << j
        out.append(row)
    return out


def solve_max_weight_clique(
    adj: list[int],
    weights: list[int],
    cand_mask: int,
    target: int | None = None,
    deadline: float | None = None,
    initial_best: int = 0,
):
    """Exact maximum-weight clique inside the induced subgraph cand_mask.

    Branch and bound with a greedy-colouring bound generalised to weights:
    candidates are partitioned into independent classes and the bound is
    the running sum of per-class maximum weights.  Deterministic: vertex
    order is fixed, no randomisation.

    target: stop as soon as any clique of weight >= target is found
    (decision mode); the exact optimum is not pursued further.
    Returns (best_weight, best_mask, proved, nodes); proved is False only
    when the deadline cut the search short.
    """
    best_w = initial_best
    if target is not None:
        best_w = max(best_w, target - 1)
    best_mask = 0
    nodes = 0
    timed_out = False
    found_target = False
    check_every = 4096

    def expand(cur_w: int, cur_mask: int, cand: int):
        nonlocal best_w, best_mask, nodes, timed_out, found_target
        nodes += 1
        if deadline is not None and nodes % check_every == 0 and time.monotonic() > deadline:
            timed_out = True
        if timed_out or found_target:
            return
        if cand == 0:
            if cur_w > best_w:
                best_w = cur_w
                best_mask = cur_mask
                if target is not None and cur_w >= target:
                    found_target = True
            return
        # greedy colouring of cand; order lists vertices class by class,
        # bounds[i] = sum of class maxima up to the class of order[i]
        order = []
        bounds = []
        rest = cand
        prefix = 0
        while rest:
            avail = rest
            cls_max = 0
            start = len(order)
            while avail:
                v = (avail & -avail).bit_length() - 1
                bit = 1 << v
                avail &= avail - 1
                avail &= ~adj[v]
                rest ^= bit
                order.append(v)
                w = weights[v]
                if w > cls_max:
                    cls_max = w
            prefix += cls_max
            bounds.extend([prefix] * (len(order) - start))
        for idx in range(len(order) - 1, -1, -1):
            if cur_w + bounds[idx] <= best_w:
                return
            v = order[idx]
            expand(cur_w + weights[v], cur_mask | (1 << v), cand & adj[v])
            if timed_out or found_target:
                return
            cand &= ~(1 << v)

    expand(0, 0, cand_mask)
    return best_w, best_mask, not timed_out, nodes
