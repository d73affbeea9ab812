"""Exact clique search over compatibility graphs.

The solver is a branch-and-bound with greedy-colouring upper bounds
generalised to vertex weights (sum of per-class maxima); it proves
optimality unless a time budget cuts it short, in which case the best
clique found so far is returned with is_proved_optimal=False.  Optimal
results are post-processed into the lexicographically least optimal
vertex set, so identical inputs give identical outputs across runs,
thread counts and kernel backends.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from . import _kernels
from .compat_graph import CompatGraph, common_neighborhood_subgraph
from .errors import FixedNotCliqueError


@dataclass(frozen=True)
class CliqueResult:
    """vertices are positions in the graph that was searched, sorted."""

    vertices: tuple[int, ...]
    weight: int
    is_proved_optimal: bool
    nodes_explored: int
    time: float

    @property
    def size(self) -> int:
        return len(self.vertices)


def _bits(mask: int):
    while mask:
        v = (mask & -mask).bit_length() - 1
        mask &= mask - 1
        yield v


def _check_clique(g: CompatGraph, vertices) -> None:
    vs = list(vertices)
    for idx, a in enumerate(vs):
        for b in vs[idx + 1 :]:
            if not g.has_edge(a, b):
                raise RuntimeError(
                    f"solver returned a non-clique: {a} and {b} not adjacent"
                )  # pragma: no cover


def _lex_least_optimal(
    g: CompatGraph, weights, cand_mask: int, opt_weight: int, deadline: float | None
) -> int | None:
    """Greedy prefix construction of the lex-least clique of weight opt_weight.

    At each step the smallest candidate v is kept iff some clique of the
    remaining weight exists among its later neighbours (a decision call
    with a tight target, which prunes hard).  Returns None on deadline.
    """
    chosen = 0
    rem = opt_weight
    cand = cand_mask
    while rem > 0:
        progressed = False
        for v in _bits(cand):
            if deadline is not None and time.monotonic() > deadline:
                return None
            higher = ~((1 << (v + 1)) - 1)
            sub = cand & g.adj[v] & higher
            need = rem - weights[v]
            if need <= 0:
                ok = need == 0
            else:
                best_w, _, proved, _ = _kernels.solve_max_weight_clique(
                    g.adj, weights, sub, target=need, deadline=deadline
                )
                if not proved:
                    return None
                ok = best_w >= need
            if ok:
                chosen |= 1 << v
                cand = sub
                rem = need
                progressed = True
                break
        if not progressed:  # pragma: no cover - opt_weight always reachable
            raise RuntimeError("lexicographic reconstruction lost the optimum")
    return chosen


def _solve(
    g: CompatGraph,
    weights,
    cand_mask: int,
    time_budget: float | None,
) -> CliqueResult:
    start = time.monotonic()
    deadline = start + time_budget if time_budget is not None else None
    best_w, best_mask, proved, nodes = _kernels.solve_max_weight_clique(
        g.adj, list(weights), cand_mask, deadline=deadline
    )
    if proved and best_w > 0:
        lex = _lex_least_optimal(g, weights, cand_mask, best_w, deadline)
        if lex is not None:
            best_mask = lex
    vertices = tuple(sorted(_bits(best_mask)))
    _check_clique(g, vertices)
    assert sum(weights[v] for v in vertices) == best_w or not proved
    return CliqueResult(
        vertices=vertices,
        weight=sum(weights[v] for v in vertices),
        is_proved_optimal=proved,
        nodes_explored=nodes,
        time=time.monotonic() - start,
    )


def max_clique(g: CompatGraph, time_budget: float | None = None) -> CliqueResult:
    """Maximum-cardinality clique (unit weights)."""
    return _solve(g, [1] * g.n_vertices, (1 << g.n_vertices) - 1, time_budget)


def max_weight_clique(g: CompatGraph, time_budget: float | None = None) -> CliqueResult:
    """Maximum-weight clique under the orbit-size weights."""
    return _solve(g, list(g.weights), (1 << g.n_vertices) - 1, time_budget)


def max_clique_with_fixed(
    g: CompatGraph,
    fixed,
    weighted: bool = True,
    time_budget: float | None = None,
) -> CliqueResult:
    """Best clique containing the fixed clique (weight or cardinality objective).

    Equivalent to solving the common-neighbourhood subgraph and adjoining
    the fixed vertices; returned positions refer to g.
    """
    fixed = tuple(sorted(set(fixed)))
    for idx, a in enumerate(fixed):
        for b in fixed[idx + 1 :]:
            if not g.has_edge(a, b):
                raise FixedNotCliqueError(f"vertices {a} and {b} are not adjacent")
    weights = list(g.weights) if weighted else [1] * g.n_vertices
    cand = (1 << g.n_vertices) - 1
    for v in fixed:
        cand &= g.adj[v]
    start = time.monotonic()
    deadline = start + time_budget if time_budget is not None else None
    best_w, best_mask, proved, nodes = _kernels.solve_max_weight_clique(
        g.adj, weights, cand, deadline=deadline
    )
    if proved and best_w > 0:
        lex = _lex_least_optimal(g, weights, cand, best_w, deadline)
        if lex is not None:
            best_mask = lex
    for v in fixed:
        best_mask |= 1 << v
    vertices = tuple(sorted(_bits(best_mask)))
    _check_clique(g, vertices)
    return CliqueResult(
        vertices=vertices,
        weight=sum(weights[v] for v in vertices),
        is_proved_optimal=proved,
        nodes_explored=nodes,
        time=time.monotonic() - start,
    )


class _CapHit(Exception):
    pass


class MaximalCliqueStream:
    """Iterator over maximal cliques with a hard cap.

    truncated flips to True iff a clique beyond the cap exists; inspect
    it after exhausting the iterator.
    """

    def __init__(self, g: CompatGraph, cap: int):
        if cap <= 0:
            raise ValueError("cap must be positive")
        self.g = g
        self.cap = cap
        self.truncated = False
        self.emitted = 0

    def __iter__(self):
        yield from self._run()

    def _run(self):
        g = self.g
        if g.n_vertices == 0:
            return

        def bk(r_mask: int, p_mask: int, x_mask: int):
            if p_mask == 0 and x_mask == 0:
                if self.emitted >= self.cap:
                    raise _CapHit
                self.emitted += 1
                yield tuple(sorted(_bits(r_mask)))
                return
            # pivot: vertex of P|X covering the most of P (lowest index on ties)
            pivot, cover = -1, -1
            for u in _bits(p_mask | x_mask):
                c = (p_mask & g.adj[u]).bit_count()
                if c > cover:
                    pivot, cover = u, c
            for v in _bits(p_mask & ~g.adj[pivot]):
                bit = 1 << v
                yield from bk(r_mask | bit, p_mask & g.adj[v], x_mask & g.adj[v])
                p_mask &= ~bit
                x_mask |= bit

        try:
            yield from bk(0, (1 << g.n_vertices) - 1, 0)
        except _CapHit:
            self.truncated = True


def enumerate_maximal_cliques(g: CompatGraph, cap: int) -> MaximalCliqueStream:
    """Stream every maximal clique (pivoting Bron-Kerbosch), capped."""
    return MaximalCliqueStream(g, cap)
