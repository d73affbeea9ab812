"""Orbit-compatibility graphs.

Vertices are the orbits whose internal minimum distance reaches the
target d; two are adjacent when every cross pair of members also keeps
distance >= d.  Cliques therefore correspond exactly to cyclic codes of
minimum distance >= d.  Adjacency lives in bitset rows (one Python int
per vertex) so that the clique search can intersect neighbourhoods a
word at a time.
"""

from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor

from . import _kernels
from .orbits import OrbitSet


def normalize_distance(d: int) -> int:
    """Subspace distances between equal-dimension spaces are even; an odd
    request d is equivalent to d+1 (">= d" and ">= d+1" coincide), so it is
    normalised up with a warning."""
    if d < 2:
        raise ValueError(f"minimum distance must be at least 2, got {d}")
    if d % 2:
        warnings.warn(
            f"odd minimum distance {d} is equivalent to {d + 1} for "
            f"constant-dimension codes; using {d + 1}",
            stacklevel=3,
        )
        return d + 1
    return d


class CompatGraph:
    """Compatibility graph over a fixed OrbitSet.

    labels[i] is the orbit index behind vertex position i; weights[i] is
    that orbit's period.  adj holds symmetric bitmask rows over positions,
    no self-loops.  Instances are immutable once built.
    """

    __slots__ = ("orbit_set", "d", "labels", "weights", "adj", "_label_pos")

    def __init__(self, orbit_set: OrbitSet, d: int, labels, weights, adj):
        self.orbit_set = orbit_set
        self.d = d
        self.labels = tuple(labels)
        self.weights = tuple(weights)
        self.adj = list(adj)
        self._label_pos = {lab: i for i, lab in enumerate(self.labels)}

    @property
    def n_vertices(self) -> int:
        return len(self.labels)

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adj[i] >> j & 1)

    def position_of_label(self, label: int) -> int:
        return self._label_pos[label]

    def orbit_at(self, position: int):
        return self.orbit_set.orbits[self.labels[position]]

    def positions_with_period(self, period: int) -> list[int]:
        return [i for i, w in enumerate(self.weights) if w == period]

    def induced(self, positions) -> "CompatGraph":
        """Induced subgraph on the given positions (ascending order kept)."""
        positions = sorted(positions)
        pos_index = {p: i for i, p in enumerate(positions)}
        new_adj = []
        for p in positions:
            row = self.adj[p]
            new_row = 0
            for q, i in pos_index.items():
                if row >> q & 1:
                    new_row |= 1 << i
            new_adj.append(new_row)
        return CompatGraph(
            self.orbit_set,
            self.d,
            [self.labels[p] for p in positions],
            [self.weights[p] for p in positions],
            new_adj,
        )


def build_graph(orbit_set: OrbitSet, d: int, threads: int = 1) -> CompatGraph:
    """Construct the compatibility graph for minimum distance d.

    The edge test reduces to one cyclic cross-correlation per orbit pair:
    adjacency holds iff the highest shifted element-overlap stays at or
    below q^(k - d/2) - 1.  Rows are computed independently, so the pair
    scan parallelises over row chunks when threads > 1.
    """
    d = normalize_distance(d)
    q, k = orbit_set.q, orbit_set.k
    order = q**orbit_set.n - 1
    labels = [
        i
        for i, o in enumerate(orbit_set.orbits)
        if o.min_dist is not None and o.min_dist >= d
    ]
    weights = [orbit_set.orbits[i].period for i in labels]
    V = len(labels)
    if V == 0:
        return CompatGraph(orbit_set, d, [], [], [])

    masks = [orbit_set.orbits[i].rep.elems_mask for i in labels]
    limit = q ** (k - d // 2) - 1

    rows = list(range(V))
    if threads > 1 and V > 64:
        chunks = [rows[c::threads] for c in range(threads)]
        upper = [0] * V
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [
                pool.submit(_kernels.compat_rows, masks, order, limit, chunk)
                for chunk in chunks
            ]
            for chunk, fut in zip(chunks, futures):
                for i, row in zip(chunk, fut.result()):
                    upper[i] = row
    else:
        upper = _kernels.compat_rows(masks, order, limit, rows)

    adj = [0] * V
    for i, row in enumerate(upper):
        adj[i] |= row
        m = row
        while m:
            j = (m & -m).bit_length() - 1
            m &= m - 1
            adj[j] |= 1 << i
    return CompatGraph(orbit_set, d, labels, weights, adj)


def size_class_subgraph(g: CompatGraph, t: int) -> CompatGraph:
    """Induced subgraph on the orbits of stabilizer degree t (one period class)."""
    orbit_set = g.orbit_set
    if orbit_set.n % t:
        raise ValueError(f"t={t} does not divide n={orbit_set.n}")
    period = orbit_set.period_of_t(t)
    return g.induced(g.positions_with_period(period))


def common_neighborhood_subgraph(g: CompatGraph, fixed) -> CompatGraph:
    """Induced subgraph on the vertices adjacent to every fixed vertex.

    Any clique there extends the fixed clique; the fixed vertices
    themselves are excluded.  fixed must be a clique (positions in g).
    """
    from .errors import FixedNotCliqueError

    fixed = sorted(set(fixed))
    for a in fixed:
        for b in fixed:
            if a < b and not g.has_edge(a, b):
                raise FixedNotCliqueError(f"vertices {a} and {b} are not adjacent")
    if not fixed:
        return g
    common = (1 << g.n_vertices) - 1
    for v in fixed:
        common &= g.adj[v]
    positions = []
    m = common
    while m:
        v = (m & -m).bit_length() - 1
        m &= m - 1
        positions.append(v)
    return g.induced(positions)


def graph_to_dimacs(g: CompatGraph) -> str:
    """DIMACS-like edge list with vertex weight lines ("n <v> <w>"), 1-based."""
    s = g.orbit_set
    lines = [
        f"c compatibility graph q={s.q} n={s.n} k={s.k} d={g.d}",
        f"p edge {g.n_vertices} {g.edge_count}",
    ]
    for i, w in enumerate(g.weights):
        lines.append(f"n {i + 1} {w}")
    for i in range(g.n_vertices):
        row = g.adj[i] >> (i + 1) << (i + 1)
        while row:
            j = (row & -row).bit_length() - 1
            row &= row - 1
            lines.append(f"e {i + 1} {j + 1}")
    return "\n".join(lines) + "\n"


def graph_to_json_dict(g: CompatGraph) -> dict:
    s = g.orbit_set
    edges = []
    for i in range(g.n_vertices):
        row = g.adj[i] >> (i + 1) << (i + 1)
        while row:
            j = (row & -row).bit_length() - 1
            row &= row - 1
            edges.append([i, j])
    return {
        "q": s.q,
        "n": s.n,
        "k": s.k,
        "d": g.d,
        "poly": list(s.poly),
        "vertices": [
            {
                "position": i,
                "orbit": g.labels[i],
                "rep": list(g.orbit_at(i).rep.elems),
                "period": g.weights[i],
                "t": g.orbit_at(i).t,
                "min_dist": g.orbit_at(i).min_dist,
            }
            for i in range(g.n_vertices)
        ],
        "edges": edges,
    }
