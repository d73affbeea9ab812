"""End-to-end classification of cyclic constant-dimension codes.

The count C_q(n,d,k) is obtained as a single exact maximum-weight-clique
optimum over the full compatibility graph, with orbit sizes as weights.
Per-size-class clique numbers (the alpha_t upper bounds) and fixed-clique
conditional bounds are computed alongside: they reproduce the
case-analysis style of the decomposition M = sum(alpha_t * (q^n-1)/(q^t-1))
and certify the optimum when their weighted total is attained.

Every emitted code is re-checked by verify_certificate, which expands all
orbits fully and brute-forces every pairwise distance without the
shift-reduction shortcut used by the search path.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from itertools import combinations
from math import comb, gcd
from pathlib import Path

from . import clique as clique_mod
from .compat_graph import (
    CompatGraph,
    build_graph,
    common_neighborhood_subgraph,
    normalize_distance,
    size_class_subgraph,
)
from .errors import CertificateFormatError, GrassCliqueError, ResourceCapError
from .field import FieldCtx, field_for
from .orbits import (
    DEFAULT_RESOURCE_CAP,
    OrbitSet,
    gaussian_binomial,
    load_or_enumerate,
)
from .subspace import format_elems, span

_ORBIT_MEMO: dict[tuple, OrbitSet] = {}


def clear_orbit_memo():
    _ORBIT_MEMO.clear()


def _divisors(x: int) -> list[int]:
    return [d for d in range(1, x + 1) if x % d == 0]


@dataclass(frozen=True)
class Certificate:
    """A cyclic code given by one generator exponent set per orbit.

    Expanding all cyclic shifts of all generators must yield exactly m
    distinct subspaces with pairwise distance >= d; verify_certificate
    checks that from scratch.
    """

    q: int
    n: int
    k: int
    d: int
    poly: tuple[int, ...]
    generators: tuple[tuple[int, ...], ...]
    m: int

    def to_json_dict(self) -> dict:
        return {
            "q": self.q,
            "n": self.n,
            "k": self.k,
            "d": self.d,
            "poly": list(self.poly),
            "generators": [list(g) for g in self.generators],
            "M": self.m,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "Certificate":
        try:
            return cls(
                q=int(data["q"]),
                n=int(data["n"]),
                k=int(data["k"]),
                d=int(data["d"]),
                poly=tuple(int(c) for c in data["poly"]),
                generators=tuple(tuple(int(e) for e in g) for g in data["generators"]),
                m=int(data["M"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise CertificateFormatError(f"bad certificate payload: {exc}") from exc

    @classmethod
    def load(cls, path) -> "Certificate":
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise CertificateFormatError(f"cannot read certificate {path}: {exc}") from exc
        return cls.from_json_dict(data)

    def save(self, path):
        Path(path).write_text(json.dumps(self.to_json_dict(), indent=1))


@dataclass(frozen=True)
class VerifyOutcome:
    ok: bool
    m: int
    violation: str | None = None


def verify_certificate(cert: Certificate) -> VerifyOutcome:
    """Re-check a certificate by exhaustive expansion.

    Expands every orbit fully, checks the generators span k-dimensional
    subspaces, that all members are distinct, that the total count is m,
    and that every pair of members keeps distance >= d.  No shift
    reduction is used: all member pairs are compared directly.
    """
    ctx = field_for(cert.q, cert.n, cert.poly)
    k, d = cert.k, cert.d
    order = ctx.order
    all_masks: list[int] = []
    seen: dict[int, int] = {}
    for gi, gens in enumerate(cert.generators):
        v = span(ctx, gens)
        if v.dim != k:
            return VerifyOutcome(
                False, 0, f"generator {gi} spans dimension {v.dim}, claimed k={k}"
            )
        base = v.elems_mask
        full = (1 << order) - 1
        members = set()
        for s in range(order):
            members.add(((base << s) | (base >> (order - s))) & full if s else base)
        for m in members:
            if m in seen:
                return VerifyOutcome(
                    False, 0, f"orbits {seen[m]} and {gi} share a subspace"
                )
            seen[m] = gi
        all_masks.extend(members)

    m_count = len(all_masks)
    if m_count != cert.m:
        return VerifyOutcome(False, m_count, f"expansion has {m_count} subspaces, claimed {cert.m}")

    limit = cert.q ** (k - d // 2) - 1 if d <= 2 * k else 0
    for i, a in enumerate(all_masks):
        for b in all_masks[i + 1 :]:
            if (a & b).bit_count() > limit:
                inter = (a & b).bit_count()
                dim = 0
                c = inter + 1
                while c > 1:
                    c //= cert.q
                    dim += 1
                return VerifyOutcome(
                    False,
                    m_count,
                    f"two members intersect in dimension {dim}: distance "
                    f"{2 * (k - dim)} < {d}",
                )
    return VerifyOutcome(True, m_count, None)


@dataclass(frozen=True)
class ConditionalBoundRecord:
    fix_t: int
    fix_count: int
    extend_t: int | None
    bound: int


@dataclass
class ClassificationReport:
    q: int
    n: int
    k: int
    d: int
    poly: tuple[int, ...]
    m: int
    optimal: bool
    decomposition: dict[int, int]
    alpha_bounds: dict[int, int]
    alpha_bounds_proved: bool
    class_bound_total: int | None
    conditional_bounds: list[ConditionalBoundRecord] = field(default_factory=list)
    certificate: Certificate | None = None
    orbit_count: int = 0
    vertex_count: int = 0
    edge_count: int = 0
    solver_nodes: int = 0
    solver_time: float = 0.0
    verified: bool = False

    @property
    def code_label(self) -> str:
        return f"[{self.n},{self.m},{self.d},{self.k}]"

    def to_json_dict(self) -> dict:
        return {
            "q": self.q,
            "n": self.n,
            "k": self.k,
            "d": self.d,
            "poly": list(self.poly),
            "M": self.m,
            "optimal": self.optimal,
            "code_label": self.code_label,
            "decomposition": {str(t): a for t, a in sorted(self.decomposition.items())},
            "alpha_bounds": {str(t): b for t, b in sorted(self.alpha_bounds.items())},
            "alpha_bounds_proved": self.alpha_bounds_proved,
            "class_bound_total": self.class_bound_total,
            "conditional_bounds": [
                {
                    "fix_t": r.fix_t,
                    "fix_count": r.fix_count,
                    "extend_t": r.extend_t,
                    "bound": r.bound,
                }
                for r in self.conditional_bounds
            ],
            "certificate": self.certificate.to_json_dict() if self.certificate else None,
            "orbit_count": self.orbit_count,
            "vertex_count": self.vertex_count,
            "edge_count": self.edge_count,
            "solver": {"nodes": self.solver_nodes, "time": self.solver_time},
            "verified": self.verified,
        }


def _orbit_set_for(
    ctx: FieldCtx,
    k: int,
    cache_dir,
    use_cache: bool,
    resource_cap: int,
) -> OrbitSet:
    key = (ctx.q, ctx.n, k, ctx.params.poly)
    got = _ORBIT_MEMO.get(key)
    if got is None:
        got = load_or_enumerate(
            ctx, k, cache_dir=cache_dir, use_cache=use_cache, resource_cap=resource_cap
        )
        _ORBIT_MEMO[key] = got
    return got


class _Budget:
    """Countdown shared by the solver calls of one pipeline run."""

    def __init__(self, seconds: float | None):
        self.deadline = time.monotonic() + seconds if seconds is not None else None

    def remaining(self) -> float | None:
        if self.deadline is None:
            return None
        return max(0.01, self.deadline - time.monotonic())


def _pipeline(q, n, k, d, poly, cache_dir, use_cache, resource_cap, threads):
    ctx = field_for(q, n, poly)
    d = normalize_distance(d)
    orbit_set = _orbit_set_for(ctx, k, cache_dir, use_cache, resource_cap)
    graph = build_graph(orbit_set, d, threads=threads)
    return ctx, d, orbit_set, graph


def run_algorithm1(
    q: int,
    n: int,
    k: int,
    d: int,
    poly=None,
    cache_dir=None,
    use_cache: bool = True,
    time_budget: float | None = 600.0,
    threads: int = 1,
    resource_cap: int = DEFAULT_RESOURCE_CAP,
    conditional_profiles=(),
    verify: bool = True,
) -> ClassificationReport:
    """Full pipeline: orbits, graph, class bounds, exact optimum, certificate.

    On budget exhaustion the best code found so far is reported with
    optimal=False, together with the class-bound total as a certified
    upper bound (when the class solves themselves finished).
    """
    budget = _Budget(time_budget)
    ctx, d, orbit_set, graph = _pipeline(
        q, n, k, d, poly, cache_dir, use_cache, resource_cap, threads
    )

    alpha_bounds: dict[int, int] = {}
    alpha_proved = True
    for t in _divisors(gcd(n, k)):
        sub = size_class_subgraph(graph, t)
        res = clique_mod.max_clique(sub, time_budget=budget.remaining())
        alpha_bounds[t] = res.size
        alpha_proved &= res.is_proved_optimal

    class_bound_total = None
    if alpha_proved:
        class_bound_total = sum(
            bound * orbit_set.period_of_t(t) for t, bound in alpha_bounds.items()
        )

    best = clique_mod.max_weight_clique(graph, time_budget=budget.remaining())
    decomposition: dict[int, int] = {}
    for pos in best.vertices:
        t = graph.orbit_at(pos).t
        decomposition[t] = decomposition.get(t, 0) + 1

    optimal = best.is_proved_optimal
    if not optimal and class_bound_total is not None and best.weight == class_bound_total:
        optimal = True  # the class bounds alone certify the optimum

    certificate = None
    verified = False
    if best.weight > 0:
        certificate = Certificate(
            q=q,
            n=n,
            k=k,
            d=d,
            poly=ctx.params.poly,
            generators=tuple(graph.orbit_at(pos).rep.elems for pos in best.vertices),
            m=best.weight,
        )
        if verify:
            outcome = verify_certificate(certificate)
            if not outcome.ok:  # pragma: no cover - internal consistency net
                raise GrassCliqueError(
                    f"emitted code failed re-verification: {outcome.violation}"
                )
            verified = True

    records = []
    for profile in conditional_profiles:
        fix_t, fix_count, extend_t = profile
        bound = _conditional_bound_on_graph(
            graph, orbit_set, fix_t, fix_count, extend_t, budget
        )
        records.append(
            ConditionalBoundRecord(
                fix_t=fix_t, fix_count=fix_count, extend_t=extend_t, bound=bound
            )
        )

    return ClassificationReport(
        q=q,
        n=n,
        k=k,
        d=d,
        poly=ctx.params.poly,
        m=best.weight,
        optimal=optimal,
        decomposition=decomposition,
        alpha_bounds=alpha_bounds,
        alpha_bounds_proved=alpha_proved,
        class_bound_total=class_bound_total,
        conditional_bounds=records,
        certificate=certificate,
        orbit_count=len(orbit_set.orbits),
        vertex_count=graph.n_vertices,
        edge_count=graph.edge_count,
        solver_nodes=best.nodes_explored,
        solver_time=best.time,
        verified=verified,
    )


def alpha_bound(
    q: int,
    n: int,
    k: int,
    d: int,
    t: int,
    poly=None,
    cache_dir=None,
    use_cache: bool = True,
    time_budget: float | None = None,
    threads: int = 1,
    resource_cap: int = DEFAULT_RESOURCE_CAP,
) -> int:
    """Clique number of one period class: upper bound for alpha_t."""
    if n % t:
        raise ValueError(f"t={t} does not divide n={n}")
    _, _, orbit_set, graph = _pipeline(
        q, n, k, d, poly, cache_dir, use_cache, resource_cap, threads
    )
    sub = size_class_subgraph(graph, t)
    res = clique_mod.max_clique(sub, time_budget=time_budget)
    if not res.is_proved_optimal:
        raise GrassCliqueError(
            f"time budget exhausted before the t={t} class bound was proved"
        )
    return res.size


def _conditional_bound_on_graph(
    graph: CompatGraph,
    orbit_set: OrbitSet,
    fix_t: int,
    fix_count: int,
    extend_t: int | None,
    budget: _Budget,
) -> int:
    extend_positions = None
    if extend_t is not None:
        extend_positions = set(graph.positions_with_period(orbit_set.period_of_t(extend_t)))

    if fix_count == 0:
        fixed_cliques = [()]
    else:
        fix_positions = graph.positions_with_period(orbit_set.period_of_t(fix_t))
        if comb(len(fix_positions), fix_count) > 1_000_000:
            raise ResourceCapError(
                f"too many {fix_count}-subsets of the t={fix_t} class to iterate"
            )
        fixed_cliques = [
            c
            for c in combinations(fix_positions, fix_count)
            if all(graph.has_edge(a, b) for a, b in combinations(c, 2))
        ]

    best = 0
    for fixed in fixed_cliques:
        sub = common_neighborhood_subgraph(graph, fixed)
        if extend_positions is not None:
            keep = [
                i
                for i, lab in enumerate(sub.labels)
                if graph.position_of_label(lab) in extend_positions
            ]
            sub = sub.induced(keep)
        res = clique_mod.max_clique(sub, time_budget=budget.remaining())
        if not res.is_proved_optimal:
            raise GrassCliqueError("time budget exhausted during conditional bound")
        best = max(best, res.size)
    return best


def conditional_bound(
    q: int,
    n: int,
    k: int,
    d: int,
    fix_t: int,
    fix_count: int,
    extend_t: int | None = None,
    poly=None,
    cache_dir=None,
    use_cache: bool = True,
    time_budget: float | None = None,
    threads: int = 1,
    resource_cap: int = DEFAULT_RESOURCE_CAP,
) -> int:
    """Best clique extension over all fixed cliques of a given shape.

    Every fix_count-clique inside the period class of stabilizer degree
    fix_t is fixed in turn; the bound is the largest clique (cardinality)
    found in any of their common neighbourhoods, optionally restricted to
    the extend_t class.  With fix_count=0 this reduces to alpha_bound.
    Returns 0 when no fixed clique of the requested shape exists.
    """
    _, _, orbit_set, graph = _pipeline(
        q, n, k, d, poly, cache_dir, use_cache, resource_cap, threads
    )
    return _conditional_bound_on_graph(
        graph, orbit_set, fix_t, fix_count, extend_t, _Budget(time_budget)
    )


@dataclass(frozen=True)
class TableCell:
    m: int | None
    optimal: bool
    error: str | None = None


@dataclass
class TableResult:
    q: int
    n: int
    d_values: tuple[int, ...]
    k_values: tuple[int, ...]
    cells: dict[tuple[int, int], TableCell]

    def matrix(self) -> list[list[int | None]]:
        return [
            [self.cells[(d, k)].m for k in self.k_values] for d in self.d_values
        ]

    def to_json_dict(self) -> dict:
        return {
            "q": self.q,
            "n": self.n,
            "d_values": list(self.d_values),
            "k_values": list(self.k_values),
            "cells": [
                {
                    "d": d,
                    "k": k,
                    "M": cell.m,
                    "optimal": cell.optimal,
                    "error": cell.error,
                }
                for (d, k), cell in sorted(self.cells.items())
            ],
        }


def table(
    q: int,
    n: int,
    d_values=None,
    k_values=None,
    poly=None,
    cache_dir=None,
    use_cache: bool = True,
    time_budget: float | None = 600.0,
    threads: int = 1,
    resource_cap: int = DEFAULT_RESOURCE_CAP,
) -> TableResult:
    """Grid of C_q(n,d,k) over the requested ranges.

    Defaults mirror the survey layout: k from 2 to n//2, even d from 4 to
    2*(n//2).  Cells that fail are recorded individually; the rest of the
    table still completes.
    """
    if k_values is None:
        if n < 4:
            raise ValueError("no default column range for n < 4; pass k_values")
        k_values = tuple(range(2, n // 2 + 1))
    else:
        k_values = tuple(k_values)
    if d_values is None:
        d_values = tuple(range(4, 2 * (n // 2) + 1, 2))
    else:
        d_values = tuple(normalize_distance(d) for d in d_values)

    cells: dict[tuple[int, int], TableCell] = {}
    for k in k_values:
        for d in d_values:
            try:
                report = run_algorithm1(
                    q,
                    n,
                    k,
                    d,
                    poly=poly,
                    cache_dir=cache_dir,
                    use_cache=use_cache,
                    time_budget=time_budget,
                    threads=threads,
                    resource_cap=resource_cap,
                )
                cells[(d, k)] = TableCell(m=report.m, optimal=report.optimal)
            except GrassCliqueError as exc:
                cells[(d, k)] = TableCell(m=None, optimal=False, error=str(exc))
    return TableResult(q=q, n=n, d_values=d_values, k_values=k_values, cells=cells)
