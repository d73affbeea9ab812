"""Enumeration of cyclic-shift orbits on the Grassmannian G_q(n,k).

Every orbit is represented by its canonical member: the lexicographically
least exponent list among all shifts that contain exponent 0.  Enumeration
only spans subspaces through alpha^0 (every orbit has one), which costs
gaussian_binomial(n-1, k-1, q) spans instead of the full Grassmannian.

Orbit sizes obey period * (q^t - 1) = q^n - 1 where F_{q^t} is the
stabilizer subfield and t divides gcd(n, k); the partition identity
sum(period) = gaussian_binomial(n, k, q) is checked after every run.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass
from itertools import combinations, product
from math import gcd
from pathlib import Path

from . import _kernels
from .errors import ResourceCapError, SameOrbitError, SingletonOrbitError
from .field import FieldCtx
from .subspace import Subspace, cyclic_shift, from_elems, subspace_distance

CACHE_FORMAT = 1
DEFAULT_RESOURCE_CAP = 100_000_000


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n, exact."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    num = 1
    den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (k - i) - 1
    return num // den


def _divisors(x: int) -> list[int]:
    return [d for d in range(1, x + 1) if x % d == 0]


def _dim_from_count(count: int, q: int) -> int:
    """m with q^m == count + 1 (element counts of subspaces are q^m - 1)."""
    c = count + 1
    m = 0
    while c > 1:
        if c % q:
            raise ValueError(f"{count} is not q^m - 1 for q={q}")
        c //= q
        m += 1
    return m


@dataclass(frozen=True)
class Orbit:
    """One cyclic-shift equivalence class.

    min_dist is None for the single period-1 orbit (k = n), which carries
    no internal distance and never enters compatibility graphs.
    """

    rep: Subspace
    period: int
    t: int
    min_dist: int | None

    @property
    def k(self) -> int:
        return self.rep.dim


@dataclass(frozen=True)
class OrbitSet:
    """All orbits of G_q(n,k), sorted by canonical representative."""

    q: int
    n: int
    k: int
    poly: tuple[int, ...]
    orbits: tuple[Orbit, ...]

    @property
    def counts_by_t(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for o in self.orbits:
            out[o.t] = out.get(o.t, 0) + 1
        return dict(sorted(out.items()))

    @property
    def subspace_total(self) -> int:
        return sum(o.period for o in self.orbits)

    def period_of_t(self, t: int) -> int:
        return (self.q**self.n - 1) // (self.q**t - 1)


def canonical_elems(elems, order: int) -> tuple[int, ...]:
    """Lexicographically least shift of the exponent set that contains 0."""
    return min(tuple(sorted((x - e) % order for x in elems)) for e in elems)


def _period_and_t(mask: int, order: int, n: int, k: int, q: int) -> tuple[int, int]:
    """Smallest positive shift fixing the element mask, via candidate subfields."""
    full = (1 << order) - 1
    for t in sorted(_divisors(gcd(n, k)), reverse=True):
        p = order // (q**t - 1)
        if p == order and t == 1:
            return order, 1
        rot = ((mask << p) | (mask >> (order - p))) & full
        if rot == mask:
            return p, t
    raise RuntimeError("stabilizer scan failed")  # pragma: no cover


def _rref_rows_gf2(m: int, r: int):
    """All reduced-echelon m x r matrices over F_2; rows are ints (bit = column)."""
    if m == 0:
        yield ()
        return
    for pivots in combinations(range(r), m):
        pivset = set(pivots)
        free = [(i, j) for i in range(m) for j in range(pivots[i] + 1, r) if j not in pivset]
        base = tuple(1 << p for p in pivots)
        for assign in range(1 << len(free)):
            rows = list(base)
            for b, (i, j) in enumerate(free):
                if (assign >> b) & 1:
                    rows[i] |= 1 << j
            yield tuple(rows)


def _rref_rows_gfq(m: int, r: int, q: int):
    """All reduced-echelon m x r matrices over F_q; rows are tuples."""
    if m == 0:
        yield ()
        return
    for pivots in combinations(range(r), m):
        pivset = set(pivots)
        free = [(i, j) for i in range(m) for j in range(pivots[i] + 1, r) if j not in pivset]
        for values in product(range(q), repeat=len(free)):
            rows = [[0] * r for _ in range(m)]
            for i, p in enumerate(pivots):
                rows[i][p] = 1
            for (i, j), v in zip(free, values):
                rows[i][j] = v
            yield tuple(tuple(row) for row in rows)


def _candidate_elem_sets(ctx: FieldCtx, k: int):
    """Element exponents of every k-subspace containing alpha^0.

    Subspaces through a fixed vector correspond to (k-1)-subspaces of the
    quotient; with the power basis the quotient by <1> is simply "drop
    coordinate 0", so candidates lift echelon matrices over the remaining
    n-1 coordinates.
    """
    n, q = ctx.n, ctx.q
    if q == 2:
        log = ctx._log_list
        for rows in _rref_rows_gf2(k - 1, n - 1):
            combos = [0]
            for basis_row in (1, *(u << 1 for u in rows)):
                combos += [v ^ basis_row for v in combos]
            yield sorted(log[v] for v in combos[1:])
    else:
        log = ctx._log_dict
        one = (1,) + (0,) * (n - 1)
        zero = (0,) * n
        for rows in _rref_rows_gfq(k - 1, n - 1, q):
            combos = [zero]
            for basis_row in (one, *((0,) + u for u in rows)):
                cur = list(combos)
                for c in range(1, q):
                    scaled = tuple((c * x) % q for x in basis_row)
                    cur += [tuple((a + b) % q for a, b in zip(v, scaled)) for v in combos]
                combos = cur
            yield sorted(log[v] for v in combos[1:])


def enumerate_orbits(
    ctx: FieldCtx, k: int, resource_cap: int = DEFAULT_RESOURCE_CAP
) -> OrbitSet:
    """All cyclic-shift orbits of G_q(n,k), deterministic order.

    Raises ResourceCapError when the Grassmannian exceeds resource_cap
    subspaces.
    """
    n, q = ctx.n, ctx.q
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}")
    total = gaussian_binomial(n, k, q)
    if total > resource_cap:
        raise ResourceCapError(
            f"G_{q}({n},{k}) has {total} subspaces, above the cap of {resource_cap}"
        )
    order = ctx.order

    canons = set()
    for elems in _candidate_elem_sets(ctx, k):
        canons.add(canonical_elems(elems, order))

    orbits = []
    for canon in sorted(canons):
        mask = 0
        for e in canon:
            mask |= 1 << e
        period, t = _period_and_t(mask, order, n, k, q)
        if period <= 1:
            min_dist = None
        else:
            maxov = _kernels.max_autocorrelation(mask, order, period)
            min_dist = 2 * (k - _dim_from_count(maxov, q))
        orbits.append(Orbit(rep=from_elems(ctx, canon), period=period, t=t, min_dist=min_dist))

    got = sum(o.period for o in orbits)
    if got != total:
        raise RuntimeError(
            f"orbit partition mismatch: periods sum to {got}, Grassmannian has {total}"
        )  # pragma: no cover
    return OrbitSet(q=q, n=n, k=k, poly=ctx.params.poly, orbits=tuple(orbits))


def orbit_of(ctx: FieldCtx, v: Subspace) -> Orbit:
    """The orbit of an arbitrary subspace, with canonical representative."""
    canon = canonical_elems(v.elems, ctx.order)
    mask = 0
    for e in canon:
        mask |= 1 << e
    period, t = _period_and_t(mask, ctx.order, ctx.n, v.dim, ctx.q)
    if period <= 1:
        min_dist = None
    else:
        maxov = _kernels.max_autocorrelation(mask, ctx.order, period)
        min_dist = 2 * (v.dim - _dim_from_count(maxov, ctx.q))
    return Orbit(rep=from_elems(ctx, canon), period=period, t=t, min_dist=min_dist)


def orbit_min_distance(ctx: FieldCtx, orbit: Orbit, brute_force: bool = False) -> int:
    """Minimum subspace distance between distinct members of one orbit.

    The default route scans representative-vs-shift (valid by shift
    isometry); brute_force compares all member pairs instead, as an
    independent check.
    """
    if orbit.period < 2:
        raise SingletonOrbitError("period-1 orbit has no internal distance")
    if not brute_force:
        maxov = _kernels.max_autocorrelation(orbit.rep.elems_mask, ctx.order, orbit.period)
        return 2 * (orbit.k - _dim_from_count(maxov, ctx.q))
    members = [cyclic_shift(ctx, orbit.rep, s) for s in range(orbit.period)]
    return min(
        subspace_distance(a, b) for a, b in combinations(members, 2)
    )


def inter_orbit_distance(
    ctx: FieldCtx, o1: Orbit, o2: Orbit, brute_force: bool = False
) -> int:
    """Minimum subspace distance across two distinct orbits."""
    if o1.rep == o2.rep:
        raise SameOrbitError("need two distinct orbits")
    if o1.k != o2.k:
        raise ValueError("orbits live in different Grassmannians")
    if not brute_force:
        maxov = _kernels.max_crosscorrelation(
            o1.rep.elems_mask, o2.rep.elems_mask, ctx.order
        )
        return 2 * (o1.k - _dim_from_count(maxov, ctx.q))
    members1 = [cyclic_shift(ctx, o1.rep, s) for s in range(o1.period)]
    members2 = [cyclic_shift(ctx, o2.rep, s) for s in range(o2.period)]
    return min(subspace_distance(a, b) for a in members1 for b in members2)


# -- orbit cache -------------------------------------------------------------


def default_cache_dir() -> Path:
    env = os.environ.get("GRASSCLIQUE_CACHE")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "grassclique"


def cache_path(cache_dir: Path, q: int, n: int, k: int, poly) -> Path:
    tag = "".join(str(c) for c in poly)
    return Path(cache_dir) / f"orbits_q{q}_n{n}_k{k}_p{tag}_v{CACHE_FORMAT}.json"


def save_orbit_set(orbit_set: OrbitSet, cache_dir: Path) -> Path:
    path = cache_path(cache_dir, orbit_set.q, orbit_set.n, orbit_set.k, orbit_set.poly)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = {
        "format": CACHE_FORMAT,
        "q": orbit_set.q,
        "n": orbit_set.n,
        "k": orbit_set.k,
        "poly": list(orbit_set.poly),
        "created": time.strftime("%Y-%m-%dT%H:%M:%S"),
        "orbits": [
            {
                "rep": list(o.rep.elems),
                "period": o.period,
                "t": o.t,
                "min_dist": o.min_dist,
            }
            for o in orbit_set.orbits
        ],
    }
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps(payload))
    tmp.replace(path)
    return path


def load_orbit_set(ctx: FieldCtx, k: int, cache_dir: Path) -> OrbitSet | None:
    """Load a cached orbit set; None on miss or on any header mismatch."""
    path = cache_path(cache_dir, ctx.q, ctx.n, k, ctx.params.poly)
    if not path.exists():
        return None
    try:
        payload = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError):
        return None
    if (
        payload.get("format") != CACHE_FORMAT
        or payload.get("q") != ctx.q
        or payload.get("n") != ctx.n
        or payload.get("k") != k
        or tuple(payload.get("poly", ())) != ctx.params.poly
    ):
        return None
    orbits = tuple(
        Orbit(
            rep=from_elems(ctx, tuple(entry["rep"])),
            period=entry["period"],
            t=entry["t"],
            min_dist=entry["min_dist"],
        )
        for entry in payload["orbits"]
    )
    return OrbitSet(q=ctx.q, n=ctx.n, k=k, poly=ctx.params.poly, orbits=orbits)


def load_or_enumerate(
    ctx: FieldCtx,
    k: int,
    cache_dir: Path | None = None,
    use_cache: bool = True,
    resource_cap: int = DEFAULT_RESOURCE_CAP,
) -> OrbitSet:
    """Cache-aware front end to enumerate_orbits."""
    directory = Path(cache_dir) if cache_dir is not None else default_cache_dir()
    if use_cache:
        cached = load_orbit_set(ctx, k, directory)
        if cached is not None:
            return cached
    orbit_set = enumerate_orbits(ctx, k, resource_cap=resource_cap)
    if use_cache:
        try:
            save_orbit_set(orbit_set, directory)
        except OSError:
            pass
    return orbit_set
