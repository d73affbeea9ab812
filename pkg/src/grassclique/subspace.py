"""k-dimensional subspaces of F_{q^n}: spans, distances, cyclic shifts.

A subspace is kept in two linked forms: the sorted exponents of its
nonzero elements (the zero vector is never stored) and the unique
reduced-row-echelon basis of the corresponding coordinate vectors.
Equality and hashing go through the RREF basis, so deduplication is
deterministic.  All rank computations are exact integer arithmetic.
"""

from __future__ import annotations

from .errors import ExponentOutOfRangeError, MixedFieldsError
from .field import FieldCtx


def rref_gf2(rows: list[int]) -> tuple[int, ...]:
    """Reduced row echelon form over F_2 on bit-packed rows.

    Pivots are the lowest set bits, rows come back sorted by pivot column;
    zero rows are dropped.  The result is the canonical basis of the span.
    """
    work = [r for r in rows if r]
    basis: list[int] = []
    for row in work:
        cur = row
        for b in basis:
            if cur & (b & -b):
                cur ^= b
        if cur == 0:
            continue
        low = cur & -cur
        for i, b in enumerate(basis):
            if b & low:
                basis[i] = b ^ cur
        basis.append(cur)
    basis.sort(key=lambda r: r & -r)
    return tuple(basis)


def rank_gf2(rows: list[int]) -> int:
    basis: list[int] = []
    for row in rows:
        cur = row
        for b in basis:
            if cur & (b & -b):
                cur ^= b
        if cur:
            basis.append(cur)
    return len(basis)


def rref_gfq(rows: list[tuple[int, ...]], q: int) -> tuple[tuple[int, ...], ...]:
    """RREF over F_q for odd prime q; rows are coefficient tuples."""
    mat = [list(r) for r in rows]
    m = len(mat)
    n = len(mat[0]) if m else 0
    r = 0
    for col in range(n):
        piv = None
        for i in range(r, m):
            if mat[i][col] % q != 0:
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = pow(mat[r][col], q - 2, q)
        mat[r] = [(x * inv) % q for x in mat[r]]
        for i in range(m):
            if i != r and mat[i][col] % q:
                f = mat[i][col]
                mat[i] = [(x - f * p) % q for x, p in zip(mat[i], mat[r])]
        r += 1
        if r == m:
            break
    return tuple(tuple(row) for row in mat[:r])


def rank_gfq(rows: list[tuple[int, ...]], q: int) -> int:
    return len(rref_gfq(rows, q))


class Subspace:
    """A k-dimensional F_q-subspace of F_{q^n}.

    elems: sorted tuple of the q^k - 1 exponents of the nonzero elements.
    basis: canonical RREF rows (packed ints for q=2, tuples otherwise).
    """

    __slots__ = ("ctx", "dim", "elems", "basis", "_mask")

    def __init__(self, ctx: FieldCtx, elems: tuple[int, ...], basis, dim: int):
        self.ctx = ctx
        self.elems = elems
        self.basis = basis
        self.dim = dim
        self._mask = None

    @property
    def elems_mask(self) -> int:
        """Characteristic bitmask of elems over Z_{q^n-1}."""
        if self._mask is None:
            m = 0
            for e in self.elems:
                m |= 1 << e
            self._mask = m
        return self._mask

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ctx.params == other.ctx.params
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ctx.params, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, elems={format_elems(self.elems)})"


def format_elems(elems) -> str:
    """Exponent-set notation used in logs and certificates: "{0, 5, 10}"."""
    return "{" + ", ".join(str(e) for e in elems) + "}"


def _check_same_field(x: Subspace, y: Subspace):
    if x.ctx.params != y.ctx.params:
        raise MixedFieldsError(f"{x.ctx!r} vs {y.ctx!r}")


def _elems_from_basis(ctx: FieldCtx, basis) -> tuple[int, ...]:
    """Exponents of all nonzero linear combinations of the basis rows."""
    if ctx.q == 2:
        combos = [0]
        for row in basis:
            combos += [v ^ row for v in combos]
        log = ctx._log_list
        return tuple(sorted(log[v] for v in combos[1:]))
    combos = [(0,) * ctx.n]
    for row in basis:
        cur = list(combos)
        for c in range(1, ctx.q):
            scaled = tuple((c * x) % ctx.q for x in row)
            cur += [tuple((a + b) % ctx.q for a, b in zip(v, scaled)) for v in combos]
        combos = cur
    log = ctx._log_dict
    return tuple(sorted(log[v] for v in combos if any(v)))


def from_elems(ctx: FieldCtx, elems) -> Subspace:
    """Wrap a known-closed exponent set; basis is recomputed canonically."""
    elems = tuple(sorted(elems))
    vecs = [ctx.exp_table[e] for e in elems]
    if ctx.q == 2:
        basis = rref_gf2(vecs)
    else:
        basis = rref_gfq(vecs, ctx.q)
    return Subspace(ctx, elems, basis, len(basis))


def span(ctx: FieldCtx, generators) -> Subspace:
    """F_q-linear span of {alpha^e : e in generators}."""
    gens = list(generators)
    if not gens:
        raise ValueError("generators must be nonempty")
    for e in gens:
        ctx.check_exponent(e)
    vecs = [ctx.exp_table[e] for e in gens]
    if ctx.q == 2:
        basis = rref_gf2(vecs)
    else:
        basis = rref_gfq(vecs, ctx.q)
    elems = _elems_from_basis(ctx, basis)
    return Subspace(ctx, elems, basis, len(basis))


def intersection_dim(x: Subspace, y: Subspace) -> int:
    """dim(X ∩ Y) = dim X + dim Y - rank of the stacked bases."""
    _check_same_field(x, y)
    if x.ctx.q == 2:
        stacked_rank = rank_gf2(list(x.basis) + list(y.basis))
    else:
        stacked_rank = rank_gfq(list(x.basis) + list(y.basis), x.ctx.q)
    return x.dim + y.dim - stacked_rank


def subspace_distance(x: Subspace, y: Subspace) -> int:
    """Subspace metric dim X + dim Y - 2 dim(X ∩ Y)."""
    return x.dim + y.dim - 2 * intersection_dim(x, y)


def cyclic_shift(ctx: FieldCtx, v: Subspace, s: int) -> Subspace:
    """Multiply V by alpha^s: translate every exponent by s mod q^n - 1."""
    ctx.check_exponent(s)
    if s == 0:
        return v
    order = ctx.order
    return from_elems(ctx, tuple((e + s) % order for e in v.elems))
