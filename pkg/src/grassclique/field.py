"""Arithmetic in the extension field F_{q^n} via exponent (log/antilog) tables.

The field is generated by a primitive polynomial over F_q: the class alpha
of x is a generator of the multiplicative group, so every nonzero element
is alpha^e for a unique exponent e in [0, q^n - 1), and multiplication is
exponent addition modulo q^n - 1.  Elements double as coordinate vectors in
the power basis {1, x, ..., x^(n-1)}.

Vector representation contract:
  q == 2   bit-packed int, bit i = coefficient of x^i
  q odd    tuple of coefficients, index i = coefficient of x^i

Both full tables (exponent -> vector and back) are precomputed at
construction; the supported sizes top out around q^16, trading memory for
O(1) lookups everywhere downstream.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import (
    ExponentOutOfRangeError,
    NoDefaultPolynomialError,
    NotMonicError,
    NotPrimeError,
    NotPrimitiveError,
    PolynomialSyntaxError,
    WrongDegreeError,
    ZeroVectorError,
)

# Shipped primitive polynomials, constant term first.  The octave entry is
# x^8+x^4+x^3+x^2+1, whose exponent labelling the explicit n=8 generator
# lists in the test data depend on.
_DEFAULT_POLYS: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 1): (1, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 0, 0, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (2, 9): (1, 0, 0, 0, 1, 0, 0, 0, 0, 1),
    (2, 10): (1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1),
    (2, 11): (1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 12): (1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1),
    (2, 13): (1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 14): (1, 1, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1),
    (2, 15): (1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 16): (1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1),
    (3, 1): (1, 1),
    (3, 2): (2, 1, 1),
    (3, 3): (1, 0, 2, 1),
    (3, 4): (2, 0, 0, 1, 1),
    (3, 5): (1, 0, 0, 0, 2, 1),
    (3, 6): (2, 0, 0, 0, 0, 1, 1),
    (3, 7): (1, 0, 0, 0, 0, 1, 2, 1),
    (3, 8): (2, 0, 0, 0, 0, 1, 0, 0, 1),
}


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldParams:
    """Construction parameters: base order q, degree n, modulus polynomial.

    poly holds the n+1 coefficients constant-term first; it must be monic.
    Primitivity is not checked here, only by build_field.
    """

    q: int
    n: int
    poly: tuple[int, ...]

    def __post_init__(self):
        if not _is_prime(self.q):
            raise NotPrimeError(f"q = {self.q} is not prime")
        if self.n < 1:
            raise WrongDegreeError(f"extension degree must be positive, got {self.n}")
        if len(self.poly) != self.n + 1:
            raise WrongDegreeError(
                f"polynomial has degree {len(self.poly) - 1 if self.poly else 0}; "
                f"expected degree {self.n}"
            )
        if any(c < 0 or c >= self.q for c in self.poly):
            raise PolynomialSyntaxError(f"coefficients must lie in [0, {self.q})")
        if self.poly[-1] != 1:
            raise NotMonicError("leading coefficient must be 1")

    @property
    def order(self) -> int:
        return self.q**self.n - 1

    def poly_text(self) -> str:
        return format_poly(self.poly)


def parse_poly(text: str, q: int) -> tuple[int, ...]:
    """Parse either "x^8+x^4+x^3+x^2+1" style or a compact list "1,0,1,...".

    Term syntax: "1"/"c" constants, "x", "x^k", "c*x^k" (the * is optional).
    Coefficients are reduced mod q.  Returns constant-first coefficients.
    """
    text = text.strip()
    if "," in text:
        try:
            coeffs = [int(p) % q for p in text.split(",")]
        except ValueError as exc:
            raise PolynomialSyntaxError(f"bad coefficient list: {text!r}") from exc
        if not coeffs:
            raise PolynomialSyntaxError("empty coefficient list")
        return tuple(coeffs)

    term_re = re.compile(r"^(?:(\d+)\*?)?(x(?:\^(\d+))?)?$")
    degs: dict[int, int] = {}
    for raw in text.replace(" ", "").split("+"):
        m = term_re.match(raw)
        if not m or not raw or (m.group(1) is None and m.group(2) is None):
            raise PolynomialSyntaxError(f"bad polynomial term: {raw!r}")
        coeff = int(m.group(1)) if m.group(1) else 1
        if m.group(2) is None:
            deg = 0
        elif m.group(3) is None:
            deg = 1
        else:
            deg = int(m.group(3))
        degs[deg] = (degs.get(deg, 0) + coeff) % q
    top = max(degs)
    return tuple(degs.get(i, 0) for i in range(top + 1))


def format_poly(coeffs: tuple[int, ...]) -> str:
    """Render constant-first coefficients as "x^8+x^4+x^3+x^2+1"."""
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        elif i == 1:
            terms.append("x" if c == 1 else f"{c}*x")
        else:
            terms.append(f"x^{i}" if c == 1 else f"{c}*x^{i}")
    return "+".join(terms) if terms else "0"


class FieldCtx:
    """Immutable tables for one extension field; safe to share across workers.

    exp_table[e] is the vector of alpha^e in the native representation
    (packed int for q=2, tuple for odd q); log lookup inverts it.  Use
    exp_to_vec / vec_to_exp for the public tuple form.
    """

    __slots__ = (
        "params",
        "q",
        "n",
        "order",
        "exp_table",
        "_log_list",
        "_log_dict",
        "_pack_weights",
    )

    def __init__(self, params: FieldParams):
        self.params = params
        self.q = params.q
        self.n = params.n
        self.order = params.order
        if self.q == 2:
            self._init_tables_gf2()
        else:
            self._init_tables_gfq()

    def _init_tables_gf2(self):
        n, poly = self.n, self.params.poly
        poly_int = 0
        for i, c in enumerate(poly):
            if c:
                poly_int |= 1 << i
        exp = [0] * self.order
        log = [-1] * (1 << n)
        x = 1
        for e in range(self.order):
            if x == 0 or log[x] != -1:
                raise NotPrimitiveError(
                    f"x has multiplicative order {e} < {self.order} "
                    f"modulo {format_poly(poly)}"
                )
            exp[e] = x
            log[x] = e
            x <<= 1
            if x >> n:
                x ^= poly_int
        if x != 1:
            raise NotPrimitiveError(f"x is not a unit modulo {format_poly(poly)}")
        self.exp_table = exp
        self._log_list = log
        self._log_dict = None
        self._pack_weights = None

    def _init_tables_gfq(self):
        q, n, poly = self.q, self.n, self.params.poly
        reduce_row = tuple((-c) % q for c in poly[:n])
        weights = tuple(q**i for i in range(n))
        exp: list[tuple[int, ...]] = []
        log: dict[tuple[int, ...], int] = {}
        cur = (1,) + (0,) * (n - 1)
        for e in range(self.order):
            if cur in log or all(c == 0 for c in cur):
                raise NotPrimitiveError(
                    f"x has multiplicative order {e} < {self.order} "
                    f"modulo {format_poly(poly)}"
                )
            exp.append(cur)
            log[cur] = e
            lead = cur[-1]
            nxt = [0] + list(cur[:-1])
            if lead:
                for i in range(n):
                    nxt[i] = (nxt[i] + lead * reduce_row[i]) % q
            cur = tuple(nxt)
        if cur != exp[0]:
            raise NotPrimitiveError(f"x is not a unit modulo {format_poly(poly)}")
        self.exp_table = exp
        self._log_list = None
        self._log_dict = log
        self._pack_weights = weights

    # -- exponent <-> vector ------------------------------------------------

    def check_exponent(self, e: int):
        if not 0 <= e < self.order:
            raise ExponentOutOfRangeError(f"exponent {e} outside [0, {self.order})")

    def exp_to_vec(self, e: int) -> tuple[int, ...]:
        """Coordinate vector of alpha^e in the power basis."""
        self.check_exponent(e)
        v = self.exp_table[e]
        if self.q == 2:
            return tuple((v >> i) & 1 for i in range(self.n))
        return v

    def vec_to_exp(self, v) -> int:
        """Discrete log of a nonzero vector (tuple, or packed int for q=2)."""
        if self.q == 2:
            packed = v if isinstance(v, int) else self._pack2(v)
            if packed == 0:
                raise ZeroVectorError("the zero vector has no logarithm")
            if not 0 < packed < (1 << self.n):
                raise ExponentOutOfRangeError(f"vector {v!r} is not an n-bit value")
            return self._log_list[packed]
        vt = tuple(c % self.q for c in v)
        if len(vt) != self.n:
            raise ExponentOutOfRangeError(f"vector {v!r} does not have {self.n} coordinates")
        if all(c == 0 for c in vt):
            raise ZeroVectorError("the zero vector has no logarithm")
        return self._log_dict[vt]

    def _pack2(self, v) -> int:
        if len(v) != self.n:
            raise ExponentOutOfRangeError(f"vector {v!r} does not have {self.n} coordinates")
        packed = 0
        for i, c in enumerate(v):
            if c & 1:
                packed |= 1 << i
        return packed

    # -- arithmetic on exponents ---------------------------------------------

    def add_exps(self, a: int, b: int) -> int | None:
        """Exponent of alpha^a + alpha^b, or None when the sum is zero."""
        if self.q == 2:
            v = self.exp_table[a] ^ self.exp_table[b]
            return None if v == 0 else self._log_list[v]
        va, vb = self.exp_table[a], self.exp_table[b]
        v = tuple((x + y) % self.q for x, y in zip(va, vb))
        if all(c == 0 for c in v):
            return None
        return self._log_dict[v]

    def scale_exp(self, e: int, c: int) -> int | None:
        """Exponent of c * alpha^e for a base-field scalar c."""
        c %= self.q
        if c == 0:
            return None
        if c == 1:
            return e
        # base-field scalars are powers of alpha with exponent multiple of
        # (q^n-1)/(q-1); look the scalar up once
        scalar_vec = (c,) + (0,) * (self.n - 1)
        return (e + self._log_dict[scalar_vec]) % self.order

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and self.params == other.params

    def __hash__(self):
        return hash(self.params)

    def __repr__(self):
        return f"FieldCtx(q={self.q}, n={self.n}, poly={self.params.poly_text()})"


def build_field(params: FieldParams) -> FieldCtx:
    """Build F_{q^n} from a primitive polynomial, checking primitivity.

    Raises NotPrimitiveError when x fails to generate the multiplicative
    group, which also covers reducible moduli.
    """
    return FieldCtx(params)


def default_primitive_poly(q: int, n: int) -> FieldParams:
    """A shipped primitive polynomial for (q, n); q=2 up to n=16, q=3 up to n=8."""
    try:
        poly = _DEFAULT_POLYS[(q, n)]
    except KeyError:
        raise NoDefaultPolynomialError(
            f"no shipped primitive polynomial for q={q}, n={n}; pass one explicitly"
        ) from None
    return FieldParams(q=q, n=n, poly=poly)


def field_for(q: int, n: int, poly: tuple[int, ...] | str | None = None) -> FieldCtx:
    """Convenience constructor: default polynomial unless one is supplied."""
    if poly is None:
        return build_field(default_primitive_poly(q, n))
    if isinstance(poly, str):
        poly = parse_poly(poly, q)
    return build_field(FieldParams(q=q, n=n, poly=tuple(poly)))
