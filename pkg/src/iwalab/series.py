"""Arithmetic in Zp[[T]] at finite precision.

Every value lives modulo (p^N, T^M): coefficients are canonical residues in
[0, p^N) and series are truncated after M coefficients.  Equality always means
equality of those canonical residues.  All operations are pure functions on
immutable values.

The three element kinds:

* :class:`PowerSeries` -- a general element of the ring.
* :class:`UnitSeries`  -- a series whose constant term is prime to p; these
  are exactly the invertible elements.
* :class:`DistinguishedPoly` -- a monic polynomial whose lower coefficients
  are all divisible by p (a Weierstrass polynomial).

Weierstrass preparation factors any series with a unit coefficient as
(unit) * (distinguished polynomial); ``iota`` substitutes 1/(1+T) - 1 for T,
the involution that inverts the Galois variable.
"""

import math
import re
from dataclasses import dataclass

from .errors import (
    InsufficientTruncationError,
    NoPreparationError,
    NotAUnitError,
    PrecisionMismatchError,
)


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Precision:
    """Working precision: coefficients mod p^N, series mod T^M."""

    p: int
    N: int
    M: int

    def __post_init__(self):
        if self.p < 3 or not _is_prime(self.p):
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if self.N < 1:
            raise ValueError(f"N must be >= 1, got {self.N}")
        if self.M < 1:
            raise ValueError(f"M must be >= 1, got {self.M}")

    @property
    def modulus(self):
        return self.p ** self.N

    def __str__(self):
        return f"p={self.p} N={self.N} M={self.M}"


def _same_precision(a, b):
    if a.prec != b.prec:
        raise PrecisionMismatchError(f"{a.prec} vs {b.prec}")


@dataclass(frozen=True, eq=False)
class PowerSeries:
    """Element of Zp[[T]] mod (p^N, T^M); coeffs[k] is the coefficient of T^k."""

    prec: Precision
    coeffs: tuple

    def __post_init__(self):
        q = self.prec.modulus
        M = self.prec.M
        cs = [c % q for c in self.coeffs[:M]]
        cs.extend([0] * (M - len(cs)))
        object.__setattr__(self, "coeffs", tuple(cs))

    def __eq__(self, other):
        # structural equality so that UnitSeries compares equal to the plain
        # series with the same residues
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.prec == other.prec and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.prec, self.coeffs))

    def is_zero(self):
        return not any(self.coeffs)

    def __add__(self, other):
        _same_precision(self, other)
        return PowerSeries(self.prec, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        _same_precision(self, other)
        return PowerSeries(self.prec, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return PowerSeries(self.prec, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        return series_mul(self, other)

    def __str__(self):
        return format_series(self)


class UnitSeries(PowerSeries):
    """A PowerSeries whose constant term is a unit mod p."""

    def __post_init__(self):
        super().__post_init__()
        if self.coeffs[0] % self.prec.p == 0:
            raise NotAUnitError(f"constant term {self.coeffs[0]} is divisible by {self.prec.p}")


@dataclass(frozen=True)
class DistinguishedPoly:
    """Monic polynomial of degree d < M with all lower coefficients divisible by p."""

    prec: Precision
    coeffs: tuple  # ascending, length degree + 1, leading coefficient 1

    def __post_init__(self):
        q = self.prec.modulus
        cs = tuple(c % q for c in self.coeffs)
        object.__setattr__(self, "coeffs", cs)
        d = len(cs) - 1
        if d < 0 or cs[d] != 1:
            raise ValueError("distinguished polynomial must be monic")
        if d >= self.prec.M:
            raise InsufficientTruncationError(
                f"degree {d} does not fit below truncation order {self.prec.M}"
            )
        for c in cs[:d]:
            if c % self.prec.p:
                raise ValueError(
                    "lower coefficients of a distinguished polynomial must be divisible by p"
                )

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def as_series(self):
        return PowerSeries(self.prec, self.coeffs)

    def __str__(self):
        return format_poly(self)


def series_constant(prec, c):
    """The constant series c."""
    return PowerSeries(prec, (c,))


def series_one(prec):
    return series_constant(prec, 1)


def series_T(prec):
    return PowerSeries(prec, (0, 1))


def series_mul(f, g):
    """Product in Zp[[T]] mod (p^N, T^M)."""
    _same_precision(f, g)
    q = f.prec.modulus
    M = f.prec.M
    out = [0] * M
    for i, a in enumerate(f.coeffs):
        if a == 0:
            continue
        for j in range(M - i):
            b = g.coeffs[j]
            if b:
                out[i + j] = (out[i + j] + a * b) % q
    return PowerSeries(f.prec, tuple(out))


def invert_unit(u):
    """Inverse of a unit series: series_mul(u, invert_unit(u)) == 1."""
    prec = u.prec
    p, q, M = prec.p, prec.modulus, prec.M
    c0 = u.coeffs[0]
    if c0 % p == 0:
        raise NotAUnitError(f"constant term {c0} is divisible by {p}")
    inv0 = pow(c0, -1, q)
    out = [inv0] + [0] * (M - 1)
    for k in range(1, M):
        s = 0
        for i in range(1, k + 1):
            a = u.coeffs[i]
            if a:
                s += a * out[k - i]
        out[k] = (-inv0 * s) % q
    return UnitSeries(prec, tuple(out))


def weierstrass_degree(f):
    """Index of the first coefficient of f that is a unit mod p.

    Equals the degree of the distinguished factor in the preparation of f.
    """
    p = f.prec.p
    for k, c in enumerate(f.coeffs):
        if c % p:
            return k
    raise NoPreparationError(
        "every stored coefficient is divisible by p; no Weierstrass preparation"
    )


def _shift_down(coeffs, d, M):
    """Drop the first d coefficients and pad the top with zeros."""
    return tuple(coeffs[d:]) + (0,) * min(d, M)


def weierstrass_prepare(f):
    """Factor f = u * f1 with u a unit and f1 distinguished, exactly at precision.

    The quotient is found by the classical successive-approximation division:
    writing f = P + T^d * B with P the (p-divisible) low part and B a unit,
    the map q -> (T^d - q*P shifted down by d) * B^{-1} is a p-adic
    contraction, and its fixed point q satisfies q*f = T^d - r with deg r < d.
    Then f1 = T^d - r and u = q^{-1}.
    """
    prec = f.prec
    q_mod, M = prec.modulus, prec.M
    d = weierstrass_degree(f)
    if d == 0:
        return UnitSeries(prec, f.coeffs), DistinguishedPoly(prec, (1,))
    P = PowerSeries(prec, f.coeffs[:d])
    B = PowerSeries(prec, _shift_down(f.coeffs, d, M))
    Binv = invert_unit(B)
    g = PowerSeries(prec, (0,) * d + (1,))
    quo = PowerSeries(prec, ())
    for _ in range(prec.N + 2):
        h = g - series_mul(quo, P)
        nxt = series_mul(PowerSeries(prec, _shift_down(h.coeffs, d, M)), Binv)
        if nxt.coeffs == quo.coeffs:
            break
        quo = nxt
    h = g - series_mul(quo, P)
    r = h.coeffs[:d]
    f1 = DistinguishedPoly(prec, tuple(-c for c in r) + (1,))
    u = invert_unit(quo)
    return u, f1


def iota(f):
    """Substitute 1/(1+T) - 1 for T; a ring involution of Zp[[T]] at precision."""
    prec = f.prec
    s = invert_unit(PowerSeries(prec, (1, 1))) - series_one(prec)
    out = series_constant(prec, f.coeffs[-1])
    for k in range(prec.M - 2, -1, -1):
        out = series_mul(out, s) + series_constant(prec, f.coeffs[k])
    return out


def iota_poly(f1):
    """Distinguished representative of the ideal iota(f1) * Lambda.

    For monic f of degree d, (1+T)^d * iota(f) is the polynomial
    sum_k a_k (-T)^k (1+T)^(d-k), again of degree d with unit leading
    coefficient f(-1).  Normalizing by that unit gives the distinguished
    generator by pure polynomial arithmetic -- no series division, hence no
    precision loss, and iota_poly is an exact involution at precision.
    """
    prec = f1.prec
    q = prec.modulus
    d = f1.degree
    out = [0] * (d + 1)
    for k, a in enumerate(f1.coeffs):
        if a == 0:
            continue
        # a * (-T)^k * (1+T)^(d-k)
        sign = 1 if k % 2 == 0 else -1
        for i in range(d - k + 1):
            out[k + i] = (out[k + i] + sign * a * math.comb(d - k, i)) % q
    lead = out[d]
    inv = pow(lead, -1, q)
    return DistinguishedPoly(prec, tuple(c * inv % q for c in out))


def omega(prec, n):
    """The distinguished polynomial (1+T)^(p^n) - 1 of degree p^n."""
    d = prec.p ** n
    if d >= prec.M:
        raise InsufficientTruncationError(
            f"omega({n}) has degree {d}, beyond truncation order {prec.M}"
        )
    coeffs = [math.comb(d, k) for k in range(d + 1)]
    coeffs[0] = 0
    return DistinguishedPoly(prec, tuple(coeffs))


def poly_mul(a, b):
    """Product of two distinguished polynomials (again distinguished)."""
    _same_precision(a, b)
    q = a.prec.modulus
    out = [0] * (a.degree + b.degree + 1)
    for i, x in enumerate(a.coeffs):
        if x == 0:
            continue
        for j, y in enumerate(b.coeffs):
            if y:
                out[i + j] = (out[i + j] + x * y) % q
    return DistinguishedPoly(a.prec, tuple(out))


def poly_pow(a, e):
    out = DistinguishedPoly(a.prec, (1,))
    for _ in range(e):
        out = poly_mul(out, a)
    return out


def poly_divmod(num, den, modulus):
    """Divide coefficient lists (ascending) by a monic ``den`` mod ``modulus``."""
    num = [c % modulus for c in num]
    d = len(den) - 1
    if den[d] % modulus != 1:
        raise ValueError("divisor must be monic")
    quo = [0] * max(len(num) - d, 0)
    for k in range(len(num) - 1, d - 1, -1):
        c = num[k]
        if c:
            quo[k - d] = c
            for i in range(d + 1):
                num[k - d + i] = (num[k - d + i] - c * den[i]) % modulus
    return quo, num[:d]


_TERM_RE = re.compile(
    r"^\s*(?:(?P<coeff>\d+)\s*\*?\s*)?(?:T(?:\s*\^\s*(?P<exp>\d+))?)?\s*$"
)


def parse_poly_coeffs(text):
    """Parse an integer polynomial in T, e.g. 'T^3 + 4*T^2 + 4*T + 3'.

    Returns the ascending coefficient list (exact signed integers).
    """
    s = text.replace("−", "-").strip()
    if not s:
        raise ValueError("empty polynomial expression")
    terms = []
    sign = 1
    buf = ""
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        s = s[1:]
    for ch in s:
        if ch in "+-":
            terms.append((sign, buf))
            sign = -1 if ch == "-" else 1
            buf = ""
        else:
            buf += ch
    terms.append((sign, buf))
    coeffs = {}
    for sgn, term in terms:
        m = _TERM_RE.match(term)
        if not m or not term.strip():
            raise ValueError(f"cannot parse term {term!r} in {text!r}")
        coeff = m.group("coeff")
        has_T = "T" in term
        exp = m.group("exp")
        c = int(coeff) if coeff is not None else 1
        if not has_T:
            if coeff is None:
                raise ValueError(f"cannot parse term {term!r} in {text!r}")
            k = 0
        else:
            k = int(exp) if exp is not None else 1
        coeffs[k] = coeffs.get(k, 0) + sgn * c
    deg = max(coeffs)
    return [coeffs.get(k, 0) for k in range(deg + 1)]


def parse_series(text, prec):
    return PowerSeries(prec, tuple(parse_poly_coeffs(text)))


def parse_distinguished(text, prec):
    return DistinguishedPoly(prec, tuple(parse_poly_coeffs(text)))


def _term_str(c, k):
    if k == 0:
        return str(c)
    t = "T" if k == 1 else f"T^{k}"
    return t if c == 1 else f"{c}*{t}"


def format_poly(poly):
    """Descending-order rendering, e.g. 'T^3 + 4*T^2 + 4*T + 3'."""
    parts = [
        _term_str(c, k)
        for k, c in sorted(enumerate(poly.coeffs), reverse=True)
        if c
    ]
    return " + ".join(parts) if parts else "0"


def format_series(f):
    """Ascending-order rendering with an explicit O(T^M) tail."""
    parts = [_term_str(c, k) for k, c in enumerate(f.coeffs) if c]
    body = " + ".join(parts) if parts else "0"
    return f"{body} + O(T^{f.prec.M})"
