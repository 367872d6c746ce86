"""Finitely generated Zp[[T]]-modules in structure-theorem form.

An :class:`ElementaryModule` is a direct sum

    Lambda^r  (+)  (+)_i Lambda/p^(alpha_i)  (+)  (+)_j Lambda/f_j^(beta_j)

with the f_j distinguished.  Repeated f_j are allowed (they are elementary
divisors); distinct f_j must be coprime at precision, which is checked via
the resultant.  Everything an elementary module is asked for -- Iwasawa
invariants, coinvariant sizes, Hom-coranks -- is exactly computable from this
data, which is the point of keeping modules in this shape.

Group orders are tracked as exponents of p throughout (:class:`SizeExponent`);
they grow like m * p^n and would overflow anything else.
"""

import math
from dataclasses import dataclass

from .errors import (
    InsufficientTruncationError,
    OracleInconclusiveError,
    PrecisionExhaustedError,
    PrecisionMismatchError,
)
from .intlinalg import cokernel_exponent, kernel_rank, resultant
from .series import DistinguishedPoly, Precision, format_poly, iota_poly, poly_mul, poly_pow


@dataclass(frozen=True)
class SizeExponent:
    """A group size p^e (or a ratio p^e when e < 0), stored as the exponent e."""

    exponent: int

    def __add__(self, other):
        return SizeExponent(self.exponent + other.exponent)

    def __sub__(self, other):
        return SizeExponent(self.exponent - other.exponent)

    def __neg__(self):
        return SizeExponent(-self.exponent)


@dataclass(frozen=True)
class ElementaryModule:
    prec: Precision
    free_rank: int = 0
    p_parts: tuple = ()            # exponents alpha_i >= 1
    poly_parts: tuple = ()         # pairs (DistinguishedPoly, beta >= 1)

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        if any(a < 1 for a in self.p_parts):
            raise ValueError("p-part exponents must be >= 1")
        object.__setattr__(self, "p_parts", tuple(sorted(self.p_parts)))
        parts = []
        for f, beta in self.poly_parts:
            if f.prec != self.prec:
                raise PrecisionMismatchError(f"{f.prec} vs {self.prec}")
            if f.degree < 1:
                raise ValueError("poly parts need degree >= 1")
            if beta < 1:
                raise ValueError("poly-part multiplicities must be >= 1")
            parts.append((f, beta))
        parts.sort(key=lambda fb: (fb[0].degree, fb[0].coeffs, fb[1]))
        object.__setattr__(self, "poly_parts", tuple(parts))
        q = self.prec.modulus
        distinct = sorted({f.coeffs for f, _ in parts})
        for i in range(len(distinct)):
            for j in range(i + 1, len(distinct)):
                if resultant(list(distinct[i]), list(distinct[j])) % q == 0:
                    raise ValueError(
                        "poly parts %s and %s are not coprime at precision"
                        % (distinct[i], distinct[j])
                    )

    @classmethod
    def zero(cls, prec):
        return cls(prec)

    @property
    def is_zero(self):
        return self.free_rank == 0 and not self.p_parts and not self.poly_parts

    def torsion_part(self):
        return ElementaryModule(self.prec, 0, self.p_parts, self.poly_parts)

    def direct_sum(self, other):
        if self.prec != other.prec:
            raise PrecisionMismatchError(f"{self.prec} vs {other.prec}")
        return ElementaryModule(
            self.prec,
            self.free_rank + other.free_rank,
            self.p_parts + other.p_parts,
            self.poly_parts + other.poly_parts,
        )

    def summand_names(self):
        names = []
        if self.free_rank:
            names.append(f"L^{self.free_rank}")
        names.extend(f"L/p^{a}" for a in self.p_parts)
        names.extend(f"L/({format_poly(f)})^{b}" for f, b in self.poly_parts)
        return names

    def describe(self):
        return " + ".join(self.summand_names()) if not self.is_zero else "0"


@dataclass(frozen=True)
class IwasawaInvariants:
    rank: int
    mu: int
    lam: int
    char_p_exponent: int
    char_poly: DistinguishedPoly


def invariants(mod):
    """Rank, mu, lambda, and the characteristic data of an elementary module.

    The characteristic ideal only sees the torsion part, so the free rank
    never enters char_poly or char_p_exponent.
    """
    mu = sum(mod.p_parts)
    lam = sum(b * f.degree for f, b in mod.poly_parts)
    char = DistinguishedPoly(mod.prec, (1,))
    for f, b in mod.poly_parts:
        char = poly_mul(char, poly_pow(f, b))
    return IwasawaInvariants(
        rank=mod.free_rank, mu=mu, lam=lam, char_p_exponent=mu, char_poly=char
    )


def iota_module(mod):
    """Apply the Galois-variable involution summand-wise.

    Free ranks and p-power parts are fixed; each distinguished divisor is
    replaced by the distinguished generator of its iota-image ideal.
    """
    return ElementaryModule(
        mod.prec,
        mod.free_rank,
        mod.p_parts,
        tuple((iota_poly(f), b) for f, b in mod.poly_parts),
    )


def _poly_mul_int(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_rem_int(a, mod_poly):
    """Remainder of ``a`` by a monic integer polynomial, over Z."""
    a = list(a)
    d = len(mod_poly) - 1
    for k in range(len(a) - 1, d - 1, -1):
        c = a[k]
        if c:
            off = k - d
            for i in range(d + 1):
                a[off + i] -= c * mod_poly[i]
    a = a[:d]
    a.extend([0] * (d - len(a)))
    return a


def _omega_int(p, n):
    """(1+T)^(p^n) - 1 as an exact integer coefficient list."""
    d = p ** n
    coeffs = [math.comb(d, k) for k in range(d + 1)]
    coeffs[0] = 0
    return coeffs


def _mult_matrix(g, mod_poly):
    """Matrix (columns = images of the basis) of multiplication by g on Z[T]/mod_poly."""
    d = len(mod_poly) - 1
    col = _poly_rem_int(g, mod_poly)
    cols = [col]
    for _ in range(d - 1):
        col = _poly_rem_int([0] + col, mod_poly)
        cols.append(col)
    return [[cols[j][i] for j in range(d)] for i in range(d)]


def poly_part_coinvariant_exponent(f, beta, m, n):
    """Exponent of |Lambda/(p^m, f^beta, omega_n)| via Smith normal form.

    Multiplication by f^beta on the rank-p^n lattice Lambda/(p^m, omega_n) is
    an integer matrix; the cokernel size is read off its elementary divisors
    with valuations clamped at m.
    """
    prec = f.prec
    p = prec.p
    g = [1]
    lift = list(f.coeffs)
    for _ in range(beta):
        g = _poly_mul_int(g, lift)
    omega = _omega_int(p, n)
    mat = _mult_matrix([c % p ** m for c in g], omega)
    return cokernel_exponent(mat, p, m)


def coinvariant_size(mod, m, n):
    """Exponent e with |(M/p^m) / omega_n (M/p^m)| = p^e, summand by summand.

    Free summands contribute m*p^n, p-power summands min(alpha, m)*p^n, and
    distinguished-polynomial summands go through the SNF oracle.
    """
    prec = mod.prec
    if m < 1:
        raise ValueError("m must be >= 1")
    if m > prec.N:
        raise PrecisionExhaustedError(
            f"sizes mod p^{m} are not determined by coefficients mod p^{prec.N}"
        )
    if prec.p ** n >= prec.M:
        raise InsufficientTruncationError(
            f"omega({n}) has degree {prec.p ** n}, beyond truncation order {prec.M}"
        )
    pn = prec.p ** n
    e = mod.free_rank * m * pn
    e += sum(min(a, m) * pn for a in mod.p_parts)
    for f, beta in mod.poly_parts:
        e += poly_part_coinvariant_exponent(f, beta, m, n)
    return SizeExponent(e)


def hom_corank(mod, f, n):
    """Corank formula for maps into Lambda/f^n with f distinguished irreducible.

    Returns (r + sum_j [f_j == f] * min(beta_j, n)) * deg f.  Equality of
    ideals is equality of the canonical distinguished representatives.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    hits = sum(min(b, n) for g, b in mod.poly_parts if g.coeffs == f.coeffs)
    return (mod.free_rank + hits) * f.degree


def hom_corank_oracle(mod, f, n):
    """Same quantity by direct linear algebra on the lattice Z[T]/f^n.

    Each torsion summand Lambda/h^beta contributes the Q-dimension of the
    kernel of multiplication by h^beta on Z[T]/f^n; a free summand
    contributes the f-socle of the target (kernel of multiplication by f),
    once per unit of rank.  Integer matrix ranks agree with Qp-ranks, so this
    is exact whenever the stored residues determine the answer; a vanishing
    lifted resultant means they do not, and the oracle refuses to guess.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    q = mod.prec.modulus
    flift = list(f.coeffs)
    F = [1]
    for _ in range(n):
        F = _poly_mul_int(F, flift)
    dim = len(F) - 1
    total = 0
    if mod.free_rank:
        socle = kernel_rank(_mult_matrix(flift, F), dim)
        total += mod.free_rank * socle
    for alpha in mod.p_parts:
        scalar = mod.prec.p ** alpha
        mat = [[scalar if i == j else 0 for j in range(dim)] for i in range(dim)]
        total += kernel_rank(mat, dim)
    for h, beta in mod.poly_parts:
        if h.coeffs != f.coeffs and resultant(list(h.coeffs), flift) % q == 0:
            raise OracleInconclusiveError(
                "divisors %s and %s are not separated at precision p^%d"
                % (h.coeffs, f.coeffs, mod.prec.N)
            )
        G = [1]
        hlift = list(h.coeffs)
        for _ in range(beta):
            G = _poly_mul_int(G, hlift)
        total += kernel_rank(_mult_matrix(_poly_rem_int(G, F), F), dim)
    return total


def pseudo_isomorphic(a, b, torsion_only=False):
    """Multiset equality of elementary divisors, i.e. pseudo-isomorphism.

    Char-ideal equality is weaker: Lambda/f^2 and Lambda/f (+) Lambda/f share
    characteristic ideal but are not pseudo-isomorphic, and this test tells
    them apart.
    """
    if a.prec != b.prec:
        raise PrecisionMismatchError(f"{a.prec} vs {b.prec}")
    if not torsion_only and (a.free_rank or b.free_rank):
        raise ValueError("pseudo-isomorphism comparison expects torsion modules")
    if a.p_parts != b.p_parts:
        return False
    key_a = sorted((f.coeffs, beta) for f, beta in a.poly_parts)
    key_b = sorted((f.coeffs, beta) for f, beta in b.poly_parts)
    return key_a == key_b


@dataclass(frozen=True)
class ComparisonVerdict:
    hypothesis1_ok: bool
    hypothesis1_failures: tuple   # (m, n) where the exponent gap was still moving
    hypothesis2_ok: bool
    hypothesis2_failures: tuple   # (poly string, n) with unequal coranks
    rank_equal: bool
    torsion_pseudo_isomorphic: bool

    @property
    def hypotheses_ok(self):
        return self.hypothesis1_ok and self.hypothesis2_ok

    @property
    def conclusion_ok(self):
        return self.rank_equal and self.torsion_pseudo_isomorphic


def compare_modules(a, b, m_range, n_range, f_list):
    """Check the two comparison hypotheses and the conclusion on finite ranges.

    Hypothesis (1): for each m, the exponent gap between the coinvariant
    sizes of a and b stabilizes in n (tested: constant over the last two n in
    the range).  Hypothesis (2): equal Hom-coranks for every f in f_list and
    every n >= 1 in range.  Conclusion: equal ranks and pseudo-isomorphic
    torsion parts.  The three reports are independent; none is inferred from
    the others.
    """
    if a.prec != b.prec:
        raise PrecisionMismatchError(f"{a.prec} vs {b.prec}")
    ms = sorted(set(m_range))
    ns = sorted(set(n_range))
    if len(ns) < 2:
        raise ValueError("need at least two n values to test stabilization")
    h1_failures = []
    for m in ms:
        gaps = [
            (coinvariant_size(a, m, n) - coinvariant_size(b, m, n)).exponent
            for n in ns
        ]
        if gaps[-1] != gaps[-2]:
            h1_failures.append((m, ns[-1]))
    h2_failures = []
    for f in f_list:
        for n in ns:
            if n < 1:
                continue
            if hom_corank(a, f, n) != hom_corank(b, f, n):
                h2_failures.append((format_poly(f), n))
    return ComparisonVerdict(
        hypothesis1_ok=not h1_failures,
        hypothesis1_failures=tuple(h1_failures),
        hypothesis2_ok=not h2_failures,
        hypothesis2_failures=tuple(h2_failures),
        rank_equal=a.free_rank == b.free_rank,
        torsion_pseudo_isomorphic=pseudo_isomorphic(
            a.torsion_part(), b.torsion_part()
        ),
    )
