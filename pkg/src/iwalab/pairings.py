"""Perfect pairings on finite p-groups, exact annihilators, and size-exponent formulas.

The ambient group is always H = (Z/p^m)^k with a Gram matrix whose determinant
is a unit mod p; subgroups are stored in Howell normal form so that equality
of subgroups is equality of representations.  The exponent calculators at the
bottom are the local and global Euler-characteristic bookkeeping used by the
functional-equation checker; each one returns a :class:`SizeExponent`.
"""

from dataclasses import dataclass

from .errors import IncompleteDatumError, NotPerfectError
from .intlinalg import det_int, howell_form, solve_mod_prime_power
from .modules import SizeExponent


@dataclass(frozen=True)
class FinitePairing:
    """Perfect pairing <x, y> = x^T . gram . y mod p^m on H = (Z/p^m)^k.

    Any unit-determinant gram gives |C| * |C-perp| = |H|.  The reflexivity
    law (C-perp)-perp = C additionally needs gram = +/- gram^T (symmetric or
    alternating), which is the shape local duality pairings actually have; a
    one-sided annihilator against a lopsided gram would have to swap sides on
    the second application instead.
    """

    p: int
    m: int
    gram: tuple  # k rows of k residues

    def __post_init__(self):
        q = self.p ** self.m
        rows = tuple(tuple(x % q for x in row) for row in self.gram)
        object.__setattr__(self, "gram", rows)
        k = len(rows)
        if any(len(r) != k for r in rows):
            raise ValueError("gram matrix must be square")
        if det_int([list(r) for r in rows]) % self.p == 0:
            raise NotPerfectError("gram matrix is singular mod p; pairing is not perfect")

    @property
    def rank(self):
        return len(self.gram)

    @property
    def ambient_exponent(self):
        """|H| = p^(m*k)."""
        return self.m * self.rank


@dataclass(frozen=True)
class Subgroup:
    """Subgroup of (Z/p^m)^k, stored by its canonical Howell basis."""

    p: int
    m: int
    ambient_rank: int
    rows: tuple

    @classmethod
    def from_generators(cls, p, m, ambient_rank, generators):
        rows = howell_form(list(generators), p, m, ambient_rank)
        return cls(p, m, ambient_rank, rows)

    @classmethod
    def zero(cls, p, m, ambient_rank):
        return cls.from_generators(p, m, ambient_rank, [])

    @classmethod
    def full(cls, p, m, ambient_rank):
        gens = [[1 if i == j else 0 for j in range(ambient_rank)] for i in range(ambient_rank)]
        return cls.from_generators(p, m, ambient_rank, gens)

    def size_exponent(self):
        """|C| = p^e from the pivot valuations of the Howell basis."""
        e = 0
        for row in self.rows:
            piv = next(x for x in row if x)
            v = 0
            while piv % self.p == 0:
                piv //= self.p
                v += 1
            e += self.m - v
        return e

    def contains(self, vector):
        """Membership test by reduction against the Howell basis."""
        q = self.p ** self.m
        v = [x % q for x in vector]
        for row in self.rows:
            j = next(i for i, x in enumerate(row) if x)
            piv = row[j]
            pv = 0
            while piv % self.p == 0:
                piv //= self.p
                pv += 1
            if v[j] % (self.p ** pv):
                return False
            quo = v[j] // (self.p ** pv)
            v = [(a - quo * b) % q for a, b in zip(v, row)]
        return not any(v)


def exact_annihilator(pair, c):
    """C-perp = {y : <x, y> = 0 mod p^m for all x in C}.

    Solving (C . gram) y == 0 mod p^m via Smith normal form; satisfies
    |C| * |C-perp| = |H| and (C-perp)-perp = C.
    """
    k = pair.rank
    if c.ambient_rank != k or c.p != pair.p or c.m != pair.m:
        raise ValueError("subgroup does not live in the pairing's ambient group")
    q = pair.p ** pair.m
    a = [
        [sum(row[i] * pair.gram[i][j] for i in range(k)) % q for j in range(k)]
        for row in c.rows
    ]
    gens = solve_mod_prime_power(a, pair.p, pair.m, k)
    return Subgroup.from_generators(pair.p, pair.m, k, gens)


def self_annihilator_check(pair, c):
    """True iff C is its own exact annihilator (forces |C|^2 = |H|)."""
    return exact_annihilator(pair, c) == c


@dataclass(frozen=True)
class DeltaValue:
    """The corank defect delta: 2 exactly when 4 | [K:Qp] and eta is trivial."""

    value: int

    def __post_init__(self):
        if self.value not in (0, 2):
            raise ValueError("delta is 0 or 2")


def delta(local_degree, eta_trivial):
    if local_degree < 1:
        raise ValueError("local degree must be >= 1")
    return DeltaValue(2 if local_degree % 4 == 0 and eta_trivial else 0)


def signed_corank(sign, local_degree, n, eta_trivial, p):
    """Corank of the signed local points at tower level n: d*p^n (+ delta for +)."""
    base = local_degree * p ** n
    if sign == "+":
        return base + delta(local_degree, eta_trivial).value
    if sign == "-":
        return base
    raise ValueError(f"sign must be '+' or '-', got {sign!r}")


@dataclass(frozen=True)
class LocalDatum:
    """Local arithmetic inputs at one prime; only the fields the kind needs."""

    kind: str                 # "ordinary" | "supersingular" | "away"
    local_degree: int = 1
    sign: str = "-"           # supersingular only
    eta_trivial: bool = True
    a: int = None             # exp |E(K_n)[p^inf](eta-bar)_f / p^m|   (ordinary)
    b: int = None             # exp |Ehat(K_n)[p^inf](eta-bar)_f / p^m| (ordinary)
    c: int = None             # exp |E(K_n)[p^m](eta-bar)_f|            (ordinary)

    def __post_init__(self):
        if self.kind not in ("ordinary", "supersingular", "away"):
            raise ValueError(f"unknown reduction kind {self.kind!r}")
        if self.local_degree < 1:
            raise ValueError("local degree must be >= 1")


def local_ratio_ss(m, n, local_degree, deg_f, p):
    """Supersingular local ratio: exponent -m * [K_n:Qp] * deg f, [K_n:Qp] = d*p^n."""
    return SizeExponent(-m * local_degree * p ** n * deg_f)


def local_ratio_ord(datum, m, n, deg_f, p):
    """Ordinary local ratio: a + b - c - m * [K_n:Qp] * deg f."""
    if datum.kind != "ordinary":
        raise IncompleteDatumError(f"datum has kind {datum.kind!r}, expected ordinary")
    if datum.a is None or datum.b is None or datum.c is None:
        raise IncompleteDatumError("ordinary datum needs the three torsion exponents a, b, c")
    return SizeExponent(
        datum.a + datum.b - datum.c - m * datum.local_degree * p ** n * deg_f
    )


def local_ratio_away():
    """Away-from-p primes contribute ratio 1, i.e. exponent 0."""
    return SizeExponent(0)


def global_euler_exponent(field_degree, m, deg_f):
    """Global Euler-characteristic factor: exponent [F_n:Q] * m * deg f."""
    if field_degree < 1:
        raise ValueError("field degree must be >= 1")
    return SizeExponent(field_degree * m * deg_f)
