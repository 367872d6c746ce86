"""Characters of a cyclic group G with |G| dividing p-1, and eigenspace bookkeeping.

Character values are Teichmuller lifts, so they live in Zp itself and every
idempotent e_eta = |G|^{-1} sum eta(sigma) sigma^{-1} has coefficients mod p^N.
A module over Lambda[G] is stored eigenspace by eigenspace (the decomposition
is lossless because |G| is invertible mod p); sigma_0 acts on the slot of a
character chi by the scalar chi(sigma_0).
"""

from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    GroupMismatchError,
    InsufficientTruncationError,
    NotAUnitError,
    PrecisionExhaustedError,
    PrecisionMismatchError,
    UnsupportedGroupError,
)
from .intlinalg import cokernel_divisors
from .modules import ElementaryModule, _poly_mul_int, iota_module
from .series import Precision, iota_poly


def teichmuller(a, p, N):
    """The unique (p-1)-th root of unity congruent to a mod p.

    Iterated p-th powering converges: each step fixes one more p-adic digit.
    """
    if a % p == 0:
        raise NotAUnitError(f"{a} is divisible by {p}")
    q = p ** N
    x = a % q
    for _ in range(N + 1):
        y = pow(x, p, q)
        if y == x:
            break
        x = y
    return x


@lru_cache(maxsize=None)
def primitive_root(p):
    """Smallest generator of (Z/p)^*."""
    factors = []
    n = p - 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            factors.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        factors.append(n)
    for r in range(2, p):
        if all(pow(r, (p - 1) // f, p) != 1 for f in factors):
            return r
    raise ValueError(f"no primitive root found for {p}")


@dataclass(frozen=True)
class Character:
    """eta = omega^(index * (p-1)/g) on the fixed generator sigma_0.

    values[j] = eta(sigma_0^j) mod p^N.
    """

    prec: Precision
    group_order: int
    index: int
    values: tuple


def make_character(prec, group_order, index):
    p, N = prec.p, prec.N
    if group_order < 1 or (p - 1) % group_order:
        raise UnsupportedGroupError(f"group order {group_order} does not divide p-1={p - 1}")
    q = p ** N
    zeta = pow(teichmuller(primitive_root(p), p, N), (p - 1) // group_order, q)
    gen_value = pow(zeta, index % group_order, q)
    values = tuple(pow(gen_value, j, q) for j in range(group_order))
    return Character(prec, group_order, index % group_order, values)


def all_characters(prec, group_order):
    return tuple(make_character(prec, group_order, k) for k in range(group_order))


def contragredient(eta):
    q = eta.prec.modulus
    return Character(
        eta.prec,
        eta.group_order,
        (-eta.index) % eta.group_order,
        tuple(pow(v, -1, q) for v in eta.values),
    )


@dataclass(frozen=True)
class IdempotentElement:
    """Group-algebra element sum_j coeffs[j] * sigma_0^j with coefficients mod p^N."""

    prec: Precision
    group_order: int
    coeffs: tuple


def idempotent(eta):
    """e_eta = |G|^{-1} sum_j eta(sigma_0^j) sigma_0^{-j}."""
    g = eta.group_order
    p, q = eta.prec.p, eta.prec.modulus
    if (p - 1) % g:
        raise UnsupportedGroupError(f"group order {g} does not divide p-1={p - 1}")
    ginv = pow(g, -1, q)
    coeffs = [0] * g
    for j in range(g):
        coeffs[(-j) % g] = (coeffs[(-j) % g] + ginv * eta.values[j]) % q
    return IdempotentElement(eta.prec, g, tuple(coeffs))


def group_algebra_mul(a, b):
    """Convolution product in (Z/p^N)[G]."""
    if a.prec != b.prec or a.group_order != b.group_order:
        raise GroupMismatchError("mismatched group algebras")
    g, q = a.group_order, a.prec.modulus
    out = [0] * g
    for i, x in enumerate(a.coeffs):
        if x:
            for j, y in enumerate(b.coeffs):
                if y:
                    out[(i + j) % g] = (out[(i + j) % g] + x * y) % q
    return IdempotentElement(a.prec, g, tuple(out))


def scalar_action(elt, chi):
    """The scalar by which a group-algebra element acts on the chi-eigenspace."""
    q = elt.prec.modulus
    return sum(c * chi.values[j] for j, c in enumerate(elt.coeffs)) % q


@dataclass(frozen=True)
class GModule:
    """Lambda[G]-module stored by eigenspace: slots maps character index -> module."""

    prec: Precision
    group_order: int
    slots: tuple  # sorted pairs (index, ElementaryModule), zero slots dropped

    def __post_init__(self):
        g = self.group_order
        if g < 1 or (self.prec.p - 1) % g:
            raise UnsupportedGroupError(
                f"group order {g} does not divide p-1={self.prec.p - 1}"
            )
        clean = []
        seen = set()
        for idx, mod in self.slots:
            if not 0 <= idx < g:
                raise ValueError(f"character index {idx} out of range for group order {g}")
            if idx in seen:
                raise ValueError(f"duplicate eigenspace index {idx}")
            seen.add(idx)
            if mod.prec != self.prec:
                raise PrecisionMismatchError(f"{mod.prec} vs {self.prec}")
            if not mod.is_zero:
                clean.append((idx, mod))
        clean.sort()
        object.__setattr__(self, "slots", tuple(clean))

    @classmethod
    def from_dict(cls, prec, group_order, mapping):
        return cls(prec, group_order, tuple(mapping.items()))

    def slot(self, index):
        for idx, mod in self.slots:
            if idx == index:
                return mod
        return ElementaryModule.zero(self.prec)


def eigenspace(gm, eta):
    if eta.group_order != gm.group_order or eta.prec != gm.prec:
        raise GroupMismatchError("character and module live over different groups")
    return gm.slot(eta.index)


def twist(gm, eta):
    """Tensor with the rank-one eta-line: slots get permuted by eta.

    sigma acts on m (x) 1 by eta(sigma) sigma m, so the chi-slot of the twist
    is the (chi * eta-bar)-slot of the original.
    """
    if eta.group_order != gm.group_order or eta.prec != gm.prec:
        raise GroupMismatchError("character and module live over different groups")
    g = gm.group_order
    k = eta.index
    return GModule(
        gm.prec,
        g,
        tuple(((c + k) % g, mod) for c, mod in gm.slots),
    )


def iota_gmodule(gm):
    """Slot-wise Galois-variable involution; eigenspace labels untouched."""
    return GModule(gm.prec, gm.group_order, tuple((c, iota_module(mod)) for c, mod in gm.slots))


def _bivariate_op_matrix(hpoly, fpoly, p, m, pn):
    """Matrix of multiplication by ((1+y)(1+t))^pn - 1 on Z[y,t]/(hpoly, fpoly).

    Entries are reduced mod p^m throughout; the cokernel only depends on them
    mod p^m.  Basis is y^i t^j flattened row-major.
    """
    q = p ** m
    Dy = len(hpoly) - 1
    Dt = len(fpoly) - 1
    k = Dy * Dt

    def mul_shift(c, poly, axis):
        # multiply the coefficient grid by y (axis 0) or t (axis 1), reducing
        # by the monic modulus poly
        if axis == 0:
            carry = c[Dy - 1]
            out = [[0] * Dt] + [row[:] for row in c[: Dy - 1]]
            for i in range(Dy):
                co = poly[i]
                if co:
                    for j in range(Dt):
                        out[i][j] = (out[i][j] - co * carry[j]) % q
            return out
        carry = [c[i][Dt - 1] for i in range(Dy)]
        out = [[0] + row[: Dt - 1] for row in c]
        for j in range(Dt):
            co = poly[j]
            if co:
                for i in range(Dy):
                    out[i][j] = (out[i][j] - co * carry[i]) % q
        return out

    def step(c):
        # multiply by (1+y)(1+t) = 1 + y + t + y*t
        cy = mul_shift(c, hpoly, 0)
        ct = mul_shift(c, fpoly, 1)
        cyt = mul_shift(cy, fpoly, 1)
        return [
            [(c[i][j] + cy[i][j] + ct[i][j] + cyt[i][j]) % q for j in range(Dt)]
            for i in range(Dy)
        ]

    cols = []
    for i0 in range(Dy):
        for j0 in range(Dt):
            c = [[0] * Dt for _ in range(Dy)]
            c[i0][j0] = 1
            w = c
            for _ in range(pn):
                w = step(w)
            w[i0][j0] = (w[i0][j0] - 1) % q
            cols.append([w[i][j] for i in range(Dy) for j in range(Dt)])
    return [[cols[col][row] for col in range(k)] for row in range(k)]


def tensor_coinvariant_divisors(mod, f, m, n):
    """Cyclic divisor exponents of ((mod (x) Lambda/f) / (p^m, omega_n)).

    The tensor carries the diagonal Galois action; summand by summand the
    coinvariant lattice is free of rank p^n * deg f over Z/p^c (free and
    p-power summands) or the cokernel of an explicit bivariate multiplication
    matrix (distinguished-polynomial summands).
    """
    prec = mod.prec
    p = prec.p
    pn = p ** n
    if pn >= prec.M:
        raise InsufficientTruncationError(
            f"omega({n}) has degree {pn}, beyond truncation order {prec.M}"
        )
    if m > prec.N:
        raise PrecisionExhaustedError(
            f"sizes mod p^{m} are not determined by coefficients mod p^{prec.N}"
        )
    rank_block = pn * f.degree
    divisors = []
    divisors.extend([m] * (rank_block * mod.free_rank))
    for alpha in mod.p_parts:
        divisors.extend([min(alpha, m)] * rank_block)
    flift = list(f.coeffs)
    for h, beta in mod.poly_parts:
        hpoly = [1]
        hlift = list(h.coeffs)
        for _ in range(beta):
            hpoly = _poly_mul_int(hpoly, hlift)
        mat = _bivariate_op_matrix([c % p ** m for c in hpoly], flift, p, m, pn)
        divisors.extend(cokernel_divisors(mat, p, m))
    return sorted(divisors)


def tensor_coinvariant_exponent(mod, f, m, n):
    return sum(tensor_coinvariant_divisors(mod, f, m, n))


@dataclass(frozen=True)
class TwistIdentityLine:
    name: str
    ok: bool
    lhs: int
    rhs: int


@dataclass(frozen=True)
class TwistIdentityReport:
    lines: tuple

    @property
    def all_ok(self):
        return all(line.ok for line in self.lines)

    def __str__(self):
        return "\n".join(
            f"{line.name}: {'pass' if line.ok else 'FAIL'} ({line.lhs} vs {line.rhs})"
            for line in self.lines
        )


def twist_identity_check(gm, eta, f, m, n):
    """Check the eigenspace/twist interaction identities at the size level.

    (1) projecting the full tensored module with the eta-idempotent gives the
        same coinvariant size as tensoring the stored eta-slot;
    (2) the duality identity, with duals modeled by the iota-twist: the
        iota-twisted eta-bar-slot tensored with f matches the eta-bar-slot
        tensored with iota(f);
    (4) the eta-slot equals the G-fixed (trivial-character) slot of the
        twist by eta-bar.
    """
    etabar = contragredient(eta)
    lines = []

    # (1) eigenspace-then-tensor vs project-then-measure
    slot_div = tensor_coinvariant_divisors(eigenspace(gm, eta), f, m, n)
    lhs = sum(slot_div)
    e = idempotent(eta)
    rhs = 0
    for chi in all_characters(gm.prec, gm.group_order):
        s = scalar_action(e, chi) % (gm.prec.p ** m)
        block = tensor_coinvariant_divisors(gm.slot(chi.index), f, m, n)
        if s == 0:
            continue
        v = 0
        while s % gm.prec.p == 0:
            s //= gm.prec.p
            v += 1
        rhs += sum(max(d - v, 0) for d in block)
    lines.append(TwistIdentityLine("eigenspace-tensor exchange", lhs == rhs, lhs, rhs))

    # (2) duality via the iota twist
    b = eigenspace(gm, etabar)
    lhs2 = tensor_coinvariant_exponent(iota_module(b), f, m, n)
    rhs2 = tensor_coinvariant_exponent(b, iota_poly(f), m, n)
    lines.append(TwistIdentityLine("dual/twist size identity", lhs2 == rhs2, lhs2, rhs2))

    # (4) eta-slot = G-fixed part of the eta-bar twist
    fixed = twist(gm, etabar).slot(0)
    same = fixed == eigenspace(gm, eta)
    lines.append(TwistIdentityLine("fixed part of contragredient twist", same, int(same), 1))

    return TwistIdentityReport(tuple(lines))
