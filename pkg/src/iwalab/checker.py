"""Synthetic Selmer data model and the functional-equation decision procedures.

A :class:`SelmerDatum` packages the arithmetic scenario: working precision,
the cyclic group order, the base-field degree, a list of primes with their
reduction data, and the dual Selmer module X stored eigenspace by eigenspace.

The functional-equation check pairs the slot of each character eta with the
Galois-involution twist of the contragredient slot and demands equal ranks
and pseudo-isomorphic torsion.  Standing assumptions (S1)/(S2) are validated
at load time and re-reported by :func:`hypothesis_check`, together with the
theorem's extra condition that a +-signed supersingular prime must have local
degree not divisible by 4.
"""

from dataclasses import dataclass

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .characters import GModule, iota_gmodule
from .errors import (
    DatumFormatError,
    DatumValidationError,
    IncompleteDatumError,
)
from .modules import ElementaryModule, SizeExponent, iota_module, pseudo_isomorphic
from .pairings import LocalDatum, local_ratio_ord
from .series import DistinguishedPoly, Precision, parse_poly_coeffs


@dataclass(frozen=True)
class TorsionCaps:
    """Exponent caps standing in for the finiteness of the local torsion groups."""

    a: int
    b: int


@dataclass(frozen=True)
class PrimeDatum:
    id: str
    reduction: str                  # "ordinary" | "supersingular" | "away"
    local_degree: int
    sign: str = None                # supersingular only: "+" or "-"
    a_u: int = None                 # supersingular only: trace of Frobenius
    unramified_in_F: bool = None    # supersingular only
    torsion_caps: TorsionCaps = None  # ordinary only


@dataclass(frozen=True)
class SelmerDatum:
    prec: Precision
    group_order: int
    field_degree: int
    primes: tuple
    X: GModule


def validate_datum(datum):
    """Every violated standing assumption, one message per field."""
    problems = []
    p = datum.prec.p
    if datum.group_order < 1 or (p - 1) % datum.group_order:
        problems.append(f"g must divide p-1: g = {datum.group_order}, p = {p}")
    if datum.field_degree < 1:
        problems.append(f"field degree must be >= 1, got {datum.field_degree}")
    seen = set()
    supersingular = 0
    for prime in datum.primes:
        tag = prime.id
        if tag in seen:
            problems.append(f"duplicate prime id {tag!r}")
        seen.add(tag)
        if prime.reduction not in ("ordinary", "supersingular", "away"):
            problems.append(f"unknown reduction {prime.reduction!r} at {tag}")
            continue
        if prime.local_degree < 1:
            problems.append(f"local degree must be >= 1 at {tag}")
        if prime.reduction == "supersingular":
            supersingular += 1
            if prime.sign not in ("+", "-"):
                problems.append(f"supersingular prime {tag} needs a sign + or -")
            if prime.a_u != 0:
                problems.append(f"(S2)(b) violated: a_u = {prime.a_u} at {tag}")
            if prime.unramified_in_F is not True:
                problems.append(f"(S2)(c) violated: {tag} is not unramified in F")
        if prime.reduction == "ordinary" and prime.torsion_caps is not None:
            if prime.torsion_caps.a < 0 or prime.torsion_caps.b < 0:
                problems.append(f"torsion caps must be >= 0 at {tag}")
    if supersingular == 0:
        problems.append("(S1) violated: no supersingular prime above p")
    group_ok = datum.group_order >= 1 and (p - 1) % datum.group_order == 0
    if group_ok and datum.X.group_order != datum.group_order:
        problems.append(
            f"eigenspace table is for group order {datum.X.group_order},"
            f" datum declares {datum.group_order}"
        )
    if datum.X.prec != datum.prec:
        problems.append("eigenspace modules use a different precision than the datum")
    return problems


def _table(data, key, issues):
    value = data.get(key)
    if not isinstance(value, dict):
        issues.append(f"missing or malformed [{key}] section")
        return {}
    return value


def parse_module_table(table, prec, where, issues):
    """Build an ElementaryModule from {rank, p_parts, poly_parts} data."""
    rank = table.get("rank", 0)
    p_parts = table.get("p_parts", [])
    poly_parts = []
    for i, entry in enumerate(table.get("poly_parts", [])):
        spot = f"{where}.poly_parts[{i}]"
        if not isinstance(entry, dict) or "f" not in entry:
            issues.append(f"{spot}: expected a table with an 'f' string")
            continue
        try:
            coeffs = parse_poly_coeffs(entry["f"])
            poly = DistinguishedPoly(prec, tuple(coeffs))
        except Exception as exc:
            issues.append(f"{spot}: {exc}")
            continue
        poly_parts.append((poly, entry.get("beta", 1)))
    try:
        return ElementaryModule(prec, rank, tuple(p_parts), tuple(poly_parts))
    except Exception as exc:
        issues.append(f"{where}: {exc}")
        return ElementaryModule.zero(prec)


def _load_toml(path):
    try:
        with open(path, "rb") as handle:
            return tomllib.load(handle)
    except (tomllib.TOMLDecodeError, OSError) as exc:
        raise DatumFormatError(f"{path}: {exc}") from exc


def load_module_file(path):
    """Module description file: top-level p, N, M and a ``module`` table."""
    data = _load_toml(path)
    issues = []
    try:
        prec = Precision(data["p"], data["N"], data["M"])
    except Exception as exc:
        raise DatumFormatError(f"{path}: bad precision header: {exc}") from exc
    mod = parse_module_table(data.get("module", {}), prec, "module", issues)
    if issues:
        raise DatumFormatError(f"{path}: " + "; ".join(issues))
    return prec, mod


def load_datum(path):
    """Parse and validate a datum file; raises with every problem listed."""
    data = _load_toml(path)
    issues = []
    ptab = _table(data, "precision", issues)
    try:
        prec = Precision(ptab.get("p", 0), ptab.get("N", 0), ptab.get("M", 0))
    except Exception as exc:
        issues.append(f"precision: {exc}")
        raise DatumFormatError(f"{path}: " + "; ".join(issues))
    group_order = _table(data, "group", issues).get("order", 1)
    field_degree = _table(data, "field", issues).get("degree", 1)
    primes = []
    for i, ptable in enumerate(data.get("primes", [])):
        caps = ptable.get("torsion_caps")
        if caps is not None:
            caps = TorsionCaps(caps.get("a", 0), caps.get("b", 0))
        primes.append(
            PrimeDatum(
                id=str(ptable.get("id", f"prime{i}")),
                reduction=ptable.get("reduction", ""),
                local_degree=ptable.get("local_degree", 0),
                sign=ptable.get("sign"),
                a_u=ptable.get("a_u"),
                unramified_in_F=ptable.get("unramified_in_F"),
                torsion_caps=caps,
            )
        )
    slots = {}
    for key, table in _table(data, "eigenspaces", issues).items():
        try:
            index = int(key)
        except ValueError:
            issues.append(f"eigenspaces: key {key!r} is not a character index")
            continue
        slots[index] = parse_module_table(table, prec, f"eigenspaces.{key}", issues)
    group_ok = group_order >= 1 and (prec.p - 1) % group_order == 0
    try:
        # an unsupported group order is a validation problem, not a parse
        # problem; defer it to validate_datum by building a placeholder
        X = GModule.from_dict(prec, group_order if group_ok else 1, slots if group_ok else {})
    except Exception as exc:
        issues.append(f"eigenspaces: {exc}")
        X = GModule(prec, 1, ())
    if issues:
        raise DatumFormatError(f"{path}: " + "; ".join(issues))
    datum = SelmerDatum(prec, group_order, field_degree, tuple(primes), X)
    problems = validate_datum(datum)
    if problems:
        raise DatumValidationError(problems)
    return datum


@dataclass(frozen=True)
class HypothesisLine:
    name: str
    ok: bool
    detail: str


@dataclass(frozen=True)
class HypothesisReport:
    lines: tuple

    @property
    def all_ok(self):
        return all(line.ok for line in self.lines)

    def failures(self):
        return tuple(line for line in self.lines if not line.ok)

    def __str__(self):
        return "\n".join(
            f"  [{'ok' if line.ok else 'FAIL'}] {line.name}: {line.detail}"
            for line in self.lines
        )


def hypothesis_check(datum):
    """Report (S1), (S2)(a)-(c) per supersingular prime, and the 4 | d condition."""
    lines = []
    ss = [pr for pr in datum.primes if pr.reduction == "supersingular"]
    lines.append(
        HypothesisLine(
            "(S1)",
            bool(ss),
            "at least one supersingular prime above p"
            if ss
            else "no supersingular prime above p",
        )
    )
    for prime in ss:
        lines.append(
            HypothesisLine(
                f"(S2)(a) at {prime.id}",
                True,
                "base completion is Q_p by construction in this model",
            )
        )
        lines.append(
            HypothesisLine(
                f"(S2)(b) at {prime.id}",
                prime.a_u == 0,
                f"a_u = {prime.a_u}",
            )
        )
        lines.append(
            HypothesisLine(
                f"(S2)(c) at {prime.id}",
                prime.unramified_in_F is True,
                f"unramified_in_F = {prime.unramified_in_F}",
            )
        )
        if prime.sign == "+":
            ok = prime.local_degree % 4 != 0
            lines.append(
                HypothesisLine(
                    f"4-divisibility at {prime.id}",
                    ok,
                    f"local degree {prime.local_degree}"
                    if ok
                    else f"4 | d at +-signed prime {prime.id}",
                )
            )
    return HypothesisReport(tuple(lines))


@dataclass(frozen=True)
class CharacterVerdict:
    eta_index: int
    rank_eta: int
    rank_eta_bar_iota: int
    ranks_equal: bool
    torsion_pseudo_iso: bool

    @property
    def passed(self):
        return self.ranks_equal and self.torsion_pseudo_iso


@dataclass(frozen=True)
class FEVerdict:
    hypothesis_report: HypothesisReport
    characters: tuple
    overall_pass: bool


def functional_equation_check(datum):
    """Per character eta: rank and torsion comparison of the eta-slot against
    the involution twist of the contragredient slot."""
    hyp = hypothesis_check(datum)
    if not hyp.all_ok:
        return FEVerdict(hyp, (), False)
    g = datum.group_order
    records = []
    for k in range(g):
        a = datum.X.slot(k)
        b = iota_module(datum.X.slot((-k) % g))
        records.append(
            CharacterVerdict(
                eta_index=k,
                rank_eta=a.free_rank,
                rank_eta_bar_iota=b.free_rank,
                ranks_equal=a.free_rank == b.free_rank,
                torsion_pseudo_iso=pseudo_isomorphic(
                    a.torsion_part(), b.torsion_part()
                ),
            )
        )
    return FEVerdict(hyp, tuple(records), all(r.passed for r in records))


@dataclass(frozen=True)
class VanishingVerdict:
    eta_index: int
    fe_passed: bool
    applicable: bool          # the eta-slot is zero, so the corollary bites
    consistent: bool
    offending_summand: str    # names the summand that should not exist
    torsion_iff_ok: bool      # part (a): torsion on one side iff on the other

    @property
    def passed(self):
        return self.consistent and self.torsion_iff_ok


def vanishing_equivalence(datum, eta_index):
    """Corollary logic: a vanishing eta-slot forces the contragredient slot to
    vanish, because a torsion slot with trivial characteristic data that is
    allowed no finite summands is the zero module."""
    fe = functional_equation_check(datum)
    g = datum.group_order
    a = datum.X.slot(eta_index % g)
    b = datum.X.slot((-eta_index) % g)
    torsion_iff = (a.free_rank == 0) == (b.free_rank == 0)
    if not a.is_zero:
        return VanishingVerdict(
            eta_index=eta_index % g,
            fe_passed=fe.overall_pass,
            applicable=False,
            consistent=True,
            offending_summand="",
            torsion_iff_ok=torsion_iff,
        )
    offending = "" if b.is_zero else b.summand_names()[0]
    return VanishingVerdict(
        eta_index=eta_index % g,
        fe_passed=fe.overall_pass,
        applicable=True,
        consistent=b.is_zero,
        offending_summand=offending,
        torsion_iff_ok=torsion_iff,
    )


@dataclass(frozen=True)
class PoitouTateReport:
    entries: tuple       # (m, n, exponent) per grid point
    bound: int           # sum of the per-prime caps
    within_bound: bool

    def max_exponent(self):
        return max(e for _, _, e in self.entries)


def poitou_tate_bound(datum, f, m_range, n_range):
    """Worst-case torsion exponent of the eta/eta-bar size ratio per (m, n).

    The Euler parts -m * d * p^n * deg f cancel against the global factor, so
    only the torsion terms of the ordinary local ratios survive.  Each term
    is clamped at level m (a group of exponent a has at most p^min(a, m)
    quotient by p^m) and capped by the datum's torsion caps, which is exactly
    the boundedness-in-(m, n) statement.
    """
    p = datum.prec.p
    ordinary = [pr for pr in datum.primes if pr.reduction == "ordinary"]
    for prime in ordinary:
        if prime.torsion_caps is None:
            raise IncompleteDatumError(
                f"ordinary prime {prime.id} carries no torsion caps"
            )
    bound = sum(pr.torsion_caps.a + pr.torsion_caps.b for pr in ordinary)
    deg_f = f.degree
    entries = []
    for m in sorted(set(m_range)):
        for n in sorted(set(n_range)):
            total = 0
            for prime in ordinary:
                caps = prime.torsion_caps
                local = LocalDatum(
                    "ordinary",
                    local_degree=prime.local_degree,
                    a=min(caps.a, m),
                    b=min(caps.b, m),
                    c=0,
                )
                full = local_ratio_ord(local, m, n, deg_f, p)
                euler = SizeExponent(m * prime.local_degree * p ** n * deg_f)
                total += (full + euler).exponent
            entries.append((m, n, total))
    within = all(e <= bound for _, _, e in entries)
    return PoitouTateReport(tuple(entries), bound, within)


def symmetrize_slots(prec, group_order, seeds):
    """Build an eigenspace table that passes the functional equation by fiat.

    ``seeds`` maps representative indices to modules; the contragredient slot
    of each seed becomes its involution twist.  A self-contragredient index
    (k == -k mod g) gets seed (+) iota(seed), the only shape symmetric under
    the involution.
    """
    slots = {}
    for k, seed in seeds.items():
        k = k % group_order
        kbar = (-k) % group_order
        if k == kbar:
            slots[k] = seed.direct_sum(iota_module(seed))
        else:
            slots[k] = seed
            slots[kbar] = iota_module(seed)
    return GModule.from_dict(prec, group_order, slots)


__all__ = [
    "CharacterVerdict",
    "FEVerdict",
    "HypothesisLine",
    "HypothesisReport",
    "PoitouTateReport",
    "PrimeDatum",
    "SelmerDatum",
    "TorsionCaps",
    "VanishingVerdict",
    "functional_equation_check",
    "hypothesis_check",
    "iota_gmodule",
    "load_datum",
    "load_module_file",
    "parse_module_table",
    "poitou_tate_bound",
    "symmetrize_slots",
    "validate_datum",
    "vanishing_equivalence",
]
