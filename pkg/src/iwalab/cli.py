"""Command-line interface.

Subcommands map one-to-one onto the library surface: ``prep`` for Weierstrass
preparation, ``invariants``/``coinv``/``compare`` for module files, ``pairing
annihilate`` for exact annihilators, and ``fe-check`` for the full
functional-equation report.  Exit codes: 0 pass, 1 hypothesis/FE failure,
2 input error.
"""

import argparse
import json
import sys
from dataclasses import asdict

from .checker import (
    functional_equation_check,
    load_datum,
    load_module_file,
    poitou_tate_bound,
)
from .errors import IwalabError
from .modules import compare_modules, coinvariant_size, invariants
from .pairings import FinitePairing, Subgroup, exact_annihilator
from .series import (
    DistinguishedPoly,
    Precision,
    format_poly,
    format_series,
    parse_poly_coeffs,
    parse_series,
    weierstrass_prepare,
)

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib


def _parse_precision_tokens(tokens):
    values = {}
    for tok in tokens:
        key, _, val = tok.partition("=")
        if key not in ("p", "N", "M") or not val:
            raise ValueError(f"expected p=.. N=.. M=.. tokens, got {tok!r}")
        values[key] = int(val)
    missing = {"p", "N", "M"} - set(values)
    if missing:
        raise ValueError(f"precision tokens missing {sorted(missing)}")
    return Precision(values["p"], values["N"], values["M"])


def _cmd_prep(args):
    prec = _parse_precision_tokens(args.precision)
    f = parse_series(args.expr, prec)
    u, f1 = weierstrass_prepare(f)
    print(f"u = {format_series(u)}")
    print(f"f1 = {format_poly(f1)}")
    return 0


def _cmd_invariants(args):
    _, mod = load_module_file(args.file)
    iv = invariants(mod)
    print(f"rank = {iv.rank}")
    print(f"mu = {iv.mu}")
    print(f"lambda = {iv.lam}")
    print(f"char_p_exponent = {iv.char_p_exponent}")
    print(f"char_poly = {format_poly(iv.char_poly)}")
    return 0


def _cmd_coinv(args):
    prec, mod = load_module_file(args.file)
    e = coinvariant_size(mod, args.m, args.n)
    print(f"|(M/p^{args.m})_Gamma_{args.n}| = {prec.p}^{e.exponent}")
    return 0


def _cmd_compare(args):
    prec_a, a = load_module_file(args.file_a)
    prec_b, b = load_module_file(args.file_b)
    if prec_a != prec_b:
        raise IwalabError(f"precision mismatch: {prec_a} vs {prec_b}")
    fs = {f.coeffs: f for f, _ in a.poly_parts + b.poly_parts}
    for expr in args.f or ():
        poly = DistinguishedPoly(prec_a, tuple(parse_poly_coeffs(expr)))
        fs[poly.coeffs] = poly
    verdict = compare_modules(
        a, b, range(1, args.m_max + 1), range(1, args.n_max + 1), list(fs.values())
    )
    print(f"hypothesis (1): {'holds' if verdict.hypothesis1_ok else 'fails'}", end="")
    if verdict.hypothesis1_failures:
        print(" at " + ", ".join(f"(m={m}, n={n})" for m, n in verdict.hypothesis1_failures), end="")
    print()
    print(f"hypothesis (2): {'holds' if verdict.hypothesis2_ok else 'fails'}", end="")
    if verdict.hypothesis2_failures:
        print(" at " + ", ".join(f"(f={f}, n={n})" for f, n in verdict.hypothesis2_failures), end="")
    print()
    print(f"conclusion rank: {'equal' if verdict.rank_equal else 'UNEQUAL'}")
    print(
        "conclusion torsion: "
        + ("pseudo-isomorphic" if verdict.torsion_pseudo_isomorphic else "NOT pseudo-isomorphic")
    )
    return 0 if (verdict.hypotheses_ok and verdict.conclusion_ok) else 1


def _cmd_pairing_annihilate(args):
    with open(args.file, "rb") as handle:
        data = tomllib.load(handle)
    p, m = data["p"], data["m"]
    pair = FinitePairing(p, m, tuple(tuple(r) for r in data["gram"]))
    c = Subgroup.from_generators(p, m, pair.rank, data.get("generators", []))
    cperp = exact_annihilator(pair, c)
    print("Cperp generators:")
    for row in cperp.rows:
        print("  " + str(tuple(row)))
    if not cperp.rows:
        print("  (trivial)")
    ok = c.size_exponent() + cperp.size_exponent() == pair.ambient_exponent
    print(f"|C| * |Cperp| == |H| : {'OK' if ok else 'FAIL'}")
    return 0 if ok else 1


def _cmd_fe_check(args):
    datum = load_datum(args.datum)
    verdict = functional_equation_check(datum)
    pt = None
    if args.f is not None:
        poly = DistinguishedPoly(datum.prec, tuple(parse_poly_coeffs(args.f)))
        pt = poitou_tate_bound(
            datum, poly, range(1, args.m_max + 1), range(0, args.n_max + 1)
        )
    if args.json:
        payload = {
            "hypothesis_report": {
                "lines": [asdict(line) for line in verdict.hypothesis_report.lines],
                "all_ok": verdict.hypothesis_report.all_ok,
            },
            "characters": [asdict(c) for c in verdict.characters],
            "overall_pass": verdict.overall_pass,
        }
        if pt is not None:
            payload["poitou_tate"] = {
                "entries": [list(e) for e in pt.entries],
                "bound": pt.bound,
                "within_bound": pt.within_bound,
            }
        print(json.dumps(payload, indent=2))
    else:
        print("hypotheses:")
        print(str(verdict.hypothesis_report))
        for c in verdict.characters:
            rank = f"rank {c.rank_eta}={c.rank_eta_bar_iota} {'OK' if c.ranks_equal else 'FAIL'}"
            tors = f"torsion {'OK' if c.torsion_pseudo_iso else 'FAIL'}"
            print(f"eta={c.eta_index} {rank} {tors}")
        if pt is not None:
            status = "OK" if pt.within_bound else "FAIL"
            print(
                f"poitou-tate: bound {pt.bound}, max exponent {pt.max_exponent()} : {status}"
            )
        print(f"verdict: {'PASS' if verdict.overall_pass else 'FAIL'}")
    return 0 if verdict.overall_pass else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="iwalab",
        description="Finite-precision Iwasawa-algebra toolkit and functional-equation checker",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    prep = sub.add_parser("prep", help="Weierstrass preparation of a series")
    prep.add_argument("expr", help="polynomial in T, e.g. 'T^3 + 4*T^2 + 4*T + 3'")
    prep.add_argument("precision", nargs=3, metavar="p=3 N=4 M=8", help="precision tokens")
    prep.set_defaults(func=_cmd_prep)

    inv = sub.add_parser("invariants", help="Iwasawa invariants of a module file")
    inv.add_argument("file")
    inv.set_defaults(func=_cmd_invariants)

    coinv = sub.add_parser("coinv", help="coinvariant size exponent of a module file")
    coinv.add_argument("file")
    coinv.add_argument("m", type=int)
    coinv.add_argument("n", type=int)
    coinv.set_defaults(func=_cmd_coinv)

    comp = sub.add_parser("compare", help="comparison hypotheses and conclusion for two module files")
    comp.add_argument("file_a")
    comp.add_argument("file_b")
    comp.add_argument("--m-max", type=int, default=2)
    comp.add_argument("--n-max", type=int, default=3)
    comp.add_argument("--f", action="append", help="extra distinguished polynomial to test")
    comp.set_defaults(func=_cmd_compare)

    pairing = sub.add_parser("pairing", help="finite perfect-pairing computations")
    pairing_sub = pairing.add_subparsers(dest="pairing_command", required=True)
    annih = pairing_sub.add_parser("annihilate", help="exact annihilator of a subgroup")
    annih.add_argument("file")
    annih.set_defaults(func=_cmd_pairing_annihilate)

    fe = sub.add_parser("fe-check", help="functional-equation check of a datum file")
    fe.add_argument("datum")
    fe.add_argument("--f", help="distinguished polynomial for the Poitou-Tate bound")
    fe.add_argument("--m-max", type=int, default=3)
    fe.add_argument("--n-max", type=int, default=2)
    fe.add_argument("--json", action="store_true", help="machine-readable verdict")
    fe.set_defaults(func=_cmd_fe_check)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (IwalabError, OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
