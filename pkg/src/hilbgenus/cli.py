"""Command line interface: compute, genus, verify and tabulate.

Exit codes: 0 ok, 2 invalid input, 3 verification failure, 4 a bounded
search ran out of budget.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from math import gcd

from .arith import is_prime, is_squarefree
from .errors import CapExhausted, HilbGenusError, InvalidInput, InvalidP
from .fieldcase import A_CASES, SquareClass, relative_discriminant_K, resolve
from .hilbert import HilbertGenusReport, hilbert_genus
from .quadfield import QuadElem, check_p

EXIT_OK, EXIT_INVALID, EXIT_VERIFY, EXIT_CAP = 0, 2, 3, 4

# instances whose commonly quoted generator list assumes the wrong residue case
CASE_NOTES = {
    (73, 4199): (
        "4199 = 13*17*19 is 3 (mod 4), so the odd_3mod4 branch applies; the "
        "rank-6 list quoted for this field belongs to the odd_1mod4 branch "
        "(reproduce it with --case-override odd_1mod4)"
    ),
}

CSV_COLUMNS = [
    "p", "a", "case", "n", "m", "lambda", "h", "eps", "rel_disc_coeff",
    "t_ramified", "e", "rank", "genus_gens", "hilbert_gens", "unramified",
    "independent", "rank_formula", "skipped",
]


# ---------------------------------------------------------------------------
# serialization


def elem_to_dict(x: QuadElem) -> dict:
    return {"s": x.s, "t": x.t, "den": x.den}


def square_class_to_dict(g: SquareClass) -> dict:
    payload = g.payload
    if isinstance(payload, QuadElem):
        payload = elem_to_dict(payload)
    return {"kind": g.kind, "payload": payload, "display": g.display(),
            "source_q": g.source_q}


def square_class_from_dict(d: dict, p: int) -> SquareClass:
    payload = d["payload"]
    if isinstance(payload, dict):
        payload = QuadElem(payload["s"], payload["t"], p, payload["den"])
    return SquareClass(payload, d["kind"], d["source_q"])


def report_to_dict(report: HilbertGenusReport, tex: bool = False) -> dict:
    prof = report.profile
    v = report.verification
    out = {
        "p": prof.p,
        "a": prof.a,
        "case": report.a_case,
        "n": prof.n,
        "m": prof.m,
        "lambda": prof.lam,
        "h": prof.h,
        "eps": elem_to_dict(prof.eps),
        "rel_disc_coeff": relative_discriminant_K(prof),
        "t_ramified": report.t,
        "e": report.e,
        "rank": report.rank,
        "genus_gens": [square_class_to_dict(g) for g in report.genus_generators],
        "hilbert_gens": [square_class_to_dict(g) for g in report.hilbert_generators],
        "solutions": [{"q": s.q, "x": s.x, "y": s.y, "k": s.k}
                      for s in report.solutions],
        "case_override": report.case_override,
        "keep_eps": report.keep_eps,
    }
    if tex:
        for key, gens in (("genus_gens", report.genus_generators),
                          ("hilbert_gens", report.hilbert_generators)):
            for d, g in zip(out[key], gens):
                d["tex"] = g.tex()
    if v:
        out["checks"] = {
            "unramified": [
                {
                    "display": g.display(),
                    "status": u.status,
                    "ideal_square": u.ideal_square,
                    "dyadic": u.dyadic,
                    "k0_square_mod4": u.k0_square_mod4,
                    "bad_primes": list(u.bad_primes),
                }
                for g, u in zip(report.hilbert_generators, v["unramified"])
            ],
            "independent": v["independence"].independent,
            "witness": list(v["independence"].witness),
            "rank_formula": v["rank_formula"],
            "genus_contained": v["genus_contained"],
            "e_is_two": v["e_is_two"],
            "unit_norm_symbols": v["unit_norm_symbols"],
            "passed": report.passed,
        }
    note = CASE_NOTES.get((prof.p, prof.a))
    if note:
        out["note"] = note
    return out


def _csv_row(d: dict) -> dict:
    if "skipped" in d:
        return {"p": d["p"], "a": d["a"], "skipped": d["skipped"]}
    checks = d.get("checks", {})
    return {
        "p": d["p"],
        "a": d["a"],
        "case": d["case"],
        "n": d["n"],
        "m": d["m"],
        "lambda": "" if d["lambda"] is None else d["lambda"],
        "h": d["h"],
        "eps": str(QuadElem(d["eps"]["s"], d["eps"]["t"], d["p"], d["eps"]["den"])),
        "rel_disc_coeff": d["rel_disc_coeff"],
        "t_ramified": d["t_ramified"],
        "e": d["e"],
        "rank": d["rank"],
        "genus_gens": ";".join(g["display"] for g in d["genus_gens"]),
        "hilbert_gens": ";".join(g["display"] for g in d["hilbert_gens"]),
        "unramified": ";".join(u["status"] for u in checks.get("unramified", [])),
        "independent": checks.get("independent", ""),
        "rank_formula": checks.get("rank_formula", ""),
        "skipped": "",
    }


# ---------------------------------------------------------------------------
# text output


def _format_text(d: dict, tex: bool) -> str:
    key = "tex" if tex else "display"
    eps = QuadElem(d["eps"]["s"], d["eps"]["t"], d["p"], d["eps"]["den"])
    lines = [
        f"K = Q(sqrt(-{d['a']}*eps_{d['p']}*sqrt({d['p']})))",
        f"case {d['case']}  n={d['n']} m={d['m']} lambda={d['lambda']} h={d['h']}",
        f"eps_p = {eps.display()}",
        f"relative discriminant = {d['rel_disc_coeff']}*sqrt({d['p']})",
        f"t = {d['t_ramified']}  e = {d['e']}  rank = {d['rank']}",
        "genus field generators: "
        + (", ".join(g[key] for g in d["genus_gens"]) or "(none, K* = K)"),
        "Hilbert genus field generators:",
    ]
    checks = d.get("checks")
    for i, g in enumerate(d["hilbert_gens"]):
        status = f"  [{checks['unramified'][i]['status']}]" if checks else ""
        root = f"\\sqrt{{{g[key]}}}" if tex else f"sqrt({g[key]})"
        lines.append(f"  {root}  {g['kind']}{status}")
    if not d["hilbert_gens"]:
        lines.append("  (none, E = K)")
    if checks:
        lines.append(
            f"independent: {checks['independent']}  rank formula: "
            f"{checks['rank_formula']}  e = 2 certified: {checks['e_is_two']}"
        )
        lines.append("verification: " + ("pass" if checks["passed"] else "FAIL"))
    if "note" in d:
        lines.append(f"note: {d['note']}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# commands


def _build(args) -> HilbertGenusReport:
    profile = resolve(args.p, args.a)
    return hilbert_genus(
        profile,
        case_override=getattr(args, "case_override", None),
        full_exponent=getattr(args, "full_exponent", False),
        keep_eps=getattr(args, "keep_eps", False),
    )


def _warn_override(args, report: HilbertGenusReport) -> None:
    if args.case_override is None:
        return
    actual = report.profile.a_case
    print(
        f"WARNING: case override {args.case_override} replaces the computed case "
        f"{actual} for a={args.a}; the generators follow the overridden branch "
        "and are only meaningful for reproducing a published list "
        "(e.g. the rank-6 list for p=73, a=4199, whose residue was misstated)",
        file=sys.stderr,
    )


def cmd_compute(args) -> int:
    report = _build(args)
    _warn_override(args, report)
    d = report_to_dict(report, tex=args.tex)
    if args.format == "json":
        print(json.dumps(d, indent=2, ensure_ascii=False))
    else:
        print(_format_text(d, args.tex))
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_genus(args) -> int:
    profile = resolve(args.p, args.a)
    report = hilbert_genus(profile, verify=False)
    gens = report.genus_generators
    if args.format == "json":
        print(json.dumps([square_class_to_dict(g) for g in gens], indent=2))
    else:
        print(", ".join(g.display() for g in gens) or "(none, K* = K)")
    return EXIT_OK


def cmd_verify(args) -> int:
    report = _build(args)
    _warn_override(args, report)
    v = report.verification
    for g, u in zip(report.hilbert_generators, v["unramified"]):
        extra = f" at {', '.join(u.bad_primes)}" if u.bad_primes else ""
        print(f"unramified {g.display()}: {u.status}{extra}")
    ind = v["independence"]
    if ind.independent:
        print("independent: pass")
    else:
        what = "delta times a square" if ind.via_delta else "a square"
        print(f"independent: fail (product of generators {list(ind.witness)} is {what})")
    print(f"rank formula rank = t - 3 = {report.t - 3}: "
          f"{'pass' if v['rank_formula'] else 'fail'}")
    print(f"genus generators contained: {'pass' if v['genus_contained'] else 'fail'}")
    for name, vals in v["unit_norm_symbols"].items():
        print(f"real symbols ({name}, delta): {vals}")
    print(f"e = 2: {'pass' if v['e_is_two'] else 'fail'}")
    print("verification: " + ("pass" if report.passed else "FAIL"))
    return EXIT_OK if report.passed else EXIT_VERIFY


def _accepted_p(p: int) -> bool:
    try:
        check_p(p)
    except InvalidP:
        return False
    return True


def _skip_reason(p: int, a: int) -> str | None:
    if not is_squarefree(a):
        return "a not squarefree"
    if gcd(a, p) != 1:
        return "a not coprime to p"
    if p == 2 and a % 2 == 0:
        return "a even with p = 2"
    return None


def tabulate_one(pa: tuple[int, int]) -> dict:
    p, a = pa
    reason = _skip_reason(p, a)
    if reason:
        return {"p": p, "a": a, "skipped": reason}
    try:
        return report_to_dict(hilbert_genus(resolve(p, a)))
    except CapExhausted as exc:
        return {"p": p, "a": a, "skipped": f"search cap exhausted: {exc}"}


def tabulate_records(p_min: int, p_max: int, a_min: int, a_max: int,
                     jobs: int = 1) -> list[dict]:
    """Records for every accepted p in range and every a in range, in order.

    Values of p that are not accepted are not enumerated; invalid a give a
    record with a ``skipped`` reason.
    """
    pairs = [(p, a) for p in range(max(p_min, 2), p_max + 1)
             if (p == 2 or is_prime(p)) and _accepted_p(p)
             for a in range(max(a_min, 1), a_max + 1)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(tabulate_one, pairs, chunksize=64))
    return [tabulate_one(pa) for pa in pairs]


def serialize_records(records: list[dict], fmt: str) -> str:
    if fmt == "jsonl":
        return "".join(json.dumps(r, ensure_ascii=False) + "\n" for r in records)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for r in records:
        writer.writerow(_csv_row(r))
    return buf.getvalue()


def cmd_tabulate(args) -> int:
    if args.p_min > args.p_max or args.a_min > args.a_max:
        raise InvalidInput("empty range: min exceeds max")
    records = tabulate_records(args.p_min, args.p_max, args.a_min, args.a_max,
                               args.jobs)
    text = serialize_records(records, args.format)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_INVALID
    else:
        sys.stdout.write(text)
    failed = any(not r.get("checks", {}).get("passed", True) for r in records)
    capped = any(r.get("skipped", "").startswith("search cap") for r in records)
    if failed:
        return EXIT_VERIFY
    return EXIT_CAP if capped else EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hilbgenus",
        description="Genus field and Hilbert genus field of "
        "K = Q(sqrt(-a*eps_p*sqrt(p))).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def instance(sp):
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--a", type=int, required=True)

    def options(sp):
        sp.add_argument("--case-override", choices=A_CASES, default=None,
                        help="force a residue branch instead of the computed one")
        sp.add_argument("--full-exponent", action="store_true",
                        help="solve x^2 - p*y^2 = q^(lambda*h) exactly")
        sp.add_argument("--keep-eps", action="store_true",
                        help="emit eps_p itself in the unit slot for p = 1 (mod 8), "
                        "a even (ramified above 2; fails verification)")

    sp = sub.add_parser("compute", help="full report for one instance")
    instance(sp)
    options(sp)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.add_argument("--tex", action="store_true", help="TeX forms of generators")
    sp.set_defaults(func=cmd_compute)

    sp = sub.add_parser("genus", help="genus field generators only")
    instance(sp)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_genus)

    sp = sub.add_parser("verify", help="run every certification check")
    instance(sp)
    options(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("tabulate", help="batch over ranges of p and a")
    sp.add_argument("--p-min", type=int, required=True)
    sp.add_argument("--p-max", type=int, required=True)
    sp.add_argument("--a-min", type=int, required=True)
    sp.add_argument("--a-max", type=int, required=True)
    sp.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    sp.add_argument("--out", default=None, help="output file (overwritten)")
    sp.add_argument("--jobs", type=int, default=1, help="worker processes")
    sp.set_defaults(func=cmd_tabulate)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except CapExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except HilbGenusError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
