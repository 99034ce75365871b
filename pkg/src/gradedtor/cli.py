"""Command-line entry point: ``gradedtor {list,scan,poincare,member,verify}``.

Exit codes: 0 success, 1 verification failure (expected-fail claims do not
count), 2 usage error.  Data goes to stdout or ``--output``; diagnostics go
to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass

from . import __version__
from .catalog import MAX_DEGREE_CAP, STANDARD_ENTRIES, default_degree, get_entry
from .idealcalc import DegreeReport, membership, quotient_report, scan_reports
from .polyring import PolySyntaxError, parse_poly
from .verify import EXPECTED_FAIL, FAIL, ClaimResult, default_claims, run_campaign, validate_claim

__all__ = ["main", "parse_poly", "build_report"]


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    command: str
    entry: str | None
    max_degree: int | None
    closure: bool
    format: str
    output_path: str | None


def _degree(text: str) -> int:
    try:
        d = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"degree must be an integer, got {text!r}") from None
    if d < 0 or d % 2 or d > MAX_DEGREE_CAP:
        raise argparse.ArgumentTypeError(f"degree must be even and in [0, {MAX_DEGREE_CAP}], got {d}")
    return d


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gradedtor", description="Degreewise integral structure of gauge-group cohomology presentations.")
    parser.add_argument("--version", action="version", version=f"gradedtor {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, entry_required=True):
        p.add_argument("--entry", required=entry_required, help="catalog entry, e.g. 'BGU(2,1)' or SO3")
        p.add_argument("--max-degree", type=_degree, default=None)
        p.add_argument("--closure", dest="closure", action="store_true", default=True)
        p.add_argument("--no-closure", dest="closure", action="store_false")
        p.add_argument("--close-plain", action="store_true", help="saturate after adding plain generators")
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")
        p.add_argument("--output", default=None)
        p.add_argument("--no-timing", action="store_true", help="report runtime_ms as 0")

    sub.add_parser("list", help="list catalog entries")
    common(sub.add_parser("scan", help="per-degree ranks and torsion"))
    common(sub.add_parser("poincare", help="quotient ranks against the expected series"))
    member = sub.add_parser("member", help="ideal membership of a polynomial")
    common(member)
    member.add_argument("--poly", required=True)
    verify = sub.add_parser("verify", help="run verification claims")
    common(verify, entry_required=False)
    verify.add_argument("--all", action="store_true")
    verify.add_argument("--claim", action="append", default=[])
    verify.add_argument("--max-degree-two-sided", type=_degree, default=None)
    return parser


def _claim_json(c: ClaimResult) -> dict:
    return {"id": c.claim_id, "status": c.status, "witness": c.witness}


def _degree_json(r: DegreeReport) -> dict:
    return {
        "degree": r.degree,
        "ambient_rank": r.ambient_rank,
        "ideal_rank": r.ideal_rank,
        "quotient_rank": r.quotient_rank,
        "torsion": list(r.torsion_invariants),
    }


def build_report(
    entry: str,
    max_degree: int,
    closure: bool,
    reports: list[DegreeReport],
    expected: list[int] | None,
    claims: list[ClaimResult],
    runtime_ms: int,
) -> dict:
    series_match = None
    if expected is not None:
        series_match = [r.quotient_rank for r in reports] == expected[: len(reports)]
    return {
        "entry": entry,
        "max_degree": max_degree,
        "closure": closure,
        "degrees": [_degree_json(r) for r in reports],
        "expected_series": expected,
        "series_match": series_match,
        "claims": [_claim_json(c) for c in claims],
        "meta": {"runtime_ms": runtime_ms, "version": __version__},
    }


def _render_text(command: str, report: dict) -> str:
    out = io.StringIO()
    if command in ("scan", "poincare") or report["degrees"]:
        out.write(f"entry {report['entry']}  max_degree {report['max_degree']}  closure {'on' if report['closure'] else 'off'}\n")
        exp = report["expected_series"]
        header = ["degree", "ambient", "ideal", "quotient", "torsion"]
        if exp is not None:
            header.append("expected")
        out.write("  ".join(f"{h:>8}" for h in header) + "\n")
        for i, d in enumerate(report["degrees"]):
            cols = [d["degree"], d["ambient_rank"], d["ideal_rank"], d["quotient_rank"], ",".join(map(str, d["torsion"]))]
            if exp is not None:
                cols.append(exp[i])
            out.write("  ".join(f"{c!s:>8}" for c in cols) + "\n")
        if report["series_match"] is not None:
            out.write(f"series match: {'yes' if report['series_match'] else 'NO'}\n")
    for c in report["claims"]:
        line = f"{c['status'].upper():<14}{c['id']}"
        if c["witness"]:
            line += f"  [{c['witness']}]"
        out.write(line + "\n")
    return out.getvalue()


def _render_csv(report: dict) -> str:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    if report["degrees"] or not report["claims"]:
        w.writerow(["degree", "ambient_rank", "ideal_rank", "quotient_rank", "torsion"])
        for d in report["degrees"]:
            w.writerow([d["degree"], d["ambient_rank"], d["ideal_rank"], d["quotient_rank"], ";".join(map(str, d["torsion"]))])
    if report["claims"]:
        w.writerow(["id", "status", "witness"])
        for c in report["claims"]:
            w.writerow([c["id"], c["status"], c["witness"] or ""])
    return out.getvalue()


def _emit(cfg: CliConfig, command: str, report: dict, text: str | None = None) -> None:
    if cfg.format == "json":
        data = json.dumps(report, indent=2) + "\n"
    elif cfg.format == "csv":
        data = _render_csv(report)
    else:
        data = text if text is not None else _render_text(command, report)
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8") as fh:
            fh.write(data)
    else:
        sys.stdout.write(data)


def _cmd_list(cfg: CliConfig) -> int:
    lines = []
    for name in STANDARD_ENTRIES:
        e = get_entry(name)
        lines.append(f"{name:<10}  D={default_degree(name):<3} series {e.expected_series}   {e.provenance}")
    lines.append("parametrised: loopU(n), BGU(n,k), Spinc3(k), Spinc4(k), SO3, SO4")
    data = "\n".join(lines) + "\n"
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8") as fh:
            fh.write(data)
    else:
        sys.stdout.write(data)
    return 0


def main(argv: list[str] | None = None) -> int:
    t0 = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"gradedtor: error: {exc}", file=sys.stderr)
        return 2
    cfg = CliConfig(
        command=args.command,
        entry=getattr(args, "entry", None),
        max_degree=getattr(args, "max_degree", None),
        closure=getattr(args, "closure", True),
        format=getattr(args, "format", "text"),
        output_path=getattr(args, "output", None),
    )
    if cfg.command == "list":
        return _cmd_list(cfg)

    def runtime() -> int:
        return 0 if args.no_timing else int((time.perf_counter() - t0) * 1000)

    try:
        if cfg.command == "verify":
            return _cmd_verify(cfg, args, runtime)
        entry = get_entry(cfg.entry, cfg.max_degree)
        D = entry.presentation.ring.max_degree
        if cfg.command == "member":
            f = parse_poly(args.poly)
            if not f.is_homogeneous():
                raise UsageError(f"polynomial is not homogeneous: {f}")
            entry.presentation.ring.check(f)
            res = membership(f, entry.presentation, closure=cfg.closure, close_plain=args.close_plain)
            reports = []
            if f:
                pres = entry.presentation
                if f.degree > D:
                    pres = pres.with_max_degree(f.degree)
                reports = [quotient_report(pres, f.degree, cfg.closure, args.close_plain)]
            claim = ClaimResult("membership", "pass", witness=str(res))
            report = build_report(entry.name, D, cfg.closure, reports, None, [claim], runtime())
            _emit(cfg, "member", report, text=str(res) + "\n")
            return 0
        reports = scan_reports(entry.presentation, D, cfg.closure, args.close_plain)
        expected = entry.expected(D) if cfg.closure and not args.close_plain else None
        report = build_report(entry.name, D, cfg.closure, reports, expected, [], runtime())
        _emit(cfg, cfg.command, report)
        return 0
    except (UsageError, PolySyntaxError, KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"gradedtor: error: {msg}", file=sys.stderr)
        return 2


def _cmd_verify(cfg: CliConfig, args, runtime) -> int:
    claims = list(args.claim)
    if args.all:
        claims = default_claims() + [c for c in claims if c not in default_claims()]
    if cfg.entry:
        get_entry(cfg.entry, 0)
        claims += [f"torsion:{cfg.entry}" + ("" if cfg.closure else ":no-closure")]
        if cfg.closure:
            claims.append(f"poincare:{cfg.entry}")
    if not claims:
        raise UsageError("verify needs --all, --claim or --entry")
    for c in claims:
        validate_claim(c)
    results = run_campaign(claims, cfg.max_degree, args.max_degree_two_sided)
    reports: list[DegreeReport] = []
    expected = None
    name = "all" if args.all else ",".join(claims)
    D = cfg.max_degree if cfg.max_degree is not None else 0
    if cfg.entry and not args.all:
        entry = get_entry(cfg.entry, cfg.max_degree)
        D = entry.presentation.ring.max_degree
        name = entry.name
        reports = scan_reports(entry.presentation, D, cfg.closure)
        expected = entry.expected(D) if cfg.closure else None
    elif cfg.max_degree is None:
        D = 20
    report = build_report(name, D, cfg.closure, reports, expected, results, runtime())
    _emit(cfg, "verify", report)
    failed = [r for r in results if r.status == FAIL]
    for r in failed:
        print(f"gradedtor: claim {r.claim_id} failed: {r.witness}", file=sys.stderr)
    expected_fails = sum(r.status == EXPECTED_FAIL for r in results)
    print(
        f"gradedtor: {len(results) - len(failed) - expected_fails} pass, {expected_fails} expected-fail, {len(failed)} fail",
        file=sys.stderr,
    )
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
