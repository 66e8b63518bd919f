"""Command line: ``freeinv analyze | verify | oracle``.

Records are JSON lines (one object per line, keys sorted) unless
``--format table`` or ``FREEINV_FORMAT=table`` asks for aligned text.
Exit codes: 0 pass, 1 fail or diff, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass, field

from .cases import CASE_IDS, match_theorem, verify_case
from .fiber import (Involution, SphereTriple, build_fiber_algebra, enumerate_involutions,
                    fixed_point_obstruction, validate_involution)
from .oracle import compare_with_engine
from .patterns import DifferentialPattern, Verdict, admissible_set, check_admissible
from .results import describe_support, extract_presentation, index_report, poincare

SCHEMA_VERSION = 1


@dataclass
class ResultRecord:
    triple: list[int]
    action: dict
    pattern: str
    generator_summary: dict
    verdict: dict
    poincare: list[int] | None = None
    support: list[dict] | None = None
    presentation: dict | None = None
    match: dict | None = None
    index: dict | None = None
    trail: list[dict] = field(default_factory=list)
    schema_version: int = SCHEMA_VERSION

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "ResultRecord":
        return cls(**json.loads(text))


def build_record(t: SphereTriple, g: Involution, pat: DifferentialPattern, verdict, E) -> ResultRecord:
    summ = {k: (list(v) if isinstance(v, tuple) else v) for k, v in pat.generator_summary().items()}
    rec = ResultRecord(list(t.as_tuple()), g.descriptor(), pat.descriptor(), summ, verdict.as_dict())
    if E is None:
        return rec
    R = extract_presentation(E)
    rec.poincare = poincare(E).as_list()
    rec.support = describe_support(E)
    rec.presentation = R.as_dict()
    rec.match = match_theorem(t, g, pat, R, E).as_dict()
    rec.index = index_report(E).as_dict()
    rec.trail = [{"page": pr.r, "differentials": [a.descriptor() for a in pr.entries]}
                 for pr in E.records if pr.entries]
    return rec


# ---------------------------------------------------------------------------
# output


def _emit(obj, fmt: str, out) -> None:
    if fmt == "json":
        if isinstance(obj, ResultRecord):
            out.write(obj.to_json() + "\n")
        else:
            out.write(json.dumps({**obj, "schema_version": SCHEMA_VERSION}, sort_keys=True,
                                 separators=(",", ":")) + "\n")
        return
    if isinstance(obj, ResultRecord):
        out.write(_record_table(obj))
    else:
        for k in sorted(obj):
            out.write(f"{k:>12}  {obj[k]}\n")
        out.write("\n")


def _record_table(rec: ResultRecord) -> str:
    lines = [f"triple {tuple(rec.triple)}  action {_action_str(rec.action)}",
             f"pattern  {rec.pattern or '(none)'}",
             f"verdict  {rec.verdict['status']}"]
    if rec.poincare is not None:
        ks = range(len(rec.poincare))
        lines.append("k      " + " ".join(f"{k:>3}" for k in ks))
        lines.append("dim H^k" + " ".join(f"{d:>3}" for d in rec.poincare))
        lines.append("E_inf rows:")
        for row in rec.support:
            lines.append(f"  q={row['q']:<3} p in {row['columns'][0]}..{row['columns'][-1]}"
                         f"  dims {row['dims']}  bottom {row['bottom']}")
        gens = ", ".join(f"{n}({d})" for n, d in rec.presentation["generators"])
        lines.append(f"generators  {gens}")
        for r in rec.presentation["relations"]:
            lines.append(f"  {r['relation']}")
        lines.append(f"case     {rec.match['case']} {rec.match['variant'] or ''}".rstrip())
        lines.append(f"index    s={rec.index['cohomology_index_s']}"
                     f"  volovikov page r={rec.index['volovikov_page_r']}")
    return "\n".join(lines) + "\n\n"


def _action_str(desc: dict) -> str:
    if desc == {"a": "a", "b": "b", "c": "c"}:
        return "identity"
    return ",".join(f"{k}->{v}" for k, v in desc.items())


# ---------------------------------------------------------------------------
# commands


def _triple(args, parser) -> SphereTriple:
    try:
        return SphereTriple(args.n, args.m, args.l)
    except (TypeError, ValueError) as err:
        parser.error(str(err))


def _actions(args, parser, t: SphereTriple) -> list[Involution]:
    F = build_fiber_algebra(t)
    sel = args.action
    if sel == "trivial":
        return [Involution.identity()]
    if sel == "all":
        return [g for g in enumerate_involutions(F) if not fixed_point_obstruction(F, g)]
    try:
        g = Involution.from_descriptor(sel)
        validate_involution(F, g)
    except ValueError as err:
        parser.error(f"bad action {sel!r}: {err}")
    return [g]


def cmd_analyze(args, parser, out) -> int:
    t = _triple(args, parser)
    F = build_fiber_algebra(t)
    actions = _actions(args, parser, t)
    status = 0
    if args.pattern is not None:
        try:
            pat = DifferentialPattern.parse(args.pattern)
        except ValueError as err:
            parser.error(str(err))
        for g in actions:
            verdict, E = check_admissible(pat, F, g)
            _emit(build_record(t, g, pat, verdict, E), args.format, out)
            if not verdict.admissible:
                status = 1
        return status
    for g in actions:
        for pat, E in admissible_set(F, g):
            _emit(build_record(t, g, pat, Verdict("admissible"), E), args.format, out)
    return status


def cmd_verify(args, parser, out) -> int:
    if args.case not in CASE_IDS:
        parser.error(f"unknown case id {args.case!r}; choose from {', '.join(CASE_IDS)}")
    t = _triple(args, parser)
    try:
        results = verify_case(args.case, t)
    except ValueError as err:
        parser.error(str(err))
    for r in results:
        _emit({"triple": list(t.as_tuple()), **r.as_dict()}, args.format, out)
    return 0 if all(r.passed for r in results) else 1


def cmd_oracle(args, parser, out) -> int:
    t = _triple(args, parser)
    res = compare_with_engine(t, args.factor)
    res["status"] = "pass" if res["match"] else "fail"
    _emit(res, args.format, out)
    return 0 if res["match"] else 1


def make_parser() -> argparse.ArgumentParser:
    fmt_default = os.environ.get("FREEINV_FORMAT", "json")
    if fmt_default not in ("json", "table"):
        fmt_default = "json"
    parser = argparse.ArgumentParser(prog="freeinv", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def triple_args(p):
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--m", type=int, required=True)
        p.add_argument("--l", type=int, required=True)
        p.add_argument("--format", choices=("json", "table"), default=fmt_default)

    pa = sub.add_parser("analyze", help="admissible patterns and their cohomology")
    triple_args(pa)
    pa.add_argument("--action", default="trivial",
                    help="trivial, all, or generator images such as a=a,b=c,c=b")
    pa.add_argument("--pattern", help='replay one pattern, e.g. "d2(a)=t^2*1;d3(ab)=t^3*c"')
    pa.set_defaults(func=cmd_analyze)

    pv = sub.add_parser("verify", help="rerun a theorem case against the golden table")
    pv.add_argument("case")
    triple_args(pv)
    pv.set_defaults(func=cmd_verify)

    po = sub.add_parser("oracle", help="compare with cellular cohomology of RP^k x S x S")
    triple_args(po)
    po.add_argument("--factor", type=int, choices=(1, 2, 3), required=True)
    po.set_defaults(func=cmd_oracle)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = out or sys.stdout
    try:
        return args.func(args, parser, out)
    except SystemExit as exc:
        return int(exc.code or 0)


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
