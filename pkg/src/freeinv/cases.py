"""Golden theorem table: hypotheses, patterns and expected E_inf shapes,
stored as expressions in n, m, l and expanded per triple."""
from __future__ import annotations

import ast
import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .fiber import FiberAlgebra, Involution, SphereTriple, build_fiber_algebra, parse_element
from .pages import Assignment
from .patterns import DifferentialPattern, check_admissible
from .results import (PoincarePolynomial, RingPresentation, extract_presentation, poincare)

CASE_IDS = ("thm3.2", "thm3.4-1", "thm3.4-2", "thm3.4-3", "thm3.6-1", "thm3.6-2",
            "thm3.7-1", "thm3.7-2", "thm3.7-3", "thm3.7-4",
            "thm3.8-1", "thm3.8-2", "thm3.8-3", "thm3.8-4")

_BINOPS = {ast.Add: lambda a, b: a + b, ast.Sub: lambda a, b: a - b,
           ast.Mult: lambda a, b: a * b}
_CMPOPS = {ast.Lt: lambda a, b: a < b, ast.LtE: lambda a, b: a <= b,
           ast.Gt: lambda a, b: a > b, ast.GtE: lambda a, b: a >= b,
           ast.Eq: lambda a, b: a == b, ast.NotEq: lambda a, b: a != b}


def evaluate(expr: str, n: int, m: int, l: int):
    """Evaluate an integer/boolean expression in n, m, l, N (no calls, no attributes)."""
    env = {"n": n, "m": m, "l": l, "N": n + m + l}

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, bool)):
            return node.value
        if isinstance(node, ast.Name) and node.id in env:
            return env[node.id]
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand)
        if isinstance(node, ast.BoolOp):
            vals = [ev(v) for v in node.values]
            return all(vals) if isinstance(node.op, ast.And) else any(vals)
        if isinstance(node, ast.Compare):
            left = ev(node.left)
            for op, comp in zip(node.ops, node.comparators):
                right = ev(comp)
                if type(op) not in _CMPOPS or not _CMPOPS[type(op)](left, right):
                    return False
                left = right
            return True
        raise ValueError(f"unsupported expression {ast.dump(node)}")

    return ev(ast.parse(expr, mode="eval"))


@lru_cache(maxsize=1)
def _table() -> tuple[dict, ...]:
    text = resources.files("freeinv").joinpath("data/theorem_cases.json").read_text()
    return tuple(json.loads(text)["cases"])


@dataclass(frozen=True)
class Expected:
    case_id: str
    variant: str
    support: dict[tuple[int, int], int]
    Q: int
    generators: tuple[int, ...]
    annihilators: tuple[tuple[int, int], ...]
    pattern: tuple[Assignment, ...]
    actions: tuple[Involution, ...]

    def poincare(self) -> PoincarePolynomial:
        top = max(p + q for p, q in self.support) if self.support else 0
        coeffs = [0] * (top + 1)
        for (p, q), d in self.support.items():
            coeffs[p + q] += d
        return PoincarePolynomial(tuple(coeffs))

    @property
    def family(self) -> str:
        return self.case_id.split("-")[0]


def expand(entry: dict, t: SphereTriple) -> Expected | None:
    """The case instantiated at ``t``, or ``None`` if its hypothesis fails."""
    n, m, l = t.as_tuple()
    if not evaluate(entry["hypothesis"], n, m, l):
        return None
    ev = lambda e: evaluate(e, n, m, l)  # noqa: E731
    support: dict[tuple[int, int], int] = {}
    for q, lo, hi in entry["support"]:
        for p in range(ev(lo), ev(hi) + 1):
            support[(p, ev(q))] = support.get((p, ev(q)), 0) + 1
    pattern = sorted((Assignment(ev(r), parse_element(s), parse_element(tg))
                      for r, s, tg in entry["pattern"]), key=lambda a: a.r)
    actions = tuple(Involution.from_descriptor(a) for a in entry.get("actions", [])) \
        or (Involution.identity(),)
    return Expected(entry["id"], entry["variant"], support, ev(entry["Q"]),
                    tuple(sorted(ev(d) for d in entry["generators"])),
                    tuple(sorted((ev(k), ev(d)) for k, d in entry["annihilators"])),
                    tuple(pattern), actions)


def cases_for(t: SphereTriple, case_id: str | None = None) -> list[Expected]:
    out = []
    for entry in _table():
        if case_id is None or entry["id"] == case_id:
            e = expand(entry, t)
            if e is not None:
                out.append(e)
    return out


def hypothesis_holds(case_id: str, t: SphereTriple) -> bool:
    if case_id not in CASE_IDS:
        raise KeyError(case_id)
    return bool(cases_for(t, case_id))


# ---------------------------------------------------------------------------
# features and matching


def features(E, R: RingPresentation) -> dict:
    P = E.page
    support = {(p, q): P.dim(p, q) for q, cols in E.support().items() for p in cols}
    return {"support": support, "poincare": poincare(E).as_list(), "Q": R.Q,
            "generators": R.generator_degrees(), "annihilators": R.annihilators()}


def expected_features(x: Expected) -> dict:
    return {"support": dict(x.support), "poincare": x.poincare().as_list(), "Q": x.Q,
            "generators": list(x.generators), "annihilators": [tuple(a) for a in x.annihilators]}


def diff_features(got: dict, want: dict) -> dict:
    out = {}
    for key in ("poincare", "Q", "generators", "annihilators"):
        g, w = got[key], want[key]
        if key == "annihilators":
            g, w = [list(a) for a in g], [list(a) for a in w]
        if g != w:
            out[key] = {"expected": w, "got": g}
    if got["support"] != want["support"]:
        keys = sorted(set(got["support"]) | set(want["support"]))
        out["support"] = [{"bidegree": list(k), "expected": want["support"].get(k, 0),
                           "got": got["support"].get(k, 0)} for k in keys
                          if got["support"].get(k, 0) != want["support"].get(k, 0)]
    return out


def pattern_family(t: SphereTriple, g: Involution, P: DifferentialPattern) -> str:
    if not g.is_identity:
        return "thm3.4" if t.n == t.m else "thm3.2"
    summ = P.generator_summary()
    if summ["a"] != "survives":
        return "thm3.6"
    if summ["b"] != "survives":
        return "thm3.7"
    return "thm3.8"


@dataclass
class Match:
    case_id: str | None
    variant: str | None
    all_matches: list[tuple[str, str]]
    diff: dict | None = None

    @property
    def matched(self) -> bool:
        return self.case_id is not None

    def as_dict(self) -> dict:
        return {"case": self.case_id or "unmatched", "variant": self.variant,
                "all_matches": [list(m) for m in self.all_matches], "diff": self.diff}


def match_theorem(t: SphereTriple, g: Involution, P: DifferentialPattern, R: RingPresentation,
                  E=None) -> Match:
    """Which theorem case (and variant) the outcome instantiates.

    Cases from the family suggested by the pattern are preferred; outcomes
    that only agree with another family still match, since repeated degrees
    make generator names interchangeable."""
    if E is None:
        v, E = check_admissible(P, build_fiber_algebra(t), g)
        if E is None:
            return Match(None, None, [], {"verdict": v.as_dict()})
    got = features(E, R)
    hits, closest = [], None
    for x in cases_for(t):
        if not g.is_identity and not x.case_id.startswith(("thm3.2", "thm3.4")):
            continue
        if g.is_identity and x.case_id.startswith(("thm3.2", "thm3.4")):
            continue
        d = diff_features(got, expected_features(x))
        if not d:
            hits.append((x.case_id, x.variant))
        elif closest is None or len(d) < len(closest[1]):
            closest = (x, d)
    if not hits:
        diff = {"closest": [closest[0].case_id, closest[0].variant], **closest[1]} if closest else {}
        return Match(None, None, [], diff)
    fam = pattern_family(t, g, P)
    preferred = [h for h in hits if h[0].startswith(fam)] or hits
    return Match(preferred[0][0], preferred[0][1], hits)


# ---------------------------------------------------------------------------
# verification of one case at one triple


@dataclass
class VariantResult:
    case_id: str
    variant: str
    action: dict
    status: str
    diff: dict

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def as_dict(self) -> dict:
        return {"case": self.case_id, "variant": self.variant, "action": self.action,
                "status": self.status, "diff": self.diff}


def verify_case(case_id: str, t: SphereTriple) -> list[VariantResult]:
    """Replay every applicable variant of ``case_id`` and diff against the table.

    Raises ``KeyError`` for an unknown id and ``ValueError`` when the
    hypotheses exclude ``t``."""
    if case_id not in CASE_IDS:
        raise KeyError(case_id)
    variants = cases_for(t, case_id)
    if not variants:
        raise ValueError(f"{case_id} does not apply to {t.as_tuple()}")
    F = build_fiber_algebra(t)
    out = []
    for x in variants:
        for g in x.actions:
            P = DifferentialPattern(x.pattern)
            v, E = check_admissible(P, F, g)
            if E is None:
                out.append(VariantResult(case_id, x.variant, g.descriptor(), "fail",
                                         {"verdict": v.as_dict()}))
                continue
            R = extract_presentation(E)
            d = diff_features(features(E, R), expected_features(x))
            out.append(VariantResult(case_id, x.variant, g.descriptor(),
                                     "fail" if d else "pass", d))
    return out


def _fiber(t: SphereTriple) -> FiberAlgebra:
    return build_fiber_algebra(t)
