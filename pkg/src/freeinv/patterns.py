"""Enumeration of differential patterns and admissibility verdicts.

A pattern is the sequence of nonzero differentials (page by page, on an
adapted basis of the surviving classes).  Enumeration is a depth-first
search over pages: on each page every t-linear derivation with vanishing
square is a branch.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .fiber import (FiberAlgebra, Involution, MONOMIAL_NAMES, format_element,
                    permanent_classes)
from .pages import (Assignment, DerivationSpace, EInfinity, EngineError, Page,
                    PageRecord, build_e2, check_stabilized, d_squared_witness,
                    differential_ranks, format_assignment, last_page, parse_assignment,
                    record_entries, run, turn_page)

STATUSES = ("admissible", "violates_d_squared", "violates_leibniz", "violates_freeness",
            "violates_permanent_cocycle", "not_stabilized")


@dataclass(frozen=True)
class DifferentialPattern:
    entries: tuple[Assignment, ...]

    @classmethod
    def parse(cls, text: str) -> "DifferentialPattern":
        return cls(tuple(parse_assignment(text)))

    def descriptor(self) -> str:
        return format_assignment(self.entries)

    def sort_key(self):
        return tuple((a.r, a.p, a.source, a.target) for a in self.entries)

    def generator_summary(self) -> dict[str, object]:
        """For each of a, b, c: ``(r, target)`` of its transgression from
        column 0, or ``"survives"``."""
        out: dict[str, object] = {}
        for k, name in enumerate("abc"):
            gen = 1 << (k + 1)
            hit = [a for a in self.entries if a.p == 0 and a.source == gen]
            out[name] = (hit[0].r, format_element(hit[0].target)) if hit else "survives"
        return out

    def is_zero(self) -> bool:
        return not self.entries


@dataclass
class Verdict:
    status: str
    witness: dict = field(default_factory=dict)
    message: str = ""

    @property
    def admissible(self) -> bool:
        return self.status == "admissible"

    def as_dict(self) -> dict:
        return {"status": self.status, "witness": self.witness, "message": self.message}


def _permanent_failure(P: Page, perms) -> dict | None:
    for alpha in sorted(perms):
        if alpha and alpha not in P.cycles(0):
            return {"kind": "permanent_cocycle", "class": [0, format_element(alpha)], "page": P.r}
    return None


def _freeness_failure(P: Page) -> dict | None:
    top = P.F.top
    for p in range(P.p_max + 1):
        for q in P.F.nonzero_degrees:
            if p + q > top and P.dim(p, q):
                return {"kind": "freeness", "bidegree": [p, q],
                        "class": [p, format_element(P.reps(p, q)[0])]}
    return None


def _doomed_row(P: Page) -> dict | None:
    """A row with an infinite t-tower that no remaining page can kill."""
    top = P.F.top
    for q in P.F.nonzero_degrees:
        if P.dim(P.p_max, q) and P.r > max(q + 1, top - q + 1):
            return {"kind": "freeness", "bidegree": [P.p_max, q],
                    "class": [P.p_max, format_element(P.reps(P.p_max, q)[0])]}
    return None


def _search(E2: Page, prune: bool):
    """Yield ``(pattern, E_inf or None, verdict)`` for every leaf."""
    F, g = E2.F, E2.g
    perms = permanent_classes(F, g)
    final = last_page(F)

    def rec(P: Page, records: list[PageRecord]):
        if prune:
            w = _permanent_failure(P, perms)
            if w:
                return
            if _doomed_row(P):
                return
        if P.r > final:
            pattern = DifferentialPattern(tuple(a for rc in records for a in rc.entries))
            yield pattern, EInfinity(P, list(records))
            return
        space = DerivationSpace(P)
        for c in space.solve():
            D = space.derivation(c)
            if d_squared_witness(P, D):
                continue
            nxt = turn_page(P, D)
            rc = PageRecord(P.r, D, record_entries(P, D), differential_ranks(P, nxt))
            yield from rec(nxt, records + [rc])

    yield from rec(E2, [])


def enumerate_patterns(F: FiberAlgebra, g: Involution) -> list[DifferentialPattern]:
    """Every Leibniz-consistent pattern except the all-zero one."""
    E2 = build_e2(F, g)
    out = [pat for pat, _ in _search(E2, prune=False) if not pat.is_zero()]
    out.sort(key=DifferentialPattern.sort_key)
    return out


def verdict_for(E: EInfinity, F: FiberAlgebra, g: Involution) -> Verdict:
    P = E.page
    w = _permanent_failure(P, permanent_classes(F, g))
    if w:
        return Verdict("violates_permanent_cocycle", w,
                       f"the permanent class {w['class'][1]} does not survive")
    w = _freeness_failure(P)
    if w:
        return Verdict("violates_freeness", w,
                       f"E_inf is nonzero at bidegree {tuple(w['bidegree'])} above the top degree {F.top}")
    try:
        check_stabilized(P)
    except EngineError as err:
        return Verdict(err.status, err.witness, str(err))
    return Verdict("admissible")


def check_admissible(P: DifferentialPattern, F: FiberAlgebra, g: Involution):
    """Replay a pattern; returns ``(Verdict, EInfinity or None)``."""
    E2 = build_e2(F, g)
    try:
        E = run(list(P.entries), E2, certify=False)
    except EngineError as err:
        return Verdict(err.status, err.witness, str(err)), None
    v = verdict_for(E, F, g)
    return v, (E if v.admissible else None)


def admissible_set(F: FiberAlgebra, g: Involution) -> list[tuple[DifferentialPattern, EInfinity]]:
    E2 = build_e2(F, g)
    out = []
    for pat, E in _search(E2, prune=True):
        if verdict_for(E, F, g).admissible:
            out.append((pat, E))
    out.sort(key=lambda pe: pe[0].sort_key())
    return out
