"""From a stabilized E_inf to cohomology tables, ring presentations and
Borsuk-Ulam type indices.

Tot E_inf is treated as a bigraded Z2[x]-algebra with x = [t] in bidegree
(1, 0).  Presentations name x and the bottom class of every x-tower that
is not an x-multiple (``y, w, z, ...``).  Extension ambiguity is kept as
named parameters ``a_i``: each relation may pick up any standard monomial of
the same total degree and strictly larger base degree.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement

from .fiber import format_element, multiply
from .gf2 import Subspace, complement_reps
from .pages import EInfinity, Page, _homogeneous_part

GENERATOR_NAMES = ("y", "w", "z", "u", "v", "s", "o", "k")


# ---------------------------------------------------------------------------
# Poincare polynomials


@dataclass(frozen=True)
class PoincarePolynomial:
    coefficients: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coefficients)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coefficients", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, k: int) -> int:
        return self.coefficients[k] if 0 <= k < len(self.coefficients) else 0

    def total(self) -> int:
        return sum(self.coefficients)

    def as_list(self) -> list[int]:
        return list(self.coefficients)


def poincare(E: EInfinity) -> PoincarePolynomial:
    P = E.page
    top = E.F.top
    coeffs = [0] * (top + 1)
    for p in range(P.p_max + 1):
        for q in E.F.nonzero_degrees:
            d = P.dim(p, q)
            if not d:
                continue
            if p + q > top:
                raise ValueError(f"E_inf is nonzero at ({p}, {q}); the pattern is not free")
            coeffs[p + q] += d
    return PoincarePolynomial(tuple(coeffs))


# ---------------------------------------------------------------------------
# presentations

Monomial = tuple[tuple[str, int], ...]


def monomial_str(mono: Monomial) -> str:
    if not mono:
        return "1"
    return "*".join(name if e == 1 else f"{name}^{e}" for name, e in mono)


def _mono(*factors: tuple[str, int]) -> Monomial:
    acc: dict[str, int] = {}
    for name, e in factors:
        if e:
            acc[name] = acc.get(name, 0) + e
    order = {"x": 0, **{g: i + 1 for i, g in enumerate(GENERATOR_NAMES)}}
    return tuple(sorted(acc.items(), key=lambda kv: order.get(kv[0], 99)))


@dataclass(frozen=True)
class Generator:
    name: str
    p: int
    q: int
    rep: int

    @property
    def degree(self) -> int:
        return self.p + self.q


@dataclass
class Relation:
    lhs: Monomial
    fixed: list[Monomial] = field(default_factory=list)
    params: list[tuple[str, Monomial]] = field(default_factory=list)
    degree: int = 0
    kind: str = "product"

    def __str__(self) -> str:
        terms = [monomial_str(self.lhs)] + [monomial_str(m) for m in self.fixed]
        terms += [f"{a}*{monomial_str(m)}" if m else a for a, m in self.params]
        return " + ".join(terms)

    def as_dict(self) -> dict:
        return {"relation": str(self), "degree": self.degree, "kind": self.kind,
                "lhs": monomial_str(self.lhs), "fixed": [monomial_str(m) for m in self.fixed],
                "parameters": [[a, monomial_str(m)] for a, m in self.params]}


@dataclass
class RingPresentation:
    generators: list[Generator]
    relations: list[Relation]
    Q: int

    def generator_degrees(self) -> list[int]:
        return sorted(g.degree for g in self.generators if g.name != "x")

    def annihilators(self) -> list[tuple[int, int]]:
        """``(k, deg g)`` for every relation ``x^k g + ...``."""
        out = []
        for rel in self.relations:
            if rel.kind == "annihilator":
                (_, k), (name, _) = rel.lhs
                g = next(g for g in self.generators if g.name == name)
                out.append((k, g.degree))
        return sorted(out)

    def parameters(self) -> list[str]:
        return [a for rel in self.relations for a, _ in rel.params]

    def as_dict(self) -> dict:
        return {"generators": [[g.name, g.degree] for g in self.generators],
                "relations": [r.as_dict() for r in self.relations],
                "Q": self.Q}

    def __str__(self) -> str:
        gens = ", ".join(g.name for g in self.generators)
        rels = ", ".join(str(r) for r in self.relations)
        return f"Z2[{gens}]/<{rels}>"


class _TotBasis:
    """Standard monomials ``x^i g`` of Tot E_inf, bidegree by bidegree."""

    def __init__(self, P: Page, gens: list[Generator]):
        self.P = P
        self.std: dict[tuple[int, int], list[tuple[Monomial, int]]] = {}
        self.annihilators: list[tuple[Generator, int, list[Monomial]]] = []
        for g in gens:
            if g.name == "x":
                continue
            k = 0
            while True:
                col = g.p + k
                coords = self.express(col, g.q, g.rep)
                if coords is not None:
                    self.annihilators.append((g, k, coords))
                    break
                self.std.setdefault((col, g.q), []).append((_mono(("x", k), (g.name, 1)), g.rep))
                k += 1

    def express(self, p: int, q: int, v: int) -> list[Monomial] | None:
        """Standard monomials summing to ``[t^p v]``, or ``None`` if independent."""
        P = self.P
        if p > P.p_max:
            return []
        B = P.boundaries(p)
        if not B.reduce(v):
            return []
        std = self.std.get((p, q), [])
        span = B.extend(rep for _, rep in std)
        if span.reduce(v):
            return None
        # find the combination (standard sets are tiny)
        for combo in range(1, 1 << len(std)):
            w = v
            for i, (_, rep) in enumerate(std):
                if combo >> i & 1:
                    w ^= rep
            if not B.reduce(w):
                return [std[i][0] for i in range(len(std)) if combo >> i & 1]
        raise AssertionError("unreachable")

    def higher(self, p: int, q: int) -> list[Monomial]:
        """Nonzero standard monomials of total degree p+q with base degree > p."""
        k = p + q
        out = []
        for (pp, qq), items in sorted(self.std.items()):
            if pp + qq == k and pp > p:
                out.extend(m for m, _ in items)
        return out


def _module_generators(E: EInfinity) -> list[Generator]:
    P = E.page
    raw = []
    for q in E.F.nonzero_degrees:
        if q == 0:
            continue
        mask = E.F.component(q)
        for p in range(P.p_max + 1):
            below = P.cycles(p - 1) if p else Subspace.zero(8)
            base = P.boundaries(p).extend(_homogeneous_part(below, mask))
            for v in complement_reps(base, _homogeneous_part(P.cycles(p), mask)):
                raw.append((p + q, p, v, q))
    raw.sort()
    gens = [Generator("x", 1, 0, 1)]
    for i, (_, p, v, q) in enumerate(raw):
        gens.append(Generator(GENERATOR_NAMES[i], p, q, v))
    return gens


def extract_presentation(E: EInfinity) -> RingPresentation:
    P = E.page
    row0 = [p for p in range(P.p_max + 1) if P.dim(p, 0)]
    Q = max(row0) + 1
    gens = _module_generators(E)
    tot = _TotBasis(P, gens)
    for i in range(Q):
        tot.std.setdefault((i, 0), []).insert(0, (_mono(("x", i)), 1))
    counter = iter(range(10**6))

    def params_for(p: int, q: int) -> list[tuple[str, Monomial]]:
        return [(f"a_{next(counter)}", m) for m in tot.higher(p, q)]

    relations = [Relation(_mono(("x", Q)), degree=Q, kind="nilpotence")]
    for g, k, fixed in tot.annihilators:
        if k >= Q:
            continue
        relations.append(Relation(_mono(("x", k), (g.name, 1)), fixed,
                                  params_for(g.p + k, g.q), g.degree + k, "annihilator"))
    fiber_gens = [g for g in gens if g.name != "x"]
    for g1, g2 in combinations_with_replacement(fiber_gens, 2):
        p, q = g1.p + g2.p, g1.q + g2.q
        v = multiply(g1.rep, g2.rep)
        if q > E.F.top:
            fixed: list[Monomial] = []
        else:
            fixed = tot.express(p, q, v)
            if fixed is None:
                raise AssertionError("standard monomials do not span Tot E_inf")
        lhs = _mono((g1.name, 1), (g2.name, 1))
        relations.append(Relation(lhs, fixed, params_for(p, q), p + q, "product"))
    return RingPresentation(gens, relations, Q)


# ---------------------------------------------------------------------------
# checking a presentation: Hilbert function with all parameters set to zero


def _mono_degree(mono: Monomial, degs: dict[str, int]) -> int:
    return sum(degs[n] * e for n, e in mono)


def _monomials_of_degree(d: int, gens: list[tuple[str, int]]) -> list[Monomial]:
    out: list[Monomial] = []

    def rec(i: int, left: int, acc: list[tuple[str, int]]):
        if i == len(gens):
            if left == 0:
                out.append(_mono(*acc))
            return
        name, deg = gens[i]
        for e in range(left // deg + 1):
            rec(i + 1, left - e * deg, acc + [(name, e)])

    rec(0, d, [])
    return out


def _times(a: Monomial, b: Monomial) -> Monomial:
    return _mono(*a, *b)


def quotient_hilbert(R: RingPresentation, max_degree: int) -> list[int]:
    """dim of Z2[gens]/(relations with a_i = 0) in degrees 0..max_degree."""
    gens = [(g.name, g.degree) for g in R.generators]
    degs = dict(gens)
    polys = [[r.lhs] + list(r.fixed) for r in R.relations]
    out = []
    for d in range(max_degree + 1):
        monos = _monomials_of_degree(d, gens)
        index = {m: i for i, m in enumerate(monos)}
        rows = []
        for poly in polys:
            pd = _mono_degree(poly[0], degs)
            if pd > d:
                continue
            for mult in _monomials_of_degree(d - pd, gens):
                v = 0
                for term in poly:
                    v ^= 1 << index[_times(term, mult)]
                rows.append(v)
        rank = Subspace(len(monos), tuple(rows)).dim if monos else 0
        out.append(len(monos) - rank)
    return out


def presentation_poincare(R: RingPresentation, top: int) -> PoincarePolynomial:
    """Hilbert function of the parameter-free quotient up to ``top`` plus the
    largest generator degree (so vanishing above ``top`` is checked)."""
    bound = top + max(g.degree for g in R.generators)
    return PoincarePolynomial(tuple(quotient_hilbert(R, bound)))


# ---------------------------------------------------------------------------
# indices


@dataclass
class IndexReport:
    cohomology_index_s: int
    volovikov_page_r: int | None
    conclusions: list[str]
    discrepancy: dict | None = None

    def as_dict(self) -> dict:
        return {"cohomology_index_s": self.cohomology_index_s,
                "volovikov_page_r": self.volovikov_page_r,
                "conclusions": self.conclusions, "discrepancy": self.discrepancy}


def cohomology_index(E: EInfinity) -> int:
    """Largest p with E_inf^{p,0} != 0."""
    P = E.page
    return max(p for p in range(P.p_max + 1) if P.dim(p, 0))


def volovikov_index(E: EInfinity) -> int | None:
    """Smallest page r carrying a nonzero differential into row 0."""
    for rec in E.records:
        if any(q - rec.r + 1 == 0 for (_, q) in rec.ranks):
            return rec.r
    return None


def index_report(E: EInfinity) -> IndexReport:
    s = cohomology_index(E)
    r = volovikov_index(E)
    notes = [f"no equivariant map S^d -> X exists for d > {s}"]
    disc = None
    if r is not None:
        if r - 1 > 1:
            notes.append(f"no equivariant map X -> S^k exists for 1 <= k < {r - 1}")
        disc = {"page_index": r, "published_style_value": r - 1,
                "note": "the index is the page of the first differential into row 0; "
                        "tabulated index values elsewhere are one lower than this page"}
    return IndexReport(s, r, notes, disc)


def describe_support(E: EInfinity) -> list[dict]:
    """Rows of E_inf as ``{q, columns, dims, reps}`` records."""
    P = E.page
    out = []
    for q, cols in E.support().items():
        out.append({"q": q, "columns": cols, "dims": [P.dim(p, q) for p in cols],
                    "bottom": [format_element(v) for v in P.reps(cols[0], q)]})
    return out
