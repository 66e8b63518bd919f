"""Pages of the Borel spectral sequence over RP^infinity.

Every class of E_r^{p,q} is written ``t^p (x) alpha`` with ``alpha`` a fiber
element of degree ``q``.  A page is therefore stored as two increasing
filtrations of the fiber: cycles ``Z[p]`` and boundaries ``B[p]`` for
``0 <= p <= p_max``, so that ``E_r^{p,*} = Z[p] / B[p]``.  Columns past
``p_max`` reuse column ``p_max``; that is only valid once the tail of the
window is constant, which :func:`run` certifies.

Because ``t`` is a permanent cycle, ``d_r`` is t-linear and is given by one
fiber-level map ``D`` with ``d_r[t^p alpha] = [t^(p+r) D(alpha)]``.  For a
fixed page the admissible ``D`` (linear, well defined on classes, Leibniz)
form a vector space; :class:`DerivationSpace` computes it and solves for
elements meeting prescribed values.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .fiber import (FiberAlgebra, Involution, MONOMIAL_NAMES, format_element,
                    multiply, parse_element)
from .gf2 import Subspace, complement_reps, pivot, preimage

FULL = Subspace.full(8)
ZERO = Subspace.zero(8)


class EngineError(Exception):
    """Raised when a page cannot be turned; ``witness`` says why."""

    status = "engine_error"

    def __init__(self, message: str, witness: dict | None = None):
        super().__init__(message)
        self.witness = witness or {}


class LeibnizError(EngineError):
    status = "violates_leibniz"


class DSquaredError(EngineError):
    status = "violates_d_squared"


class NotStabilizedError(EngineError):
    status = "not_stabilized"


def _homogeneous_part(S: Subspace, mask: int) -> list[int]:
    # canonical bases of graded subspaces are made of homogeneous vectors
    return [v for v in S.basis if not v & ~mask]


def linear_map(basis: Sequence[int], images: Sequence[int]) -> tuple[int, ...]:
    """Images of the 8 monomials under the map sending ``basis[i]`` to
    ``images[i]`` and vanishing on the unit-vector complement."""
    rows = [b | (img << 8) for b, img in zip(basis, images)]
    span = Subspace(8, tuple(basis))
    for k in range(8):
        if span.reduce(1 << k):
            rows.append(1 << k)
            span = span.extend((1 << k,))
    # reduce to identity on the low byte
    reduced: list[int] = []
    for v in rows:
        for r in reduced:
            if v >> pivot(r) & 1:
                v ^= r
        p = pivot(v & 0xFF)
        reduced = [r ^ v if r >> p & 1 else r for r in reduced]
        reduced.append(v)
    out = [0] * 8
    for r in reduced:
        out[pivot(r & 0xFF)] = r >> 8
    return tuple(out)


@dataclass(frozen=True)
class Derivation:
    """Fiber-level linear map representing d_r."""

    r: int
    images: tuple[int, ...] = (0,) * 8

    def __call__(self, v: int) -> int:
        out = 0
        while v:
            i = pivot(v)
            out ^= self.images[i]
            v &= v - 1
        return out

    @property
    def is_zero(self) -> bool:
        return not any(self.images)


@dataclass(frozen=True)
class Page:
    """E_r as cycle and boundary filtrations of the fiber algebra."""

    F: FiberAlgebra
    g: Involution
    r: int
    p_max: int
    Z: tuple[Subspace, ...]
    B: tuple[Subspace, ...]

    def col(self, p: int) -> int:
        return min(p, self.p_max)

    def cycles(self, p: int) -> Subspace:
        return self.Z[self.col(p)]

    def boundaries(self, p: int) -> Subspace:
        return self.B[self.col(p)]

    def dim(self, p: int, q: int) -> int:
        mask = self.F.component(q)
        c = self.col(p)
        return len(_homogeneous_part(self.Z[c], mask)) - len(_homogeneous_part(self.B[c], mask))

    def reps(self, p: int, q: int) -> list[int]:
        """Fiber parts of a basis of E_r^{p,q} (least pivots first)."""
        mask = self.F.component(q)
        c = self.col(p)
        return complement_reps(self.B[c], _homogeneous_part(self.Z[c], mask))

    def components(self) -> dict[tuple[int, int], list[int]]:
        out = {}
        for p in range(self.p_max + 1):
            for q in self.F.nonzero_degrees:
                reps = self.reps(p, q)
                if reps:
                    out[(p, q)] = reps
        return out

    def total_dims(self) -> list[int]:
        """Sum of dim E^{p,q} along p+q = k for the window columns."""
        top = self.p_max + self.F.top
        out = [0] * (top + 1)
        for p in range(self.p_max + 1):
            for q in self.F.nonzero_degrees:
                out[p + q] += self.dim(p, q)
        return out

    def alternating_sum(self) -> int:
        return sum((-1) ** k * d for k, d in enumerate(self.total_dims()))

    def class_coords(self, p: int, v: int) -> tuple[int, ...] | None:
        """Coordinates of ``[t^p v]`` over :meth:`reps`; ``None`` if not a cycle."""
        if v not in self.cycles(p):
            return None
        if not v:
            return ()
        q = self.F.degree_of(v)
        reps = self.reps(p, q)
        B = self.boundaries(p)
        for combo in range(1 << len(reps)):
            w = v
            for k, rep in enumerate(reps):
                if combo >> k & 1:
                    w ^= rep
            if not B.reduce(w):
                return tuple(combo >> k & 1 for k in range(len(reps)))
        raise AssertionError("cycle not expressible over representatives")

    def stable_from(self) -> int:
        """Least column from which Z and B are constant up to ``p_max``."""
        p = self.p_max
        while p > 0 and self.Z[p - 1] == self.Z[p] and self.B[p - 1] == self.B[p]:
            p -= 1
        return p

    def adapted_cycle_basis(self) -> list[tuple[int, int]]:
        """Pairs ``(e, j)``: a basis of Z[p_max] with ``j`` the first column
        in which ``e`` is a cycle, built column by column."""
        return _adapted(self.Z)

    def adapted_boundary_basis(self) -> list[tuple[int, int]]:
        return _adapted(self.B)


E2Page = Page


def _adapted(filtration: Sequence[Subspace]) -> list[tuple[int, int]]:
    out: list[tuple[int, int]] = []
    span = ZERO
    for p, S in enumerate(filtration):
        for v in complement_reps(span, S.basis):
            out.append((v, p))
            span = span.extend((v,))
    return out


def build_e2(F: FiberAlgebra, g: Involution, p_max: int | None = None) -> Page:
    """E_2 page truncated to columns ``0..p_max``."""
    bound = 2 * F.top + 4
    if p_max is None:
        p_max = bound
    if p_max < bound:
        raise ValueError(f"p_max={p_max} is below {bound}; stabilization cannot be certified")
    ker = preimage([1 << i for i in range(8)], [g.tau(1 << i) for i in range(8)], ZERO, 8)
    im = Subspace(8, tuple(g.tau(1 << i) for i in range(8)))
    Z = (ker,) * (p_max + 1)
    B = (ZERO,) + (im,) * p_max
    return Page(F, g, 2, p_max, Z, B)


# ---------------------------------------------------------------------------
# the space of admissible d_r on a page


@dataclass
class _Check:
    kind: str
    info: dict
    target: Subspace
    rhs: int = 0


class DerivationSpace:
    """All t-linear derivations of bidegree (r, 1-r) on a page.

    Unknowns are the coordinates of ``D(e)`` over coset representatives of
    ``Z[j+r] / B[j+r]`` in the target degree, for each adapted cycle
    basis vector ``(e, j)``.  Constraints, in order: prescribed values,
    Leibniz on pairs of basis vectors, and vanishing on boundaries.
    """

    def __init__(self, page: Page):
        self.page = page
        self.r = r = page.r
        F = page.F
        self.basis = page.adapted_cycle_basis()
        self.unknowns: list[tuple[int, int]] = []  # (basis index, value)
        for i, (e, j) in enumerate(self.basis):
            tq = F.degree_of(e) - r + 1
            if tq < 0 or not F.component(tq):
                continue
            mask = F.component(tq)
            col = page.col(j + r)
            for f in complement_reps(page.B[col], _homogeneous_part(page.Z[col], mask)):
                self.unknowns.append((i, f))
        self._unit_maps = [self._map_from_bits(1 << u) for u in range(len(self.unknowns))]
        self.checks: list[_Check] = []
        for (i, (x, jx)), (k, (y, jy)) in combinations(enumerate(self.basis), 2):
            self.checks.append(_Check("leibniz", {"x": (jx, x), "y": (jy, y)},
                                      page.boundaries(jx + jy + r)))
        for b, jb in page.adapted_boundary_basis():
            self.checks.append(_Check("well_defined", {"b": (jb, b)}, page.boundaries(jb + r)))
        # lowest degree first, so the reported contradiction is the most basic one
        self.checks.sort(key=lambda chk: (self._check_degree(chk), chk.kind != "leibniz"))

    def _check_degree(self, chk: _Check) -> int:
        F = self.page.F
        if chk.kind == "leibniz":
            return F.degree_of(chk.info["x"][1]) + F.degree_of(chk.info["y"][1])
        return F.degree_of(chk.info["b"][1])

    @property
    def n_unknowns(self) -> int:
        return len(self.unknowns)

    def _map_from_bits(self, c: int) -> Derivation:
        vals = [0] * len(self.basis)
        for u, (i, f) in enumerate(self.unknowns):
            if c >> u & 1:
                vals[i] ^= f
        return Derivation(self.r, linear_map([e for e, _ in self.basis], vals))

    def derivation(self, c: int) -> Derivation:
        imgs = [0] * 8
        for u in range(self.n_unknowns):
            if c >> u & 1:
                for k in range(8):
                    imgs[k] ^= self._unit_maps[u].images[k]
        return Derivation(self.r, tuple(imgs))

    def _residue(self, chk: _Check, D: Derivation) -> int:
        if chk.kind == "leibniz":
            (_, x), (_, y) = chk.info["x"], chk.info["y"]
            v = D(multiply(x, y)) ^ multiply(D(x), y) ^ multiply(x, D(y))
        elif chk.kind == "well_defined":
            v = D(chk.info["b"][1])
        else:
            v = D(chk.info["source"][1])
        return chk.target.reduce(v)

    def assignment_checks(self, entries: Iterable[tuple[int, int, int]]) -> list[_Check]:
        """Checks for prescribed values ``(p, source, target)`` meaning
        ``d_r[t^p source] = [t^(p+r) target]``."""
        out = []
        for p, s, tgt in entries:
            out.append(_Check("assignment", {"source": (p, s), "target": (p + self.r, tgt)},
                              self.page.boundaries(p + self.r),
                              self.page.boundaries(p + self.r).reduce(tgt)))
        return out

    def solve(self, entries: Iterable[tuple[int, int, int]] = (), limit: int = 1 << 16):
        """All solutions ``c`` (as bit masks over unknowns), ordered by
        (popcount, value).  Raises :class:`LeibnizError` if inconsistent."""
        page = self.page
        checks = []
        for p, s, tgt in entries:
            if s not in page.cycles(p):
                raise LeibnizError(
                    f"d_{self.r} assigned on t^{p}*{format_element(s)}, which is not a class on this page",
                    {"kind": "dead_source", "page": self.r, "source": [p, format_element(s)]})
            if tgt not in page.cycles(p + self.r):
                raise LeibnizError(
                    f"target t^{p + self.r}*{format_element(tgt)} is not a class on page {self.r}",
                    {"kind": "dead_target", "page": self.r, "target": [p + self.r, format_element(tgt)]})
        checks = self.assignment_checks(entries) + self.checks
        U = self.n_unknowns
        rows: list[int] = []  # coefficient bits 0..U-1, rhs at bit U
        for chk in checks:
            sig = [self._residue(chk, self._unit_maps[u]) for u in range(U)]
            for bit in range(8):
                row = sum(1 << u for u in range(U) if sig[u] >> bit & 1)
                row |= (chk.rhs >> bit & 1) << U
                for r0 in rows:
                    if row >> pivot(r0) & 1:
                        row ^= r0
                if not row:
                    continue
                if row == 1 << U:
                    raise LeibnizError(self._describe(chk), self._witness(chk, rows, U))
                pv = pivot(row)
                rows = [r0 ^ row if r0 >> pv & 1 else r0 for r0 in rows]
                rows.append(row)
        pivots = {pivot(r0): r0 for r0 in rows}
        free = [u for u in range(U) if u not in pivots]
        if len(free) > 24 or (1 << len(free)) > limit * 64:
            raise EngineError(f"solution space too large ({len(free)} free bits)")
        sols = []
        for bits in range(1 << len(free)):
            c = 0
            for k, u in enumerate(free):
                if bits >> k & 1:
                    c |= 1 << u
            for pv, r0 in pivots.items():
                val = (r0 >> U & 1) ^ ((r0 & c & ~(1 << pv)).bit_count() & 1)
                if val:
                    c |= 1 << pv
            sols.append(c)
        sols.sort(key=lambda c: (c.bit_count(), c))
        return sols

    def _particular(self, rows: list[int], U: int) -> Derivation:
        c = 0
        for r0 in rows:
            if r0 >> U & 1:
                c |= 1 << pivot(r0)
        return self.derivation(c)

    def _describe(self, chk: _Check) -> str:
        if chk.kind == "leibniz":
            (jx, x), (jy, y) = chk.info["x"], chk.info["y"]
            return (f"Leibniz rule fails on the product t^{jx}*{format_element(x)} . "
                    f"t^{jy}*{format_element(y)} at page {self.r}")
        if chk.kind == "well_defined":
            jb, b = chk.info["b"]
            return (f"d_{self.r} of the boundary t^{jb}*{format_element(b)} is forced "
                    f"to be nonzero")
        p, s = chk.info["source"]
        return f"prescribed d_{self.r}(t^{p}*{format_element(s)}) is not compatible with earlier values"

    def _witness(self, chk: _Check, rows: list[int], U: int) -> dict:
        D = self._particular(rows, U)
        r = self.r
        w: dict = {"kind": chk.kind, "page": r}
        if chk.kind == "leibniz":
            (jx, x), (jy, y) = chk.info["x"], chk.info["y"]
            w["product"] = [[jx, format_element(x)], [jy, format_element(y)]]
            v = chk.target.reduce(D(multiply(x, y)) ^ multiply(D(x), y) ^ multiply(x, D(y)))
            w["class"] = [jx + jy + r, format_element(v)]
        elif chk.kind == "well_defined":
            jb, b = chk.info["b"]
            v = chk.target.reduce(D(b))
            w["source"] = [jb, format_element(b)]
            w["image"] = [jb + r, format_element(v)]
            # d_r(t^(jb-1) b) is nonzero but t times it must vanish
            w["class"] = [jb + r - 1, format_element(v)]
        else:
            p, s = chk.info["source"]
            w["source"] = [p, format_element(s)]
            w["target"] = [p + r, format_element(chk.info["target"][1])]
            w["forced"] = [p + r, format_element(chk.target.reduce(D(s)))]
            w["class"] = w["forced"]
        return w


def d_squared_witness(page: Page, D: Derivation) -> dict | None:
    for e, j in page.adapted_cycle_basis():
        v = page.boundaries(j + 2 * D.r).reduce(D(D(e)))
        if v:
            return {"kind": "d_squared", "page": D.r, "source": [j, format_element(e)],
                    "class": [j + 2 * D.r, format_element(v)]}
    return None


# ---------------------------------------------------------------------------
# turning pages


def turn_page(P: Page, D: Derivation) -> Page:
    """E_{r+1} from E_r and d_r; raises :class:`DSquaredError` if d_r^2 != 0."""
    if D.r != P.r:
        raise ValueError(f"differential is d_{D.r} but page is E_{P.r}")
    w = d_squared_witness(P, D)
    if w:
        raise DSquaredError(f"d_{D.r} squares to a nonzero map", w)
    r = P.r
    Z, B = [], []
    for p in range(P.p_max + 1):
        Zp = P.Z[p]
        Z.append(preimage(Zp.basis, [D(v) for v in Zp.basis], P.boundaries(p + r), 8))
        if p >= r:
            src = P.Z[p - r]
            B.append(P.B[p].extend(D(v) for v in src.basis))
        else:
            B.append(P.B[p])
    return Page(P.F, P.g, r + 1, P.p_max, tuple(Z), tuple(B))


def differential_matrix(P: Page, D: Derivation, p: int, q: int):
    """Matrix of d_r : E_r^{p,q} -> E_r^{p+r,q-r+1} over :meth:`Page.reps`."""
    from .gf2 import BitMatrix
    src = P.reps(p, q)
    tq = q - D.r + 1
    tgt = P.reps(p + D.r, tq) if tq >= 0 else []
    cols = []
    for v in src:
        coords = P.class_coords(p + D.r, D(v)) if tgt else ()
        if coords is None:
            raise AssertionError("d_r does not land in cycles")
        cols.append(sum(bit << k for k, bit in enumerate(coords)))
    return BitMatrix.from_columns(cols, len(tgt))


def differential_ranks(P: Page, nxt: Page) -> dict[tuple[int, int], int]:
    """Rank of d_r out of each (p, q), read off the next page's filtrations."""
    out = {}
    for p in range(P.p_max + 1):
        for q in P.F.nonzero_degrees:
            mask = P.F.component(q)
            k = len(_homogeneous_part(P.Z[p], mask)) - len(_homogeneous_part(nxt.Z[p], mask))
            if k:
                out[(p, q)] = k
    return out


# ---------------------------------------------------------------------------
# assignments and full runs


@dataclass(frozen=True)
class Assignment:
    """``d_r[t^p source] = [t^(p+r) target]``."""

    r: int
    source: int
    target: int
    p: int = 0

    def descriptor(self) -> str:
        src = format_element(self.source)
        if self.p:
            src = f"t^{self.p}*{src}"
        return f"d{self.r}({src})=t^{self.p + self.r}*{format_element(self.target)}"


DifferentialAssignment = list  # list[Assignment]

_ENTRY = re.compile(r"^d(\d+)\((?:t\^(\d+)\*)?([^)]+)\)=(?:t\^(\d+)\*)?(.+)$")


def parse_assignment(text: str) -> list[Assignment]:
    """Parse ``"d2(a)=t^2*1;d3(ab)=t^3*c"``."""
    out = []
    for part in re.split(r"[;\s]+", text.strip()):
        if not part:
            continue
        mt = _ENTRY.match(part)
        if not mt:
            raise ValueError(f"cannot parse differential {part!r}")
        r, p, src, texp, tgt = mt.groups()
        r, p = int(r), int(p or 0)
        if texp is not None and int(texp) != p + r:
            raise ValueError(f"{part!r}: target column must be {p + r}")
        out.append(Assignment(r, parse_element(src), parse_element(tgt), p))
    return out


def format_assignment(A: Iterable[Assignment]) -> str:
    return ";".join(a.descriptor() for a in A)


@dataclass
class PageRecord:
    r: int
    derivation: Derivation
    entries: list[Assignment]
    ranks: dict[tuple[int, int], int]


@dataclass
class EInfinity:
    page: Page
    records: list[PageRecord] = field(default_factory=list)

    @property
    def F(self) -> FiberAlgebra:
        return self.page.F

    @property
    def stabilization_page(self) -> int:
        live = [rec.r for rec in self.records if rec.ranks]
        return (max(live) + 1) if live else 2

    def assignments(self) -> list[Assignment]:
        return [a for rec in self.records for a in rec.entries]

    def dim(self, p: int, q: int) -> int:
        return self.page.dim(p, q)

    def support(self) -> dict[int, list[int]]:
        """Row q -> columns p with E_inf^{p,q} != 0 (window only)."""
        out = {}
        for q in self.F.nonzero_degrees:
            cols = [p for p in range(self.page.p_max + 1) if self.page.dim(p, q)]
            if cols:
                out[q] = cols
        return out


def record_entries(P: Page, D: Derivation) -> list[Assignment]:
    """Nonzero values of ``D`` on the adapted cycle basis."""
    out = []
    for e, j in P.adapted_cycle_basis():
        v = P.boundaries(j + D.r).reduce(D(e))
        if v:
            out.append(Assignment(D.r, e, v, j))
    return out


def last_page(F: FiberAlgebra) -> int:
    return F.top + 1


def choose_derivation(P: Page, entries: Sequence[Assignment]) -> Derivation:
    """First derivation (zeros first) meeting ``entries`` with d_r^2 = 0."""
    space = DerivationSpace(P)
    sols = space.solve([(a.p, a.source, a.target) for a in entries])
    first_bad = None
    for c in sols:
        D = space.derivation(c)
        w = d_squared_witness(P, D)
        if w is None:
            return D
        first_bad = first_bad or w
    raise DSquaredError(f"every d_{P.r} meeting the prescription has nonzero square", first_bad)


def check_stabilized(P: Page) -> None:
    width = P.F.top + 1
    if P.stable_from() > P.p_max - width:
        raise NotStabilizedError(
            f"filtrations still change at column {P.stable_from()} (window {P.p_max})",
            {"kind": "not_stabilized", "column": P.stable_from(), "p_max": P.p_max})


def run(A: Sequence[Assignment], E2: Page, certify: bool = True) -> EInfinity:
    """Run pages 2 .. n+m+l+1 with the prescribed values; other free
    choices default to zero."""
    rs = [a.r for a in A]
    if rs != sorted(rs):
        raise ValueError("assignment pages must be ascending")
    final = last_page(E2.F)
    for a in A:
        if not 2 <= a.r <= final:
            raise ValueError(f"page {a.r} outside 2..{final}")
    P = E2
    records = []
    for r in range(2, final + 1):
        D = choose_derivation(P, [a for a in A if a.r == r])
        nxt = turn_page(P, D)
        records.append(PageRecord(r, D, record_entries(P, D), differential_ranks(P, nxt)))
        P = nxt
    if certify:
        check_stabilized(P)
    return EInfinity(P, records)


def leibniz_extend(A: Sequence[Assignment], P: Page) -> dict[tuple[int, int], "object"]:
    """The full d_r on every component, as matrices over :meth:`Page.reps`."""
    D = choose_derivation(P, [a for a in A if a.r == P.r])
    out = {}
    for p in range(P.p_max + 1):
        for q in P.F.nonzero_degrees:
            if P.dim(p, q):
                out[(p, q)] = differential_matrix(P, D, p, q)
    return out


def monomial_label(i: int) -> str:
    return MONOMIAL_NAMES[i]
