"""Cellular chain complexes over GF(2), used as an independent check.

For the action that is antipodal on one sphere factor and trivial on the
others, the orbit space is literally RP^k times the other two spheres, so
its mod-2 cohomology comes straight from cellular chains, no spectral
sequence involved.
"""
from __future__ import annotations

from dataclasses import dataclass

from .fiber import SphereTriple
from .gf2 import BitMatrix, rank
from .results import PoincarePolynomial


@dataclass(frozen=True)
class ChainComplex:
    """``boundaries[k]`` is the matrix of d: C_{k+1} -> C_k."""

    cells: tuple[int, ...]
    boundaries: tuple[BitMatrix, ...]

    def __post_init__(self):
        if len(self.boundaries) != max(len(self.cells) - 1, 0):
            raise ValueError("need one boundary matrix between consecutive degrees")
        for k, d in enumerate(self.boundaries):
            if (d.rows, d.cols) != (self.cells[k], self.cells[k + 1]):
                raise ValueError(f"boundary {k + 1}->{k} has shape {d.rows}x{d.cols}")
        for k in range(len(self.boundaries) - 1):
            if not (self.boundaries[k] @ self.boundaries[k + 1]).is_zero():
                raise ValueError(f"d o d != 0 in degree {k + 2}")

    @property
    def top(self) -> int:
        return len(self.cells) - 1

    def betti(self) -> list[int]:
        """Mod-2 (co)homology dimensions; equal over a field."""
        ranks = [rank(d) for d in self.boundaries] + [0]
        out = []
        for k, c in enumerate(self.cells):
            incoming = ranks[k]                 # rank of d: C_{k+1} -> C_k
            outgoing = ranks[k - 1] if k else 0  # rank of d: C_k -> C_{k-1}
            out.append(c - outgoing - incoming)
        return out

    def boundary_squares_vanish(self) -> bool:
        return all((self.boundaries[k] @ self.boundaries[k + 1]).is_zero()
                   for k in range(len(self.boundaries) - 1))


def point_complex() -> ChainComplex:
    return ChainComplex((1,), ())


def sphere_complex(k: int) -> ChainComplex:
    if k < 1:
        raise ValueError("sphere dimension must be positive")
    cells = (1,) + (0,) * (k - 1) + (1,)
    return ChainComplex(cells, tuple(BitMatrix.zeros(cells[i], cells[i + 1]) for i in range(k)))


def projective_complex(k: int) -> ChainComplex:
    """One cell per degree; boundaries are 0 or 2, hence zero mod 2."""
    if k < 1:
        raise ValueError("projective dimension must be positive")
    return ChainComplex((1,) * (k + 1), tuple(BitMatrix.zeros(1, 1) for _ in range(k)))


def tensor(A: ChainComplex, B: ChainComplex) -> ChainComplex:
    """Cellular chains of the product: d(a x b) = da x b + a x db."""
    top = A.top + B.top
    # basis of (A x B)_k: pairs (i, s, j, u) with i + j = k, s < A_i, u < B_j
    index: list[dict[tuple[int, int, int, int], int]] = []
    for k in range(top + 1):
        idx = {}
        for i in range(max(0, k - B.top), min(k, A.top) + 1):
            j = k - i
            for s in range(A.cells[i]):
                for u in range(B.cells[j]):
                    idx[(i, s, j, u)] = len(idx)
        index.append(idx)
    mats = []
    for k in range(top):
        rows = [0] * len(index[k])
        for (i, s, j, u), col in index[k + 1].items():
            if i > 0:
                dA = A.boundaries[i - 1]
                for s2 in range(A.cells[i - 1]):
                    if dA.entry(s2, s):
                        rows[index[k][(i - 1, s2, j, u)]] ^= 1 << col
            if j > 0:
                dB = B.boundaries[j - 1]
                for u2 in range(B.cells[j - 1]):
                    if dB.entry(u2, u):
                        rows[index[k][(i, s, j - 1, u2)]] ^= 1 << col
        mats.append(BitMatrix(len(index[k]), len(index[k + 1]), tuple(rows)))
    return ChainComplex(tuple(len(ix) for ix in index), tuple(mats))


def quotient_complex(t: SphereTriple, antipodal_factor: int) -> ChainComplex:
    if antipodal_factor not in (1, 2, 3):
        raise ValueError("antipodal factor must be 1, 2 or 3")
    dims = t.as_tuple()
    out = point_complex()
    for i, d in enumerate(dims, start=1):
        out = tensor(out, projective_complex(d) if i == antipodal_factor else sphere_complex(d))
    return out


def quotient_poincare(t: SphereTriple, antipodal_factor: int) -> PoincarePolynomial:
    return PoincarePolynomial(tuple(quotient_complex(t, antipodal_factor).betti()))


# engine patterns realizing the three product actions
ORACLE_PATTERNS = {1: "d{n1}(a)=t^{n1}*1", 2: "d{m1}(b)=t^{m1}*1", 3: "d{l1}(c)=t^{l1}*1"}


def oracle_pattern(t: SphereTriple, antipodal_factor: int) -> str:
    if antipodal_factor not in ORACLE_PATTERNS:
        raise ValueError("antipodal factor must be 1, 2 or 3")
    return ORACLE_PATTERNS[antipodal_factor].format(n1=t.n + 1, m1=t.m + 1, l1=t.l + 1)


def compare_with_engine(t: SphereTriple, antipodal_factor: int) -> dict:
    """Oracle Poincare polynomial against the engine's for the matching pattern."""
    from .fiber import Involution, build_fiber_algebra
    from .patterns import DifferentialPattern, check_admissible
    from .results import poincare

    want = quotient_poincare(t, antipodal_factor)
    pat = DifferentialPattern.parse(oracle_pattern(t, antipodal_factor))
    verdict, E = check_admissible(pat, build_fiber_algebra(t), Involution.identity())
    got = poincare(E) if E is not None else None
    return {"triple": list(t.as_tuple()), "factor": antipodal_factor,
            "pattern": pat.descriptor(), "verdict": verdict.status,
            "oracle": want.as_list(), "engine": got.as_list() if got else None,
            "match": got == want}
