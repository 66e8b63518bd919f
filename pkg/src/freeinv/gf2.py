"""Bit-packed linear algebra over GF(2).

Vectors are Python ints: bit ``i`` holds coordinate ``i``.  Coordinate 0 is
the leading one, so a reduced row-echelon basis has each row's pivot at its
lowest set bit, and rows are kept sorted by pivot.  That canonical form makes
equal subspaces compare equal.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence


def pivot(v: int) -> int:
    """Index of the lowest set bit (``-1`` for the zero vector)."""
    return (v & -v).bit_length() - 1


def to_bits(v: int, dim: int) -> tuple[int, ...]:
    return tuple((v >> i) & 1 for i in range(dim))


def from_bits(bits: Iterable[int]) -> int:
    v = 0
    for i, b in enumerate(bits):
        if b & 1:
            v |= 1 << i
    return v


def _rref(vectors: Iterable[int]) -> tuple[int, ...]:
    rows: list[int] = []
    for v in vectors:
        for r in rows:
            if v >> pivot(r) & 1:
                v ^= r
        if not v:
            continue
        p = pivot(v)
        rows = [r ^ v if r >> p & 1 else r for r in rows]
        rows.append(v)
    rows.sort(key=pivot)
    return tuple(rows)


@dataclass(frozen=True)
class BitMatrix:
    """Dense GF(2) matrix stored as packed rows."""

    rows: int
    cols: int
    bits: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix shape")
        bits = tuple(self.bits) if self.bits else (0,) * self.rows
        if len(bits) != self.rows:
            raise ValueError(f"expected {self.rows} packed rows, got {len(bits)}")
        mask = (1 << self.cols) - 1
        if any(r & ~mask for r in bits):
            raise ValueError("row has bits beyond the column count")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "BitMatrix":
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, tuple(from_bits(r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def from_columns(cls, columns: Sequence[int], rows: int) -> "BitMatrix":
        """Matrix whose ``j``-th column is the packed vector ``columns[j]``."""
        out = [0] * rows
        for j, c in enumerate(columns):
            for i in range(rows):
                if c >> i & 1:
                    out[i] |= 1 << j
        return cls(rows, len(columns), tuple(out))

    def entry(self, i: int, j: int) -> int:
        return self.bits[i] >> j & 1

    def to_lists(self) -> list[list[int]]:
        return [list(to_bits(r, self.cols)) for r in self.bits]

    def transpose(self) -> "BitMatrix":
        out = [0] * self.cols
        for i, r in enumerate(self.bits):
            while r:
                j = pivot(r)
                out[j] |= 1 << i
                r &= r - 1
        return BitMatrix(self.cols, self.rows, tuple(out))

    def apply(self, v: int) -> int:
        """Matrix-vector product ``M v``."""
        out = 0
        for i, r in enumerate(self.bits):
            if (r & v).bit_count() & 1:
                out |= 1 << i
        return out

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        out = []
        for r in self.bits:
            acc = 0
            while r:
                k = pivot(r)
                acc ^= other.bits[k]
                r &= r - 1
            out.append(acc)
        return BitMatrix(self.rows, other.cols, tuple(out))

    def is_zero(self) -> bool:
        return not any(self.bits)


@dataclass(frozen=True)
class Subspace:
    """Subspace of GF(2)^ambient_dim held in canonical reduced row-echelon form."""

    ambient_dim: int
    basis: tuple[int, ...] = ()

    def __post_init__(self):
        mask = (1 << self.ambient_dim) - 1
        if any(v & ~mask for v in self.basis):
            raise ValueError("basis vector outside the ambient space")
        object.__setattr__(self, "basis", _rref(self.basis))

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[int]) -> "Subspace":
        return cls(ambient_dim, tuple(vectors))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, tuple(1 << i for i in range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, v: int) -> int:
        """Canonical residue of ``v`` modulo this subspace."""
        for r in self.basis:
            if v >> pivot(r) & 1:
                v ^= r
        return v

    def __contains__(self, v: int) -> bool:
        return self.reduce(v) == 0

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(v in self for v in other.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.ambient_dim, self.basis + other.basis)

    def extend(self, vectors: Iterable[int]) -> "Subspace":
        return Subspace(self.ambient_dim, self.basis + tuple(vectors))

    def intersect(self, other: "Subspace") -> "Subspace":
        # Zassenhaus: rows (u, u) for u in self and (w, 0) for w in other
        n = self.ambient_dim
        rows = [u | (u << n) for u in self.basis] + list(other.basis)
        reduced = _rref(rows)
        return Subspace(n, tuple(r >> n for r in reduced if r and pivot(r) >= n))

    def vectors(self) -> list[int]:
        """Every element of the subspace, zero first."""
        out = [0]
        for b in self.basis:
            out += [v ^ b for v in out]
        return out


@dataclass(frozen=True)
class SubQuotient:
    cycles: Subspace
    boundaries: Subspace = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.boundaries is None:
            object.__setattr__(self, "boundaries", Subspace.zero(self.cycles.ambient_dim))
        if not self.cycles.contains_subspace(self.boundaries):
            raise ValueError("boundaries are not contained in cycles")

    @property
    def dim(self) -> int:
        return self.cycles.dim - self.boundaries.dim


def rank(m: BitMatrix) -> int:
    return len(_rref(m.bits))


def kernel_basis(m: BitMatrix) -> Subspace:
    """Canonical basis of ``{v : M v = 0}``."""
    # eliminate on columns of M tagged with the unit vector they came from
    cols = m.transpose().bits
    tagged = [c | (1 << (m.rows + j)) for j, c in enumerate(cols)]
    reduced = _rref(tagged)
    kernel = [r >> m.rows for r in reduced if pivot(r) >= m.rows]
    return Subspace(m.cols, tuple(kernel))


def image_basis(m: BitMatrix) -> Subspace:
    """Canonical basis of the column space of ``M``."""
    return Subspace(m.rows, m.transpose().bits)


def subquotient_reps(sq: SubQuotient) -> list[int]:
    """Cycle representatives whose classes form a basis of cycles/boundaries.

    Candidates are scanned in canonical basis order, so representatives are
    the earliest (lexicographically least pivot) cycles independent of the
    boundaries.
    """
    if not sq.cycles.contains_subspace(sq.boundaries):
        raise ValueError("boundaries are not contained in cycles")
    return complement_reps(sq.boundaries, sq.cycles.basis)


def complement_reps(base: Subspace, candidates: Iterable[int]) -> list[int]:
    """Greedy choice of candidates independent modulo ``base``."""
    acc = list(base.basis)
    reduced_acc = Subspace(base.ambient_dim, tuple(acc))
    reps = []
    for v in candidates:
        if reduced_acc.reduce(v):
            reps.append(v)
            reduced_acc = reduced_acc.extend((v,))
    return reps


def membership(s: Subspace, v: int, dim: int | None = None) -> tuple[int, ...] | None:
    """Coordinates of ``v`` over the canonical basis of ``s``, or ``None``.

    ``dim`` is the declared length of ``v``; a mismatch with the ambient
    dimension raises ``ValueError``.
    """
    if dim is not None and dim != s.ambient_dim:
        raise ValueError(f"vector length {dim} != ambient dimension {s.ambient_dim}")
    if v >> s.ambient_dim:
        raise ValueError("vector has bits beyond the ambient dimension")
    coords = []
    for r in s.basis:
        if v >> pivot(r) & 1:
            v ^= r
            coords.append(1)
        else:
            coords.append(0)
    if v:
        return None
    return tuple(coords)


def preimage(domain_basis: Sequence[int], images: Sequence[int], target: Subspace,
             ambient_dim: int) -> Subspace:
    """``{x in span(domain_basis) : f(x) in target}`` for the linear map sending
    ``domain_basis[i]`` to ``images[i]``."""
    k = len(domain_basis)
    if k == 0:
        return Subspace.zero(ambient_dim)
    width = target.ambient_dim
    # residue in the low bits, combination tag above
    tagged = [target.reduce(img) | (1 << (width + i)) for i, img in enumerate(images)]
    reduced = _rref(tagged)
    combos = [r >> width for r in reduced if pivot(r) >= width]
    out = []
    for c in combos:
        v = 0
        for i in range(k):
            if c >> i & 1:
                v ^= domain_basis[i]
        out.append(v)
    return Subspace(ambient_dim, tuple(out))


def coset_reps(big: Subspace, small: Subspace) -> list[int]:
    """All canonical representatives of big/small (small must lie in big)."""
    reps = complement_reps(small, big.basis)
    out = [0]
    for r in reps:
        out += [small.reduce(v ^ r) for v in out]
    return out
