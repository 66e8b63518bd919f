"""The fiber algebra Z2[a,b,c]/(a^2,b^2,c^2) and its involutive automorphisms.

Elements are 8-bit ints over the monomial basis, in the fixed order
``1, a, b, c, ab, ac, bc, abc`` (coordinate ``i`` is bit ``i``).  Each monomial
also has a generator mask (a=1, b=2, c=4) used for multiplication.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

MONOMIAL_NAMES = ("1", "a", "b", "c", "ab", "ac", "bc", "abc")
# generator mask of each coordinate, and its inverse
MASKS = (0, 1, 2, 4, 3, 5, 6, 7)
INDEX_OF_MASK = {m: i for i, m in enumerate(MASKS)}

ONE, A, B, C = 1 << 0, 1 << 1, 1 << 2, 1 << 3
AB, AC, BC, ABC = 1 << 4, 1 << 5, 1 << 6, 1 << 7
GENERATORS = (A, B, C)


@dataclass(frozen=True, order=True)
class SphereTriple:
    n: int
    m: int
    l: int

    def __post_init__(self):
        for name, v in (("n", self.n), ("m", self.m), ("l", self.l)):
            if not isinstance(v, int) or isinstance(v, bool):
                raise TypeError(f"{name} must be an int")
            if v < 1:
                raise ValueError(f"{name} must be positive, got {v}")
        if not (self.n <= self.m <= self.l):
            raise ValueError(f"need n <= m <= l, got ({self.n}, {self.m}, {self.l})")

    @property
    def top(self) -> int:
        return self.n + self.m + self.l

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.n, self.m, self.l)


def _mono_product(i: int, j: int) -> int | None:
    mi, mj = MASKS[i], MASKS[j]
    if mi & mj:
        return None
    return INDEX_OF_MASK[mi | mj]


def multiply(x: int, y: int) -> int:
    """Product of two algebra elements (packed over the monomial basis)."""
    out = 0
    xi = x
    while xi:
        i = (xi & -xi).bit_length() - 1
        xi &= xi - 1
        yj = y
        while yj:
            j = (yj & -yj).bit_length() - 1
            yj &= yj - 1
            k = _mono_product(i, j)
            if k is not None:
                out ^= 1 << k
    return out


def format_element(x: int) -> str:
    if not x:
        return "0"
    return "+".join(MONOMIAL_NAMES[i] for i in range(8) if x >> i & 1)


def parse_element(text: str) -> int:
    """Inverse of :func:`format_element`; accepts ``a+b``, ``ab + c``, ``0``, ``1``."""
    text = text.replace(" ", "")
    if text in ("", "0"):
        return 0
    out = 0
    for term in text.split("+"):
        name = "".join(sorted(term)) if term != "1" else "1"
        if name not in MONOMIAL_NAMES:
            raise ValueError(f"unknown monomial {term!r}")
        out ^= 1 << MONOMIAL_NAMES.index(name)
    return out


@dataclass(frozen=True)
class FiberAlgebra:
    triple: SphereTriple

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        n, m, l = self.triple.as_tuple()
        gen = (n, m, l)
        return tuple(sum(gen[k] for k in range(3) if mask >> k & 1) for mask in MASKS)

    @property
    def top(self) -> int:
        return self.triple.top

    def component(self, q: int) -> int:
        """Bitmask of the monomials of degree ``q``."""
        return sum(1 << i for i, d in enumerate(self.degrees) if d == q)

    def component_basis(self, q: int) -> list[int]:
        return [1 << i for i, d in enumerate(self.degrees) if d == q]

    def dim(self, q: int) -> int:
        return self.component(q).bit_count()

    @cached_property
    def nonzero_degrees(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.degrees)))

    def degree_of(self, x: int) -> int:
        """Degree of a nonzero homogeneous element."""
        if not x:
            raise ValueError("zero has no degree")
        degs = {self.degrees[i] for i in range(8) if x >> i & 1}
        if len(degs) != 1:
            raise ValueError(f"{format_element(x)} is not homogeneous")
        return degs.pop()

    def homogeneous(self, q: int) -> list[int]:
        """All elements of degree ``q`` (zero first)."""
        out = [0]
        for b in self.component_basis(q):
            out += [v ^ b for v in out]
        return out

    def poincare(self) -> list[int]:
        coeffs = [0] * (self.top + 1)
        for d in self.degrees:
            coeffs[d] += 1
        return coeffs

    multiply = staticmethod(multiply)


def build_fiber_algebra(t: SphereTriple | tuple[int, int, int]) -> FiberAlgebra:
    if not isinstance(t, SphereTriple):
        t = SphereTriple(*t)
    return FiberAlgebra(t)


@dataclass(frozen=True)
class Involution:
    """An algebra map given by the images of a, b, c."""

    images: tuple[int, int, int]

    @cached_property
    def monomial_images(self) -> tuple[int, ...]:
        out = []
        for mask in MASKS:
            v = ONE
            for k in range(3):
                if mask >> k & 1:
                    v = multiply(v, self.images[k])
            out.append(v)
        return tuple(out)

    def apply(self, x: int) -> int:
        out = 0
        imgs = self.monomial_images
        for i in range(8):
            if x >> i & 1:
                out ^= imgs[i]
        return out

    def tau(self, x: int) -> int:
        """``(1 + g*)(x)``."""
        return x ^ self.apply(x)

    @property
    def is_identity(self) -> bool:
        return self.images == GENERATORS

    def descriptor(self) -> dict[str, str]:
        return {g: format_element(v) for g, v in zip("abc", self.images)}

    @classmethod
    def identity(cls) -> "Involution":
        return cls(GENERATORS)

    @classmethod
    def from_descriptor(cls, desc: dict[str, str] | str) -> "Involution":
        """From ``{"a": "a", "b": "c", "c": "b"}`` or ``"a=a,b=c,c=b"``."""
        if isinstance(desc, str):
            pairs = [p.split("=", 1) for p in desc.replace(";", ",").split(",") if p.strip()]
            desc = {k.strip(): v.strip() for k, v in pairs}
        unknown = set(desc) - set("abc")
        if unknown:
            raise ValueError(f"unknown generators {sorted(unknown)}")
        return cls(tuple(parse_element(desc.get(g, g)) for g in "abc"))


def validate_involution(F: FiberAlgebra, g: Involution) -> None:
    for k, img in enumerate(g.images):
        gen = GENERATORS[k]
        if F.degree_of(gen) != (F.degree_of(img) if img else None):
            raise ValueError(f"image of {'abc'[k]} is not homogeneous of degree {F.degree_of(gen)}")
    for i in range(8):
        if g.apply(g.apply(1 << i)) != 1 << i:
            raise ValueError(f"g*g is not the identity on {MONOMIAL_NAMES[i]}")


def enumerate_involutions(F: FiberAlgebra) -> list[Involution]:
    """Every degree-preserving algebra involution, identity first."""
    choices = [F.homogeneous(F.degrees[INDEX_OF_MASK[1 << k]]) for k in range(3)]
    out = []
    for imgs in product(*choices):
        if 0 in imgs:
            continue
        g = Involution(tuple(imgs))
        if all(g.apply(g.apply(1 << i)) == 1 << i for i in range(8)):
            out.append(g)
    out.sort(key=lambda g: (not g.is_identity, g.images))
    return out


def fixes_a_generator(g: Involution) -> bool:
    """True when g* fixes at least one of a, b, c."""
    return any(img == gen for img, gen in zip(g.images, GENERATORS))


def fixed_point_obstruction(F: FiberAlgebra, g: Involution) -> bool:
    """True when some alpha of half the top degree has alpha * g(alpha) != 0."""
    if F.top % 2:
        return False
    return any(multiply(x, g.apply(x)) for x in F.homogeneous(F.top // 2))


def permanent_classes(F: FiberAlgebra, g: Involution) -> frozenset[int]:
    out = set()
    for q in F.nonzero_degrees:
        for x in F.homogeneous(q):
            out.add(multiply(x, g.apply(x)))
    return frozenset(out)
