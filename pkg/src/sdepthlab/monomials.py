"""Squarefree monomials and squarefree monomial ideals.

A squarefree monomial in x_1..x_n is identified with its support, stored as a
bitmask (bit i-1 set  <=>  x_i divides the monomial).  Divisibility is mask
inclusion, lcm is union, gcd is intersection.  Ideals keep their minimal
generators as a divisibility antichain in canonical order: by degree, then
lexicographically on the sorted index tuple.  Variables are 1-indexed.
"""
from __future__ import annotations

from typing import Iterable, Iterator

MAX_AMBIENT = 16
SUPPORTED_CHARS = (0, 2, 3, 32003)


class InputError(ValueError):
    """Structurally invalid algebraic input."""


class AmbientMismatchError(InputError):
    """Objects over different ambient variable counts were mixed."""


class EmptyQuotientError(InputError):
    """A quotient I/J with J = I (the zero module) was requested."""


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << (i - 1)
    return m


def indices_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


class Monomial:
    """A squarefree monomial; ``Monomial(0)`` is the unit monomial 1."""

    __slots__ = ("mask",)

    def __init__(self, mask: int = 0):
        if mask < 0:
            raise InputError("negative support mask")
        self.mask = mask

    @classmethod
    def of(cls, *indices: int) -> "Monomial":
        for i in indices:
            if i < 1:
                raise InputError(f"variable index {i} out of range")
        return cls(mask_of(indices))

    @property
    def vars(self) -> tuple[int, ...]:
        return indices_of(self.mask)

    @property
    def degree(self) -> int:
        return self.mask.bit_count()

    def divides(self, other: "Monomial") -> bool:
        return self.mask & ~other.mask == 0

    def lcm(self, other: "Monomial") -> "Monomial":
        return Monomial(self.mask | other.mask)

    def gcd(self, other: "Monomial") -> "Monomial":
        return Monomial(self.mask & other.mask)

    def times_var(self, j: int) -> "Monomial":
        return Monomial(self.mask | (1 << (j - 1)))

    def without_var(self, j: int) -> "Monomial":
        return Monomial(self.mask & ~(1 << (j - 1)))

    def sort_key(self) -> tuple:
        return (self.degree, self.vars)

    def max_index(self) -> int:
        return self.mask.bit_length()

    def __eq__(self, other) -> bool:
        return isinstance(other, Monomial) and self.mask == other.mask

    def __hash__(self) -> int:
        return hash(self.mask)

    def __lt__(self, other: "Monomial") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        if self.mask == 0:
            return "1"
        return "*".join(f"x{i}" for i in self.vars)

    def __repr__(self) -> str:
        return f"Monomial({self})"


def parse_monomial(text: str) -> Monomial:
    """Parse ``x2*x5`` / ``1`` syntax; whitespace around ``*`` is allowed."""
    text = text.strip()
    if text == "1":
        return Monomial(0)
    mask = 0
    for factor in text.split("*"):
        factor = factor.strip()
        if not factor.startswith("x"):
            raise InputError(f"bad monomial factor {factor!r}")
        try:
            i = int(factor[1:])
        except ValueError:
            raise InputError(f"bad variable index in {factor!r}") from None
        if i < 1:
            raise InputError(f"variable index {i} out of range")
        mask |= 1 << (i - 1)
    return Monomial(mask)


def _minimal_masks(masks: Iterable[int]) -> list[int]:
    # antichain of the divisibility-minimal masks
    uniq = sorted(set(masks), key=lambda m: (m.bit_count(), m))
    out: list[int] = []
    for m in uniq:
        if not any(g & ~m == 0 for g in out):
            out.append(m)
    return out


class Ideal:
    """A squarefree monomial ideal given by its minimal generators.

    The zero ideal has no generators; the unit ideal is generated by 1.
    """

    __slots__ = ("ambient", "gens")

    def __init__(self, ambient: int, gens: Iterable[Monomial] = ()):
        if not 1 <= ambient <= MAX_AMBIENT:
            raise InputError(f"ambient n={ambient} out of range [1, {MAX_AMBIENT}]")
        masks = []
        for g in gens:
            if g.max_index() > ambient:
                raise InputError(f"generator {g} exceeds ambient n={ambient}")
            masks.append(g.mask)
        mins = _minimal_masks(masks)
        self.ambient = ambient
        self.gens = tuple(
            sorted((Monomial(m) for m in mins), key=Monomial.sort_key)
        )

    @classmethod
    def from_strs(cls, ambient: int, *texts: str) -> "Ideal":
        return cls(ambient, [parse_monomial(t) for t in texts])

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return bool(self.gens) and self.gens[0].mask == 0

    def gen_masks(self) -> tuple[int, ...]:
        return tuple(g.mask for g in self.gens)

    def member(self, m: Monomial) -> bool:
        mm = m.mask
        return any(g.mask & ~mm == 0 for g in self.gens)

    def member_mask(self, mm: int) -> bool:
        return any(g & ~mm == 0 for g in self.gen_masks())

    def colon_var(self, j: int) -> "Ideal":
        """(self : x_j), also squarefree: divide each generator by x_j if possible."""
        if not 1 <= j <= self.ambient:
            raise InputError(f"variable index {j} out of range")
        bit = 1 << (j - 1)
        return Ideal(self.ambient, [Monomial(g.mask & ~bit) for g in self.gens])

    def intersect(self, other: "Ideal") -> "Ideal":
        self._check_ambient(other)
        return Ideal(
            self.ambient,
            [Monomial(a.mask | b.mask) for a in self.gens for b in other.gens],
        )

    def __add__(self, other: "Ideal") -> "Ideal":
        self._check_ambient(other)
        return Ideal(self.ambient, self.gens + other.gens)

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.member(g) for g in other.gens)

    def _check_ambient(self, other: "Ideal") -> None:
        if self.ambient != other.ambient:
            raise AmbientMismatchError(
                f"ambient mismatch: n={self.ambient} vs n={other.ambient}"
            )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Ideal)
            and self.ambient == other.ambient
            and self.gens == other.gens
        )

    def __hash__(self) -> int:
        return hash((self.ambient, self.gens))

    def __str__(self) -> str:
        if not self.gens:
            return "0"
        return ", ".join(str(g) for g in self.gens)

    def __repr__(self) -> str:
        return f"Ideal(n={self.ambient}; {self})"


def minimalize(ambient: int, gens: Iterable[Monomial]) -> Ideal:
    return Ideal(ambient, gens)


def intersect(a: Ideal, b: Ideal) -> Ideal:
    return a.intersect(b)


def ideal_sum(a: Ideal, b: Ideal) -> Ideal:
    return a + b


class QuotientPair:
    """A validated quotient module I/J of squarefree monomial ideals.

    Invariants: J ⊆ I and J ≠ I, so the poset of squarefree monomials in
    I\\J is nonempty.  `normalization_warning` is set when J has a minimal
    generator of degree ≤ d (d = least degree of I's generators); such pairs
    are fully supported, but the theorem-derived verdict rules assume the
    normalized shape and are gated off.
    """

    __slots__ = ("ambient", "I", "J", "field", "normalization_warning")

    def __init__(self, I: Ideal, J: Ideal, field: int = 0):
        if field not in SUPPORTED_CHARS:
            raise InputError(
                f"field characteristic {field} not in {SUPPORTED_CHARS}"
            )
        I._check_ambient(J)
        if I.is_zero():
            raise InputError("I must be nonzero")
        if not I.contains_ideal(J):
            raise InputError("J is not contained in I")
        if J.contains_ideal(I):
            raise EmptyQuotientError("J = I gives the zero module")
        self.ambient = I.ambient
        self.I = I
        self.J = J
        self.field = field
        d = min(g.degree for g in I.gens)
        self.normalization_warning = any(g.degree <= d for g in J.gens)

    def with_field(self, field: int) -> "QuotientPair":
        if field == self.field:
            return self
        return QuotientPair(self.I, self.J, field)

    def key(self) -> tuple:
        # hashable identity used by the caching layer (field-independent)
        return (self.ambient, self.I.gen_masks(), self.J.gen_masks())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QuotientPair)
            and self.key() == other.key()
            and self.field == other.field
        )

    def __hash__(self) -> int:
        return hash((self.key(), self.field))

    def __repr__(self) -> str:
        return f"QuotientPair(n={self.ambient}; I=({self.I}); J=({self.J}); char {self.field})"


def form_quotient(I: Ideal, K: Ideal, field: int = 0) -> QuotientPair:
    """Build the pair I/(K ∩ I); raises EmptyQuotientError when I ⊆ K."""
    return QuotientPair(I, K.intersect(I), field)


def colon_pair(Q: QuotientPair, j: int) -> QuotientPair | None:
    """The pair (I:x_j)/(J:x_j), or None when the colons coincide."""
    Ic = Q.I.colon_var(j)
    Jc = Q.J.colon_var(j)
    if Jc.contains_ideal(Ic):
        return None
    return QuotientPair(Ic, Jc, Q.field)
