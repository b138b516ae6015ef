"""The divisibility poset P_{I\\J} and its degree strata.

`enumerate_poset` lists every squarefree monomial lying in I but not in J;
`strata` computes the statistics the upper-bound theorems consume: the least
degree d, the degree-d generators f_1..f_r, the higher-degree generators E,
the degree-(d+1) and -(d+2) layers B and C, the pairwise generator lcms, and
the lcm-constrained subsets C2 and C3 of C.
"""
from __future__ import annotations

from dataclasses import dataclass

from .monomials import Monomial, QuotientPair


def poset_bitset(Q: QuotientPair) -> int:
    """Bit m set iff the squarefree monomial with mask m lies in I\\J."""
    n = Q.ambient
    igens = Q.I.gen_masks()
    jgens = Q.J.gen_masks()
    # seed each generator's principal filter, then subtract J's filter
    in_i = _filter_bitset(n, igens)
    in_j = _filter_bitset(n, jgens)
    return in_i & ~in_j


def _filter_bitset(n: int, gens: tuple[int, ...]) -> int:
    # union of upward closures {m : g ⊆ m}, by one shift-OR pass per variable
    out = 0
    for g in gens:
        out |= 1 << g
    if not out:
        return 0
    return upward_closure(out, (1 << n) - 1)


def upward_closure(bits: int, within: int) -> int:
    """Close a subset-indexed bitset upward under adding variables of `within`."""
    t = within
    while t:
        low = t & -t
        i = low.bit_length() - 1
        bits |= (bits & _low_block(i)) << (1 << i)
        t ^= low
    return bits


_MAXN = 16
_LOW_BLOCK_CACHE: dict[int, int] = {}


def _low_block(i: int) -> int:
    """Mask over 2^MAXN subset positions selecting those with index-bit i clear."""
    got = _LOW_BLOCK_CACHE.get(i)
    if got is None:
        got = (1 << (1 << i)) - 1  # low half of one period
        width = 1 << (i + 1)
        total = 1 << _MAXN
        while width < total:
            got |= got << width
            width *= 2
        _LOW_BLOCK_CACHE[i] = got
    return got


@dataclass(frozen=True)
class PosetSnapshot:
    ambient: int
    elements: tuple[Monomial, ...]

    def by_degree(self) -> dict[int, list[Monomial]]:
        out: dict[int, list[Monomial]] = {}
        for m in self.elements:
            out.setdefault(m.degree, []).append(m)
        return out

    def __contains__(self, m: Monomial) -> bool:
        return any(e.mask == m.mask for e in self.elements)

    def __len__(self) -> int:
        return len(self.elements)


def enumerate_poset(Q: QuotientPair, max_degree: int | None = None) -> PosetSnapshot:
    bits = poset_bitset(Q)
    masks = []
    m = 0
    while bits:
        if bits & 1:
            masks.append(m)
        bits >>= 1
        m += 1
    monos = sorted((Monomial(mm) for mm in masks), key=Monomial.sort_key)
    if max_degree is not None:
        monos = [u for u in monos if u.degree <= max_degree]
    return PosetSnapshot(Q.ambient, tuple(monos))


@dataclass(frozen=True)
class StrataReport:
    """Degree strata of P_{I\\J} plus the generator-lcm bookkeeping.

    Serialized field names (d, r, f_list, E, B, C, s, q, W_B, W_all, C2, C3)
    are a stable external interface.
    """

    ambient: int
    d: int
    f_list: tuple[Monomial, ...]
    E: tuple[Monomial, ...]
    B: tuple[Monomial, ...]
    C: tuple[Monomial, ...]
    W_B: tuple[Monomial, ...]
    W_all: tuple[Monomial, ...]
    C2: tuple[Monomial, ...]
    C3: tuple[Monomial, ...]

    @property
    def r(self) -> int:
        return len(self.f_list)

    @property
    def s(self) -> int:
        return len(self.B)

    @property
    def q(self) -> int:
        return len(self.C)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "r": self.r,
            "f_list": [str(m) for m in self.f_list],
            "E": [str(m) for m in self.E],
            "B": [str(m) for m in self.B],
            "C": [str(m) for m in self.C],
            "s": self.s,
            "q": self.q,
            "W_B": [str(m) for m in self.W_B],
            "W_all": [str(m) for m in self.W_all],
            "C2": [str(m) for m in self.C2],
            "C3": [str(m) for m in self.C3],
        }


def strata(Q: QuotientPair) -> StrataReport:
    bits = poset_bitset(Q)
    n = Q.ambient
    d = min_poset_degree(bits)
    layers: dict[int, list[int]] = {d: [], d + 1: [], d + 2: []}
    m = 0
    b = bits
    while b:
        if b & 1:
            deg = m.bit_count()
            if d <= deg <= d + 2:
                layers[deg].append(m)
        b >>= 1
        m += 1

    f_list = tuple(
        sorted((g for g in Q.I.gens if g.degree == d), key=Monomial.sort_key)
    )
    E = tuple(sorted((g for g in Q.I.gens if g.degree > d), key=Monomial.sort_key))
    B = _sorted_monos(layers[d + 1])
    C = _sorted_monos(layers[d + 2])

    w_masks = {
        f_list[i].mask | f_list[j].mask
        for i in range(len(f_list))
        for j in range(i + 1, len(f_list))
    }
    W_all = _sorted_monos(w_masks)
    b_masks = {u.mask for u in B}
    W_B = _sorted_monos(w_masks & b_masks)
    C2 = tuple(c for c in C if c.mask in w_masks)

    # C3: every degree-(d+1) divisor lying in B \ E must be a generator lcm
    e_masks = {g.mask for g in E}
    wb_masks = {u.mask for u in W_B}
    c3 = []
    for c in C:
        ok = True
        cm = c.mask
        t = cm
        while t:
            low = t & -t
            div = cm & ~low
            if div in b_masks and div not in e_masks and div not in wb_masks:
                ok = False
                break
            t ^= low
        if ok:
            c3.append(c)
    return StrataReport(
        ambient=n,
        d=d,
        f_list=f_list,
        E=E,
        B=B,
        C=C,
        W_B=W_B,
        W_all=W_all,
        C2=C2,
        C3=tuple(c3),
    )


def min_poset_degree(bits: int) -> int:
    best = None
    m = 0
    while bits:
        if bits & 1:
            deg = m.bit_count()
            if best is None or deg < best:
                best = deg
                if best == 0:
                    break
        bits >>= 1
        m += 1
    if best is None:
        raise ValueError("empty poset")
    return best


def _sorted_monos(masks) -> tuple[Monomial, ...]:
    return tuple(sorted((Monomial(m) for m in masks), key=Monomial.sort_key))
