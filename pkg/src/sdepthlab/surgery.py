"""Partition surgery on reduced pairs.

Starting from a value-(d+2) partition of the reduced pair I_b/J_b (where b is
a degree-(d+1) multiple of exactly one least-degree generator), this module
builds the injection h from interval bottoms to interval tops, classifies
paths through the resulting digraph, and rewrites the partition by rotations
and generator swaps.  The two-generator driver either upgrades the partition
to one of I/J with value d+2, or isolates a proper subideal I' whose quotient
has small Stanley depth while I/(J,I') keeps depth >= d+1.

Every rewrite and every outcome is re-verified by the exact engines, so a
bookkeeping mistake here can cause an honest failure but never a wrong
certificate.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .depth import depth
from .monomials import (
    Ideal,
    InputError,
    Monomial,
    QuotientPair,
    ideal_sum,
    intersect,
    minimalize,
)
from .poset import StrataReport, min_poset_degree, poset_bitset, strata
from .sdepth import (
    Interval,
    Partition,
    sdepth,
    sdepth_decide,
    verify_partition,
)

_MAX_ENUMERATED_PATHS = 4096
_MAX_STAGES_FACTOR = 2


class SurgeryError(InputError):
    """A surgery precondition failed; the message names the violated clause."""


class DriverFailure(RuntimeError):
    """The driver exhausted its rewriting strategies without a verified outcome."""

    def __init__(self, message: str, trace: tuple[str, ...]):
        super().__init__(message)
        self.trace = trace


def _designated_generator(st: StrataReport, b: Monomial) -> Monomial:
    divisors = [f for f in st.f_list if f.divides(b)]
    if len(divisors) != 1:
        raise SurgeryError(
            f"b must be a multiple of exactly one least-degree generator; "
            f"{b} has {len(divisors)}"
        )
    return divisors[0]


def build_reduced_pair(Q: QuotientPair, b: Monomial) -> QuotientPair:
    """Drop b and the generator dividing it: I_b = (other f's, B minus b)."""
    st = strata(Q)
    if b not in st.B:
        raise SurgeryError(f"b={b} is not a degree-(d+1) element of the poset")
    f1 = _designated_generator(st, b)
    gens = [f for f in st.f_list if f != f1]
    gens.extend(m for m in st.B if m != b)
    I_b = minimalize(Q.ambient, gens)
    if I_b.is_zero():
        raise SurgeryError("reduced ideal I_b must be nonzero")
    if I_b.member(b):
        raise SurgeryError(f"reduction failed: {b} still lies in I_b")
    J_b = intersect(Q.J, I_b)
    return QuotientPair(I_b, J_b, field=Q.field)


def _truncated_cover(lo: int, hi: int, k: int) -> list[tuple[int, int]]:
    # partition the elements of [lo, hi] of degree <= k into intervals
    # whose tops have degree exactly k
    if lo.bit_count() == k:
        return [(lo, lo)]
    if hi.bit_count() == k:
        return [(lo, hi)]
    span = hi & ~lo
    x = 1 << (span.bit_length() - 1)
    return _truncated_cover(lo, hi & ~x, k) + _truncated_cover(lo | x, hi, k)


def normalize_partition(Q: QuotientPair, partition: Partition, k: int) -> Partition:
    """Reshape a partition so every element of degree < k tops out at degree k.

    Intervals reaching past degree k are truncated (their high elements are
    re-emitted as singletons), and elements the input leaves uncovered are
    added as singletons.  Fails if the input's value is below k on the low
    part, since no reshaping can fix that.
    """
    bits = poset_bitset(Q)
    covered = 0
    pieces: list[Interval] = []
    for iv in partition.intervals:
        lo, hi = iv.lo.mask, iv.hi.mask
        for m in iv.member_masks():
            covered |= 1 << m
        if lo.bit_count() >= k:
            pieces.append(iv)
            continue
        if hi.bit_count() < k:
            raise InputError(
                f"interval [{iv.lo},{iv.hi}] tops out below degree {k}"
            )
        for a, c in _truncated_cover(lo, hi, k):
            pieces.append(Interval(Monomial(a), Monomial(c)))
        # high leftovers of the truncated interval become singletons
        for m in iv.member_masks():
            if m.bit_count() > k:
                pieces.append(Interval(Monomial(m), Monomial(m)))
    rest = bits & ~covered
    while rest:
        low = rest & -rest
        m = low.bit_length() - 1
        if m.bit_count() < k:
            raise InputError(
                f"uncovered element {Monomial(m)} of degree < {k} cannot be "
                "normalized into a singleton"
            )
        pieces.append(Interval(Monomial(m), Monomial(m)))
        rest ^= low
    out = Partition(tuple(pieces))
    vr = verify_partition(Q, out)
    if not vr:
        raise InputError(f"normalization produced an invalid partition: {vr.reason}")
    return out


@dataclass(frozen=True)
class HMap:
    """Bottom-to-top assignment extracted from a normalized partition.

    Generator intervals [f, c'_f] contribute h(f) = c'_f and carry their two
    middle elements (the "inner" pair); every other degree-(d+1) element b'
    bottoms its own interval and contributes h(b') = top.
    """

    pair: QuotientPair
    pair_b: QuotientPair
    b: Monomial
    partition: Partition
    st: StrataReport
    f_rest: tuple[Monomial, ...]
    tops: dict
    inners: dict
    mapping: dict
    domain_b: tuple[Monomial, ...]

    def h(self, m: Monomial) -> Monomial:
        return self.mapping[m]

    def inner_set(self) -> frozenset:
        out = set()
        for pair in self.inners.values():
            out.update(pair)
        return frozenset(out)

    def image(self) -> frozenset:
        return frozenset(self.mapping.values())

    def in_inner_ideal(self, c: Monomial) -> bool:
        return any(u.divides(c) for u in self.inner_set())

    def to_json(self) -> dict:
        return {
            "b": str(self.b),
            "mapping": {str(k): str(v) for k, v in sorted(
                self.mapping.items(), key=lambda kv: kv[0].sort_key())},
            "inners": {str(f): [str(u) for u in uu] for f, uu in sorted(
                self.inners.items(), key=lambda kv: kv[0].sort_key())},
        }


def build_h(Q: QuotientPair, b: Monomial, P_b: Partition) -> HMap:
    """Normalize P_b on the reduced pair and read off the injection h."""
    st = strata(Q)
    pair_b = build_reduced_pair(Q, b)
    bits_b = poset_bitset(pair_b)
    d_b = min_poset_degree(bits_b)
    partition = normalize_partition(pair_b, P_b, d_b + 2)
    if partition.sdepth_value < d_b + 2:
        raise SurgeryError(
            f"partition value {partition.sdepth_value} is below d+2={d_b + 2}"
        )

    by_lo = {iv.lo: iv for iv in partition.intervals}
    f_rest = tuple(
        sorted(
            (m for m in (Monomial(mm) for mm in _mask_layer(bits_b, d_b))),
            key=Monomial.sort_key,
        )
    )
    tops: dict = {}
    inners: dict = {}
    mapping: dict = {}
    inner_all = set()
    for f in f_rest:
        iv = by_lo.get(f)
        if iv is None:
            raise SurgeryError(f"generator {f} is not an interval bottom")
        mid = tuple(
            sorted(
                (Monomial(m) for m in iv.member_masks() if m.bit_count() == d_b + 1),
                key=Monomial.sort_key,
            )
        )
        if len(mid) != 2:
            raise SurgeryError(
                f"generator interval [{f},{iv.hi}] must contain exactly two "
                f"degree-{d_b + 1} elements, found {len(mid)}"
            )
        tops[f] = iv.hi
        inners[f] = mid
        mapping[f] = iv.hi
        inner_all.update(mid)

    domain_b = []
    for mm in _mask_layer(bits_b, d_b + 1):
        m = Monomial(mm)
        if m in inner_all:
            continue
        iv = by_lo.get(m)
        if iv is None:
            raise SurgeryError(f"degree-(d+1) element {m} is neither inner nor bottom")
        mapping[m] = iv.hi
        domain_b.append(m)
    domain_b.sort(key=Monomial.sort_key)

    if len(set(mapping.values())) != len(mapping):
        raise SurgeryError("top assignment is not injective")
    if len(mapping) != st.s - st.r:
        raise SurgeryError(
            f"image size {len(mapping)} differs from s-r = {st.s - st.r}"
        )
    return HMap(
        pair=Q,
        pair_b=pair_b,
        b=b,
        partition=partition,
        st=st,
        f_rest=f_rest,
        tops=tops,
        inners=inners,
        mapping=mapping,
        domain_b=tuple(domain_b),
    )


def _mask_layer(bits: int, deg: int) -> list[int]:
    out = []
    rest = bits
    while rest:
        low = rest & -rest
        m = low.bit_length() - 1
        if m.bit_count() == deg:
            out.append(m)
        rest ^= low
    return out


@dataclass(frozen=True)
class Path:
    elements: tuple[Monomial, ...]
    weak: bool
    bad: bool
    maximal: bool

    def to_json(self) -> dict:
        return {
            "elements": [str(m) for m in self.elements],
            "weak": self.weak,
            "bad": self.bad,
            "maximal": self.maximal,
        }


@dataclass(frozen=True)
class PathSearch:
    paths: tuple[Path, ...]
    T: frozenset
    weak_exists: bool
    bad_exists: bool


def _b_divisors(H: HMap, c: Monomial) -> list[Monomial]:
    return [m for m in H.st.B if m.divides(c)]


def find_paths(H: HMap, start: Monomial, limit: int = _MAX_ENUMERATED_PATHS) -> PathSearch:
    """Enumerate all maximal paths from `start` and the reachable vertex set.

    A path hops from a vertex a to a divisor of h(a) as long as h(a) avoids
    the removed element b; it is bad when the final top is a multiple of b,
    weak when some top along the way lands in the inner-pair ideal.
    """
    excluded = {H.b} | set(H.inner_set())
    if start in excluded or start not in H.mapping:
        raise SurgeryError(f"path start {start} is not admissible")
    paths: list[Path] = []

    def emit(seq: list[Monomial], bad: bool) -> None:
        if len(paths) >= limit:
            raise SurgeryError(f"path enumeration exceeded {limit} paths")
        weak = any(H.in_inner_ideal(H.h(a)) for a in seq)
        paths.append(Path(tuple(seq), weak=weak, bad=bad, maximal=True))

    def dfs(seq: list[Monomial], seen: set) -> None:
        c = H.h(seq[-1])
        if H.b.divides(c):
            emit(seq, bad=True)
            return
        exts = [m for m in _b_divisors(H, c) if m not in excluded and m not in seen]
        if not exts:
            emit(seq, bad=False)
            return
        for m in exts:
            seen.add(m)
            seq.append(m)
            dfs(seq, seen)
            seq.pop()
            seen.remove(m)

    dfs([start], {start})
    T = _reach(H, start)
    return PathSearch(
        paths=tuple(paths),
        T=frozenset(T),
        weak_exists=any(H.in_inner_ideal(H.h(x)) for x in T),
        bad_exists=any(H.b.divides(H.h(x)) for x in T),
    )


def _reach(H: HMap, start: Monomial, forbidden: frozenset = frozenset()) -> set:
    """Vertices reachable by paths from start (loop-erasure makes BFS exact)."""
    excluded = {H.b} | set(H.inner_set()) | set(forbidden)
    seen = {start}
    queue = [start]
    while queue:
        x = queue.pop(0)
        c = H.h(x)
        if H.b.divides(c):
            continue  # rule (iii): nothing extends past a bad top
        for m in _b_divisors(H, c):
            if m in excluded or m in seen:
                continue
            seen.add(m)
            queue.append(m)
    return seen


def _shortest_path_to(
    H: HMap,
    start: Monomial,
    hit,
    forbidden: frozenset = frozenset(),
):
    """BFS for the shortest path whose final vertex satisfies `hit`."""
    excluded = {H.b} | set(H.inner_set()) | set(forbidden)
    parent = {start: None}
    queue = [start]
    while queue:
        x = queue.pop(0)
        if hit(x):
            seq = []
            while x is not None:
                seq.append(x)
                x = parent[x]
            return list(reversed(seq))
        c = H.h(x)
        if H.b.divides(c):
            continue
        for m in _b_divisors(H, c):
            if m in excluded or m in parent:
                continue
            parent[m] = x
            queue.append(m)
    return None


def rotate(Q: QuotientPair, partition: Partition, lows) -> Partition:
    """Shift interval tops backwards along a divisibility-linked segment.

    Intervals [a_v,c_v],…,[a_p,c_p] become [a_v,c_p], [a_{j+1},c_j]; legality
    requires a_{j+1} | c_j along the segment and a_v | c_p to close it.
    """
    lows = [m if isinstance(m, Monomial) else Monomial(m) for m in lows]
    if not lows:
        raise InputError("rotation needs at least one interval")
    by_lo = {iv.lo: iv for iv in partition.intervals}
    ivs = []
    for m in lows:
        iv = by_lo.get(m)
        if iv is None:
            raise InputError(f"{m} is not an interval bottom")
        ivs.append(iv)
    tops = [iv.hi for iv in ivs]
    for j in range(len(lows) - 1):
        if not lows[j + 1].divides(tops[j]):
            raise InputError(
                f"illegal rotation: {lows[j + 1]} does not divide {tops[j]}"
            )
    if not lows[0].divides(tops[-1]):
        raise InputError(
            f"illegal rotation: {lows[0]} does not divide {tops[-1]}"
        )
    replaced = set(lows)
    pieces = [iv for iv in partition.intervals if iv.lo not in replaced]
    pieces.append(Interval(lows[0], tops[-1]))
    for j in range(len(lows) - 1):
        pieces.append(Interval(lows[j + 1], tops[j]))
    out = Partition(tuple(sorted(pieces, key=lambda iv: iv.lo.sort_key())))
    vr = verify_partition(Q, out)
    if not vr:
        raise InputError(f"rotation broke the partition: {vr.reason}")
    return out


def swap_into_generator(
    Q: QuotientPair, partition: Partition, f: Monomial, a_t: Monomial
) -> Partition:
    """Trade [f,c'_f], [a_t,c_t] for [f,c_t], [u',c'_f].

    Requires a_t to be a multiple of f and c_t a multiple of exactly one of
    the two inner elements of f's interval; the displaced inner u' keeps the
    old top.  Coverage is preserved exactly.
    """
    by_lo = {iv.lo: iv for iv in partition.intervals}
    iv_f = by_lo.get(f)
    iv_a = by_lo.get(a_t)
    if iv_f is None or iv_a is None:
        raise InputError(f"{f} and {a_t} must both be interval bottoms")
    if not f.divides(a_t):
        raise InputError(f"{a_t} is not a multiple of {f}")
    c_f, c_t = iv_f.hi, iv_a.hi
    mid = [
        Monomial(m)
        for m in iv_f.member_masks()
        if m.bit_count() == f.degree + 1
    ]
    if len(mid) != 2:
        raise InputError(f"[{f},{c_f}] is not a two-inner generator interval")
    dividing = [u for u in mid if u.divides(c_t)]
    if len(dividing) != 1:
        raise InputError(
            f"exactly one inner of [{f},{c_f}] must divide {c_t}, "
            f"found {len(dividing)}"
        )
    u = dividing[0]
    u_prime = mid[0] if mid[1] == u else mid[1]
    pieces = [iv for iv in partition.intervals if iv.lo not in (f, a_t)]
    pieces.append(Interval(f, c_t))
    pieces.append(Interval(u_prime, c_f))
    out = Partition(tuple(sorted(pieces, key=lambda iv: iv.lo.sort_key())))
    vr = verify_partition(Q, out)
    if not vr:
        raise InputError(f"swap broke the partition: {vr.reason}")
    return out


def enforce_star(H: HMap, max_rounds: int = 8) -> HMap:
    """Rewrite until no pairwise-lcm element outside the inner pairs maps
    into an inner-pair ideal (the r=3 normalization property).

    Each violation h(w) in (u_j) is repaired by swapping w into f_j's
    interval, which makes w itself an inner.  No-op when already satisfied.
    """
    for _ in range(max_rounds):
        violation = _star_violation(H)
        if violation is None:
            return H
        f, w = violation
        partition = swap_into_generator(H.pair_b, H.partition, f, w)
        H = build_h(H.pair, H.b, partition)
    raise SurgeryError("inner-pair normalization did not stabilize")


def _star_violation(H: HMap):
    inner_all = H.inner_set()
    for i, fi in enumerate(H.f_rest):
        for fj in H.f_rest[i + 1:]:
            w = fi.lcm(fj)
            if w.degree != fi.degree + 1:
                continue
            if w not in H.mapping or w in inner_all:
                continue
            c = H.h(w)
            for f in (fi, fj):
                if any(u.divides(c) and f.divides(u) for u in H.inners[f]):
                    return (f, w)
    return None


@dataclass(frozen=True)
class SurgeryOutcome:
    kind: str                       # "upgraded_partition" | "subideal_witness"
    partition: Partition | None = None
    subideal: Ideal | None = None
    sub_pair: QuotientPair | None = None
    sdepth_sub: int | None = None
    depth_rest: int | None = None   # None when I/(J,I') is the zero module
    fallback: bool = False
    trace: tuple[str, ...] = ()

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind, "fallback": self.fallback}
        if self.partition is not None:
            out["partition"] = self.partition.to_json()
            out["value"] = self.partition.sdepth_value
        if self.subideal is not None:
            out["subideal"] = [str(g) for g in self.subideal.gens]
            out["sdepth_sub"] = self.sdepth_sub
            out["depth_rest"] = self.depth_rest
        out["trace"] = list(self.trace)
        return out


def _verify_upgrade(Q: QuotientPair, pieces, d: int) -> Partition | None:
    out = Partition(tuple(sorted(pieces, key=lambda iv: iv.lo.sort_key())))
    if verify_partition(Q, out) and out.sdepth_value >= d + 2:
        return out
    return None


def _switch_bottom(partition: Partition, old_lo: Monomial, new_lo: Monomial):
    pieces = []
    for iv in partition.intervals:
        if iv.lo == old_lo:
            pieces.append(Interval(new_lo, iv.hi))
        else:
            pieces.append(iv)
    return pieces


def _containment_violation(st: StrataReport) -> Monomial | None:
    f1, f2 = st.f_list
    E = st.E
    for c in st.C:
        if f1.divides(c) and f2.divides(c):
            continue
        in_E = any(a.divides(c) for a in E)
        if in_E and (f1.divides(c) or f2.divides(c)):
            continue
        pair_hit = False
        for i, a in enumerate(E):
            if not a.divides(c):
                continue
            for a2 in E[i + 1:]:
                if a2.divides(c):
                    pair_hit = True
                    break
            if pair_hit:
                break
        if not pair_hit:
            return c
    return None


def check_pair_hypotheses(Q: QuotientPair, st: StrataReport | None = None) -> None:
    """Validate the two-generator lemma's pair-level hypotheses, by name."""
    st = st if st is not None else strata(Q)
    if st.r != 2:
        raise SurgeryError(f"hypothesis r=2 fails: r={st.r}")
    if Q.normalization_warning:
        raise SurgeryError(
            "hypothesis fails: relations of degree <= d present "
            "(J must be generated in degrees > d)"
        )
    if any(g.degree != st.d + 1 for g in st.E):
        raise SurgeryError(
            "hypothesis fails: higher generators must all have degree d+1"
        )
    if not (4 <= st.s <= st.q + 2):
        raise SurgeryError(
            f"hypothesis 4 <= s <= q+2 fails: s={st.s}, q={st.q}"
        )
    bad_c = _containment_violation(st)
    if bad_c is not None:
        raise SurgeryError(f"hypothesis C-containment fails at {bad_c}")


def ml1_candidate_bs(Q: QuotientPair) -> tuple[Monomial, ...]:
    """The b's structurally eligible for the driver (pair hypotheses pass
    and exactly one least-degree generator divides b); the remaining
    hypothesis — a value-(d+2) partition of the reduced pair — is checked
    by the driver itself."""
    st = strata(Q)
    try:
        check_pair_hypotheses(Q, st)
    except SurgeryError:
        return ()
    return tuple(
        b for b in st.B
        if sum(1 for f in st.f_list if f.divides(b)) == 1
    )


class _Driver:
    def __init__(self, Q: QuotientPair, b: Monomial):
        self.Q = Q
        self.b = b
        self.trace: list[str] = []
        self.st = strata(Q)
        self.d = self.st.d

    def log(self, msg: str) -> None:
        self.trace.append(msg)

    def check_hypotheses(self) -> None:
        st, Q, b = self.st, self.Q, self.b
        check_pair_hypotheses(Q, st)
        if b not in st.B:
            raise SurgeryError(f"b={b} is not in B")
        f1 = _designated_generator(st, b)
        self.f1 = f1
        self.f2 = next(f for f in st.f_list if f != f1)

    # -- main loop ------------------------------------------------------

    def run(self) -> SurgeryOutcome:
        self.check_hypotheses()
        Q, b, d = self.Q, self.b, self.d
        pair_b = build_reduced_pair(Q, b)
        cert = sdepth_decide(pair_b, d + 2)
        if cert is None:
            raise SurgeryError(
                f"hypothesis sdepth(I_b/J_b) >= d+2 fails for b={b}"
            )
        self.log(f"reduced pair partition of value {d + 2} found")
        partition = cert
        trail: list[Monomial] = []
        start: Monomial | None = None
        max_stages = _MAX_STAGES_FACTOR * self.st.s + 4

        for stage in range(max_stages):
            H = build_h(Q, b, partition)
            partition = H.partition
            trail_set = frozenset(trail)
            if start is None:
                start = self._pick_start(H, trail_set)
                if start is None:
                    self.log("no admissible start vertex")
                    break
            self.log(f"stage {stage}: start {start}")

            hit_seq = self._trail_hit(H, start, trail, trail_set)
            if hit_seq is not None:
                outcome = self._revisit_win(H, partition, hit_seq, trail)
                if outcome is not None:
                    return outcome
                self.log("trail-revisit rewrite failed verification")
                break

            T = _reach(H, start, forbidden=trail_set)
            bad = any(H.b.divides(H.h(x)) for x in T)
            weak = any(H.in_inner_ideal(H.h(x)) for x in T)

            if bad:
                result = self._case_bad(H, partition, start, trail, trail_set)
                if isinstance(result, SurgeryOutcome):
                    return result
                if result is None:
                    break
                partition, start, trail = result
                continue
            if weak:
                result = self._case_weak(H, partition, start, T, trail, trail_set)
                if isinstance(result, SurgeryOutcome):
                    return result
                if result is None:
                    break
                partition, start, trail = result
                continue
            self.log(f"case 1: no weak or bad path from {start}")
            outcome = self._finish(H, T, rewritten=bool(trail))
            if outcome is not None:
                return outcome
            self.log("case 1 candidates exhausted")
            break

        return self._fallback()

    def _pick_start(self, H: HMap, trail_set: frozenset):
        blocked = {H.b} | set(H.inner_set()) | set(trail_set)
        for m in H.st.B:
            if m not in blocked and m in H.mapping:
                return m
        return None

    # -- trail revisits --------------------------------------------------

    def _trail_hit(self, H, start, trail, trail_set):
        """Shortest path from start touching the trail, as a combined segment."""
        if not trail:
            return None
        path = _shortest_path_to(
            H,
            start,
            hit=lambda x: any(
                t.divides(H.h(x)) for t in trail_set
            ) and not H.b.divides(H.h(x)),
        )
        if path is None:
            return None
        last_c = H.h(path[-1])
        for v, t in enumerate(trail):
            if t.divides(last_c):
                return trail[v:] + path
        return None

    def _revisit_win(self, H, partition, seq, trail):
        """Cyclic rotation pushing a top onto the continuation vertex, then
        the bottom switch that absorbs f_1 and b."""
        try:
            rotated = rotate(H.pair_b, partition, seq)
        except InputError as exc:
            self.log(f"rotation rejected: {exc}")
            return None
        # after rotation the stage-entry vertex f1*x_l carries a top in (b)
        for m in seq:
            iv = {iv.lo: iv for iv in rotated.intervals}[m]
            if self.f1.divides(m) and self.b.divides(iv.hi):
                pieces = _switch_bottom(rotated, m, self.f1)
                out = _verify_upgrade(self.Q, pieces, self.d)
                if out is not None:
                    self.log(f"upgrade via trail revisit at {m}")
                    return SurgeryOutcome(
                        kind="upgraded_partition",
                        partition=out,
                        trace=tuple(self.trace),
                    )
        return None

    # -- bad paths --------------------------------------------------------

    def _case_bad(self, H, partition, start, trail, trail_set):
        path = _shortest_path_to(
            H, start, hit=lambda x: H.b.divides(H.h(x)), forbidden=trail_set
        )
        if path is None:
            self.log("bad vertex unreachable despite classification")
            return None
        a_t = path[-1]
        c_t = H.h(a_t)
        x_l = Monomial(c_t.mask & ~self.b.mask)
        fxl = Monomial(self.f1.mask | x_l.mask)
        self.log(
            f"case 3: bad path {[str(m) for m in path]} with top {c_t}"
        )
        if self.f1.divides(a_t):
            pieces = _switch_bottom(partition, a_t, self.f1)
            out = _verify_upgrade(self.Q, pieces, self.d)
            if out is not None:
                self.log(f"upgrade by direct switch at {a_t}")
                return SurgeryOutcome(
                    kind="upgraded_partition", partition=out,
                    trace=tuple(self.trace),
                )
            self.log("direct switch failed verification")
            return None
        if fxl in path:
            v = path.index(fxl)
            try:
                rotated = rotate(H.pair_b, partition, path[v:])
            except InputError as exc:
                self.log(f"rotation rejected: {exc}")
                return None
            pieces = _switch_bottom(rotated, fxl, self.f1)
            out = _verify_upgrade(self.Q, pieces, self.d)
            if out is not None:
                self.log(f"upgrade by rotation into {fxl}")
                return SurgeryOutcome(
                    kind="upgraded_partition", partition=out,
                    trace=tuple(self.trace),
                )
            self.log("rotated switch failed verification")
            return None
        if fxl in trail_set:
            v = trail.index(fxl)
            seq = trail[v:] + path
            outcome = self._revisit_win(H, partition, seq, trail)
            if outcome is not None:
                return outcome
            self.log("trail rotation failed verification")
            return None
        if fxl in H.inner_set() or fxl == self.b or fxl not in H.mapping:
            self.log(f"continuation vertex {fxl} is not admissible")
            return None
        self.log(f"continuing from {fxl}")
        return (partition, fxl, trail + path)

    # -- weak paths -------------------------------------------------------

    def _case_weak(self, H, partition, start, T, trail, trail_set):
        path = _shortest_path_to(
            H,
            start,
            hit=lambda x: H.in_inner_ideal(H.h(x)),
            forbidden=trail_set,
        )
        if path is None:
            self.log("weak vertex unreachable despite classification")
            return None
        a_t = path[-1]
        c_t = H.h(a_t)
        mid = H.inners[self.f2]
        u = next(x for x in mid if x.divides(c_t))
        u_prime = mid[0] if mid[1] == u else mid[1]
        self.log(
            f"case 2: weak path {[str(m) for m in path]} hits ({u}) at {c_t}"
        )
        U1 = {H.h(x) for x in T}

        swap_at = None
        if self.f2.divides(a_t):
            swap_at = a_t
        else:
            for v in range(len(path) - 1):
                if self.f2.divides(path[v]) and path[v].divides(c_t):
                    try:
                        partition = rotate(H.pair_b, partition, path[v:])
                    except InputError as exc:
                        self.log(f"rotation rejected: {exc}")
                        return None
                    self.log(f"rotated segment to put {c_t} over {path[v]}")
                    swap_at = path[v]
                    break
        if swap_at is None:
            x_m = Monomial(c_t.mask & ~u.mask)
            a_next = Monomial(self.f2.mask | x_m.mask)
            if a_next == u_prime or a_next == self.b or a_next not in H.mapping:
                self.log(f"generator-side divisor {a_next} is not admissible")
                return None
            joined = self._join_rotation(H, partition, path, a_next, trail_set)
            if joined is not None:
                partition, swap_at = joined
            else:
                self.log(f"restarting analysis from {a_next}")
                return (partition, a_next, trail + path)

        try:
            partition = swap_into_generator(H.pair_b, partition, self.f2, swap_at)
        except InputError as exc:
            self.log(f"generator swap rejected: {exc}")
            return None
        self.log(f"swapped {swap_at} into the {self.f2} interval")
        H2 = build_h(self.Q, self.b, partition)
        T_final = set(T) | {u}
        if any(u_prime.divides(c) for c in U1):
            T_final.add(u_prime)
            T_final |= _reach(H2, u_prime, forbidden=trail_set)
            self.log(f"completing the reach set through {u_prime}")
        outcome = self._finish(H2, frozenset(T_final), rewritten=True)
        if outcome is not None:
            return outcome
        self.log("post-swap candidates exhausted")
        return None

    def _join_rotation(self, H, partition, path, a_next, trail_set):
        """Try to link a_next back onto the current path by one rotation."""
        if a_next in path:
            return None
        sub = _shortest_path_to(
            H,
            a_next,
            hit=lambda x: any(p.divides(H.h(x)) for p in path),
            forbidden=trail_set | frozenset(path),
        )
        if sub is None:
            return None
        last_c = H.h(sub[-1])
        v = next(i for i, p in enumerate(path) if p.divides(last_c))
        seq = path[v:] + sub
        try:
            rotated = rotate(H.pair_b, partition, seq)
        except InputError as exc:
            self.log(f"join rotation rejected: {exc}")
            return None
        self.log(f"joined {a_next} onto the weak path by rotation")
        return rotated, a_next

    # -- endgame ----------------------------------------------------------

    def _finish(self, H: HMap, T: frozenset, rewritten: bool):
        st, Q, d = self.st, self.Q, self.d
        B_all = set(st.B)
        G1 = B_all - set(T)
        G2 = G1 - set(H.inner_set())
        g_variants = []
        for G in ([G2, G1] if rewritten else [G1, G2]):
            if G not in g_variants:
                g_variants.append(G)
        U = {H.h(x) for x in T if x in H.mapping}
        f_pair = (self.f1, self.f2)
        F_des = tuple(f for f in f_pair if not any(f.divides(c) for c in U))
        f_variants = [F_des]
        for F in (f_pair, (self.f1,), (self.f2,), ()):
            if F not in f_variants:
                f_variants.append(F)

        for G in g_variants:
            for F in f_variants:
                outcome = self._try_candidate(tuple(F) + tuple(sorted(
                    G, key=Monomial.sort_key)), d)
                if outcome is not None:
                    return outcome
        return None

    def _try_candidate(self, gens, d: int, fallback: bool = False):
        Q = self.Q
        if not gens:
            return None
        I_sub = minimalize(Q.ambient, gens)
        if I_sub.is_zero() or I_sub.contains_ideal(Q.I):
            return None
        J_sub = intersect(Q.J, I_sub)
        if J_sub == I_sub:
            return None
        sub = QuotientPair(I_sub, J_sub, field=Q.field)
        K = ideal_sum(Q.J, I_sub)
        rest = None if K.contains_ideal(Q.I) else QuotientPair(Q.I, K, field=Q.field)
        cert_sub = sdepth_decide(sub, d + 2)
        if cert_sub is None:
            depth_rest = None
            if rest is not None:
                depth_rest = depth(rest).depth
                if depth_rest < d + 1:
                    self.log(
                        f"candidate ({I_sub}) rejected: "
                        f"depth of the complement is {depth_rest} < {d + 1}"
                    )
                    return None
            value = sdepth(sub).value
            self.log(
                f"subideal witness ({I_sub}): sdepth {value} <= {d + 1}"
            )
            return SurgeryOutcome(
                kind="subideal_witness",
                subideal=I_sub,
                sub_pair=sub,
                sdepth_sub=value,
                depth_rest=depth_rest,
                fallback=fallback,
                trace=tuple(self.trace),
            )
        pieces = list(cert_sub.intervals)
        if rest is not None:
            cert_rest = sdepth_decide(rest, d + 2)
            if cert_rest is None:
                return None
            pieces.extend(cert_rest.intervals)
        out = _verify_upgrade(Q, pieces, d)
        if out is None:
            return None
        self.log(f"upgrade by splitting along ({I_sub})")
        return SurgeryOutcome(
            kind="upgraded_partition",
            partition=out,
            fallback=fallback,
            trace=tuple(self.trace),
        )

    def _fallback(self) -> SurgeryOutcome:
        self.log("fallback: deciding the disjunction by direct computation")
        Q, d = self.Q, self.d
        cert = sdepth_decide(Q, d + 2)
        if cert is not None:
            return SurgeryOutcome(
                kind="upgraded_partition",
                partition=cert,
                fallback=True,
                trace=tuple(self.trace),
            )
        H = build_h(Q, self.b, sdepth_decide(build_reduced_pair(Q, self.b), d + 2))
        tried = set()
        starts = [m for m in H.st.B
                  if m in H.mapping and m not in H.inner_set() and m != self.b]
        for a in starts:
            T = frozenset(_reach(H, a))
            if T in tried:
                continue
            tried.add(T)
            outcome = self._finish(H, T, rewritten=False)
            if outcome is not None:
                return SurgeryOutcome(
                    kind=outcome.kind,
                    partition=outcome.partition,
                    subideal=outcome.subideal,
                    sub_pair=outcome.sub_pair,
                    sdepth_sub=outcome.sdepth_sub,
                    depth_rest=outcome.depth_rest,
                    fallback=True,
                    trace=tuple(self.trace),
                )
        raise DriverFailure(
            "no verified outcome: rewriting and fallback both exhausted",
            tuple(self.trace),
        )


def ml1_driver(Q: QuotientPair, b: Monomial) -> SurgeryOutcome:
    """Run the two-generator case analysis from the removed element b.

    Preconditions (each reported by name if violated): r=2 with normalized
    degrees, 4 <= s <= q+2, the C-containment condition, and a value-(d+2)
    partition of the reduced pair.  The outcome is always engine-verified;
    if every rewriting strategy dead-ends, the disjunction is settled by
    direct computation and flagged as a fallback.
    """
    return _Driver(Q, b).run()


def verify_outcome(Q: QuotientPair, outcome: SurgeryOutcome) -> bool:
    """Re-check an outcome's claims with the engines alone."""
    d = strata(Q).d
    if outcome.kind == "upgraded_partition":
        if outcome.partition is None:
            return False
        return bool(verify_partition(Q, outcome.partition)) and (
            outcome.partition.sdepth_value >= d + 2
        )
    if outcome.kind != "subideal_witness" or outcome.subideal is None:
        return False
    I_sub = outcome.subideal
    if I_sub.is_zero() or I_sub.contains_ideal(Q.I):
        return False
    if not all(Q.I.member(g) for g in I_sub.gens):
        return False
    sub = QuotientPair(I_sub, intersect(Q.J, I_sub), field=Q.field)
    if sdepth_decide(sub, d + 2) is not None:
        return False
    K = ideal_sum(Q.J, I_sub)
    if not K.contains_ideal(Q.I):
        rest = QuotientPair(Q.I, K, field=Q.field)
        if depth(rest).depth < d + 1:
            return False
    return True
