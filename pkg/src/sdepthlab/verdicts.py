"""Named upper/lower bound rules and cross-engine consistency audits.

Each rule evaluates a hypothesis on the degree strata of a pair and, when the
hypothesis holds, asserts a bound on depth or Stanley depth.  The engines
compute the exact values independently, so every applicable rule is a live
consistency check: a violated bound means a bug somewhere, and callers treat
it as a hard failure.

Counting rules come in two flavours.  The Stanley-depth flavour is proved by
pure interval counting inside the poset, so it holds for any pair; it uses
the number of degree-d poset elements rather than the generator count.  The
depth flavour relies on the normalization assumptions (J generated in degrees
> d), so it is gated on the pair's `normalization_warning`.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .engines import EngineCache
from .monomials import Ideal, Monomial, QuotientPair, colon_pair, ideal_sum, intersect
from .poset import StrataReport

# depth of the zero module, for Depth-Lemma arithmetic on short exact sequences
INF_DEPTH = 10**9


@dataclass(frozen=True)
class Verdict:
    rule: str
    applicable: bool
    hypothesis: str
    quantity: str | None = None
    relation: str | None = None
    bound: int | None = None
    observed: int | None = None
    consistent: bool | None = None
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "rule": self.rule,
            "applicable": self.applicable,
            "hypothesis": self.hypothesis,
        }
        if self.applicable:
            out["claim"] = f"{self.quantity} {self.relation} {self.bound}"
            out["observed"] = self.observed
            out["consistent"] = self.consistent
        if self.detail:
            out["detail"] = self.detail
        return out


def _check(relation: str, observed: int, bound: int) -> bool:
    if relation == "<=":
        return observed <= bound
    if relation == ">=":
        return observed >= bound
    if relation == "==":
        return observed == bound
    raise ValueError(f"unknown relation {relation!r}")


def _rule(
    rule: str,
    applicable: bool,
    hypothesis: str,
    quantity: str | None = None,
    relation: str | None = None,
    bound: int | None = None,
    observed: int | None = None,
    detail: dict | None = None,
) -> Verdict:
    consistent = None
    if applicable:
        consistent = _check(relation, observed, bound)
    return Verdict(
        rule=rule,
        applicable=applicable,
        hypothesis=hypothesis,
        quantity=quantity,
        relation=relation,
        bound=bound,
        observed=observed,
        consistent=consistent,
        detail=detail or {},
    )


def _degree_d_poset_count(bits: int, st: StrataReport) -> int:
    # degree-d poset elements are exactly the degree-d generators not in J
    return sum(1 for f in st.f_list if (bits >> f.mask) & 1)


def _support_escape(st: StrataReport) -> Monomial | None:
    union = 0
    for f in st.f_list:
        union |= f.mask
    for c in st.C:
        if c.mask & ~union:
            return c
    return None


def _conjecture_case(st: StrataReport) -> str | None:
    """Which proved case of the minimal-sdepth conjecture covers this pair."""
    if st.r <= 3:
        return f"r={st.r}"
    if st.r == 4 and not st.E and _support_escape(st) is not None:
        return "r=4 with support escape"
    return None


def bounds_report(
    Q: QuotientPair,
    cache: EngineCache | None = None,
    colon_rules: bool = True,
) -> tuple[Verdict, ...]:
    cache = cache if cache is not None else EngineCache()
    st = cache.strata(Q)
    bits = cache.poset_bits(Q)
    sv = cache.sdepth(Q).value
    dep = cache.depth(Q).depth
    hd = cache.hdepth(Q).value
    warn = Q.normalization_warning
    d, r, s, q = st.d, st.r, st.s, st.q
    rp = _degree_d_poset_count(bits, st)
    out = []

    out.append(
        _rule(
            "depth_ge_min_degree",
            True,
            f"least poset degree d={d}",
            "depth",
            ">=",
            d,
            dep,
        )
    )
    out.append(
        _rule(
            "sdepth_ge_min_degree",
            True,
            f"least poset degree d={d}",
            "sdepth",
            ">=",
            d,
            sv,
        )
    )
    out.append(
        _rule(
            "sdepth_le_hilbert_depth",
            True,
            "Stanley decompositions refine Hilbert decompositions",
            "sdepth",
            "<=",
            hd,
            sv,
        )
    )

    # pure counting in the poset: a partition of value >= d+2 forces
    # s >= 2*(#degree-d elements) and s <= q + (#degree-d elements)
    out.append(
        _rule(
            "b_count_exceeds_c_plus_r_sdepth",
            s > q + rp,
            f"s={s} > q+r'={q}+{rp}",
            "sdepth",
            "<=",
            d + 1,
            sv,
            detail={"degree_d_elements": rp},
        )
    )
    out.append(
        _rule(
            "b_count_below_2r_sdepth",
            s < 2 * rp,
            f"s={s} < 2r'={2 * rp}",
            "sdepth",
            "<=",
            d + 1,
            sv,
            detail={"degree_d_elements": rp},
        )
    )

    out.append(
        _rule(
            "b_count_exceeds_c_plus_r",
            not warn and s > q + r,
            f"s={s} > q+r={q}+{r}" + (" [skipped: low-degree relations]" if warn else ""),
            "depth",
            "<=",
            d + 1,
            dep,
        )
    )
    out.append(
        _rule(
            "b_count_below_2r",
            not warn and s < 2 * r,
            f"s={s} < 2r={2 * r}" + (" [skipped: low-degree relations]" if warn else ""),
            "depth",
            "<=",
            d + 1,
            dep,
        )
    )

    out.append(
        _rule(
            "sdepth_eq_min_forces_depth",
            not warn and sv == d,
            f"sdepth={sv}, d={d}",
            "depth",
            "==",
            d,
            dep,
        )
    )

    conj_small = r == 1 or (1 < r <= 3 and not st.E)
    out.append(
        _rule(
            "conjecture_small_cases",
            not warn and sv == d + 1 and conj_small,
            f"sdepth={sv}=d+1, r={r}, |E|={len(st.E)}",
            "depth",
            "<=",
            d + 1,
            dep,
        )
    )
    out.append(
        _rule(
            "three_generators_step",
            not warn and sv == d + 1 and r <= 3,
            f"sdepth={sv}=d+1, r={r}",
            "depth",
            "<=",
            d + 1,
            dep,
        )
    )
    escape = _support_escape(st)
    out.append(
        _rule(
            "four_generators_step",
            not warn and sv == d + 1 and r == 4 and not st.E and escape is not None,
            f"sdepth={sv}=d+1, r={r}, |E|={len(st.E)}, escape={escape}",
            "depth",
            "<=",
            d + 1,
            dep,
        )
    )

    wb_or_e = {m.mask for m in st.W_B} | {m.mask for m in st.E}
    covered = all(b.mask in wb_or_e for b in st.B)
    out.append(
        _rule(
            "cover_by_lcms_depth_one",
            not warn and d == 1 and covered,
            f"d={d}, B inside E union pairwise lcms: {covered}",
            "depth",
            "==",
            1,
            dep,
        )
    )

    # every degree-d divisor of every b must itself be a generator
    f_masks = {f.mask for f in st.f_list}
    closed = not st.E
    if closed:
        for b in st.B:
            t = b.mask
            while t:
                low = t & -t
                if (b.mask ^ low) not in f_masks:
                    closed = False
                    break
                t ^= low
            if not closed:
                break
    out.append(
        _rule(
            "all_low_divisors_generate",
            not warn and closed,
            f"|E|={len(st.E)}, all degree-d divisors of B are generators: {closed}",
            "depth",
            "==",
            d,
            dep,
        )
    )

    if colon_rules:
        out.extend(_colon_restriction_rules(Q, cache, dep))
    return tuple(out)


def _colon_restriction_rules(
    Q: QuotientPair, cache: EngineCache, dep: int
) -> list[Verdict]:
    """Count B and C inside each variable restriction I∩(x_t)/J∩(x_t).

    When the restricted pair has more degree-(d_t+1) elements than
    C-count plus degree-d_t count, its sdepth is at most d_t+1 by counting.
    If on top of that the restriction is normalized and falls in a proved
    conjecture case, its depth is at most d_t+1 as well, and localization
    monotonicity carries that bound back to the original pair.
    """
    out: list[Verdict] = []
    bits = cache.poset_bits(Q)
    fired = False
    for t in range(1, Q.ambient + 1):
        var = Monomial.of(t)
        xt = Ideal(Q.ambient, (var,))
        It = intersect(Q.I, xt)
        if It.is_zero():
            continue
        Jt = intersect(Q.J, xt)
        if Jt == It:
            continue
        Ut = QuotientPair(It, Jt, field=Q.field)
        st_t = cache.strata(Ut)
        rp_t = _degree_d_poset_count(cache.poset_bits(Ut), st_t)
        if st_t.s <= st_t.q + rp_t:
            continue
        fired = True
        sv_t = cache.sdepth(Ut).value
        detail = {
            "t": t,
            "d_t": st_t.d,
            "s_t": st_t.s,
            "q_t": st_t.q,
            "degree_d_elements": rp_t,
        }
        out.append(
            _rule(
                "colon_restriction_count",
                True,
                f"t={t}: s_t={st_t.s} > q_t+r'_t={st_t.q}+{rp_t}",
                "sdepth(restriction)",
                "<=",
                st_t.d + 1,
                sv_t,
                detail=detail,
            )
        )
        case = _conjecture_case(st_t)
        chain_ok = (
            not Ut.normalization_warning and sv_t <= st_t.d + 1 and case is not None
        )
        out.append(
            _rule(
                "colon_restriction_depth",
                chain_ok,
                f"t={t}: restricted sdepth={sv_t}<=d_t+1={st_t.d + 1}, case {case}",
                "depth",
                "<=",
                st_t.d + 1,
                dep,
                detail=detail,
            )
        )
    if not fired:
        out.append(
            _rule(
                "colon_restriction_count",
                False,
                "no variable restriction satisfies s_t > q_t + r'_t",
            )
        )
    return out


def stanley_observation(Q: QuotientPair, cache: EngineCache | None = None) -> dict | None:
    """Report a pair whose Stanley depth drops below its depth, if any.

    Such a pair would refute the positivity question these bounds orbit, so
    it is surfaced as a finding for manual scrutiny rather than an error.
    """
    cache = cache if cache is not None else EngineCache()
    sv = cache.sdepth(Q).value
    dep = cache.depth(Q).depth
    if sv >= dep:
        return None
    return {
        "kind": "sdepth_below_depth",
        "pair": str(Q),
        "field": Q.field,
        "sdepth": sv,
        "depth": dep,
    }


@dataclass(frozen=True)
class AuditCheck:
    name: str
    param: str
    ok: bool | None          # None: hypothesis not applicable, nothing checked
    values: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "param": self.param, "ok": self.ok, **(
            {"values": self.values} if self.values else {})}


@dataclass(frozen=True)
class AuditReport:
    checks: tuple[AuditCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok is not False for c in self.checks)

    def failures(self) -> tuple[AuditCheck, ...]:
        return tuple(c for c in self.checks if c.ok is False)

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": [c.to_json() for c in self.checks]}


def _pair_or_none(I: Ideal, J: Ideal, field: int) -> QuotientPair | None:
    if J == I:
        return None
    return QuotientPair(I, J, field=field)


def _depth_of(cache: EngineCache, pair: QuotientPair | None) -> int:
    return INF_DEPTH if pair is None else cache.depth(pair).depth


def _sequence_checks(
    name: str, param: str, dA: int, dB: int, dC: int
) -> list[AuditCheck]:
    def show(x: int):
        return "inf" if x >= INF_DEPTH else x

    values = {"first": show(dA), "middle": show(dB), "last": show(dC)}
    out = []
    out.append(
        AuditCheck(
            f"{name}_first", param, dA >= min(dB, dC + 1), values
        )
    )
    out.append(AuditCheck(f"{name}_middle", param, dB >= min(dA, dC), values))
    out.append(AuditCheck(f"{name}_last", param, dC >= min(dA - 1, dB), values))
    return out


def consistency_audit(
    Q: QuotientPair,
    cache: EngineCache | None = None,
    extra_subideals: tuple[Ideal, ...] = (),
) -> AuditReport:
    """Exercise the exact-sequence and localization inequalities on a pair.

    Every check compares quantities computed by the exact engines, so a
    failure is a defect, not a property of the input.
    """
    cache = cache if cache is not None else EngineCache()
    checks: list[AuditCheck] = []
    dB = cache.depth(Q).depth
    n = Q.ambient

    for j in range(1, n + 1):
        cp = colon_pair(Q, j)
        if cp is None:
            checks.append(AuditCheck("colon_depth_monotone", f"j={j}", None))
            continue
        dA = cache.depth(cp).depth
        checks.append(
            AuditCheck(
                "colon_depth_monotone",
                f"j={j}",
                dA >= dB,
                {"colon_depth": dA, "depth": dB},
            )
        )

    for t in range(1, n + 1):
        param = f"t={t}"
        var_ideal = Ideal(n, (Monomial.of(t),))
        A = colon_pair(Q, t)
        K = ideal_sum(Q.J, intersect(Q.I, var_ideal))
        C = None if K.contains_ideal(Q.I) else QuotientPair(Q.I, K, field=Q.field)
        dA = _depth_of(cache, A)
        dC = _depth_of(cache, C)
        checks.extend(_sequence_checks("colon_sequence", param, dA, dB, dC))
        if dC < INF_DEPTH and dB >= dC + 1:
            checks.append(
                AuditCheck(
                    "colon_bound_step",
                    param,
                    dB == dC + 1,
                    {"depth": dB, "quotient_by_restriction": dC},
                )
            )
        else:
            checks.append(AuditCheck("colon_bound_step", param, None))

    st = cache.strata(Q)
    subs = []
    if st.E:
        subs.append(Ideal(n, st.f_list))
    subs.extend(extra_subideals)
    for sub in subs:
        param = f"I'={sub}"
        if sub.is_zero():
            continue
        A = _pair_or_none(sub, intersect(Q.J, sub), Q.field)
        K = ideal_sum(Q.J, sub)
        C = None if K.contains_ideal(Q.I) else QuotientPair(Q.I, K, field=Q.field)
        dA = _depth_of(cache, A)
        dC = _depth_of(cache, C)
        checks.extend(_sequence_checks("subideal_sequence", param, dA, dB, dC))

    return AuditReport(tuple(checks))


def inconsistencies(verdicts: tuple[Verdict, ...], audit: AuditReport | None = None):
    bad = [v for v in verdicts if v.consistent is False]
    if audit is not None:
        bad.extend(audit.failures())
    return tuple(bad)
