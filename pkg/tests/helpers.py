"""Shared strategies, brute-force oracles, and the acceptance-line registry.

The oracles here are deliberately independent re-implementations: they favor
direct enumeration over the algorithms under test, so an agreement is
evidence rather than tautology.
"""
from __future__ import annotations

import time
from contextlib import contextmanager
from fractions import Fraction
from itertools import combinations

from hypothesis import strategies as st

from sdepthlab.monomials import Ideal, Monomial, QuotientPair


# -- random instances --------------------------------------------------------

@st.composite
def quotient_pairs(draw, max_n: int = 5, max_gens: int = 4,
                   normalized: bool = True) -> QuotientPair:
    """Random validated pairs; J is sampled from members of I.

    With `normalized=True` every J generator has degree > d, so the pair
    never carries a normalization warning.
    """
    n = draw(st.integers(min_value=2, max_value=max_n))
    k = draw(st.integers(min_value=1, max_value=max_gens))
    gens = [Monomial(draw(st.integers(min_value=1, max_value=(1 << n) - 1)))
            for _ in range(k)]
    I = Ideal(n, gens)
    d = min(g.degree for g in I.gens)
    floor = d + 1 if normalized else 1
    pool = [m for m in range(1, 1 << n)
            if I.member_mask(m) and m.bit_count() >= floor]
    jgens: list[Monomial] = []
    if pool:
        jn = draw(st.integers(min_value=0, max_value=3))
        jgens = [Monomial(draw(st.sampled_from(pool))) for _ in range(jn)]
    J = Ideal(n, jgens)
    if J.contains_ideal(I):
        J = Ideal(n)
    return QuotientPair(I, J)


@st.composite
def proper_ideals(draw, max_n: int = 5, max_gens: int = 4) -> Ideal:
    """Random nonzero, non-unit squarefree ideals (for S/I-form pairs)."""
    n = draw(st.integers(min_value=2, max_value=max_n))
    k = draw(st.integers(min_value=1, max_value=max_gens))
    gens = [Monomial(draw(st.integers(min_value=1, max_value=(1 << n) - 1)))
            for _ in range(k)]
    return Ideal(n, gens)


def unit_ideal(n: int) -> Ideal:
    return Ideal(n, [Monomial(0)])


def si_pair(I: Ideal, field: int = 0) -> QuotientPair:
    """The S/I form: the quotient of the unit ideal by I."""
    return QuotientPair(unit_ideal(I.ambient), I, field=field)


# -- brute-force oracles ------------------------------------------------------

def brute_poset_masks(Q: QuotientPair) -> list[int]:
    """Masks of squarefree monomials in I\\J, by direct membership tests."""
    return [m for m in range(1 << Q.ambient)
            if Q.I.member_mask(m) and not Q.J.member_mask(m)]


def brute_monomial_count(Q: QuotientPair, degree: int) -> int:
    """Number of (not necessarily squarefree) degree-k monomials in I\\J,
    counted by enumerating exponent vectors."""
    n = Q.ambient

    def count(idx: int, remaining: int, support: int) -> int:
        if idx == n:
            if remaining:
                return 0
            return int(Q.I.member_mask(support)
                       and not Q.J.member_mask(support))
        total = count(idx + 1, remaining, support)
        for e in range(1, remaining + 1):
            total += count(idx + 1, remaining - e, support | (1 << idx))
        return total

    return count(0, degree, 0)


def rank_fraction_gauss(rows: list[list[int]]) -> int:
    """Rank over Q by plain Gaussian elimination with Fractions."""
    if not rows or not rows[0]:
        return 0
    a = [[Fraction(x) for x in row] for row in rows]
    nrows, ncols = len(a), len(a[0])
    rank = 0
    row = 0
    for col in range(ncols):
        piv = next((i for i in range(row, nrows) if a[i][col]), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        inv = 1 / a[row][col]
        a[row] = [x * inv for x in a[row]]
        for i in range(nrows):
            if i != row and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[row])]
        row += 1
        rank += 1
        if row == nrows:
            break
    return rank


def _det_int(mat: list[list[int]]) -> int:
    if len(mat) == 1:
        return mat[0][0]
    total = 0
    for j, head in enumerate(mat[0]):
        if not head:
            continue
        minor = [row[:j] + row[j + 1:] for row in mat[1:]]
        total += (-1) ** j * head * _det_int(minor)
    return total


def rank_minor_oracle(rows: list[list[int]], char: int) -> int:
    """Rank as the largest k admitting a k-by-k minor with nonzero
    determinant (reduced mod the characteristic when positive)."""
    if not rows or not rows[0]:
        return 0
    nrows, ncols = len(rows), len(rows[0])
    for k in range(min(nrows, ncols), 0, -1):
        for ri in combinations(range(nrows), k):
            for ci in combinations(range(ncols), k):
                sub = [[rows[i][j] for j in ci] for i in ri]
                det = _det_int(sub)
                if char:
                    det %= char
                if det:
                    return k
    return 0


def expand_series(k_poly: tuple[int, ...], m: int, horizon: int) -> list[int]:
    """Coefficients 0..horizon of K(t)/(1-t)^m by iterated prefix sums."""
    coeffs = list(k_poly) + [0] * max(0, horizon + 1 - len(k_poly))
    coeffs = coeffs[: horizon + 1]
    for _ in range(m):
        run = 0
        for i in range(len(coeffs)):
            run += coeffs[i]
            coeffs[i] = run
    return coeffs


# -- acceptance-line registry -------------------------------------------------

CRITERIA: dict[int, str] = {}
ACCEPTANCE: dict[int, dict] = {}


@contextmanager
def criterion(num: int, budget: float | None = None):
    """Record one acceptance criterion's outcome and wall time.

    The body's assertions decide PASS/FAIL; `budget` (seconds) is itself an
    assertion.  Results feed the per-criterion summary lines printed at the
    end of the pytest run.
    """
    desc = CRITERIA[num]
    entry = {"desc": desc, "outcome": "FAIL", "seconds": None}
    ACCEPTANCE[num] = entry
    t0 = time.perf_counter()
    try:
        yield entry
        elapsed = time.perf_counter() - t0
        entry["seconds"] = elapsed
        if budget is not None and elapsed > budget:
            raise AssertionError(
                f"criterion {num} took {elapsed:.2f}s, budget {budget}s"
            )
        entry["outcome"] = "PASS"
    except BaseException:
        if entry["seconds"] is None:
            entry["seconds"] = time.perf_counter() - t0
        raise
