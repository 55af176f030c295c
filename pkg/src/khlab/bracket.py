"""Bracket polynomial (A- and q-forms) and the normalized Jones polynomial.

Two routes to the q-bracket are kept side by side so they can check each
other: :func:`bracket_q` sums the monomials ``(-1)^i q^j`` over enhanced
states, while :func:`bracket_skein` expands the crossings one at a time and
memoizes on the connectivity of the still-open edges.
"""

from __future__ import annotations

from functools import lru_cache

from .diagram import KnotDiagram
from .errors import CapExceededError
from .polynomials import LaurentPoly
from .resolution import check_cap, enumerate_enhanced, enumerate_states, smoothing_pairs

LOOP_Q = LaurentPoly({1: 1, -1: 1}, "q")
LOOP_A = LaurentPoly({2: -1, -2: -1}, "A")


def bracket_A(d: KnotDiagram, cap: int | None = None) -> LaurentPoly:
    """``<K> = sum_S A^(#A - #B) delta^||S||`` with ``delta = -A^2 - A^-2``."""
    n = d.crossing_count
    powers = {}
    total = LaurentPoly({}, "A")
    for st in enumerate_states(d, cap):
        b = st.resolution.b_count
        loops = st.loop_count
        if loops not in powers:
            powers[loops] = LOOP_A ** loops
        total = total + powers[loops].shift(n - 2 * b)
    return total


def a_to_q(poly: LaurentPoly, crossings: int) -> LaurentPoly:
    """Rewrite an A-bracket in q: multiply by ``A^-c`` then set ``A^2 = -q^-1``."""
    out: dict[int, int] = {}
    for e, c in poly.terms.items():
        e -= crossings
        if e % 2:
            raise ValueError("odd power of A after normalization; not a diagram bracket")
        k = e // 2
        out[-k] = out.get(-k, 0) + c * (-1) ** (k % 2)
    return LaurentPoly(out, "q")


def bracket_q(d: KnotDiagram, cap: int | None = None) -> LaurentPoly:
    """``<K> = sum_s (-1)^i(s) q^j(s)`` over all enhanced states."""
    terms: dict[int, int] = {}
    for s in enumerate_enhanced(d, cap):
        j = s.j
        terms[j] = terms.get(j, 0) + (-1) ** s.i
    return LaurentPoly(terms, "q")


def bracket_skein(d: KnotDiagram, cap: int | None = None) -> LaurentPoly:
    """Recursive expansion ``<X> = <A-smoothing> - q <B-smoothing>``.

    Crossings are smoothed in order.  The edges whose two ends have both
    been processed are "finished"; a block of joined edges that is entirely
    finished is a closed loop and contributes ``q + q^-1``.  The remaining
    open blocks are the memoization key.
    """
    check_cap(d, cap)
    crossings = d.crossings
    n = len(crossings)
    last_seen: dict[int, int] = {}
    for k, x in enumerate(crossings):
        for e in x:
            last_seen[e] = k
    neg_q = LaurentPoly({1: -1}, "q")

    @lru_cache(maxsize=None)
    def expand(k: int, blocks: frozenset) -> LaurentPoly:
        if k == n:
            return LaurentPoly({0: 1}, "q")
        total = LaurentPoly({}, "q")
        for weight, b in ((None, False), (neg_q, True)):
            merged = [set(blk) for blk in blocks]
            for u, v in smoothing_pairs(crossings[k], b):
                hit = [blk for blk in merged if u in blk or v in blk]
                joined = {u, v}.union(*hit) if hit else {u, v}
                merged = [blk for blk in merged if not any(blk is h for h in hit)] + [joined]
            closed = sum(1 for blk in merged if all(last_seen[e] <= k for e in blk))
            rest = frozenset(frozenset(blk) for blk in merged if not all(last_seen[e] <= k for e in blk))
            term = expand(k + 1, rest)
            if closed:
                term = term * LOOP_Q ** closed
            total = total + (term if weight is None else term * weight)
        return total

    try:
        return expand(0, frozenset()) * LOOP_Q ** d.free_loops
    finally:
        expand.cache_clear()


def jones(d: KnotDiagram, cap: int | None = None) -> LaurentPoly:
    """``J_K = (-1)^n- q^(n+ - 2 n-) <K>``; the unknot gives ``q + q^-1``."""
    sign = -1 if d.n_minus % 2 else 1
    return (bracket_q(d, cap) * sign).shift(d.n_plus - 2 * d.n_minus)


__all__ = ["LaurentPoly", "bracket_A", "bracket_q", "bracket_skein", "a_to_q", "jones", "CapExceededError"]
