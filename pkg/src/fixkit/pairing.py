"""Bijective pairing on naturals, shared by the evaluator and the coder.

The combinator ``p`` acts on numerals through this bijection, and the
Goedel coder builds codes from the same function.  That identification is
what makes object-level code surgery (projections of a code) a handful of
reduction steps instead of an arithmetic search.

The construction groups pairs by total payload length in bijective binary,
so the value of ``pair(a, b)`` has roughly ``bits(a) + bits(b)`` bits.  A
quadratic scheme (Cantor-style) doubles the bit length at every nesting
level, which makes codes of program-sized terms unrepresentable.

Properties (all exercised by tests):
  * pair is a bijection N x N -> N,
  * pair(a, b) >= a and pair(a, b) >= b,
  * pair(0, 0) = 0.
"""

from __future__ import annotations


def _to_bij(n: int) -> tuple[int, int]:
    """Bijective-binary payload of n: (bit count, bits as an int)."""
    m = n + 1
    length = m.bit_length() - 1
    return length, m - (1 << length)


def _from_bij(length: int, bits: int) -> int:
    return (1 << length) + bits - 1


def _offset(t: int) -> int:
    # number of pairs whose payloads total fewer than t bits:
    # sum_{m<t} (m+1)*2^m = (t-1)*2^t + 1 for t >= 1
    if t == 0:
        return 0
    return (t - 1) * (1 << t) + 1


def pair(a: int, b: int) -> int:
    if a < 0 or b < 0:
        raise ValueError("pair takes naturals")
    la, ua = _to_bij(a)
    lb, ub = _to_bij(b)
    t = la + lb
    return _offset(t) + (la << t) + (ua << lb) + ub


def unpair(c: int) -> tuple[int, int]:
    if c < 0:
        raise ValueError("unpair takes naturals")
    # binary-search the payload-length group (offset is monotone in t)
    lo, hi = 0, c.bit_length() + 2
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if _offset(mid) <= c:
            lo = mid
        else:
            hi = mid - 1
    t = lo
    rem = c - _offset(t)
    la = rem >> t
    payload = rem & ((1 << t) - 1)
    lb = t - la
    ua = payload >> lb
    ub = payload & ((1 << lb) - 1)
    return _from_bij(la, ua), _from_bij(lb, ub)


def unpair_left(c: int) -> int:
    return unpair(c)[0]


def unpair_right(c: int) -> int:
    return unpair(c)[1]
