"""Prefix-normality checks, prefix normal forms, abelian complexity, and
minimum-density machinery for finite words and stream prefixes.

A word is 1-prefix normal when no factor has more 1s than the prefix of the
same length; the 0-flavour is the complemented dual. The prefix normal forms
of a word are the unique prefix normal words sharing its max-1s (resp.
max-0s) function, and their prefix weights bound the weight of every factor,
which makes abelian complexity a simple width computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Protocol

import numpy as np

from .errors import InvalidInputError, NoBoundError, RangeError
from .word_core import (
    FiniteWord,
    ParikhVector,
    PrefixProfile,
    complement,
    compute_profile,
    prefix_density,
)


class PrefixSource(Protocol):
    """Anything that can materialize its first ``n`` symbols."""

    def prefix(self, n: int) -> FiniteWord: ...


@dataclass(frozen=True)
class PNViolation:
    """Witness that a word is not prefix normal.

    The factor of ``factor_length`` symbols starting at 1-based position
    ``factor_start`` carries ``factor_ones`` 1s, strictly more than the
    ``prefix_ones`` found in the prefix of the same length. Violations are
    reported smallest length first, then smallest start.
    """

    factor_start: int
    factor_length: int
    factor_ones: int
    prefix_ones: int

    def render(self) -> str:
        return (
            f"len={self.factor_length} start={self.factor_start} "
            f"ones={self.factor_ones} prefix_ones={self.prefix_ones}"
        )


def find_violation_1(w: FiniteWord) -> PNViolation | None:
    """First factor with more 1s than the same-length prefix, or None.

    ``None`` means ``w`` is 1-prefix normal; the empty word is vacuously
    normal. The scan goes length by length, so the first violation has
    minimal length and, within it, minimal starting position.
    """
    n = len(w)
    if n == 0:
        return None
    sums = w.prefix_sums()
    for i in range(1, n + 1):
        window = sums[i:] - sums[: n - i + 1]
        limit = sums[i]
        if window.max() > limit:
            j = int(np.argmax(window > limit))
            return PNViolation(
                factor_start=j + 1,
                factor_length=i,
                factor_ones=int(window[j]),
                prefix_ones=int(limit),
            )
    return None


def find_violation_0(w: FiniteWord) -> PNViolation | None:
    """Dual of :func:`find_violation_1`; the reported counts refer to 0s."""
    return find_violation_1(complement(w))


def is_prefix_normal_1(w: FiniteWord) -> bool:
    return find_violation_1(w) is None


def is_prefix_normal_0(w: FiniteWord) -> bool:
    return find_violation_0(w) is None


def check_stream_prefix_normal(source: PrefixSource, length: int) -> PNViolation | None:
    """Verdict for the length-``length`` prefix of a stream.

    Normality of a prefix implies normality of all shorter prefixes, so a
    single check at the target length suffices.
    """
    if length < 1:
        raise RangeError("length must be at least 1")
    return find_violation_1(source.prefix(length))


# -- prefix normal forms and abelian complexity ----------------------------------


def pnf1(profile: PrefixProfile) -> FiniteWord:
    """The 1-prefix normal word whose prefix weights equal the max-1s function."""
    bits = bytearray(profile.length)
    prev = 0
    for i, hi in enumerate(profile.max_ones):
        bits[i] = hi - prev
        prev = hi
    return FiniteWord(bits)


def pnf0(profile: PrefixProfile) -> FiniteWord:
    """The 0-prefix normal word whose prefix weights equal the min-1s function.

    Equivalently: the complemented first differences of the max-0s function.
    """
    bits = bytearray(profile.length)
    prev = 0
    for i, lo in enumerate(profile.min_ones):
        bits[i] = lo - prev
        prev = lo
    return FiniteWord(bits)


def abelian_complexity(profile: PrefixProfile, n: int) -> int:
    """Number of distinct Parikh vectors among factors of length ``n``."""
    return profile.max_ones_at(n) - profile.min_ones_at(n) + 1


def parikh_set(profile: PrefixProfile, n: int) -> set[ParikhVector]:
    """All Parikh vectors of length-``n`` factors.

    The achievable weights of length-``n`` factors form a full integer
    interval: sliding a window one step changes its weight by at most one, so
    every count between the minimum and the maximum occurs.
    """
    lo, hi = profile.min_ones_at(n), profile.max_ones_at(n)
    return {ParikhVector(n - y, y) for y in range(lo, hi + 1)}


def format_parikh_set(vectors: set[ParikhVector]) -> str:
    """Render a Parikh-vector set as ``(zeros,ones)`` pairs, ascending by ones."""
    ordered = sorted(vectors, key=lambda v: v.ones)
    return " ".join(f"({v.zeros},{v.ones})" for v in ordered)


def reliable_pnf_window(window_length: int) -> int:
    """Heuristic bound up to which profile-derived statistics of a finite
    prefix are trusted to match the underlying infinite word."""
    return window_length // 4


# -- minimum density --------------------------------------------------------------


@dataclass(frozen=True)
class MinDensityReport:
    """Minimum prefix density of a word, with the least index attaining it.

    ``delta`` equals ``Fraction(kappa, iota)``; ``iota`` is the least prefix
    length whose density is minimal and ``kappa`` is that prefix's weight.
    """

    delta: Fraction
    iota: int
    kappa: int


def min_density(w: FiniteWord) -> MinDensityReport:
    """Exact minimum over the prefix densities of ``w``."""
    n = len(w)
    if n == 0:
        raise InvalidInputError("minimum density of the empty word is undefined")
    sums = w.prefix_sums()
    best_num, best_den = int(sums[1]), 1
    for i in range(2, n + 1):
        weight = int(sums[i])
        if weight * best_den < best_num * i:
            best_num, best_den = weight, i
    return MinDensityReport(delta=Fraction(best_num, best_den), iota=best_den, kappa=best_num)


class UltimatelyPeriodicWord:
    """An infinite word ``preperiod + period + period + ...``.

    Construction canonicalizes to the minimal representation: the period is
    reduced to its primitive root and trailing preperiod symbols that merely
    rotate the period are absorbed, so the period is never a suffix of the
    preperiod.
    """

    __slots__ = ("preperiod", "period")

    def __init__(self, preperiod: FiniteWord, period: FiniteWord):
        preperiod, period = FiniteWord(preperiod), FiniteWord(period)
        if len(period) == 0:
            raise InvalidInputError("period must be non-empty")
        period = _primitive_root(period)
        pre, per = bytes(preperiod), bytes(period)
        while pre and pre[-1] == per[-1]:
            per = per[-1:] + per[:-1]
            pre = pre[:-1]
        self.preperiod = FiniteWord(pre)
        self.period = FiniteWord(per)

    def prefix(self, n: int) -> FiniteWord:
        if n < 0:
            raise RangeError("prefix length must be non-negative")
        reps = max(0, -(-(n - len(self.preperiod)) // len(self.period)))
        return (self.preperiod + self.period * reps)[:n]

    def period_density(self) -> Fraction:
        return Fraction(self.period.weight, len(self.period))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, UltimatelyPeriodicWord):
            return (self.preperiod, self.period) == (other.preperiod, other.period)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((UltimatelyPeriodicWord, self.preperiod, self.period))

    def __repr__(self) -> str:
        return f"UltimatelyPeriodicWord({str(self.preperiod)!r}, {str(self.period)!r})"


def _primitive_root(x: FiniteWord) -> FiniteWord:
    raw = bytes(x)
    n = len(raw)
    for d in range(1, n + 1):
        if n % d == 0 and raw[:d] * (n // d) == raw:
            return FiniteWord(raw[:d])
    return x


def min_density_up(w: UltimatelyPeriodicWord) -> Fraction:
    """Exact minimum density of an ultimately periodic word.

    Along each residue class modulo the period length the prefix densities
    are monotone toward the period's density, so the infimum is the smaller
    of the period density and the best density within the first
    ``len(preperiod) + len(period)`` prefixes. The result is always rational.
    """
    head = len(w.preperiod) + len(w.period)
    lead = w.prefix(head)
    best = min(prefix_density(lead, i) for i in range(1, head + 1))
    return min(best, w.period_density())


# -- balance and prepending ------------------------------------------------------


def is_c_balanced(w: FiniteWord, c: int) -> bool:
    """True when any two equal-length factors differ by at most ``c`` 1s."""
    if c < 1:
        raise RangeError("balance constant must be positive")
    if len(w) == 0:
        return True
    profile = compute_profile(w)
    return all(hi - lo <= c for hi, lo in zip(profile.max_ones, profile.min_ones))


def prepend_ones_bound(profile: PrefixProfile, c: int) -> int:
    """A certified count of 1s to prepend to make a ``c``-balanced word prefix normal.

    With ``r`` the longest observed run of 1s, the word has no run of length
    ``r + 1`` and prepending ``(r + 1) * c`` ones is sufficient. The bound is
    generally not tight; compare with :func:`empirical_min_prepend`.
    """
    if c < 1:
        raise RangeError("balance constant must be positive")
    if any(hi - lo > c for hi, lo in zip(profile.max_ones, profile.min_ones)):
        raise InvalidInputError(f"profile is not {c}-balanced")
    run = 0
    for i, hi in enumerate(profile.max_ones, start=1):
        if hi == i:
            run = i
    if run == profile.length:
        raise NoBoundError("every observed length is a run of 1s; no run bound certifiable")
    return (run + 1) * c


def empirical_min_prepend(source: PrefixSource, length: int, kmax: int) -> int | None:
    """Least ``k <= kmax`` with ``1^k + prefix`` prefix normal, or None."""
    if kmax < 0:
        raise RangeError("kmax must be non-negative")
    prefix = source.prefix(length)
    for k in range(kmax + 1):
        if find_violation_1(FiniteWord.ones(k) + prefix) is None:
            return k
    return None


# -- lexicographic order ----------------------------------------------------------


def is_prenecklace_prefix(w: FiniteWord) -> bool:
    """True when every suffix of ``w`` is lexicographically at most ``w``
    over their common length (finite view of the shift condition)."""
    text = str(w)
    n = len(text)
    return all(text[i:] <= text[: n - i] for i in range(1, n))


@lru_cache(maxsize=64)
def _suffix_starts_descending(w: FiniteWord) -> tuple[int, ...]:
    text = str(w)
    return tuple(sorted(range(len(text)), key=lambda j: text[j:], reverse=True))


def _extreme_factor(w: FiniteWord, n: int, greatest: bool) -> FiniteWord:
    if not 1 <= n <= len(w):
        raise RangeError(f"factor length {n} out of range 1..{len(w)}")
    order = _suffix_starts_descending(w)
    last = len(w) - n
    starts = order if greatest else reversed(order)
    for j in starts:
        if j <= last:
            return w[j : j + n]
    raise AssertionError("unreachable: some window always exists")


def max_word(w: FiniteWord, n: int) -> FiniteWord:
    """Lexicographically greatest length-``n`` factor of ``w``.

    The greatest factor is the length-``n`` prefix of the greatest suffix
    long enough to provide a full window, so one suffix ordering answers
    every length.
    """
    return _extreme_factor(w, n, greatest=True)


def min_word(w: FiniteWord, n: int) -> FiniteWord:
    """Lexicographically smallest length-``n`` factor of ``w``."""
    return _extreme_factor(w, n, greatest=False)
