"""Core value types for finite binary words and their factor statistics.

Everything here is an immutable value: words, Parikh vectors, and prefix
profiles can be shared freely between threads. Densities are exact rationals;
no floating point is used anywhere in comparisons.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple, Union

import numpy as np

from .errors import InvalidInputError, RangeError

# Exact arbitrary-precision rationals back every density and slope comparison.
Rational = Fraction

_TO_ASCII = bytes.maketrans(b"\x00\x01", b"01")
_FROM_ASCII = bytes.maketrans(b"01", b"\x00\x01")

BitsLike = Union["FiniteWord", str, bytes, bytearray, memoryview, Iterable[int]]


class FiniteWord:
    """An immutable finite binary word.

    Accepts a bitstring (``"0110"``) or any iterable of 0/1 integers. Words
    behave like sequences (length, 0-based indexing, slicing, iteration,
    concatenation with ``+``, repetition with ``*``) and are hashable.
    ``str()`` renders the plain bitstring.
    """

    __slots__ = ("_bits", "_sums")

    def __init__(self, bits: BitsLike = b""):
        if isinstance(bits, FiniteWord):
            raw = bits._bits
        elif isinstance(bits, str):
            try:
                encoded = bits.encode("ascii")
            except UnicodeEncodeError:
                raise InvalidInputError(f"not a binary word: {bits!r}") from None
            if encoded.translate(None, b"01"):
                raise InvalidInputError(f"not a binary word: {bits!r}")
            raw = encoded.translate(_FROM_ASCII)
        else:
            raw = bytes(bits)
            if raw.translate(None, b"\x00\x01"):
                raise InvalidInputError("symbol values must be 0 or 1")
        self._bits = raw
        self._sums: np.ndarray | None = None

    @classmethod
    def zeros(cls, n: int) -> "FiniteWord":
        return cls(b"\x00" * n)

    @classmethod
    def ones(cls, n: int) -> "FiniteWord":
        return cls(b"\x01" * n)

    @property
    def weight(self) -> int:
        """Number of 1s in the word."""
        return self._bits.count(1)

    def prefix_sums(self) -> np.ndarray:
        """Array ``P`` with ``P[i]`` = number of 1s among the first ``i`` symbols."""
        if self._sums is None:
            sums = np.zeros(len(self._bits) + 1, dtype=np.int64)
            if self._bits:
                np.cumsum(np.frombuffer(self._bits, dtype=np.uint8), out=sums[1:])
            sums.setflags(write=False)
            self._sums = sums
        return self._sums

    def __len__(self) -> int:
        return len(self._bits)

    def __bool__(self) -> bool:
        return bool(self._bits)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return FiniteWord(self._bits[item])
        return self._bits[item]

    def __iter__(self) -> Iterator[int]:
        return iter(self._bits)

    def __bytes__(self) -> bytes:
        return self._bits

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FiniteWord):
            return self._bits == other._bits
        return NotImplemented

    def __hash__(self) -> int:
        return hash((FiniteWord, self._bits))

    def __add__(self, other: "FiniteWord") -> "FiniteWord":
        if not isinstance(other, FiniteWord):
            return NotImplemented
        return FiniteWord(self._bits + other._bits)

    def __mul__(self, times: int) -> "FiniteWord":
        if not isinstance(times, int):
            return NotImplemented
        return FiniteWord(self._bits * times)

    __rmul__ = __mul__

    def __str__(self) -> str:
        return self._bits.translate(_TO_ASCII).decode("ascii")

    def __repr__(self) -> str:
        return f"FiniteWord({str(self)!r})"


class ParikhVector(NamedTuple):
    """Symbol counts of a word, as (number of 0s, number of 1s)."""

    zeros: int
    ones: int


class LexOrder(enum.Enum):
    """Outcome of a lexicographic comparison with 0 < 1.

    ``PREFIX`` means the first word is a strict prefix of the second (and thus
    precedes it); when the second word is a strict prefix of the first, the
    result is ``GREATER``.
    """

    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"
    PREFIX = "prefix"


def parikh(u: FiniteWord) -> ParikhVector:
    """Exact counts of 0s and 1s in ``u``."""
    ones = u.weight
    return ParikhVector(len(u) - ones, ones)


def complement(u: FiniteWord) -> FiniteWord:
    """Bitwise complement; an involution."""
    return FiniteWord(u._bits.translate(bytes.maketrans(b"\x00\x01", b"\x01\x00")))


def reverse(u: FiniteWord) -> FiniteWord:
    """Order reversal; an involution."""
    return FiniteWord(u._bits[::-1])


def prefix_weight(w: FiniteWord, i: int) -> int:
    """Number of 1s among the first ``i`` symbols of ``w`` (``i = 0`` gives 0)."""
    if not 0 <= i <= len(w):
        raise RangeError(f"prefix length {i} out of range 0..{len(w)}")
    return int(w.prefix_sums()[i])


def prefix_density(w: FiniteWord, i: int) -> Fraction:
    """Exact density of the length-``i`` prefix, as a fraction in lowest terms."""
    if not 1 <= i <= len(w):
        raise RangeError(f"prefix length {i} out of range 1..{len(w)}")
    return Fraction(prefix_weight(w, i), i)


def lex_compare(u: FiniteWord, v: FiniteWord) -> LexOrder:
    """Lexicographic comparison of two words with 0 < 1.

    A strict prefix precedes any of its extensions; that case is reported
    separately as ``LexOrder.PREFIX`` when ``u`` is the prefix.
    """
    if u._bits == v._bits:
        return LexOrder.EQUAL
    if v._bits.startswith(u._bits):
        return LexOrder.PREFIX
    if u._bits.startswith(v._bits):
        return LexOrder.GREATER
    return LexOrder.LESS if u._bits < v._bits else LexOrder.GREATER


@dataclass(frozen=True)
class PrefixProfile:
    """Maximum and minimum 1s over factors of each length of some word.

    ``max_ones[k]`` / ``min_ones[k]`` hold the extreme number of 1s over all
    factors of length ``k + 1``; the 1-based accessors below match the
    convention used throughout the documentation. The corresponding 0s
    statistics are derived, never stored.
    """

    length: int
    max_ones: tuple[int, ...]
    min_ones: tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.length
        if n < 1:
            raise InvalidInputError("profile requires a non-empty word")
        if len(self.max_ones) != n or len(self.min_ones) != n:
            raise InvalidInputError("profile arrays must cover lengths 1..n")
        prev_max, prev_min = 0, 0
        for i, (hi, lo) in enumerate(zip(self.max_ones, self.min_ones), start=1):
            if not 0 <= lo <= hi <= i:
                raise InvalidInputError(f"profile values out of bounds at length {i}")
            if hi - prev_max not in (0, 1) or lo - prev_min not in (0, 1):
                raise InvalidInputError(f"profile steps must be 0 or 1 at length {i}")
            prev_max, prev_min = hi, lo

    def _check(self, i: int) -> None:
        if not 1 <= i <= self.length:
            raise RangeError(f"factor length {i} out of range 1..{self.length}")

    def max_ones_at(self, i: int) -> int:
        self._check(i)
        return self.max_ones[i - 1]

    def min_ones_at(self, i: int) -> int:
        self._check(i)
        return self.min_ones[i - 1]

    def max_zeros_at(self, i: int) -> int:
        return i - self.min_ones_at(i)

    def min_zeros_at(self, i: int) -> int:
        return i - self.max_ones_at(i)

    def truncated(self, length: int) -> "PrefixProfile":
        """The restriction of this profile to factor lengths ``1..length``.

        Profiles computed over a generous window and truncated to the range
        of interest approximate an infinite word's statistics better than a
        profile of the short prefix alone.
        """
        self._check(length)
        if length == self.length:
            return self
        return PrefixProfile(
            length=length,
            max_ones=self.max_ones[:length],
            min_ones=self.min_ones[:length],
        )


def compute_profile(w: FiniteWord) -> PrefixProfile:
    """Factor statistics of ``w`` via a sliding window per length.

    For each length ``i`` the window weights are all differences
    ``P[j + i] - P[j]`` of the prefix-sum array, so the total cost is
    quadratic in ``len(w)``.
    """
    n = len(w)
    if n == 0:
        raise InvalidInputError("cannot profile the empty word")
    sums = w.prefix_sums()
    maxs = np.empty(n, dtype=np.int64)
    mins = np.empty(n, dtype=np.int64)
    for i in range(1, n + 1):
        window = sums[i:] - sums[: n - i + 1]
        maxs[i - 1] = window.max()
        mins[i - 1] = window.min()
    return PrefixProfile(length=n, max_ones=tuple(maxs.tolist()), min_ones=tuple(mins.tolist()))
