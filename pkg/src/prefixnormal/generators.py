"""Lazy producers of infinite binary words.

Covers mechanical words with exact rational or quadratic-irrational slopes,
morphic fixpoints (Fibonacci, Thue-Morse), the paperfolding and binary
Champernowne words, the two prefix-normality-preserving extension operators,
and the staged aperiodic construction hitting a prescribed minimum density.

Slope arithmetic never touches floating point: floors, ceilings, and order
comparisons of ``(a + b*sqrt(d))/c`` are decided by integer squaring with sign
case analysis (``math.isqrt`` supplies the exact integer square root).
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Union

import numpy as np

from .errors import (
    InvalidInputError,
    RangeError,
    ResourceLimitError,
    UnsupportedParameterError,
)
from .word_core import FiniteWord

#: Hard cap on materialized prefix length; a desk-scale guardrail.
MATERIALIZE_CAP = 1 << 26


def _floor_times_sqrt(b: int, d: int) -> int:
    """Exact ``floor(b * sqrt(d))`` for a non-square ``d >= 2``."""
    if b == 0:
        return 0
    root = math.isqrt(b * b * d)
    # b*sqrt(d) is irrational, so the floor of the negative branch shifts by one.
    return root if b > 0 else -root - 1


def _sign_linear(a: int, b: int, d: int) -> int:
    """Sign of ``a + b*sqrt(d)`` for a non-square ``d >= 2``."""
    if b == 0:
        return (a > 0) - (a < 0)
    if b > 0:
        if a >= 0:
            return 1
        return 1 if a * a < b * b * d else -1
    return -_sign_linear(-a, -b, d)


def _strip_square_factors(b: int, d: int) -> tuple[int, int]:
    """Rewrite ``b*sqrt(d)`` with a square-free radicand."""
    f = 2
    while f * f <= d:
        while d % (f * f) == 0:
            d //= f * f
            b *= f
        f += 1
    return b, d


class QuadraticIrrational:
    """Exact value ``(a + b*sqrt(d))/c`` with ``b != 0`` and square-free ``d >= 2``.

    Supports the rational-affine arithmetic the generators need (addition and
    multiplication by fractions, reciprocal, negation) plus exact floor, ceil,
    and total-order comparisons against rationals and same-radicand values.
    """

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: int, b: int, c: int, d: int):
        if c == 0:
            raise InvalidInputError("denominator must be non-zero")
        if b == 0:
            raise InvalidInputError("b = 0 denotes a rational; use Fraction instead")
        if d < 2:
            raise InvalidInputError("radicand must be at least 2")
        b, d = _strip_square_factors(b, d)
        if d == 1:
            raise InvalidInputError("radicand is a perfect square; value is rational")
        if c < 0:
            a, b, c = -a, -b, -c
        g = math.gcd(math.gcd(abs(a), abs(b)), c)
        self.a = a // g
        self.b = b // g
        self.c = c // g
        self.d = d

    # -- arithmetic -----------------------------------------------------------

    def _with(self, a: int, b: int, c: int) -> "QuadraticIrrational":
        return QuadraticIrrational(a, b, c, self.d)

    def __neg__(self) -> "QuadraticIrrational":
        return self._with(-self.a, -self.b, self.c)

    def __add__(self, other: Union[int, Fraction]) -> "QuadraticIrrational":
        other = Fraction(other)
        p, q = other.numerator, other.denominator
        return self._with(self.a * q + p * self.c, self.b * q, self.c * q)

    __radd__ = __add__

    def __sub__(self, other: Union[int, Fraction]) -> "QuadraticIrrational":
        return self + (-Fraction(other))

    def __rsub__(self, other: Union[int, Fraction]) -> "QuadraticIrrational":
        return (-self) + Fraction(other)

    def __mul__(self, other: Union[int, Fraction]):
        other = Fraction(other)
        if other == 0:
            return Fraction(0)
        p, q = other.numerator, other.denominator
        return self._with(self.a * p, self.b * p, self.c * q)

    __rmul__ = __mul__

    def reciprocal(self) -> "QuadraticIrrational":
        norm = self.a * self.a - self.b * self.b * self.d
        return QuadraticIrrational(self.c * self.a, -self.c * self.b, norm, self.d)

    def __floor__(self) -> int:
        return (self.a + _floor_times_sqrt(self.b, self.d)) // self.c

    def __ceil__(self) -> int:
        return -math.floor(-self)

    # -- comparisons ----------------------------------------------------------

    def _cmp(self, other: Union[int, Fraction, "QuadraticIrrational"]) -> int:
        if isinstance(other, QuadraticIrrational):
            if other.d != self.d:
                raise UnsupportedParameterError("cannot compare different radicands")
            a = self.a * other.c - other.a * self.c
            b = self.b * other.c - other.b * self.c
            return _sign_linear(a, b, self.d)
        other = Fraction(other)
        p, q = other.numerator, other.denominator
        return _sign_linear(self.a * q - p * self.c, self.b * q, self.d)

    def __lt__(self, other) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other) -> bool:
        return self._cmp(other) >= 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QuadraticIrrational):
            return (self.a, self.b, self.c, self.d) == (other.a, other.b, other.c, other.d)
        if isinstance(other, (int, Fraction)):
            return False  # genuinely irrational
        return NotImplemented

    def __hash__(self) -> int:
        return hash((QuadraticIrrational, self.a, self.b, self.c, self.d))

    def __float__(self) -> float:
        return (self.a + self.b * math.sqrt(self.d)) / self.c

    def __str__(self) -> str:
        return f"({self.a}{self.b:+d}*sqrt({self.d}))/{self.c}"

    def __repr__(self) -> str:
        return f"QuadraticIrrational({self.a}, {self.b}, {self.c}, {self.d})"


_RATIONAL_SLOPE_RE = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+))?\s*$")
_QUADRATIC_SLOPE_RE = re.compile(
    r"^\s*\(\s*(-?\d+)\s*([+-])\s*(\d+)\s*\*\s*sqrt\(\s*(\d+)\s*\)\s*\)\s*/\s*(\d+)\s*$"
)


@dataclass(frozen=True)
class SlopeSpec:
    """An exact slope: either a rational ``p/q`` or ``(a + b*sqrt(d))/c``."""

    value: Union[Fraction, QuadraticIrrational]

    @classmethod
    def rational(cls, p: int, q: int = 1) -> "SlopeSpec":
        if q <= 0:
            raise InvalidInputError("denominator must be positive")
        return cls(Fraction(p, q))

    @classmethod
    def quadratic(cls, a: int, b: int, c: int, d: int) -> "SlopeSpec":
        return cls(QuadraticIrrational(a, b, c, d))

    @classmethod
    def parse(cls, text: str) -> "SlopeSpec":
        """Parse ``"p/q"`` or ``"(a+b*sqrt(d))/c"`` with decimal integers."""
        m = _RATIONAL_SLOPE_RE.match(text)
        if m:
            return cls.rational(int(m.group(1)), int(m.group(2) or 1))
        m = _QUADRATIC_SLOPE_RE.match(text)
        if m:
            a, sign, b, d, c = m.groups()
            return cls.quadratic(int(a), int(b) if sign == "+" else -int(b), int(c), int(d))
        raise InvalidInputError(f"cannot parse slope: {text!r}")

    @property
    def is_rational(self) -> bool:
        return isinstance(self.value, Fraction)

    def compare(self, other: Union[int, Fraction]) -> int:
        """Sign of ``slope - other`` decided exactly."""
        if self.is_rational:
            diff = self.value - Fraction(other)
            return (diff > 0) - (diff < 0)
        return self.value._cmp(other)

    def _affine(self, n: int, intercept: Fraction):
        if n == 0:
            return Fraction(intercept)
        return self.value * n + intercept

    def floor_affine(self, n: int, intercept: Fraction = Fraction(0)) -> int:
        """Exact ``floor(slope * n + intercept)``."""
        return math.floor(self._affine(n, intercept))

    def ceil_affine(self, n: int, intercept: Fraction = Fraction(0)) -> int:
        """Exact ``ceil(slope * n + intercept)``."""
        return math.ceil(self._affine(n, intercept))

    def floor_inverse_times(self, m: int) -> int:
        """Exact ``floor(m / slope)`` for ``m >= 0`` and a positive slope."""
        if m == 0:
            return 0
        if self.is_rational:
            return m * self.value.denominator // self.value.numerator
        return math.floor(self.value.reciprocal() * m)

    def __str__(self) -> str:
        if self.is_rational:
            return f"{self.value.numerator}/{self.value.denominator}"
        return str(self.value)


#: Slope whose characteristic word is the Fibonacci word: (3 - sqrt(5))/2.
FIBONACCI_SLOPE = SlopeSpec.quadratic(3, -1, 2, 5)
#: The slope sqrt(2) - 1, the canonical quadratic example used in the tests.
SQRT2_SLOPE = SlopeSpec.quadratic(-1, 1, 1, 2)


class WordStream:
    """A lazy infinite binary word materialized on demand.

    ``prefix(n)`` returns the first ``n`` symbols; repeated calls are
    consistent because emitted symbols are buffered. Instances are stateful
    and single-owner: safe to hand off between threads, not to share.
    """

    def __init__(self, symbols: Iterable[int]):
        self._it = iter(symbols)
        self._buf = bytearray()

    @property
    def produced(self) -> int:
        """Number of symbols materialized so far."""
        return len(self._buf)

    def prefix(self, n: int) -> FiniteWord:
        if n < 0:
            raise RangeError("prefix length must be non-negative")
        if n > MATERIALIZE_CAP:
            raise ResourceLimitError(f"refusing to materialize more than {MATERIALIZE_CAP} symbols")
        missing = n - len(self._buf)
        if missing > 0:
            self._buf.extend(itertools.islice(self._it, missing))
            if len(self._buf) < n:
                raise InvalidInputError("underlying symbol source ended prematurely")
        return FiniteWord(self._buf[:n])


# -- mechanical words ----------------------------------------------------------


def _validate_mechanical_params(slope: SlopeSpec, intercept: Fraction) -> None:
    if slope.compare(0) < 0 or slope.compare(1) > 0:
        raise RangeError("slope must lie in [0, 1]")
    if not 0 <= intercept < 1:
        raise RangeError("intercept must lie in [0, 1)")
    if not slope.is_rational and intercept != 0:
        raise UnsupportedParameterError("irrational slopes support intercept 0 only")


def _mechanical_symbols(slope: SlopeSpec, intercept: Fraction, upper: bool) -> Iterator[int]:
    at = slope.ceil_affine if upper else slope.floor_affine
    prev = at(0, intercept)
    n = 1
    while True:
        cur = at(n, intercept)
        yield cur - prev
        prev = cur
        n += 1


def mechanical_stream(
    slope: SlopeSpec, intercept: Fraction = Fraction(0), upper: bool = False
) -> WordStream:
    """Stream form of :func:`mechanical_lower` / :func:`mechanical_upper`."""
    intercept = Fraction(intercept)
    _validate_mechanical_params(slope, intercept)
    return WordStream(_mechanical_symbols(slope, intercept, upper))


def mechanical_lower(slope: SlopeSpec, intercept: Fraction, n: int) -> FiniteWord:
    """First ``n`` symbols of the lower mechanical word ``floor(slope*i + intercept)`` differences."""
    return mechanical_stream(slope, intercept, upper=False).prefix(n)


def mechanical_upper(slope: SlopeSpec, intercept: Fraction, n: int) -> FiniteWord:
    """First ``n`` symbols of the upper mechanical word ``ceil(slope*i + intercept)`` differences."""
    return mechanical_stream(slope, intercept, upper=True).prefix(n)


def characteristic_stream(slope: SlopeSpec) -> WordStream:
    """Characteristic word of an irrational slope in (0, 1).

    Equals the upper mechanical word with intercept 0 shifted left by one
    symbol (dropping the leading 1).
    """
    if slope.is_rational:
        raise UnsupportedParameterError("characteristic word requires an irrational slope")
    if slope.compare(0) <= 0 or slope.compare(1) >= 0:
        raise RangeError("slope must lie strictly inside (0, 1)")
    gen = _mechanical_symbols(slope, Fraction(0), upper=True)
    next(gen)
    return WordStream(gen)


def characteristic_word(slope: SlopeSpec, n: int) -> FiniteWord:
    """First ``n`` symbols of the characteristic word of ``slope``."""
    return characteristic_stream(slope).prefix(n)


# -- morphic fixpoints and classic sequences ------------------------------------


@dataclass(frozen=True)
class MorphismSpec:
    """A binary morphism with a designated seed symbol.

    The image of the seed must start with the seed and have length at least 2,
    so that iterating the morphism from the seed converges to a fixpoint.
    """

    image0: FiniteWord
    image1: FiniteWord
    seed: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "image0", FiniteWord(self.image0))
        object.__setattr__(self, "image1", FiniteWord(self.image1))
        if self.seed not in (0, 1):
            raise InvalidInputError("seed must be 0 or 1")
        seed_image = self.image_of(self.seed)
        if len(seed_image) < 2 or seed_image[0] != self.seed:
            raise InvalidInputError("morphism is not prolongable from its seed")

    def image_of(self, symbol: int) -> FiniteWord:
        return self.image0 if symbol == 0 else self.image1


FIBONACCI_MORPHISM = MorphismSpec(FiniteWord("01"), FiniteWord("0"), seed=0)
THUE_MORSE_MORPHISM = MorphismSpec(FiniteWord("01"), FiniteWord("10"), seed=0)


def _morphic_symbols(m: MorphismSpec) -> Iterator[int]:
    images = (bytes(m.image_of(0)), bytes(m.image_of(1)))
    tape = bytearray(images[m.seed])
    emit = 0
    expand = 1  # tape[0]'s image is the initial tape content
    while True:
        if emit < len(tape):
            yield tape[emit]
            emit += 1
        else:
            if expand >= len(tape):
                raise InvalidInputError("morphism fixpoint is finite")
            tape.extend(images[tape[expand]])
            expand += 1


def morphic_stream(m: MorphismSpec) -> WordStream:
    """The fixpoint of ``m`` obtained by iterated expansion from the seed."""
    return WordStream(_morphic_symbols(m))


def morphic_fixpoint(m: MorphismSpec, n: int) -> FiniteWord:
    """First ``n`` symbols of the morphic fixpoint of ``m``."""
    return morphic_stream(m).prefix(n)


def fibonacci_stream() -> WordStream:
    return morphic_stream(FIBONACCI_MORPHISM)


def thue_morse_stream() -> WordStream:
    return morphic_stream(THUE_MORSE_MORPHISM)


def _paperfolding_symbols() -> Iterator[int]:
    i = 1
    while True:
        odd = i >> ((i & -i).bit_length() - 1)
        yield 0 if odd % 4 == 1 else 1
        i += 1


def paperfolding_stream() -> WordStream:
    """The ordinary paperfolding word via the odd-part residue rule."""
    return WordStream(_paperfolding_symbols())


def paperfolding(n: int) -> FiniteWord:
    """First ``n`` symbols of the ordinary paperfolding word."""
    if n < 1:
        raise RangeError("length must be at least 1")
    return paperfolding_stream().prefix(n)


def _champernowne_symbols() -> Iterator[int]:
    for k in itertools.count():
        for ch in format(k, "b"):
            yield 1 if ch == "1" else 0


def champernowne_stream() -> WordStream:
    """Binary expansions of 0, 1, 2, ... concatenated in order."""
    return WordStream(_champernowne_symbols())


def champernowne(n: int) -> FiniteWord:
    """First ``n`` symbols of the binary Champernowne word."""
    if n < 1:
        raise RangeError("length must be at least 1")
    return champernowne_stream().prefix(n)


# -- prefix-normal extension operators -------------------------------------------


def _require_prefix_normal_seed(w: FiniteWord) -> None:
    from .analysis import find_violation_1  # deferred: analysis builds on this module's types

    if w.weight == 0:
        raise InvalidInputError("seed must contain at least one 1")
    violation = find_violation_1(w)
    if violation is not None:
        raise InvalidInputError(f"seed is not prefix normal ({violation.render()})")


class _FlipextEngine:
    """Grows a prefix-normal word by repeatedly appending a minimal run of 0s and a 1.

    The appended run length is the smallest that keeps the word prefix normal.
    Only factors ending at the freshly appended 1 can violate normality, which
    yields a closed form: with ``S(l)`` the weight of the length-``l`` suffix
    and ``pos(t)`` the position of the ``t``-th 1, the run must satisfy
    ``k >= pos(1 + S(l)) - l - 1`` for every ``l < n``.
    """

    def __init__(self, seed: FiniteWord):
        self._bits = bytearray(bytes(seed))
        self._one_positions = [i + 1 for i, bit in enumerate(self._bits) if bit]

    def __len__(self) -> int:
        return len(self._bits)

    def word_prefix(self, n: int) -> FiniteWord:
        return FiniteWord(self._bits[:n])

    def min_zero_run(self) -> int:
        bits = self._bits
        n = len(bits)
        if n == 1:
            return 0
        sums = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.frombuffer(bytes(bits), dtype=np.uint8), out=sums[1:])
        suffix_weight = sums[n] - sums[1:n][::-1]  # index l-1 <-> suffix length l
        positions = np.zeros(len(self._one_positions) + 1, dtype=np.int64)
        positions[1:] = self._one_positions
        needed = positions[suffix_weight + 1] - np.arange(2, n + 1)
        return max(0, int(needed.max()))

    def step(self) -> int:
        k = self.min_zero_run()
        n = len(self._bits)
        self._bits.extend(b"\x00" * k)
        self._bits.append(1)
        self._one_positions.append(n + k + 1)
        return k

    def extend_to(self, n: int) -> None:
        while len(self._bits) < n:
            self.step()


def flipext(w: FiniteWord) -> FiniteWord:
    """Extend a prefix-normal word by ``0^k 1`` with the minimal normality-preserving ``k``."""
    _require_prefix_normal_seed(w)
    engine = _FlipextEngine(w)
    engine.step()
    return engine.word_prefix(len(engine))


def _flipext_symbols(w: FiniteWord) -> Iterator[int]:
    engine = _FlipextEngine(w)
    yield from iter(w)
    while True:
        k = engine.step()
        yield from itertools.repeat(0, k)
        yield 1


def flipext_stream(w: FiniteWord) -> WordStream:
    """The limit of iterating :func:`flipext`; every prefix is prefix normal."""
    _require_prefix_normal_seed(w)
    return WordStream(_flipext_symbols(w))


def _validate_lazy_seed(w: FiniteWord, slope: SlopeSpec) -> None:
    from .analysis import min_density

    if slope.compare(0) <= 0 or slope.compare(1) > 0:
        raise RangeError("slope must lie in (0, 1]")
    _require_prefix_normal_seed(w)
    if slope.compare(min_density(w).delta) > 0:
        raise InvalidInputError("seed minimum density is below the slope")


def _lazy_zero_run(weight: int, length: int, slope: SlopeSpec) -> int:
    # Largest k with weight / (length + k) >= slope; never negative because
    # the current density already meets the slope.
    return slope.floor_inverse_times(weight) - length


def lazy_alpha_flipext(w: FiniteWord, slope: SlopeSpec) -> FiniteWord:
    """Extend by ``0^k 1`` with the maximal ``k`` keeping the minimum density at or above ``slope``."""
    _validate_lazy_seed(w, slope)
    k = _lazy_zero_run(w.weight, len(w), slope)
    return w + FiniteWord.zeros(k) + FiniteWord.ones(1)


def _lazy_flipext_symbols(w: FiniteWord, slope: SlopeSpec) -> Iterator[int]:
    yield from iter(w)
    weight, length = w.weight, len(w)
    while True:
        k = _lazy_zero_run(weight, length, slope)
        yield from itertools.repeat(0, k)
        yield 1
        weight += 1
        length += k + 1


def lazy_alpha_flipext_stream(w: FiniteWord, slope: SlopeSpec) -> WordStream:
    """The limit of iterating :func:`lazy_alpha_flipext`.

    Started from the single-letter word 1, this reproduces the upper
    mechanical word of the same slope with intercept 0.
    """
    _validate_lazy_seed(w, slope)
    return WordStream(_lazy_flipext_symbols(w, slope))


# -- staged aperiodic construction with prescribed minimum density ---------------


@dataclass(frozen=True)
class DensityStage:
    """One stage of the staged construction: the word so far and its parameters."""

    index: int
    word: FiniteWord
    target: Fraction
    k: int | None
    zeros_run: int


TargetLike = Union[SlopeSpec, Fraction, QuadraticIrrational]


def _target_compare(target: TargetLike, value: Fraction) -> int:
    if isinstance(target, SlopeSpec):
        return target.compare(value)
    if isinstance(target, QuadraticIrrational):
        return target._cmp(value)
    diff = Fraction(target) - value
    return (diff > 0) - (diff < 0)


def geometric_density_sequence(alpha: Fraction, a1: Fraction | None = None) -> Iterator[Fraction]:
    """Default density sequence ``alpha + (a1 - alpha) / 2**(i-1)`` for a rational target.

    ``a1`` defaults to the midpoint of ``alpha`` and 1.
    """
    alpha = Fraction(alpha)
    if not 0 < alpha < 1:
        raise RangeError("target must lie strictly inside (0, 1)")
    if a1 is None:
        a1 = (alpha + 1) / 2
    a1 = Fraction(a1)
    if not alpha < a1 < 1:
        raise InvalidInputError("first density must lie strictly between the target and 1")
    gap = a1 - alpha
    while True:
        yield alpha + gap
        gap /= 2


def _density_stages(target: TargetLike, densities: Iterable[Fraction]) -> Iterator[DensityStage]:
    it = iter(densities)
    previous: Fraction | None = None

    def next_density(index: int) -> Fraction:
        nonlocal previous
        try:
            value = Fraction(next(it))
        except StopIteration:
            raise InvalidInputError(f"density sequence ended before stage {index}") from None
        if not 0 < value < 1:
            raise InvalidInputError(f"density a_{index} must lie in (0, 1)")
        if previous is not None and value >= previous:
            raise InvalidInputError(f"density sequence must be strictly decreasing at a_{index}")
        if _target_compare(target, value) >= 0:
            raise InvalidInputError(f"density a_{index} must stay above the target")
        previous = value
        return value

    a1 = next_density(1)
    head = math.ceil(10 * a1)
    run = 10 - head
    word = FiniteWord.ones(head) + FiniteWord.zeros(run)
    yield DensityStage(index=1, word=word, target=a1, k=None, zeros_run=run)

    index = 2
    while True:
        a = next_density(index)
        length, weight = len(word), word.weight
        # run(k) = floor(k * (weight - a*length) / a), positive by the density bounds
        scaled = weight * a.denominator - length * a.numerator
        k = 2
        while scaled * k // a.numerator <= run:
            k += 1
        new_run = scaled * k // a.numerator
        engine = _FlipextEngine(word)
        engine.extend_to(k * length)
        word = engine.word_prefix(k * length) + FiniteWord.zeros(new_run)
        run = new_run
        yield DensityStage(index=index, word=word, target=a, k=k, zeros_run=new_run)
        index += 1


def density_stages(target: TargetLike, densities: Iterable[Fraction], count: int) -> list[DensityStage]:
    """Materialize the first ``count`` stages of the construction."""
    if count < 1:
        raise RangeError("stage count must be at least 1")
    return list(itertools.islice(_density_stages(target, densities), count))


def _staged_density_symbols(target: TargetLike, densities: Iterable[Fraction]) -> Iterator[int]:
    emitted = 0
    for stage in _density_stages(target, densities):
        word = stage.word
        for i in range(emitted, len(word)):
            yield word[i]
        emitted = len(word)


def aperiodic_density_stream(target: TargetLike, densities: Iterable[Fraction]) -> WordStream:
    """Aperiodic prefix-normal word whose minimum density converges to ``target``.

    ``densities`` must be strictly decreasing rationals in (0, 1), each above
    the target; violations are reported lazily as stages materialize. Every
    emitted prefix is prefix normal, and the appended runs of 0s have strictly
    increasing lengths, which witnesses aperiodicity.
    """
    return WordStream(_staged_density_symbols(target, densities))
