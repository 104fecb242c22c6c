"""Bounded chains and their elements.

Two kinds of chain are supported: the real unit interval with exact
rational elements, and finite chains of ordered labels.  Every value
carries the chain it belongs to, and all operations are exact order
computations; no floating point is involved anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Union

UNIT = "unit"
FINITE = "finite"


class ChainMismatchError(ValueError):
    """Raised when an operation mixes values from different chains."""


def _as_fraction(value: Union[str, int, Fraction]) -> Fraction:
    f = Fraction(value)
    if not 0 <= f <= 1:
        raise ValueError(f"unit-interval value out of range: {value!r}")
    return f


def format_fraction(f: Fraction) -> str:
    """Shortest exact rendering: a terminating decimal if one exists,
    otherwise ``p/q``."""
    den = f.denominator
    if den == 1:
        return str(f.numerator)
    twos = fives = 0
    d = den
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{f.numerator}/{f.denominator}"
    k = max(twos, fives)
    digits = f.numerator * 10**k // den
    text = str(digits).rjust(k, "0")
    return f"{f.numerator // den}.{text}" if f.numerator >= den else f"0.{text}"


class Chain:
    """A bounded chain: either the unit interval or a finite label set.

    Finite chains are ordered by label position.  A single-level chain
    (bottom = top) is permitted so that total-collapse quotients of other
    chains are representable.
    """

    __slots__ = ("kind", "levels")

    def __init__(self, kind: str, levels=None):
        if kind == UNIT:
            if levels is not None:
                raise ValueError("unit chains carry no levels")
            self.levels = None
        elif kind == FINITE:
            levels = tuple(str(s) for s in levels or ())
            if not levels:
                raise ValueError("finite chain needs at least one level")
            if len(set(levels)) != len(levels):
                raise ValueError("finite chain levels must be distinct")
            self.levels = levels
        else:
            raise ValueError(f"unknown chain kind: {kind!r}")
        self.kind = kind

    @classmethod
    def unit(cls) -> Chain:
        return cls(UNIT)

    @classmethod
    def finite(cls, levels) -> Chain:
        return cls(FINITE, levels)

    @property
    def is_finite(self) -> bool:
        return self.kind == FINITE

    @property
    def size(self) -> int:
        if not self.is_finite:
            raise ValueError("unit chains have no finite size")
        return len(self.levels)

    @property
    def bottom(self) -> ChainValue:
        return ChainValue(self, 0 if self.is_finite else Fraction(0))

    @property
    def top(self) -> ChainValue:
        if self.is_finite:
            return ChainValue(self, len(self.levels) - 1)
        return ChainValue(self, Fraction(1))

    def value(self, text: Union[str, int, Fraction]) -> ChainValue:
        """Parse a value literal: a level label on finite chains; a decimal
        or ``p/q`` string (or a Fraction) on the unit chain."""
        if self.is_finite:
            try:
                return ChainValue(self, self.levels.index(str(text)))
            except ValueError:
                raise ValueError(
                    f"{text!r} is not a level of chain {self.levels}"
                ) from None
        return ChainValue(self, _as_fraction(text))

    def level(self, index: int) -> ChainValue:
        """The value at a level position of a finite chain."""
        if not self.is_finite:
            raise ValueError("level() applies to finite chains only")
        if not 0 <= index < len(self.levels):
            raise ValueError(f"level index {index} out of range")
        return ChainValue(self, index)

    def values(self) -> Iterator[ChainValue]:
        """All values of a finite chain, bottom to top."""
        if not self.is_finite:
            raise ValueError("cannot enumerate the unit interval")
        return (ChainValue(self, i) for i in range(len(self.levels)))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Chain)
            and self.kind == other.kind
            and self.levels == other.levels
        )

    def __hash__(self) -> int:
        return hash((self.kind, self.levels))

    def __repr__(self) -> str:
        if self.is_finite:
            return f"Chain.finite({list(self.levels)!r})"
        return "Chain.unit()"

    def to_json(self) -> dict:
        if self.is_finite:
            return {"type": "finite", "levels": list(self.levels)}
        return {"type": "unit"}

    @classmethod
    def from_json(cls, data: dict) -> Chain:
        kind = data.get("type")
        if kind == "unit":
            return cls.unit()
        if kind == "finite":
            return cls.finite(data["levels"])
        raise ValueError(f"unknown chain type: {kind!r}")


class ChainValue:
    """An element of a chain.  Immutable; ordered only within its chain.

    Equality across chains is plain inequality (the values are distinct
    objects of distinct scales); order comparison across chains raises
    :class:`ChainMismatchError`.
    """

    __slots__ = ("chain", "key")

    def __init__(self, chain: Chain, key):
        self.chain = chain
        self.key = key

    @property
    def fraction(self) -> Fraction:
        if self.chain.is_finite:
            raise ValueError("finite-chain values have no rational form")
        return self.key

    @property
    def index(self) -> int:
        if not self.chain.is_finite:
            raise ValueError("unit-interval values have no level index")
        return self.key

    @property
    def label(self) -> str:
        return self.chain.levels[self.index]

    def _check(self, other) -> ChainValue:
        if not isinstance(other, ChainValue):
            raise TypeError(f"expected a ChainValue, got {other!r}")
        if self.chain != other.chain:
            raise ChainMismatchError(
                f"values from different chains: {self!s} vs {other!s}"
            )
        return other

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChainValue):
            return NotImplemented
        return self.chain == other.chain and self.key == other.key

    def __hash__(self) -> int:
        return hash((self.chain, self.key))

    def __lt__(self, other) -> bool:
        return self.key < self._check(other).key

    def __le__(self, other) -> bool:
        return self.key <= self._check(other).key

    def __gt__(self, other) -> bool:
        return self.key > self._check(other).key

    def __ge__(self, other) -> bool:
        return self.key >= self._check(other).key

    def __str__(self) -> str:
        if self.chain.is_finite:
            return self.label
        return format_fraction(self.key)

    def __repr__(self) -> str:
        return f"<{self.chain.kind}:{self!s}>"


def compare(a: ChainValue, b: ChainValue) -> int:
    """Total-order comparison: negative for less, 0 for equal, positive
    for greater.  Exact; raises ChainMismatchError across chains."""
    a._check(b)
    return (a.key > b.key) - (a.key < b.key)


def meet(a: ChainValue, b: ChainValue) -> ChainValue:
    """Lattice meet: the smaller of the two."""
    return b if a._check(b).key < a.key else a


def join(a: ChainValue, b: ChainValue) -> ChainValue:
    """Lattice join: the larger of the two."""
    return b if a._check(b).key > a.key else a


def median3(a: ChainValue, b: ChainValue, c: ChainValue) -> ChainValue:
    """Middle element of three; equals (a^b)v(b^c)v(a^c) on a chain."""
    a._check(b)
    a._check(c)
    return sorted((a, b, c), key=lambda v: v.key)[1]
