"""Capacities: monotone set functions on the criterion set {1, ..., n}.

Subsets are stored as bitmasks over 1-based criterion indices (bit i-1
stands for criterion i), so a capacity is a total map from the 2^n
masks to chain values with m(empty) = bottom and m(N) = top.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Iterator, Sequence

from .chain import Chain, ChainValue

if TYPE_CHECKING:  # pragma: no cover
    from .integral import AggregationTable
    from .scale import Epimorphism

MAX_N = 16
ENUM_MAX_N = 4
ENUM_MAX_LEVELS = 5


class SizeCapError(ValueError):
    """An enumeration or materialization cap was exceeded."""


def subset_mask(indices: Iterable[int], n: int) -> int:
    """Bitmask of a subset given as 1-based criterion indices."""
    mask = 0
    for i in indices:
        if not 1 <= i <= n:
            raise ValueError(f"criterion index {i} out of range 1..{n}")
        bit = 1 << (i - 1)
        if mask & bit:
            raise ValueError(f"duplicate criterion index {i}")
        mask |= bit
    return mask

def subset_indices(mask: int) -> tuple[int, ...]:
    """1-based criterion indices of a bitmask, increasing."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)

def format_subset(mask: int) -> str:
    return "{" + ",".join(str(i) for i in subset_indices(mask)) + "}"

def parse_subset(text: str, n: int) -> int:
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise ValueError(f"bad subset literal: {text!r}")
    body = text[1:-1]
    if not body:
        return 0
    indices = [int(part) for part in body.split(",")]
    if indices != sorted(set(indices)):
        raise ValueError(f"subset indices must be strictly increasing: {text!r}")
    return subset_mask(indices, n)


@dataclass(frozen=True)
class CapacityViolation:
    """One violated capacity constraint.

    kind is "bottom", "top", or "monotone"; for "monotone" the witness is
    a covering pair subset < superset with m(subset) > m(superset).
    """

    kind: str
    subset: int
    superset: int | None
    value: ChainValue
    other: ChainValue | None = None

    def __str__(self) -> str:
        if self.kind == "monotone":
            return (
                f"m({format_subset(self.subset)})={self.value} > "
                f"m({format_subset(self.superset)})={self.other}"
            )
        bound = "bottom" if self.kind == "bottom" else "top"
        return f"m({format_subset(self.subset)})={self.value} is not the {bound}"


class Capacity:
    """A set function on subsets of {1..n} with values in a chain.

    The values map must be total; monotonicity and the boundary values
    are checked separately by :func:`validate_capacity` so that invalid
    candidates can still be represented and inspected.
    """

    __slots__ = ("chain", "n", "values")

    def __init__(self, chain: Chain, n: int, values: Sequence[ChainValue]):
        if not 1 <= n <= MAX_N:
            raise ValueError(f"criterion count must be in 1..{MAX_N}, got {n}")
        values = tuple(values)
        if len(values) != 1 << n:
            raise ValueError(
                f"capacity on n={n} needs {1 << n} subset values, got {len(values)}"
            )
        for v in values:
            if not isinstance(v, ChainValue) or v.chain != chain:
                raise ValueError(f"capacity value {v!r} does not belong to {chain!r}")
        self.chain = chain
        self.n = n
        self.values = values

    def __getitem__(self, mask: int) -> ChainValue:
        return self.values[mask]

    def of(self, indices: Iterable[int]) -> ChainValue:
        """Value at a subset given by 1-based criterion indices."""
        return self.values[subset_mask(indices, self.n)]

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, Capacity):
            return NotImplemented
        return (
            self.chain == other.chain
            and self.n == other.n
            and self.values == other.values
        )

    def __hash__(self) -> int:
        return hash((self.chain, self.n, self.values))

    def __repr__(self) -> str:
        pairs = ", ".join(
            f"{format_subset(m)}:{v}" for m, v in enumerate(self.values)
        )
        return f"Capacity(n={self.n}, {pairs})"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "chain": self.chain.to_json(),
            "values": {
                format_subset(mask): str(self.values[mask])
                for mask in range(1 << self.n)
            },
        }

    @classmethod
    def from_json(cls, data: dict) -> Capacity:
        chain = Chain.from_json(data["chain"])
        n = int(data["n"])
        if not 1 <= n <= MAX_N:
            raise ValueError(f"criterion count must be in 1..{MAX_N}, got {n}")
        raw = data["values"]
        values: list[ChainValue | None] = [None] * (1 << n)
        for key, literal in raw.items():
            values[parse_subset(key, n)] = chain.value(literal)
        # the empty and full subsets may be omitted; they are forced anyway
        if values[0] is None:
            values[0] = chain.bottom
        if values[-1] is None:
            values[-1] = chain.top
        missing = [format_subset(m) for m, v in enumerate(values) if v is None]
        if missing:
            raise ValueError(f"capacity map is missing subsets: {', '.join(missing)}")
        return cls(chain, n, values)


def validate_capacity(c: Capacity) -> list[CapacityViolation]:
    """Every violated constraint: boundary failures plus each covering
    pair E < E+{i} with m(E) > m(E+{i}).  Covering pairs suffice for
    full monotonicity.  Empty list means the capacity is valid."""
    violations = []
    if c.values[0] != c.chain.bottom:
        violations.append(CapacityViolation("bottom", 0, None, c.values[0]))
    if c.values[c.full_mask] != c.chain.top:
        violations.append(
            CapacityViolation("top", c.full_mask, None, c.values[c.full_mask])
        )
    for mask in range(1 << c.n):
        for i in range(c.n):
            bit = 1 << i
            if mask & bit:
                continue
            bigger = mask | bit
            if c.values[mask] > c.values[bigger]:
                violations.append(
                    CapacityViolation(
                        "monotone", mask, bigger, c.values[mask], c.values[bigger]
                    )
                )
    return violations


def require_valid(c: Capacity) -> Capacity:
    violations = validate_capacity(c)
    if violations:
        raise ValueError(
            "invalid capacity: " + "; ".join(str(v) for v in violations)
        )
    return c


def cardinality_capacity(n: int, thresholds: Sequence[ChainValue]) -> Capacity:
    """The capacity m(I) = thresholds[|I|] (1-based cardinality), with
    m(empty) = bottom.  Thresholds must be nondecreasing and end at top."""
    thresholds = tuple(thresholds)
    if len(thresholds) != n:
        raise ValueError(f"need {n} thresholds, got {len(thresholds)}")
    chain = thresholds[0].chain
    for a, b in zip(thresholds, thresholds[1:]):
        if a > b:
            raise ValueError(f"thresholds not nondecreasing: {a} > {b}")
    if thresholds[-1] != chain.top:
        raise ValueError(f"last threshold must be the top, got {thresholds[-1]}")
    values = [chain.bottom]
    for mask in range(1, 1 << n):
        values.append(thresholds[mask.bit_count() - 1])
    return Capacity(chain, n, values)


def pushforward_capacity(phi: "Epimorphism", c: Capacity) -> Capacity:
    """Apply an epimorphism to every capacity value.  Monotone because
    phi is, so the result is again a valid capacity on phi's target."""
    if phi.source != c.chain:
        raise ValueError(
            f"epimorphism source {phi.source!r} does not match capacity chain {c.chain!r}"
        )
    return Capacity(phi.target, c.n, [phi.apply(v) for v in c.values])


def enumerate_capacities(n: int, chain: Chain) -> Iterator[Capacity]:
    """All capacities on a finite chain, exactly once each.

    Order is fixed for reproducibility: lexicographic in the value
    vector indexed by increasing subset bitmask, levels ascending.
    """
    if not chain.is_finite:
        raise ValueError("capacities can only be enumerated over finite chains")
    if n > ENUM_MAX_N or chain.size > ENUM_MAX_LEVELS:
        raise SizeCapError(
            f"capacity enumeration capped at n<={ENUM_MAX_N}, "
            f"|chain|<={ENUM_MAX_LEVELS}; got n={n}, |chain|={chain.size}"
        )
    top = chain.size - 1
    full = (1 << n) - 1
    levels = [0] * (1 << n)
    levels[full] = top
    chain_values = [ChainValue(chain, i) for i in range(chain.size)]

    def emit() -> Capacity:
        return Capacity(chain, n, [chain_values[v] for v in levels])

    def assign(mask: int) -> Iterator[Capacity]:
        if mask == full:
            yield emit()
            return
        lower = 0
        for i in range(n):
            bit = 1 << i
            if mask & bit:
                sub = levels[mask ^ bit]
                if sub > lower:
                    lower = sub
        for v in range(lower, top + 1):
            levels[mask] = v
            yield from assign(mask + 1)

    yield from assign(1)


def capacity_from_table(t: "AggregationTable") -> Capacity:
    """Read a capacity off an aggregation table at the indicator vectors:
    m(E) = A(top on E, bottom elsewhere).  Always valid when t is."""
    chain = t.chain
    top = chain.size - 1
    values = []
    for mask in range(1 << t.n):
        point = tuple(top if mask & (1 << i) else 0 for i in range(t.n))
        values.append(ChainValue(chain, t.value_at(point)))
    return Capacity(chain, t.n, values)
