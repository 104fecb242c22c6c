"""Epimorphisms between bounded chains and the scale-invariance law.

An epimorphism is a monotone surjection onto a coarser chain; its
fibers form an interval partition of the source.  Applying one to a
capacity (pushforward) and to a score vector commutes with Sugeno
evaluation, and `verify_theorem2` checks exhaustively on small finite
chains that this commutation characterizes the Sugeno tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .chain import Chain, ChainValue, ChainMismatchError, format_fraction
from .capacity import Capacity, SizeCapError, pushforward_capacity
from .integral import (
    AggregationTable,
    Counterexample,
    ScoreVector,
    _grid,
    recognize_sugeno,
    sugeno_eval,
    sugeno_table,
)
from .congruence import (
    IntervalPartition,
    UnitBlock,
    enumerate_aggregation_tables,
    enumerate_interval_partitions,
    is_compatible,
)

BUILTIN_NAMES = ("decimal-half-up", "centesimal-half-up", "linguistic-bmge", "identity")


class EpimorphismInvalidError(ValueError):
    """Labels are not a monotone bijection onto the target chain."""


class Epimorphism:
    """A surjective monotone map between bounded chains.

    Either carries an interval partition of the source with one target
    value per block (strictly increasing, jointly exhausting the
    target), or is the identity on its chain (the only representable
    form whose fibers on the unit interval are all singletons).
    """

    __slots__ = ("source", "target", "partition", "labels")

    def __init__(
        self,
        source: Chain,
        target: Chain,
        partition: IntervalPartition | None,
        labels: tuple[ChainValue, ...] | None,
    ):
        self.source = source
        self.target = target
        self.partition = partition
        self.labels = labels

    @classmethod
    def identity(cls, chain: Chain) -> Epimorphism:
        return cls(chain, chain, None, None)

    @property
    def is_identity(self) -> bool:
        return self.partition is None

    def apply(self, v: ChainValue) -> ChainValue:
        if v.chain != self.source:
            raise ChainMismatchError(f"{v!s} is not a value of the source chain")
        if self.is_identity:
            return v
        return self.labels[self.partition.class_of(v)]

    def apply_vector(self, x: ScoreVector) -> ScoreVector:
        return ScoreVector(self.target, tuple(self.apply(v) for v in x.coords))

    def then(self, other: Epimorphism) -> Epimorphism:
        """Composite epimorphism: first self, then other."""
        if other.source != self.target:
            raise ChainMismatchError(
                "composition needs the second source to equal the first target"
            )
        if self.is_identity:
            return other
        if other.is_identity:
            return self
        merged_labels = [other.apply(v) for v in self.labels]
        if self.source.is_finite:
            ranges = []
            start = self.partition.ranges[0][0]
            for i, (a, z) in enumerate(self.partition.ranges):
                last = i == len(self.partition.ranges) - 1
                if last or merged_labels[i + 1] != merged_labels[i]:
                    ranges.append((start, z))
                    if not last:
                        start = z + 1
            partition = IntervalPartition(self.source, ranges=ranges)
        else:
            blocks = []
            lo, lo_closed = self.partition.blocks[0].lo, True
            for i, blk in enumerate(self.partition.blocks):
                last = i == len(self.partition.blocks) - 1
                if last or merged_labels[i + 1] != merged_labels[i]:
                    blocks.append(UnitBlock(lo, lo_closed, blk.hi, blk.hi_closed))
                    if not last:
                        nxt = self.partition.blocks[i + 1]
                        lo, lo_closed = nxt.lo, nxt.lo_closed
            partition = IntervalPartition.from_unit_blocks(blocks)
        labels = []
        for v in merged_labels:
            if not labels or labels[-1] != v:
                labels.append(v)
        return make_epimorphism(partition, other.target, labels)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Epimorphism):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.partition == other.partition
            and self.labels == other.labels
        )

    def __hash__(self) -> int:
        return hash((self.source, self.target, self.partition, self.labels))

    def __repr__(self) -> str:
        if self.is_identity:
            return f"Epimorphism.identity({self.source!r})"
        return f"Epimorphism({self.partition!r} -> {self.target!r})"

    def to_json(self) -> dict:
        if self.is_identity:
            return {
                "source": self.source.to_json(),
                "target": self.target.to_json(),
                "identity": True,
            }
        out = {
            "source": self.source.to_json(),
            "target": self.target.to_json(),
        }
        if self.source.is_finite:
            out["cuts"] = list(self.partition.cuts())
            out["labels"] = [str(v) for v in self.labels]
        else:
            out["blocks"] = [
                {
                    "lo": format_fraction(b.lo),
                    "lo_closed": b.lo_closed,
                    "hi": format_fraction(b.hi),
                    "hi_closed": b.hi_closed,
                    "label": str(self.labels[i]),
                }
                for i, b in enumerate(self.partition.blocks)
            ]
        return out

    @classmethod
    def from_json(cls, data: dict) -> Epimorphism:
        source = Chain.from_json(data["source"])
        target = Chain.from_json(data["target"])
        if data.get("identity"):
            if source != target:
                raise ValueError("identity epimorphism needs equal chains")
            return cls.identity(source)
        if source.is_finite:
            partition = IntervalPartition.from_cuts(source, data["cuts"])
            labels = [target.value(s) for s in data["labels"]]
        else:
            blocks = []
            labels = []
            for b in data["blocks"]:
                blocks.append(
                    UnitBlock(
                        Fraction(b["lo"]), bool(b["lo_closed"]),
                        Fraction(b["hi"]), bool(b["hi_closed"]),
                    )
                )
                labels.append(target.value(b["label"]))
            partition = IntervalPartition.from_unit_blocks(blocks)
        return make_epimorphism(partition, target, labels)


def make_epimorphism(
    partition: IntervalPartition, target: Chain, labels: Sequence
) -> Epimorphism:
    """Validated epimorphism from a source partition and one target
    value per block.  Labels must be strictly increasing and cover the
    whole target, i.e. form an order bijection blocks -> target."""
    labels = tuple(
        v if isinstance(v, ChainValue) else target.value(v) for v in labels
    )
    for v in labels:
        if v.chain != target:
            raise EpimorphismInvalidError(f"label {v!s} is not in the target chain")
    if len(labels) != partition.block_count:
        raise EpimorphismInvalidError(
            f"{partition.block_count} blocks but {len(labels)} labels"
        )
    for a, b in zip(labels, labels[1:]):
        if not a < b:
            raise EpimorphismInvalidError(
                f"labels must be strictly increasing: {a} then {b}"
            )
    if not target.is_finite:
        raise EpimorphismInvalidError(
            "a finite block list cannot map onto the unit interval"
        )
    if len(labels) != target.size:
        raise EpimorphismInvalidError(
            f"labels cover {len(labels)} of {target.size} target values"
        )
    return Epimorphism(partition.chain, target, partition, labels)


# --- built-in scales -------------------------------------------------------

def _rounding_epimorphism(steps: int) -> Epimorphism:
    """Half-up rounding of [0,1] to multiples of 1/steps."""
    grid = [Fraction(j, steps) for j in range(steps + 1)]
    target = Chain.finite([format_fraction(g) for g in grid])
    half = Fraction(1, 2 * steps)
    blocks = [UnitBlock(Fraction(0), True, half, False)]
    for j in range(1, steps):
        blocks.append(UnitBlock(grid[j] - half, True, grid[j] + half, False))
    blocks.append(UnitBlock(1 - half, True, Fraction(1), True))
    return make_epimorphism(
        IntervalPartition.from_unit_blocks(blocks), target, target.levels
    )


def _linguistic_epimorphism() -> Epimorphism:
    target = Chain.finite(["bad", "medium", "good", "excellent"])
    blocks = [
        UnitBlock(Fraction(0), True, Fraction(3, 10), True),
        UnitBlock(Fraction(3, 10), False, Fraction(7, 10), False),
        UnitBlock(Fraction(7, 10), True, Fraction(9, 10), False),
        UnitBlock(Fraction(9, 10), True, Fraction(1), True),
    ]
    return make_epimorphism(
        IntervalPartition.from_unit_blocks(blocks), target, target.levels
    )


def builtin_epimorphism(name: str, source: Chain | None = None) -> Epimorphism:
    """Built-in scales by name; ``identity`` needs the source chain."""
    if name == "decimal-half-up":
        return _rounding_epimorphism(10)
    if name == "centesimal-half-up":
        return _rounding_epimorphism(100)
    if name == "linguistic-bmge":
        return _linguistic_epimorphism()
    if name == "identity":
        if source is None:
            raise ValueError("the identity epimorphism needs a source chain")
        return Epimorphism.identity(source)
    raise ValueError(f"unknown built-in epimorphism {name!r}; have {BUILTIN_NAMES}")


def enumerate_epimorphisms(chain: Chain) -> Iterator[Epimorphism]:
    """All quotient epimorphisms of a finite chain, one per interval
    partition, labeled canonically onto a fresh chain (distinct target
    labelings are order-isomorphic and not re-enumerated)."""
    for p in enumerate_interval_partitions(chain):
        target = Chain.finite([f"q{i}" for i in range(p.block_count)])
        yield make_epimorphism(p, target, target.levels)


def check_scale_invariance(
    c: Capacity, phi: Epimorphism, xs: Sequence[ScoreVector]
) -> Counterexample | None:
    """For each x, compare phi(Su_c(x)) with Su_{phi(c)}(phi applied
    coordinatewise to x).  Exact equality is required; the first
    failing vector is returned with both sides."""
    if phi.source != c.chain:
        raise ChainMismatchError("capacity does not live on the source chain")
    pushed = pushforward_capacity(phi, c)
    for x in xs:
        lhs = phi.apply(sugeno_eval(c, x))
        rhs = sugeno_eval(pushed, phi.apply_vector(x))
        if lhs != rhs:
            return Counterexample(
                prop="scale-invariance",
                xs=(x,),
                expected=lhs,
                actual=rhs,
            )
    return None


@dataclass(frozen=True)
class Theorem2Report:
    """Exhaustive scale-invariance check on a finite chain.

    Forward: every Sugeno table commutes with every quotient
    epimorphism at every grid point.  Converse: every non-Sugeno table
    admits an epimorphism whose induced coarse map is ill-defined,
    which is exactly a compatibility failure of the underlying
    congruence."""

    n: int
    chain_size: int
    tables_total: int
    sugeno_count: int
    epimorphism_count: int
    forward_checks: int
    forward_failures: tuple[Counterexample, ...]
    converse_unrefuted: tuple[AggregationTable, ...]

    @property
    def forward_holds(self) -> bool:
        return not self.forward_failures

    @property
    def converse_holds(self) -> bool:
        return not self.converse_unrefuted

    @property
    def holds(self) -> bool:
        return self.forward_holds and self.converse_holds

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "chain_size": self.chain_size,
            "tables_total": self.tables_total,
            "sugeno_count": self.sugeno_count,
            "epimorphism_count": self.epimorphism_count,
            "forward_checks": self.forward_checks,
            "forward_failures": [c.to_json() for c in self.forward_failures],
            "converse_unrefuted": [t.to_json() for t in self.converse_unrefuted],
            "holds": self.holds,
        }


def verify_theorem2(
    n: int, source: Chain, max_grid: int = 16
) -> Theorem2Report:
    """Exhaustively verify the scale-invariance characterization on a
    finite chain, within the enumeration caps."""
    epis = list(enumerate_epimorphisms(source))
    k = source.size
    points, _ = _grid(k, n)

    tables_total = sugeno_count = forward_checks = 0
    forward_failures: list[Counterexample] = []
    converse_unrefuted: list[AggregationTable] = []

    for t in enumerate_aggregation_tables(n, source, max_grid):
        tables_total += 1
        m = recognize_sugeno(t)
        if isinstance(m, Capacity):
            sugeno_count += 1
            for phi in epis:
                pushed = pushforward_capacity(phi, m)
                coarse = sugeno_table(pushed)
                level_map = [phi.apply(ChainValue(source, v)).index for v in range(k)]
                for idx, pt in enumerate(points):
                    lhs = level_map[t.entries[idx]]
                    rhs = coarse.value_at([level_map[v] for v in pt])
                    forward_checks += 1
                    if lhs != rhs and len(forward_failures) < 3:
                        forward_failures.append(
                            Counterexample(
                                prop="scale-invariance",
                                xs=(t.vector_at(pt),),
                                expected=ChainValue(phi.target, lhs),
                                actual=ChainValue(phi.target, rhs),
                            )
                        )
        else:
            # non-Sugeno: some epimorphism must refute Eq-4 style
            # invariance, i.e. its partition is not preserved by t
            refuted = any(
                is_compatible(t, phi.partition) is not None for phi in epis
            )
            if not refuted and len(converse_unrefuted) < 3:
                converse_unrefuted.append(t)

    return Theorem2Report(
        n=n,
        chain_size=k,
        tables_total=tables_total,
        sugeno_count=sugeno_count,
        epimorphism_count=len(epis),
        forward_checks=forward_checks,
        forward_failures=tuple(forward_failures),
        converse_unrefuted=tuple(converse_unrefuted),
    )
