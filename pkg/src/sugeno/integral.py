"""Sugeno integral evaluation, table materialization, and recognizers.

Three equivalent evaluation routes are implemented side by side:

* ``level``:  join over thresholds t of t ^ m({i : x_i >= t}), with t
  ranging over the bottom and the coordinates of x (the join of the
  full-interval expression is always attained there);
* ``subset``: join over nonempty subsets I of m(I) ^ min_{i in I} x_i;
* ``sorted``: sort x ascending and join x_(i) ^ m({(i), ..., (n)}).

Tables over finite chains store level indices, so the exhaustive
recognizers and checks below run on plain integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence, Union

from .chain import Chain, ChainValue, ChainMismatchError, join, meet, median3
from .capacity import Capacity, SizeCapError, capacity_from_table, require_valid

FORMULAS = ("level", "subset", "sorted")

MAX_TABLE_ENTRIES = 10**6


class ArityMismatchError(ValueError):
    """Vector length does not match the capacity's criterion count."""


class TableInvalidError(ValueError):
    """An aggregation table violates monotonicity or a boundary condition."""

    def __init__(self, violations: list[str]):
        self.violations = violations
        super().__init__("invalid aggregation table: " + "; ".join(violations))


@dataclass(frozen=True)
class ScoreVector:
    """An n-tuple of scores, one per criterion, on a single chain."""

    chain: Chain
    coords: tuple[ChainValue, ...]

    def __post_init__(self):
        for v in self.coords:
            if v.chain != self.chain:
                raise ChainMismatchError(
                    f"coordinate {v!s} does not belong to {self.chain!r}"
                )

    @classmethod
    def of(cls, chain: Chain, literals: Sequence) -> ScoreVector:
        return cls(chain, tuple(chain.value(s) for s in literals))

    @classmethod
    def parse(cls, chain: Chain, text: str) -> ScoreVector:
        """Parse a comma-separated list of value literals."""
        return cls.of(chain, [part.strip() for part in text.split(",")])

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __str__(self) -> str:
        return "(" + ", ".join(str(v) for v in self.coords) + ")"


VectorLike = Union[ScoreVector, Sequence[ChainValue]]


def _as_vector(chain: Chain, x: VectorLike) -> ScoreVector:
    if isinstance(x, ScoreVector):
        if x.chain != chain:
            raise ChainMismatchError(
                f"vector chain {x.chain!r} does not match {chain!r}"
            )
        return x
    return ScoreVector(chain, tuple(x))


@dataclass(frozen=True)
class Counterexample:
    """A reproducible witness that a property fails.

    ``xs`` holds the witness input vector(s); ``c`` the constant and ``k``
    the 1-based coordinate when the property is parameterized by one.
    ``expected`` is the value the property demands, ``actual`` the value
    the table or integral produced; re-evaluating the witness must
    reproduce exactly this discrepancy.
    """

    prop: str
    xs: tuple[ScoreVector, ...]
    expected: ChainValue
    actual: ChainValue
    c: ChainValue | None = None
    k: int | None = None

    def __str__(self) -> str:
        parts = [f"{self.prop} fails at " + ", ".join(str(x) for x in self.xs)]
        if self.c is not None:
            parts.append(f"c={self.c}")
        if self.k is not None:
            parts.append(f"k={self.k}")
        parts.append(f"expected {self.expected}, got {self.actual}")
        return "; ".join(parts)

    def to_json(self) -> dict:
        out = {
            "property": self.prop,
            "inputs": [[str(v) for v in x.coords] for x in self.xs],
            "expected": str(self.expected),
            "actual": str(self.actual),
        }
        if self.c is not None:
            out["constant"] = str(self.c)
        if self.k is not None:
            out["coordinate"] = self.k
        return out


# --- grid machinery for finite chains -------------------------------------
#
# Grid points are tuples of level indices in lexicographic order, which is
# a linear extension of the componentwise order: every predecessor of a
# point appears before it.  The structures below depend only on (k, n) and
# are shared across all tables of that shape.

@lru_cache(maxsize=None)
def _grid(k: int, n: int):
    points = tuple(product(range(k), repeat=n))
    index = {p: i for i, p in enumerate(points)}
    return points, index


def _comonotone_int(x: Sequence[int], y: Sequence[int]) -> bool:
    n = len(x)
    for i in range(n):
        xi, yi = x[i], y[i]
        for j in range(n):
            if xi < x[j] and yi > y[j]:
                return False
    return True


@lru_cache(maxsize=None)
def _comonotone_pairs(k: int, n: int):
    """Unordered comonotone grid pairs (i, j, index of pointwise join)."""
    points, index = _grid(k, n)
    pairs = []
    for i, x in enumerate(points):
        for j in range(i, len(points)):
            y = points[j]
            if _comonotone_int(x, y):
                pairs.append((i, j, index[tuple(map(max, x, y))]))
    return tuple(pairs)


@lru_cache(maxsize=None)
def _constant_meets(k: int, n: int):
    """[c][i] -> grid index of the pointwise meet of point i with c."""
    points, index = _grid(k, n)
    return tuple(
        tuple(index[tuple(min(v, c) for v in p)] for p in points)
        for c in range(k)
    )


@lru_cache(maxsize=None)
def _coordinate_pins(k: int, n: int):
    """[a] -> (indices with coordinate a pinned to bottom, ... to top)."""
    points, index = _grid(k, n)
    pins = []
    for a in range(n):
        bot = tuple(index[p[:a] + (0,) + p[a + 1:]] for p in points)
        top = tuple(index[p[:a] + (k - 1,) + p[a + 1:]] for p in points)
        pins.append((bot, top))
    return tuple(pins)


class AggregationTable:
    """An explicit n-ary aggregation function on a finite chain.

    Entries are level indices stored in lexicographic grid order.
    Construction validates monotonicity in every coordinate and both
    boundary conditions, so an instance is always a valid aggregation
    function.
    """

    __slots__ = ("chain", "n", "entries")

    def __init__(self, chain: Chain, n: int, entries: Sequence[int]):
        if not chain.is_finite:
            raise ValueError("aggregation tables live on finite chains")
        k = chain.size
        entries = tuple(entries)
        if len(entries) != k**n:
            raise ValueError(
                f"table on a {k}-chain with n={n} needs {k**n} entries, "
                f"got {len(entries)}"
            )
        violations = []
        for v in entries:
            if not isinstance(v, int) or not 0 <= v < k:
                raise ValueError(f"entry {v!r} is not a level index of the chain")
        if entries[0] != 0:
            violations.append(
                f"A(bottom,...,bottom) = {chain.levels[entries[0]]}, not the bottom"
            )
        if entries[-1] != k - 1:
            violations.append(
                f"A(top,...,top) = {chain.levels[entries[-1]]}, not the top"
            )
        points, _ = _grid(k, n)
        stride = [k ** (n - 1 - i) for i in range(n)]
        for idx, p in enumerate(points):
            for a in range(n):
                if p[a] and entries[idx] < entries[idx - stride[a]]:
                    violations.append(
                        f"not monotone in coordinate {a + 1} at "
                        f"{tuple(chain.levels[v] for v in p)}"
                    )
        if violations:
            raise TableInvalidError(violations)
        self.chain = chain
        self.n = n
        self.entries = entries

    def points(self) -> Iterator[tuple[int, ...]]:
        return iter(_grid(self.chain.size, self.n)[0])

    def value_at(self, point: Sequence[int]) -> int:
        k = self.chain.size
        idx = 0
        for v in point:
            idx = idx * k + v
        return self.entries[idx]

    def vector_at(self, point: Sequence[int]) -> ScoreVector:
        return ScoreVector(
            self.chain, tuple(ChainValue(self.chain, v) for v in point)
        )

    def __call__(self, x: VectorLike) -> ChainValue:
        x = _as_vector(self.chain, x)
        if len(x.coords) != self.n:
            raise ArityMismatchError(
                f"table arity is {self.n}, vector has {len(x.coords)} coordinates"
            )
        return ChainValue(self.chain, self.value_at([v.index for v in x.coords]))

    def __eq__(self, other) -> bool:
        if not isinstance(other, AggregationTable):
            return NotImplemented
        return (
            self.chain == other.chain
            and self.n == other.n
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.chain, self.n, self.entries))

    def __repr__(self) -> str:
        return f"AggregationTable(n={self.n}, |L|={self.chain.size})"

    def to_json(self) -> dict:
        levels = self.chain.levels
        points, _ = _grid(self.chain.size, self.n)
        return {
            "chain": self.chain.to_json(),
            "n": self.n,
            "entries": [
                {"x": [levels[v] for v in p], "v": levels[self.entries[i]]}
                for i, p in enumerate(points)
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> AggregationTable:
        chain = Chain.from_json(data["chain"])
        if not chain.is_finite:
            raise ValueError("aggregation tables live on finite chains")
        n = int(data["n"])
        k = chain.size
        entries: list[int | None] = [None] * (k**n)
        _, index = _grid(k, n)
        for item in data["entries"]:
            point = tuple(chain.value(s).index for s in item["x"])
            if len(point) != n:
                raise ValueError(f"entry point {item['x']} has wrong arity")
            idx = index[point]
            if entries[idx] is not None:
                raise ValueError(f"duplicate table entry at {item['x']}")
            entries[idx] = chain.value(item["v"]).index
        if any(v is None for v in entries):
            raise ValueError("table is missing grid points")
        return cls(chain, n, entries)


def sugeno_eval(c: Capacity, x: VectorLike, formula: str = "subset") -> ChainValue:
    """Evaluate the Sugeno integral of x with respect to capacity c.

    All three formulas return the same value on every input; exposing
    them separately is what lets the equivalence be tested rather than
    assumed.
    """
    x = _as_vector(c.chain, x)
    if len(x.coords) != c.n:
        raise ArityMismatchError(
            f"capacity has n={c.n} criteria, vector has {len(x.coords)}"
        )
    coords = x.coords
    n = c.n
    if formula == "subset":
        best = c.chain.bottom
        for mask in range(1, 1 << n):
            term = c[mask]
            for i in range(n):
                if mask >> i & 1 and coords[i].key < term.key:
                    term = coords[i]
            if term.key > best.key:
                best = term
        return best
    if formula == "level":
        best = c.chain.bottom
        for t in {c.chain.bottom, *coords}:
            mask = 0
            for i in range(n):
                if coords[i].key >= t.key:
                    mask |= 1 << i
            term = meet(t, c[mask])
            best = join(best, term)
        return best
    if formula == "sorted":
        order = sorted(range(n), key=lambda i: (coords[i].key, i))
        remaining = (1 << n) - 1
        best = c.chain.bottom
        for i in order:
            best = join(best, meet(coords[i], c[remaining]))
            remaining &= ~(1 << i)
        return best
    raise ValueError(f"unknown formula {formula!r}; pick one of {FORMULAS}")


def sugeno_table(
    c: Capacity, chain: Chain | None = None, max_entries: int = MAX_TABLE_ENTRIES
) -> AggregationTable:
    """Materialize the Sugeno integral of c on the whole finite grid."""
    chain = c.chain if chain is None else chain
    if chain != c.chain:
        raise ChainMismatchError(
            f"capacity chain {c.chain!r} does not match table chain {chain!r}"
        )
    if not chain.is_finite:
        raise ValueError("tables can only be materialized over finite chains")
    require_valid(c)
    k, n = chain.size, c.n
    if k**n > max_entries:
        raise SizeCapError(
            f"table would need {k**n} entries, cap is {max_entries}"
        )
    terms = [
        (c.values[mask].index, tuple(i for i in range(n) if mask >> i & 1))
        for mask in range(1, 1 << n)
    ]
    entries = []
    for p in product(range(k), repeat=n):
        best = 0
        for mv, members in terms:
            if mv <= best:
                continue
            t = mv
            for i in members:
                if p[i] < t:
                    t = p[i]
            if t > best:
                best = t
        entries.append(best)
    return AggregationTable(chain, n, entries)


def recognize_sugeno(t: AggregationTable) -> Capacity | Counterexample:
    """Decide whether t is a Sugeno integral.

    The only candidate capacity is read off the indicator vectors; the
    table either equals that capacity's Sugeno table everywhere, or the
    first mismatching grid point (lexicographically) is returned.
    ``expected`` is the table's entry, ``actual`` the value of the
    extracted Sugeno integral there.
    """
    m = capacity_from_table(t)
    rebuilt = sugeno_table(m, t.chain)
    if rebuilt.entries == t.entries:
        return m
    points, _ = _grid(t.chain.size, t.n)
    for idx, p in enumerate(points):
        if rebuilt.entries[idx] != t.entries[idx]:
            return Counterexample(
                prop="sugeno-recognition",
                xs=(t.vector_at(p),),
                expected=ChainValue(t.chain, t.entries[idx]),
                actual=ChainValue(t.chain, rebuilt.entries[idx]),
            )
    raise AssertionError("unreachable: tables differ but no mismatch found")


def comonotone(x: VectorLike, y: VectorLike) -> bool:
    """Order-theoretic comonotonicity: no i, j with x_i < x_j and y_i > y_j.

    On the unit interval this coincides with (x_i - x_j)(y_i - y_j) >= 0.
    """
    xs = list(x.coords if isinstance(x, ScoreVector) else x)
    ys = list(y.coords if isinstance(y, ScoreVector) else y)
    if len(xs) != len(ys):
        raise ArityMismatchError("comonotonicity needs vectors of equal length")
    return _comonotone_int([v.key for v in xs], [v.key for v in ys])


def check_comonotone_maxitive(t: AggregationTable) -> Counterexample | None:
    """A(x v y) = A(x) v A(y) over every comonotone grid pair, or a witness."""
    pairs = _comonotone_pairs(t.chain.size, t.n)
    entries = t.entries
    points, _ = _grid(t.chain.size, t.n)
    for i, j, ij in pairs:
        lhs = entries[ij]
        rhs = entries[i] if entries[i] >= entries[j] else entries[j]
        if lhs != rhs:
            return Counterexample(
                prop="comonotone-maxitive",
                xs=(t.vector_at(points[i]), t.vector_at(points[j])),
                expected=ChainValue(t.chain, rhs),
                actual=ChainValue(t.chain, lhs),
            )
    return None


def check_min_homogeneous(t: AggregationTable) -> Counterexample | None:
    """A(x ^ (c,...,c)) = A(x) ^ c over all grid points and constants."""
    k = t.chain.size
    meets = _constant_meets(k, t.n)
    entries = t.entries
    points, _ = _grid(k, t.n)
    for c in range(k):
        row = meets[c]
        for idx in range(len(entries)):
            lhs = entries[row[idx]]
            rhs = entries[idx] if entries[idx] <= c else c
            if lhs != rhs:
                return Counterexample(
                    prop="min-homogeneous",
                    xs=(t.vector_at(points[idx]),),
                    c=ChainValue(t.chain, c),
                    expected=ChainValue(t.chain, rhs),
                    actual=ChainValue(t.chain, lhs),
                )
    return None


def check_median_decomposable(t: AggregationTable) -> Counterexample | None:
    """A(x) = med(A(x with x_k := bottom), x_k, A(x with x_k := top))
    for every grid point and coordinate, or a witness."""
    k = t.chain.size
    pins = _coordinate_pins(k, t.n)
    entries = t.entries
    points, _ = _grid(k, t.n)
    for a in range(t.n):
        bot, top = pins[a]
        for idx, p in enumerate(points):
            lo, xk, hi = entries[bot[idx]], p[a], entries[top[idx]]
            med = sorted((lo, xk, hi))[1]
            if med != entries[idx]:
                return Counterexample(
                    prop="median-decomposable",
                    xs=(t.vector_at(p),),
                    k=a + 1,
                    expected=ChainValue(t.chain, med),
                    actual=ChainValue(t.chain, entries[idx]),
                )
    return None


def check_idempotent(t: AggregationTable) -> Counterexample | None:
    """A(c,...,c) = c for every chain value c, or a witness."""
    k = t.chain.size
    for c in range(k):
        got = t.value_at((c,) * t.n)
        if got != c:
            return Counterexample(
                prop="idempotent",
                xs=(t.vector_at((c,) * t.n),),
                expected=ChainValue(t.chain, c),
                actual=ChainValue(t.chain, got),
            )
    return None
