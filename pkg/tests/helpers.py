"""Shared test fixtures: random generators and independent oracles.

The oracles here deliberately avoid the library's own code paths:
counting formulas, brute-force enumerations, and definition-literal
re-evaluations used to confirm frozen expected values.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product

from sugeno import (
    AggregationTable,
    Capacity,
    Chain,
    ScoreVector,
)

UNIT = Chain.unit()


def rand_fraction(rng, max_den: int = 24) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(0, den), den)


def rand_vector(rng, n: int, max_den: int = 24) -> ScoreVector:
    from sugeno import ChainValue

    return ScoreVector(
        UNIT, tuple(ChainValue(UNIT, rand_fraction(rng, max_den)) for _ in range(n))
    )


def rand_capacity(rng, n: int, max_den: int = 24) -> Capacity:
    """Random valid capacity on the unit chain: monotonized by taking,
    for each subset, the max of random seeds over its nonempty subsets."""
    from sugeno import ChainValue

    seeds = [rand_fraction(rng, max_den) for _ in range(1 << n)]
    values = [Fraction(0)]
    for mask in range(1, 1 << n):
        best = Fraction(0)
        sub = mask
        while sub:
            if seeds[sub] > best:
                best = seeds[sub]
            sub = (sub - 1) & mask
        values.append(best)
    values[-1] = Fraction(1)
    return Capacity(UNIT, n, [ChainValue(UNIT, f) for f in values])


def truncated_sum_table(k: int) -> AggregationTable:
    """The counterexample table A(x, y) = min(top, x + y) on level
    indices of a k-level chain."""
    chain = Chain.finite([str(i) for i in range(k)])
    entries = [min(k - 1, a + b) for a, b in product(range(k), repeat=2)]
    return AggregationTable(chain, 2, entries)


def finite_chain(k: int) -> Chain:
    return Chain.finite([str(i) for i in range(k)])


# --- independent counting oracles ------------------------------------------

def box_count(grid_side: int, height: int) -> int:
    """Plane-partition count: monotone maps from a grid_side x grid_side
    grid into a chain of height+1 levels, via the product formula."""
    if height < 0:
        return 0
    r = Fraction(1)
    for h in range(1, grid_side + 1):
        for j in range(1, grid_side + 1):
            r *= Fraction(h + j + height - 1, h + j - 1)
    assert r.denominator == 1
    return r.numerator


def forced_corner_table_count(k: int) -> int:
    """Number of monotone maps chain^2 -> chain on a k-level chain with
    both boundary corners pinned, by inclusion-exclusion over the
    unconstrained plane-partition counts."""
    return box_count(k, k - 1) - 2 * box_count(k, k - 2) + box_count(k, k - 3)


def brute_monotone_binary_maps(n: int) -> int:
    """Monotone set functions 2^[n] -> {0,1} with forced boundaries,
    counted by filtering all 2^(2^n - 2) candidate assignments."""
    free = [mask for mask in range(1 << n)][1:-1]
    count = 0
    for bits in product((0, 1), repeat=len(free)):
        val = {0: 0, (1 << n) - 1: 1}
        val.update(dict(zip(free, bits)))
        ok = True
        for mask in range(1 << n):
            for i in range(n):
                if not mask >> i & 1 and val[mask] > val[mask | 1 << i]:
                    ok = False
                    break
            if not ok:
                break
        count += ok
    return count


def capacity_count_n3(k: int) -> int:
    """Capacities with n=3 over a k-level chain, counted directly:
    atoms free, each pair bounded below by the max of its two atoms."""
    total = 0
    for a in product(range(k), repeat=3):
        p = 1
        for i in range(3):
            for j in range(i + 1, 3):
                p *= k - max(a[i], a[j])
        total += p
    return total


# --- definition-literal re-evaluation oracles -------------------------------

def eval_sorted_with_permutation(c: Capacity, x: ScoreVector, order) -> Fraction:
    """Eq-3-style evaluation under an explicit sorting permutation,
    used to confirm tie-break invariance."""
    keys = [v.key for v in x.coords]
    assert all(keys[order[i]] <= keys[order[i + 1]] for i in range(len(order) - 1))
    remaining = (1 << c.n) - 1
    best = c.chain.bottom.key
    for i in order:
        term = min(keys[i], c[remaining].key)
        if term > best:
            best = term
        remaining &= ~(1 << i)
    return best


def comonotone_by_common_sort(xs, ys) -> bool:
    """Comonotonicity via the existence of one permutation sorting both
    vectors nondecreasingly."""
    n = len(xs)
    for perm in permutations(range(n)):
        if all(xs[perm[i]] <= xs[perm[i + 1]] for i in range(n - 1)) and all(
            ys[perm[i]] <= ys[perm[i + 1]] for i in range(n - 1)
        ):
            return True
    return False


def comonotone_by_products(xs, ys) -> bool:
    """The unit-interval form: (x_i - x_j)(y_i - y_j) >= 0 for all i, j."""
    n = len(xs)
    return all(
        (xs[i] - xs[j]) * (ys[i] - ys[j]) >= 0 for i in range(n) for j in range(n)
    )
