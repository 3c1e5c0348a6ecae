"""Bijection between feasible functions and bounded triangular patterns."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import InfeasibleError, ParameterError
from .support import NodeRef, SupportingGraph
from .weights import Bounds, WeightFunction


@dataclass(frozen=True)
class GTPattern:
    """Triangular integer array x_{i,j}, 1 <= j <= i <= n, rows top to bottom."""

    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        for i, row in enumerate(rows, start=1):
            if len(row) != i:
                raise ParameterError(f"row {i} has length {len(row)}, expected {i}")
        for i in range(1, len(rows)):
            # row i+1 interleaves row i: x_{i+1,j} >= x_{i,j} >= x_{i+1,j+1}
            for j in range(i):
                if not rows[i][j] >= rows[i - 1][j] >= rows[i][j + 1]:
                    raise InfeasibleError(
                        f"interleaving fails at rows {i}/{i + 1}, position {j + 1}"
                    )

    @property
    def n(self) -> int:
        return len(self.rows)

    def x(self, i: int, j: int) -> int:
        return self.rows[i - 1][j - 1]

    def is_bounded_by(self, bound) -> bool:
        bound = tuple(bound) + (0,)
        last = self.rows[-1]
        return all(bound[j] >= last[j] >= bound[j + 1] for j in range(self.n))

    def to_json(self) -> list:
        return [list(row) for row in self.rows]

    @staticmethod
    def from_json(data) -> "GTPattern":
        if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
            raise ParameterError("pattern JSON must be a list of rows")
        return GTPattern(tuple(tuple(r) for r in data))


def sigma_bound(c) -> tuple:
    """The bound tuple with j-th entry c_1 + ... + c_{n-j+1}."""
    c = tuple(c)
    n = len(c)
    return tuple(sum(c[: n - j]) for j in range(n))


def _prefix(c, length: int) -> int:
    # c[1:length] with the empty range (length <= 0) summing to 0
    return sum(c[:length])


def to_gt(f: WeightFunction) -> GTPattern:
    """Pattern with x_{i,j} = (sum of f over the multinode V_i(j)) + c_1+...+c_{i-j}."""
    if any(d != 0 for d in f.bounds.d):
        raise InfeasibleError("the pattern bijection requires zero lower bounds")
    g = f.graph
    c = f.bounds.c
    rows = []
    for i in range(1, g.n + 1):
        row = []
        for j in range(1, i + 1):
            bar = sum(f.value(v) for v in g.multinode(i, j).members)
            row.append(bar + _prefix(c, i - j))
        rows.append(tuple(row))
    return GTPattern(tuple(rows))


def from_gt(g: SupportingGraph, pattern: GTPattern, c) -> WeightFunction:
    """The unique feasible function mapping to the given bounded pattern.

    Built bottom-up: the bottom level is determined outright; at each higher
    multinode every member starts at its maximum admissible value and weight is
    then removed member by member, front to back, until the multinode sum hits
    its target.  The front members end tight on their SE-edges and the back
    members on their SW-edges, which is exactly the switch condition.
    """
    c = tuple(int(x) for x in c)
    n = g.n
    if pattern.n != n or len(c) != n:
        raise ParameterError(f"pattern/bounds size mismatch with n={n}")
    if not pattern.is_bounded_by(sigma_bound(c)):
        raise InfeasibleError(f"pattern is not bounded by {sigma_bound(c)}")
    vals = {}
    for j in range(1, n + 1):
        vals[NodeRef(n - j + 1, n, j)] = pattern.x(n, j) - _prefix(c, n - j)
    for i in range(n - 1, 0, -1):
        for j in range(1, i + 1):
            members = g.multinode(i, j).members
            maxes = []
            mins = []
            for m, v in enumerate(members):
                maxes.append(c[v.k - 1] if m == 0 else vals[NodeRef(v.k, i + 1, j)])
                mins.append(0 if m == len(members) - 1 else vals[NodeRef(v.k, i + 1, j + 1)])
            target = pattern.x(i, j) - _prefix(c, i - j)
            surplus = sum(maxes) - target
            if surplus < 0 or surplus > sum(mx - mn for mx, mn in zip(maxes, mins)):
                raise InfeasibleError(f"multinode V_{i}({j}) sum {target} is unreachable")
            assigned = list(maxes)
            for m in range(len(members)):
                cut = min(surplus, maxes[m] - mins[m])
                assigned[m] -= cut
                surplus -= cut
            for v, x in zip(members, assigned):
                vals[v] = x
    from .weights import make_weight_function, zero_bounds

    return make_weight_function(g, vals, zero_bounds(c))


def count_bounded_patterns(n: int, bound) -> int:
    """Number of n-row patterns bounded by the given weakly decreasing tuple.

    Plain depth-first enumeration over rows, bottom row first; intentionally
    free of closed-form shortcuts so it can serve as an independent counting
    oracle for generated crystal sizes.
    """
    bound = tuple(int(x) for x in bound)
    if len(bound) != n:
        raise ParameterError(f"bound has length {len(bound)}, expected {n}")
    if any(x < 0 for x in bound) or any(
        bound[j] < bound[j + 1] for j in range(n - 1)
    ):
        raise ParameterError(f"bound must be weakly decreasing and nonnegative: {bound}")

    def completions(row) -> int:
        if len(row) == 1:
            return 1
        total = 0
        ranges = [range(row[j + 1], row[j] + 1) for j in range(len(row) - 1)]
        for above in product(*ranges):
            total += completions(above)
        return total

    lo = bound + (0,)
    total = 0
    for bottom in product(*[range(lo[j + 1], lo[j] + 1) for j in range(n)]):
        total += completions(bottom)
    return total
