"""Weight functions on the supporting graph: bounds, feasibility, switch-nodes."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import InfeasibleError, ParameterError
from .support import (
    IN_GRAPH,
    LEFT_EXTRA,
    NodeRef,
    SupportingGraph,
    build_supporting_graph,
)

FORWARD = "forward"
BACKWARD = "backward"


@dataclass(frozen=True)
class Bounds:
    """Per-subgraph value window: d_k <= f <= c_k on the nodes of G^k."""

    c: tuple
    d: tuple

    def __post_init__(self):
        c = tuple(int(x) for x in self.c)
        d = tuple(int(x) for x in self.d)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)
        if len(c) != len(d):
            raise ParameterError(f"bound tuples differ in length: {len(c)} vs {len(d)}")
        if any(ck < dk for ck, dk in zip(c, d)):
            raise ParameterError(f"upper bound below lower bound: c={c}, d={d}")

    @property
    def n(self) -> int:
        return len(self.c)


def zero_bounds(c) -> Bounds:
    return Bounds(tuple(c), (0,) * len(tuple(c)))


@dataclass(frozen=True)
class Violation:
    """First failed feasibility condition and where it was detected."""

    condition: str  # one of "monotone", "bounds", "switch"
    i: int
    j: int
    k: Optional[int]  # None for a switch violation (whole multinode)

    def __str__(self):
        where = f"V_{self.i}({self.j})" if self.k is None else f"v_{self.i}^{self.k}({self.j})"
        return f"{self.condition} violated at {where}"


@dataclass(frozen=True)
class FeasibilityReport:
    ok: bool
    violation: Optional[Violation] = None


@dataclass(frozen=True)
class WeightFunction:
    """Feasible integer weighting of the supporting graph, stored densely.

    ``values[p]`` is the weight of ``graph.nodes[p]`` (canonical node order), so
    the tuple doubles as a hashable vertex key for crystal generation.
    """

    graph: SupportingGraph
    bounds: Bounds
    values: tuple

    def value(self, v: NodeRef) -> int:
        return self.values[self.graph.index[v]]

    def extended_value(self, v: NodeRef) -> int:
        """Value on the extended graph: f on G, c_k left of G^k, d_k right of it."""
        kind = self.graph.classify(v)
        if kind == IN_GRAPH:
            return self.values[self.graph.index[v]]
        if kind == LEFT_EXTRA:
            return self.bounds.c[v.k - 1]
        return self.bounds.d[v.k - 1]

    def replace(self, v: NodeRef, new_value: int) -> "WeightFunction":
        vals = list(self.values)
        vals[self.graph.index[v]] = new_value
        return WeightFunction(self.graph, self.bounds, tuple(vals))

    def as_map(self) -> dict:
        return {v: self.values[p] for v, p in self.graph.index.items()}

    def subgraph_values(self, k: int) -> tuple:
        return tuple(self.value(v) for v in self.graph.base_nodes(k))

    def is_principal(self) -> bool:
        return all(len(set(self.subgraph_values(k))) == 1 for k in range(1, self.graph.n + 1))

    def to_json(self) -> dict:
        return {
            "n": self.graph.n,
            "c": list(self.bounds.c),
            "d": list(self.bounds.d),
            "values": [[v.k, v.i, v.j, self.value(v)] for v in self.graph.nodes],
        }

    @staticmethod
    def from_json(data: dict) -> "WeightFunction":
        try:
            g = build_supporting_graph(int(data["n"]))
            b = Bounds(tuple(data["c"]), tuple(data["d"]))
            raw = {NodeRef(k, i, j): int(val) for k, i, j, val in data["values"]}
        except (KeyError, TypeError, ValueError) as exc:
            raise ParameterError(f"malformed weight-function JSON: {exc}") from exc
        return make_weight_function(g, raw, b)


def _switch_tightness(g: SupportingGraph, value, members):
    """Per-member SE/SW tightness flags needed by the switch condition.

    ``se[m]`` is meaningful for m < last, ``sw[m]`` for m > 0; the referenced
    neighbor nodes are guaranteed to lie in G for those ranges.
    """
    se = []
    sw = []
    for m, v in enumerate(members):
        if m < len(members) - 1:
            se.append(value(v) == value(NodeRef(v.k, v.i + 1, v.j + 1)))
        else:
            se.append(True)
        if m > 0:
            sw.append(value(NodeRef(v.k, v.i + 1, v.j)) == value(v))
        else:
            sw.append(True)
    return se, sw


def _switch_candidates(g: SupportingGraph, value, members):
    se, sw = _switch_tightness(g, value, members)
    out = []
    for m in range(len(members)):
        if all(se[:m]) and all(sw[m + 1:]):
            out.append(m)
    return out


def is_feasible(g: SupportingGraph, f, b: Bounds) -> FeasibilityReport:
    """Check monotonicity, bounds, and the switch condition; verdict, no raise.

    ``f`` maps every G-node to an integer (a dict or a WeightFunction).
    """
    if isinstance(f, WeightFunction):
        value = f.value
    else:
        value = lambda v: f[v]
    if b.n != g.n:
        return FeasibilityReport(False, Violation("bounds", 0, 0, 0))
    for v in g.nodes:
        x = value(v)
        if not b.d[v.k - 1] <= x <= b.c[v.k - 1]:
            return FeasibilityReport(False, Violation("bounds", v.i, v.j, v.k))
        # outgoing NE and SE edges must not increase f
        for head in (NodeRef(v.k, v.i - 1, v.j), NodeRef(v.k, v.i + 1, v.j + 1)):
            if g.is_node(head) and x < value(head):
                return FeasibilityReport(False, Violation("monotone", v.i, v.j, v.k))
    for (i, j) in sorted(g.multinodes):
        mn = g.multinodes[(i, j)]
        if not _switch_candidates(g, value, mn.members):
            return FeasibilityReport(False, Violation("switch", i, j, None))
    return FeasibilityReport(True)


def make_weight_function(g: SupportingGraph, f, b: Bounds, check: bool = True) -> WeightFunction:
    """Build a WeightFunction from a NodeRef->int map, validating feasibility."""
    vals = tuple(f[v] if not isinstance(f, WeightFunction) else f.value(v) for v in g.nodes)
    wf = WeightFunction(g, b, vals)
    if check:
        report = is_feasible(g, wf, b)
        if not report.ok:
            raise InfeasibleError(str(report.violation))
    return wf


def switch_node(f: WeightFunction, i: int, j: int, direction: str) -> NodeRef:
    """Switch-node of multinode V_i(j): first qualifying member going forward,
    last one going backward."""
    mn = f.graph.multinode(i, j)
    cands = _switch_candidates(f.graph, f.value, mn.members)
    if not cands:
        raise InfeasibleError(f"no switch-node in V_{i}({j}); function is not feasible")
    m = cands[0] if direction == FORWARD else cands[-1]
    return mn.members[m]


def principal_function(g: SupportingGraph, a, b: Bounds) -> WeightFunction:
    """The function taking the constant value a_k on each base subgraph G^k."""
    a = tuple(int(x) for x in a)
    if len(a) != g.n:
        raise ParameterError(f"principal tuple has length {len(a)}, expected {g.n}")
    if any(not b.d[k] <= a[k] <= b.c[k] for k in range(g.n)):
        raise ParameterError(f"principal tuple {a} outside bounds c={b.c}, d={b.d}")
    vals = tuple(a[v.k - 1] for v in g.nodes)
    return WeightFunction(g, b, vals)
