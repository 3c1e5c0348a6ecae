"""Structural analyses of generated crystals: principal lattice, skeleton,
fundamental strings, subcrystal decompositions, branching multiplicities."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .crystal import (
    CrystalGraph,
    find_isomorphism,
    generate,
    interval,
    subgraph,
)
from .errors import ModelError, ParameterError
from .support import build_supporting_graph
from .weights import principal_function

UPPER = "upper"
LOWER = "lower"


# -- principal lattice ---------------------------------------------------------


@dataclass(frozen=True)
class PrincipalLattice:
    """Map from constant-per-subgraph value tuples to their vertex ids."""

    by_tuple: dict

    @property
    def size(self) -> int:
        return len(self.by_tuple)

    def vertex(self, a) -> int:
        return self.by_tuple[tuple(a)]

    def tuples(self) -> list:
        return sorted(self.by_tuple)


def principal_lattice(K: CrystalGraph) -> PrincipalLattice:
    by_tuple = {}
    for v in K.vertex_ids():
        f = K.functions[v]
        if f.is_principal():
            a = tuple(f.subgraph_values(k)[0] for k in range(1, K.n + 1))
            by_tuple[a] = v
    return PrincipalLattice(by_tuple)


def principal_interval(K: CrystalGraph, a, b) -> CrystalGraph:
    """Interval between the principal vertices at a and b; an RAN-crystal with
    parameter b - a."""
    a = tuple(int(x) for x in a)
    b = tuple(int(x) for x in b)
    bd = K.bounds
    if not (len(a) == len(b) == K.n):
        raise ParameterError(f"principal tuples must have length {K.n}")
    if not all(bd.d[k] <= a[k] <= b[k] <= bd.c[k] for k in range(K.n)):
        raise ParameterError(f"need d <= a <= b <= c, got a={a}, b={b}")
    g = K.functions[0].graph
    u = K.vertex_by_function(principal_function(g, a, bd))
    v = K.vertex_by_function(principal_function(g, b, bd))
    return interval(K, u, v)


# -- skeleton ------------------------------------------------------------------


@dataclass(frozen=True)
class SkeletonPiece:
    """Vertices whose weight function varies only on the base subgraph G^k; the
    fixed constants on the other subgraphs identify the piece."""

    k: int
    fixed: tuple  # (n-1)-tuple of constants a_i, i != k, in increasing i
    vertex_ids: tuple
    graph: CrystalGraph


@dataclass(frozen=True)
class Skeleton:
    pieces: tuple
    graph: CrystalGraph  # induced subgraph on the union of all pieces

    def pieces_for(self, k: int) -> list:
        return [p for p in self.pieces if p.k == k]


def base_crystal(n: int, k: int, ck: int) -> CrystalGraph:
    """The crystal whose parameter tuple is ck at color k and zero elsewhere."""
    c = tuple(ck if i == k else 0 for i in range(1, n + 1))
    return generate(n, c)


def skeleton(K: CrystalGraph) -> Skeleton:
    n = K.n
    groups: Dict[Tuple[int, tuple], List[int]] = {}
    for v in K.vertex_ids():
        f = K.functions[v]
        consts = []
        for i in range(1, n + 1):
            vals = set(f.subgraph_values(i))
            consts.append(vals.pop() if len(vals) == 1 else None)
        for k in range(1, n + 1):
            if all(consts[i - 1] is not None for i in range(1, n + 1) if i != k):
                fixed = tuple(consts[i - 1] for i in range(1, n + 1) if i != k)
                groups.setdefault((k, fixed), []).append(v)
    pieces = []
    union = set()
    for (k, fixed) in sorted(groups):
        ids = tuple(sorted(groups[(k, fixed)]))
        union.update(ids)
        pieces.append(SkeletonPiece(k, fixed, ids, subgraph(K, ids)))
    return Skeleton(tuple(pieces), subgraph(K, sorted(union)))


# -- fundamental strings -------------------------------------------------------


@dataclass(frozen=True)
class FundamentalString:
    """Level string realizing the step to a k-th immediate principal successor.

    ``levels`` is the written string, whose rightmost entry is the first move to
    apply (operator strings compose right to left)."""

    k: int
    levels: tuple

    def __str__(self):
        return "".join(str(x) for x in self.levels)

    @property
    def application_order(self) -> tuple:
        return tuple(reversed(self.levels))


def fundamental_strings(n: int, k: int) -> set:
    """All fundamental strings for color k: one per linear order of the base
    subgraph G^k whose prefixes are closed under predecessors."""
    g = build_supporting_graph(n)
    nodes = g.base_nodes(k)
    preds = {v: [] for v in nodes}
    for (u, w) in g.edges():
        if u.k == k:
            preds[w].append(u)
    out = set()
    order: list = []
    chosen: set = set()

    def extend():
        if len(order) == len(nodes):
            out.add(FundamentalString(k, tuple(v.i for v in reversed(order))))
            return
        for v in nodes:
            if v not in chosen and all(u in chosen for u in preds[v]):
                chosen.add(v)
                order.append(v)
                extend()
                order.pop()
                chosen.remove(v)

    extend()
    return out


def canonical_string(n: int, k: int) -> FundamentalString:
    """The stacked-path string: the segment (i)(i+1)...(i+k-1) for each start
    i = n-k+1 down to 1."""
    if not 1 <= k <= n:
        raise ParameterError(f"color {k} out of range for n={n}")
    levels = []
    for i in range(n - k + 1, 0, -1):
        levels.extend(range(i, i + k))
    return FundamentalString(k, tuple(levels))


def apply_string(K: CrystalGraph, v: int, string: FundamentalString) -> Optional[int]:
    """Follow the string's moves from vertex v; None when some move is missing."""
    for i in string.application_order:
        if i not in K.succ[v]:
            return None
        v = K.succ[v][i]
    return v


# -- subcrystal decomposition --------------------------------------------------


@dataclass(frozen=True)
class SubcrystalRecord:
    side: str  # UPPER keeps colors 1..n-1, LOWER keeps colors 2..n
    anchor: tuple  # n-tuple: fixed bottom-level (upper) or top-level (lower) values
    vertex_ids: tuple  # ids in the ambient crystal
    graph: CrystalGraph
    parameter: tuple  # (n-1)-tuple, measured at the component source
    principal_vertex: int  # ambient id of the record's one principal vertex

    @property
    def size(self) -> int:
        return len(self.vertex_ids)


def _components(K: CrystalGraph, colors) -> list:
    seen = set()
    comps = []
    for start in K.vertex_ids():
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for adj in (K.succ[v], K.pred[v]):
                for c, w in adj.items():
                    if c in colors and w not in comp:
                        comp.add(w)
                        queue.append(w)
        seen |= comp
        comps.append(sorted(comp))
    return comps


def upper_parameter(c, a) -> tuple:
    return tuple(c[i] - a[i] + a[i + 1] for i in range(len(c) - 1))


def lower_parameter(c, a) -> tuple:
    return tuple(c[i] - a[i] + a[i - 1] for i in range(1, len(c)))


def subcrystals(K: CrystalGraph, side: str) -> List[SubcrystalRecord]:
    """Components after removing the top (upper) or bottom (lower) color.

    The measured parameter (string lengths at each component's source) must
    match the anchor-based formula; a mismatch is a model error, not a warning.
    """
    n = K.n
    if side == UPPER:
        colors = tuple(range(1, n))
    elif side == LOWER:
        colors = tuple(range(2, n + 1))
    else:
        raise ParameterError(f"side must be '{UPPER}' or '{LOWER}', got {side!r}")
    g = K.functions[0].graph
    records = []
    for comp in _components(K, colors):
        f = K.functions[comp[0]]
        if side == UPPER:
            anchor = tuple(f.value(g.bottom(k)) for k in range(1, n + 1))
            formula = upper_parameter(K.bounds.c, anchor)
        else:
            anchor = tuple(f.value(g.top(k)) for k in range(1, n + 1))
            formula = lower_parameter(K.bounds.c, anchor)
        sub = subgraph(K, comp, colors)
        if sub.source is None:
            raise ModelError(f"{side} component through vertex {comp[0]} has no unique source")
        measured = tuple(sub.h[sub.source][c] for c in colors)
        if measured != formula:
            raise ModelError(
                f"{side} subcrystal at anchor {anchor}: measured parameter "
                f"{measured} differs from formula {formula}"
            )
        principals = [v for v in comp if K.functions[v].is_principal()]
        if len(principals) != 1:
            raise ModelError(
                f"{side} subcrystal at anchor {anchor} contains "
                f"{len(principals)} principal vertices"
            )
        records.append(
            SubcrystalRecord(side, anchor, tuple(comp), sub, formula, principals[0])
        )
    records.sort(key=lambda r: r.anchor)
    return records


def principal_location(K: CrystalGraph, a, side: str) -> tuple:
    """Coordinates of the principal vertex at a inside the principal lattice of
    its upper or lower subcrystal: a shift of the tuple by one color.

    The formula answer is cross-checked by mapping the subcrystal onto a freshly
    generated reference crystal and reading the coordinates off its lattice.
    """
    a = tuple(int(x) for x in a)
    n = K.n
    if side == UPPER:
        formula = tuple(a[i] for i in range(1, n))
        color_map = {c: c for c in range(1, n)}
    elif side == LOWER:
        formula = tuple(a[i] for i in range(0, n - 1))
        color_map = {c: c - 1 for c in range(2, n + 1)}
    else:
        raise ParameterError(f"side must be '{UPPER}' or '{LOWER}', got {side!r}")
    record = next(r for r in subcrystals(K, side) if r.anchor == a)
    ref = generate(n - 1, record.parameter)
    m = find_isomorphism(record.graph, ref, color_map)
    if m is None:
        raise ModelError(f"{side} subcrystal at {a} does not match its reference crystal")
    local = record.vertex_ids.index(record.principal_vertex)
    image = m[local]
    lattice = principal_lattice(ref)
    located = next(t for t, v in lattice.by_tuple.items() if v == image)
    if located != formula:
        raise ModelError(
            f"principal vertex {a}: located at {located} in its {side} subcrystal, "
            f"formula says {formula}"
        )
    return formula


def branching_multiplicity(c, q) -> int:
    """Number of upper subcrystals of the crystal with parameter c that share
    the (n-1)-tuple parameter q."""
    c = tuple(int(x) for x in c)
    q = tuple(int(x) for x in q)
    n = len(c)
    if len(q) != n - 1:
        raise ParameterError(f"parameter tuple must have length {n - 1}, got {len(q)}")
    count = 0
    for an in range(0, c[n - 1] + 1):
        a = [0] * n
        a[n - 1] = an
        # a_i is forced by q and a_n: a_i = (c_i+..+c_{n-1}) - (q_i+..+q_{n-1}) + a_n
        ok = True
        for i in range(n - 1):
            ai = sum(c[i:n - 1]) - sum(q[i:n - 1]) + an
            if not 0 <= ai <= c[i]:
                ok = False
                break
            a[i] = ai
        if ok:
            count += 1
    return count
