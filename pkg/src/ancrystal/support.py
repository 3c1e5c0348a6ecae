"""Supporting graph of the model: base subgraphs, multinodes, and the lazy extension.

The graph for ``n`` colors is the disjoint union of base subgraphs ``G^1 .. G^n``;
``G^k`` is a rhombic grid of shape ``(k-1) x (n-k)`` whose nodes are addressed as
``v_i^k(j)``.  The extended graph adds a fringe of extra nodes around every base
subgraph; those are never stored, membership and classification are computed from
the index predicates on demand.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Optional

from .errors import ParameterError, RhombusAbsentError

IN_GRAPH = "in_graph"
LEFT_EXTRA = "left_extra"
RIGHT_EXTRA = "right_extra"


class NodeRef(NamedTuple):
    """Identity (k, i, j) of the node v_i^k(j): base subgraph k, level i, position j."""

    k: int
    i: int
    j: int

    @property
    def canonical_key(self):
        return (self.i, self.j, self.k)


class Neighbors(NamedTuple):
    """The four potential incident edges of a node, reported as the far endpoint."""

    nw: Optional[NodeRef]  # tail of the incoming NW-edge
    sw: Optional[NodeRef]  # tail of the incoming SW-edge
    ne: Optional[NodeRef]  # head of the outgoing NE-edge
    se: Optional[NodeRef]  # head of the outgoing SE-edge


@dataclass(frozen=True)
class Multinode:
    """Multinode V_i(j): the nodes v_i^k(j) across base subgraphs, ordered by k."""

    i: int
    j: int
    members: tuple


@dataclass(frozen=True)
class SupportingGraph:
    """Immutable supporting graph for ``n`` colors.

    Nodes are held in canonical order (sorted by (i, j, k)); ``index`` maps a
    NodeRef to its position in that order, which is also the layout of the dense
    weight vectors used as crystal-vertex keys.
    """

    n: int
    nodes: tuple
    index: dict = field(compare=False, repr=False)
    multinodes: dict = field(compare=False, repr=False)

    # -- membership predicates -------------------------------------------------

    def is_node(self, v: NodeRef) -> bool:
        """True iff v is a node of G (not merely of the extension)."""
        k, i, j = v
        return 1 <= k <= self.n and 1 <= j <= self.n - k + 1 and 0 <= i - j <= k - 1

    def is_extended_node(self, v: NodeRef) -> bool:
        """True iff v is a node of the extended graph."""
        k, i, j = v
        if not 1 <= k <= self.n:
            return False
        if (i, j) == (0, 0):
            return True
        if (i, j) == (self.n + 1, 0):
            return False
        return 0 <= i <= self.n + 1 and 0 <= j <= self.n + 1 and j <= i + 1

    def classify(self, v: NodeRef) -> str:
        """Classify an extended node as in-graph, left-extra, or right-extra."""
        if not self.is_extended_node(v):
            raise ParameterError(f"{v} is not a node of the extended graph")
        if self.is_node(v):
            return IN_GRAPH
        k, i, j = v
        if j == 0 or i - j > k - 1:
            return LEFT_EXTRA
        return RIGHT_EXTRA

    # -- structure accessors ---------------------------------------------------

    def base_nodes(self, k: int) -> tuple:
        """Nodes of the base subgraph G^k in canonical order."""
        return tuple(v for v in self.nodes if v.k == k)

    def multinode(self, i: int, j: int) -> Multinode:
        return self.multinodes[(i, j)]

    def left(self, k: int) -> NodeRef:
        return NodeRef(k, k, 1)

    def right(self, k: int) -> NodeRef:
        return NodeRef(k, self.n - k + 1, self.n - k + 1)

    def top(self, k: int) -> NodeRef:
        return NodeRef(k, 1, 1)

    def bottom(self, k: int) -> NodeRef:
        return NodeRef(k, self.n, self.n - k + 1)

    def edges(self) -> Iterator[tuple]:
        """All edges (u, v) of G, canonically ordered by tail then NE before SE."""
        for u in self.nodes:
            ne = NodeRef(u.k, u.i - 1, u.j)
            if self.is_node(ne):
                yield (u, ne)
            se = NodeRef(u.k, u.i + 1, u.j + 1)
            if self.is_node(se):
                yield (u, se)

    def neighbors(self, v: NodeRef) -> Neighbors:
        """Four-directional incident edges of an extended node.

        Each entry is the far endpoint (tail for NW/SW, head for NE/SE), or None
        when that endpoint falls outside the extended graph.
        """
        if not self.is_extended_node(v):
            raise ParameterError(f"{v} is not a node of the extended graph")
        k, i, j = v

        def ext(i2, j2):
            u = NodeRef(k, i2, j2)
            return u if self.is_extended_node(u) else None

        return Neighbors(
            nw=ext(i - 1, j - 1),
            sw=ext(i + 1, j),
            ne=ext(i - 1, j),
            se=ext(i + 1, j + 1),
        )

    def rhombus(self, right: NodeRef) -> tuple:
        """Little rhombus with the given right node; returns (left, upper, lower).

        Raises RhombusAbsentError when any corner is outside the extended graph.
        """
        k, i, j = right
        corners = (
            NodeRef(k, i, j - 1),      # left
            NodeRef(k, i - 1, j - 1),  # upper
            NodeRef(k, i + 1, j),      # lower
        )
        if not self.is_extended_node(right) or not all(
            self.is_extended_node(u) for u in corners
        ):
            raise RhombusAbsentError(f"no rhombus with right node {right}")
        return corners


def build_supporting_graph(n: int) -> SupportingGraph:
    """Construct the supporting graph for ``n`` colors (n >= 1)."""
    if not isinstance(n, int) or n < 1:
        raise ParameterError(f"number of colors must be a positive integer, got {n!r}")
    nodes = []
    for k in range(1, n + 1):
        for j in range(1, n - k + 2):
            for i in range(j, j + k):
                nodes.append(NodeRef(k, i, j))
    nodes.sort(key=lambda v: v.canonical_key)
    index = {v: p for p, v in enumerate(nodes)}
    multinodes = {}
    for i in range(1, n + 1):
        for j in range(1, i + 1):
            members = tuple(NodeRef(k, i, j) for k in range(i - j + 1, n - j + 2))
            multinodes[(i, j)] = Multinode(i, j, members)
    return SupportingGraph(n=n, nodes=tuple(nodes), index=index, multinodes=multinodes)
