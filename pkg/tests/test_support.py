import pytest

from ancrystal import NodeRef, ParameterError, RhombusAbsentError, build_supporting_graph
from ancrystal.support import IN_GRAPH, LEFT_EXTRA, RIGHT_EXTRA


def test_rejects_nonpositive_n():
    with pytest.raises(ParameterError):
        build_supporting_graph(0)
    with pytest.raises(ParameterError):
        build_supporting_graph(-3)


def test_n1_is_a_single_node():
    g = build_supporting_graph(1)
    assert g.nodes == (NodeRef(1, 1, 1),)
    assert list(g.edges()) == []


def test_n2_subgraphs_are_two_disjoint_edges():
    g = build_supporting_graph(2)
    assert g.base_nodes(1) == (NodeRef(1, 1, 1), NodeRef(1, 2, 2))
    assert g.base_nodes(2) == (NodeRef(2, 1, 1), NodeRef(2, 2, 1))
    edges = set(g.edges())
    assert edges == {
        (NodeRef(1, 1, 1), NodeRef(1, 2, 2)),
        (NodeRef(2, 2, 1), NodeRef(2, 1, 1)),
    }


def test_n4_subgraph_sizes():
    g = build_supporting_graph(4)
    assert [len(g.base_nodes(k)) for k in range(1, 5)] == [4, 6, 6, 4]


@pytest.mark.parametrize("n", range(1, 7))
def test_node_counts_and_multinode_partition(n):
    g = build_supporting_graph(n)
    assert len(g.nodes) == sum(k * (n - k + 1) for k in range(1, n + 1))
    seen = []
    for mn in g.multinodes.values():
        assert len(mn.members) == n - mn.i + 1
        seen.extend(mn.members)
    assert sorted(seen) == sorted(g.nodes)


@pytest.mark.parametrize("n", range(1, 7))
def test_edges_stay_inside_one_subgraph_and_step_one_level(n):
    g = build_supporting_graph(n)
    for (u, v) in g.edges():
        assert u.k == v.k
        assert abs(u.i - v.i) == 1


@pytest.mark.parametrize("n", range(1, 7))
def test_left_right_are_the_ends_of_each_base_subgraph(n):
    g = build_supporting_graph(n)
    for k in range(1, n + 1):
        heads = {v for (_, v) in g.edges() if v.k == k}
        tails = {u for (u, _) in g.edges() if u.k == k}
        nodes = set(g.base_nodes(k))
        assert g.left(k) in nodes and g.left(k) not in heads
        assert g.right(k) in nodes and g.right(k) not in tails
        # every other node lies strictly between the two ends
        if len(nodes) > 1:
            assert heads == nodes - {g.left(k)}
            assert tails == nodes - {g.right(k)}


def test_grid_shape_via_path_steps():
    # every source-to-sink path of G^k makes k-1 NE-steps and n-k SE-steps
    n = 5
    g = build_supporting_graph(n)
    for k in range(1, n + 1):
        succ = {}
        for (u, v) in g.edges():
            if u.k == k:
                succ.setdefault(u, []).append(v)

        def walk(v, ne, se):
            outs = succ.get(v, [])
            if not outs:
                assert (ne, se) == (k - 1, n - k)
                return
            for w in outs:
                if w.i < v.i:
                    walk(w, ne + 1, se)
                else:
                    walk(w, ne, se + 1)

        walk(g.left(k), 0, 0)


def test_extended_classification():
    g = build_supporting_graph(2)
    assert g.classify(NodeRef(1, 1, 1)) == IN_GRAPH
    assert g.classify(NodeRef(2, 0, 0)) == LEFT_EXTRA
    assert g.classify(NodeRef(1, 2, 1)) == LEFT_EXTRA  # below G^1, i-j > k-1
    assert g.classify(NodeRef(2, 2, 2)) == RIGHT_EXTRA
    assert g.classify(NodeRef(1, 1, 2)) == RIGHT_EXTRA  # j > n-k+1
    assert not g.is_extended_node(NodeRef(1, 3, 0))
    with pytest.raises(ParameterError):
        g.classify(NodeRef(1, 3, 0))


def test_every_extended_node_gets_exactly_one_class():
    g = build_supporting_graph(4)
    for k in range(1, 5):
        for i in range(0, 6):
            for j in range(0, 6):
                v = NodeRef(k, i, j)
                if g.is_extended_node(v):
                    assert g.classify(v) in (IN_GRAPH, LEFT_EXTRA, RIGHT_EXTRA)


def test_neighbors_at_the_boundary():
    g = build_supporting_graph(2)
    nb = g.neighbors(NodeRef(1, 1, 1))
    assert nb.se == NodeRef(1, 2, 2)
    assert nb.nw == NodeRef(1, 0, 0)
    assert g.neighbors(NodeRef(2, 2, 1)).ne == NodeRef(2, 1, 1)


def test_interior_node_has_all_four_neighbors_in_graph():
    g = build_supporting_graph(5)
    nb = g.neighbors(NodeRef(3, 3, 2))
    assert all(x is not None and g.is_node(x) for x in nb)


def test_rhombus_corners():
    g = build_supporting_graph(2)
    assert g.rhombus(NodeRef(1, 1, 1)) == (
        NodeRef(1, 1, 0),
        NodeRef(1, 0, 0),
        NodeRef(1, 2, 1),
    )
    assert g.rhombus(NodeRef(2, 1, 1)) == (
        NodeRef(2, 1, 0),
        NodeRef(2, 0, 0),
        NodeRef(2, 2, 1),
    )


def test_rhombus_absent_when_a_corner_leaves_the_extension():
    g = build_supporting_graph(2)
    with pytest.raises(RhombusAbsentError):
        g.rhombus(NodeRef(1, 2, 0))  # no left neighbor at j = 0


def test_canonical_order_is_by_level_position_subgraph():
    g = build_supporting_graph(3)
    keys = [v.canonical_key for v in g.nodes]
    assert keys == sorted(keys)
    assert g.index[g.nodes[0]] == 0
