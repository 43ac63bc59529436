import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from costnet.costalg import CostVector
from costnet.netmodel import ChannelKind, UserPair, build_grid, graph_from_edges, sample_user_pairs
from costnet.routing import RoutingConfig, RoutingView, route_pairs
from costnet.temporal import bandwidth_metrics, build_meta, min_edge_weight, path_layers_monotone, route_temporal


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 6), st.integers(2, 6), st.integers(1, 4), st.booleans())
def test_meta_graph_size(T, n, m, memories):
    g = build_grid(n)
    m = min(m, n * n // 2)
    pairs = sample_user_pairs(g, m, np.random.default_rng(T * 100 + n))
    meta = build_meta(g, T, pairs, memories=memories)
    V, E = g.V, g.E
    assert meta.expanded.V == T * V + 2 * m
    n_mem = V * (T - 1) if memories else 0
    assert meta.expanded.E == T * E + 2 * T * m + n_mem
    for i in range(m):
        assert meta.is_async_node(meta.source(i)) and meta.is_async_node(meta.sink(i))
    assert meta.node_id(pairs[0].src, T - 1) == (T - 1) * V + pairs[0].src


def test_async_weights_prefer_early_layers():
    g = build_grid(3)
    meta = build_meta(g, 4, [UserPair(0, 8)])
    eps = meta.epsilon
    assert eps == pytest.approx(1e-6 * min_edge_weight(g))
    weights = sorted(meta.async_weight.values())
    assert weights[:2] == [0.0, 0.0] and weights[-1] == pytest.approx(3 * eps)
    with pytest.raises(ValueError):
        build_meta(g, 4, [UserPair(0, 8)], epsilon=min_edge_weight(g))


def test_single_layer_without_memory_equals_static():
    g = build_grid(6)
    rng = np.random.default_rng(11)
    for _ in range(10):
        pairs = sample_user_pairs(g, 8, rng)
        cfg = RoutingConfig(max_paths=4)
        static = route_pairs(RoutingView(g), pairs, cfg)
        temporal = route_temporal(build_meta(g, 1, pairs, memories=False), cfg).outcomes
        for a, b in zip(static, temporal):
            assert [p.edges for p in a.paths] == [p.edges for p in b.paths]
            assert [p.nodes for p in a.paths] == [p.nodes for p in b.paths]
            assert a.end_to_end == b.end_to_end


def test_contention_resolved_through_time():
    # one bridge, two users: the second waits a layer
    g = graph_from_edges([(0, 1, CostVector(1, 1)), (1, 2, CostVector(1, 1)), (3, 1, CostVector(1, 1)), (1, 4, CostVector(1, 1))])
    pairs = [UserPair(0, 2), UserPair(3, 4)]
    out = route_temporal(build_meta(g, 2, pairs, memories=False), RoutingConfig(max_paths=2))
    # each pair gets one path per layer
    assert [o.path_count for o in out.outcomes] == [2, 2]
    assert out.depth_reached == 2
    assert out.tau == 2 and out.bandwidth == 1.0


def test_paths_never_go_back_in_time():
    g = build_grid(5, has_memory=True)
    pairs = sample_user_pairs(g, 10, np.random.default_rng(5))
    meta = build_meta(g, 6, pairs)
    out = route_temporal(meta, RoutingConfig(max_paths=4))
    used = []
    for o in out.outcomes:
        for p in o.paths:
            assert path_layers_monotone(meta, p)
            assert meta.base_of(p.nodes[0]) == o.pair.src and meta.base_of(p.nodes[-1]) == o.pair.dst
            assert p.edges and all(meta.expanded.channels[e].kind is not ChannelKind.ASYNCHRONOUS for e in p.edges)
            used.extend(p.edges)
    assert len(used) == len(set(used))


def test_memory_edges_point_forward():
    g = build_grid(3, has_memory=True)
    meta = build_meta(g, 3, [UserPair(0, 8)])
    mem = [c for c in meta.expanded.channels.values() if c.kind is ChannelKind.MEMORY]
    assert len(mem) == 2 * 9
    for c in mem:
        u, v = c.endpoints
        assert c.directed and meta.base_of(u) == meta.base_of(v) and meta.layer(v) == meta.layer(u) + 1
    assert build_meta(g, 3, [UserPair(0, 8)], memories=False).expanded.E == meta.expanded.E - 18


def test_reported_costs_exclude_epsilon():
    g = build_grid(4)
    meta = build_meta(g, 3, [UserPair(0, 15)])
    out = route_temporal(meta, RoutingConfig(max_paths=4))
    for p in out.outcomes[0].paths:
        hops = meta.hops(p)
        assert p.weight == 2.0 * hops
        assert (p.loss_db, p.deph_db) == (hops, hops)


def test_bandwidth_metrics():
    b, ratio = bandwidth_metrics(50, 10, 12)
    assert b == 5.0 and ratio == pytest.approx(10 / 12)
    with pytest.raises(ValueError):
        bandwidth_metrics(1, 0, 1)
