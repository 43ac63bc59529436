"""Time-expanded routing with quantum memories.

The meta-graph stacks ``T`` copies of the base network.  Memory-equipped
nodes get a directed edge to their own copy one layer later.  Every user
pair gets an asynchronous source wired out to all copies of its first node
and an asynchronous sink wired in from all copies of its second node; the
edge into or out of layer ``t`` carries routing weight ``t * epsilon`` so
ties go to the earliest layer.  Greedy multi-user routing on this graph
then resolves contention between users through time.

Layout of the expanded graph: network node ``k`` (k-th smallest base id) in
layer ``t`` has id ``t * V + k``; the source and sink of pair ``i`` are
``T * V + 2 * i`` and ``T * V + 2 * i + 1``.  Edge ids run over the layer
copies first, then asynchronous edges, then memory edges, so equal-weight
ties prefer asynchronous routing over waiting in memory.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .costalg import BLOCKED, CostVector, PhysicalCost
from .netmodel import ChannelKind, ChannelRecord, NetworkGraph, NodeKind, NodeRecord, UserPair
from .routing import Path, RoutingConfig, RoutingOutcome, RoutingView, route_pairs


def min_edge_weight(g: NetworkGraph, weights=(1.0, 1.0)) -> float:
    positive = [c.cost.weight(*weights) for c in g.channels.values() if c.cost is not BLOCKED]
    positive = [w for w in positive if w > 0]
    return min(positive, default=math.inf)


@dataclass
class TemporalMetaGraph:
    base: NetworkGraph
    depth: int
    expanded: NetworkGraph
    epsilon: float
    pairs: list[UserPair]
    base_ids: list[int]
    async_weight: dict[int, float] = field(default_factory=dict)

    @property
    def V(self) -> int:
        return len(self.base_ids)

    def node_id(self, base_id: int, layer: int) -> int:
        return layer * self.V + self.base_ids.index(base_id)

    def is_async_node(self, node_id: int) -> bool:
        return node_id >= self.depth * self.V

    def layer(self, node_id: int) -> int:
        if self.is_async_node(node_id):
            raise ValueError(f"node {node_id} is asynchronous")
        return node_id // self.V

    def base_of(self, node_id: int) -> int:
        return self.base_ids[node_id % self.V]

    def source(self, i: int) -> int:
        return self.depth * self.V + 2 * i

    def sink(self, i: int) -> int:
        return self.depth * self.V + 2 * i + 1

    def hops(self, path: Path) -> int:
        """Number of network channels on a path, memory waits excluded."""
        return sum(1 for e in path.edges if self.expanded.channels[e].kind not in (ChannelKind.MEMORY, ChannelKind.ASYNCHRONOUS))

    def layers(self, path: Path) -> list[int]:
        return [self.layer(v) for v in path.nodes if not self.is_async_node(v)]


def build_meta(
    base: NetworkGraph,
    T: int,
    pairs: Sequence[UserPair],
    memory_cost: Optional[CostVector] = None,
    epsilon: Optional[float] = None,
    memories: Optional[bool] = None,
    weights=(1.0, 1.0),
) -> TemporalMetaGraph:
    """Stack ``T`` layers of ``base`` and attach asynchronous endpoints for ``pairs``.

    ``memories`` overrides the nodes' own ``has_memory`` flags and
    ``memory_cost`` overrides their per-node memory cost.
    """
    if T < 1:
        raise ValueError("T must be at least 1")
    w_min = min_edge_weight(base, weights)
    if epsilon is None:
        epsilon = 1e-6 * (w_min if math.isfinite(w_min) else 1.0)
    if not 0 < epsilon < w_min:
        raise ValueError(f"epsilon={epsilon} must be positive and below the smallest edge weight {w_min}")
    base_ids = sorted(base.nodes)
    index = {b: k for k, b in enumerate(base_ids)}
    V = len(base_ids)
    for p in pairs:
        if p.src not in index or p.dst not in index:
            raise KeyError(f"pair {p} not in base graph")

    h = NetworkGraph(time=base.time)
    for t in range(T):
        for k, b in enumerate(base_ids):
            node = base.nodes[b]
            h.add_node(NodeRecord(t * V + k, node.kind, node.position, node.velocity, node.has_memory, node.memory_cost))
    for i in range(len(pairs)):
        h.add_node(NodeRecord(T * V + 2 * i, NodeKind.ASYNCHRONOUS))
        h.add_node(NodeRecord(T * V + 2 * i + 1, NodeKind.ASYNCHRONOUS))

    base_channels = [c for _, c in sorted(base.channels.items())]
    E = len(base_channels)
    for t in range(T):
        for j, c in enumerate(base_channels):
            u, v = index[c.endpoints[0]], index[c.endpoints[1]]
            h.add_channel(ChannelRecord(t * E + j, (t * V + u, t * V + v), c.kind, c.cost, c.directed, c.active))

    edge_id = T * E
    async_weight = {}
    for i, p in enumerate(pairs):
        src, dst = index[p.src], index[p.dst]
        for t in range(T):
            h.add_channel(ChannelRecord(edge_id, (T * V + 2 * i, t * V + src), ChannelKind.ASYNCHRONOUS, CostVector(), True))
            async_weight[edge_id] = t * epsilon
            edge_id += 1
        for t in range(T):
            h.add_channel(ChannelRecord(edge_id, (t * V + dst, T * V + 2 * i + 1), ChannelKind.ASYNCHRONOUS, CostVector(), True))
            async_weight[edge_id] = t * epsilon
            edge_id += 1

    for k, b in enumerate(base_ids):
        node = base.nodes[b]
        has_memory = node.has_memory if memories is None else memories
        if not has_memory:
            continue
        cost = node.memory_cost if memory_cost is None else memory_cost
        for t in range(T - 1):
            h.add_channel(ChannelRecord(edge_id, (t * V + k, (t + 1) * V + k), ChannelKind.MEMORY, cost, True))
            edge_id += 1

    return TemporalMetaGraph(base, T, h, epsilon, list(pairs), base_ids, async_weight)


@dataclass
class TemporalOutcome:
    """Per-pair outcomes with paths in expanded node/edge ids, async edges stripped."""

    outcomes: list[RoutingOutcome]
    depth_reached: int
    pair_depth: list[int]

    @property
    def tau(self) -> int:
        return self.depth_reached

    @property
    def bandwidth(self) -> Optional[float]:
        if self.depth_reached == 0:
            return None
        return len(self.outcomes) / self.depth_reached


def _strip(path: Path, meta: TemporalMetaGraph) -> Path:
    keep = [e for e in path.edges if e not in meta.async_weight]
    nodes = [v for v in path.nodes if not meta.is_async_node(v)]
    return Path(tuple(keep), tuple(nodes), path.weight, path.cost, path.loss_db, path.deph_db)


def route_temporal(meta: TemporalMetaGraph, config: RoutingConfig = RoutingConfig()) -> TemporalOutcome:
    """Greedy multi-user routing from each pair's asynchronous source to its sink.

    Asynchronous edges are never consumed.  Reported weights and costs
    exclude them, so the epsilon offsets are discounted exactly.
    """
    view = RoutingView(
        meta.expanded,
        config.w_loss,
        config.w_deph,
        extra_weight=meta.async_weight,
        persistent=meta.async_weight.keys(),
    )
    virtual_pairs = [UserPair(meta.source(i), meta.sink(i)) for i in range(len(meta.pairs))]
    routed = route_pairs(view, virtual_pairs, config)
    outcomes = []
    pair_depth = []
    for pair, out in zip(meta.pairs, routed):
        paths = [_strip(p, meta) for p in out.paths]
        outcomes.append(RoutingOutcome(pair, paths))
        pair_depth.append(max((meta.layer(v) + 1 for p in paths for v in p.nodes), default=0))
    return TemporalOutcome(outcomes, max(pair_depth, default=0), pair_depth)


def bandwidth_metrics(M: int, tau: int, tau_no_memory: int) -> tuple[float, float]:
    """Network bandwidth ``M / tau`` and the memory compression ratio.

    The ratio is the memoryless bandwidth over the bandwidth with memories.
    """
    if tau < 1 or tau_no_memory < 1:
        raise ValueError("tau must be at least 1")
    b_mem = M / tau
    return b_mem, (M / tau_no_memory) / b_mem


def path_layers_monotone(meta: TemporalMetaGraph, path: Path) -> bool:
    layers = meta.layers(path)
    return all(b >= a for a, b in zip(layers, layers[1:]))
