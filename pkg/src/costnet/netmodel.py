"""Multigraph network model, lattice generators and user-pair sampling."""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Iterable, Optional

import numpy as np

from .costalg import BLOCKED, Cost, CostVector


class NodeKind(str, Enum):
    GROUND = "ground"
    SATELLITE = "satellite"
    ASYNCHRONOUS = "asynchronous"


class ChannelKind(str, Enum):
    FIBER = "fiber"
    FREESPACE = "freespace"
    MEMORY = "memory"
    ASYNCHRONOUS = "asynchronous"


Vec3 = tuple[float, float, float]


@dataclass(frozen=True)
class NodeRecord:
    id: int
    kind: NodeKind = NodeKind.GROUND
    position: Optional[Vec3] = None
    velocity: Optional[Vec3] = None
    has_memory: bool = False
    memory_cost: CostVector = CostVector(0.0, 0.0)

    def __post_init__(self):
        if self.kind is NodeKind.SATELLITE and (self.position is None or self.velocity is None):
            raise ValueError(f"satellite node {self.id} needs position and velocity")


@dataclass(frozen=True)
class ChannelRecord:
    edge_id: int
    endpoints: tuple[int, int]
    kind: ChannelKind = ChannelKind.FIBER
    cost: Cost = CostVector(0.0, 0.0)
    directed: bool = False
    active: bool = True

    def __post_init__(self):
        if self.kind in (ChannelKind.MEMORY, ChannelKind.ASYNCHRONOUS) and not self.directed:
            raise ValueError(f"{self.kind.value} channel {self.edge_id} must be directed")

    def other(self, node: int) -> int:
        u, v = self.endpoints
        return v if node == u else u


@dataclass(frozen=True)
class UserPair:
    src: int
    dst: int

    def __post_init__(self):
        if self.src == self.dst:
            raise ValueError("user pair endpoints must differ")


@dataclass
class NetworkGraph:
    """Edge-id keyed multigraph.

    Parallel channels between the same endpoints are independent records.
    ``adjacency`` lists every incident channel of a node, in and out.
    """

    nodes: dict[int, NodeRecord] = field(default_factory=dict)
    channels: dict[int, ChannelRecord] = field(default_factory=dict)
    adjacency: dict[int, list[int]] = field(default_factory=dict)
    time: int = 0

    @property
    def V(self) -> int:
        return len(self.nodes)

    @property
    def E(self) -> int:
        return len(self.channels)

    def add_node(self, node: NodeRecord) -> NodeRecord:
        if node.id in self.nodes:
            raise ValueError(f"duplicate node id {node.id}")
        self.nodes[node.id] = node
        self.adjacency[node.id] = []
        return node

    def add_channel(self, channel: ChannelRecord) -> ChannelRecord:
        if channel.edge_id in self.channels:
            raise ValueError(f"duplicate edge id {channel.edge_id}")
        u, v = channel.endpoints
        if u not in self.nodes or v not in self.nodes:
            raise KeyError(f"channel {channel.edge_id} references unknown node")
        if u == v:
            raise ValueError("self-loops are not allowed")
        self.channels[channel.edge_id] = channel
        self.adjacency[u].append(channel.edge_id)
        self.adjacency[v].append(channel.edge_id)
        return channel

    def connect(self, u: int, v: int, cost: Cost, kind=ChannelKind.FIBER, directed=False) -> ChannelRecord:
        return self.add_channel(ChannelRecord(self.next_edge_id(), (u, v), ChannelKind(kind), cost, directed))

    def next_edge_id(self) -> int:
        return max(self.channels, default=-1) + 1

    def remove_channel(self, edge_id: int) -> ChannelRecord:
        channel = self.channels.pop(edge_id)
        for node in set(channel.endpoints):
            self.adjacency[node].remove(edge_id)
        return channel

    def remove_node(self, node_id: int):
        for edge_id in list(self.adjacency[node_id]):
            self.remove_channel(edge_id)
        del self.adjacency[node_id]
        del self.nodes[node_id]

    def replace_channel(self, edge_id: int, **changes) -> ChannelRecord:
        channel = replace(self.channels[edge_id], **changes)
        self.channels[edge_id] = channel
        return channel

    def incident(self, node_id: int) -> list[ChannelRecord]:
        return [self.channels[e] for e in self.adjacency[node_id]]

    def degree(self, node_id: int) -> int:
        return len(self.adjacency[node_id])

    def between(self, u: int, v: int) -> list[ChannelRecord]:
        return [c for c in self.incident(u) if set(c.endpoints) == {u, v}]

    def copy(self) -> "NetworkGraph":
        return NetworkGraph(
            dict(self.nodes),
            dict(self.channels),
            {k: list(v) for k, v in self.adjacency.items()},
            self.time,
        )

    def manhattan(self, u: int, v: int) -> float:
        pu, pv = self.nodes[u].position, self.nodes[v].position
        if pu is None or pv is None:
            raise ValueError("manhattan distance needs node positions")
        return abs(pu[0] - pv[0]) + abs(pu[1] - pv[1])

    def structure(self) -> tuple:
        """Hashable summary used to compare graphs."""
        return (
            self.time,
            tuple(sorted(self.nodes.items())),
            tuple(sorted((k, c) for k, c in self.channels.items())),
        )

    # JSON

    def to_dict(self) -> dict:
        return {
            "time": self.time,
            "nodes": [_node_to_dict(n) for _, n in sorted(self.nodes.items())],
            "channels": [_channel_to_dict(c) for _, c in sorted(self.channels.items())],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "NetworkGraph":
        unknown = set(data) - {"time", "nodes", "channels"}
        if unknown:
            raise ValueError(f"unknown graph keys: {sorted(unknown)}")
        g = cls(time=int(data.get("time", 0)))
        for nd in data["nodes"]:
            g.add_node(_node_from_dict(nd))
        for cd in data["channels"]:
            g.add_channel(_channel_from_dict(cd))
        return g

    def save(self, path):
        Path(path).write_text(json.dumps(self.to_dict(), indent=1) + "\n")

    @classmethod
    def load(cls, path) -> "NetworkGraph":
        return cls.from_dict(json.loads(Path(path).read_text()))


def cost_to_json(cost: Cost):
    return "blocked" if cost is BLOCKED else {"loss_db": cost.loss_db, "deph_db": cost.deph_db}


def cost_from_json(data) -> Cost:
    if data == "blocked":
        return BLOCKED
    if isinstance(data, (list, tuple)):
        return CostVector(float(data[0]), float(data[1]))
    unknown = set(data) - {"loss_db", "deph_db"}
    if unknown:
        raise ValueError(f"unknown cost keys: {sorted(unknown)}")
    return CostVector(float(data.get("loss_db", 0.0)), float(data.get("deph_db", 0.0)))


_NODE_KEYS = {"id", "kind", "position", "velocity", "has_memory", "memory_cost"}
_CHANNEL_KEYS = {"edge_id", "endpoints", "kind", "cost", "directed", "active"}


def _vec(v) -> Optional[Vec3]:
    return None if v is None else tuple(float(x) for x in v)


def _node_to_dict(n: NodeRecord) -> dict:
    return {
        "id": n.id,
        "kind": n.kind.value,
        "position": None if n.position is None else list(n.position),
        "velocity": None if n.velocity is None else list(n.velocity),
        "has_memory": n.has_memory,
        "memory_cost": cost_to_json(n.memory_cost),
    }


def _node_from_dict(d: dict) -> NodeRecord:
    unknown = set(d) - _NODE_KEYS
    if unknown:
        raise ValueError(f"unknown node keys: {sorted(unknown)}")
    return NodeRecord(
        id=int(d["id"]),
        kind=NodeKind(d.get("kind", "ground")),
        position=_vec(d.get("position")),
        velocity=_vec(d.get("velocity")),
        has_memory=bool(d.get("has_memory", False)),
        memory_cost=cost_from_json(d.get("memory_cost", {"loss_db": 0.0, "deph_db": 0.0})),
    )


def _channel_to_dict(c: ChannelRecord) -> dict:
    return {
        "edge_id": c.edge_id,
        "endpoints": list(c.endpoints),
        "kind": c.kind.value,
        "cost": cost_to_json(c.cost),
        "directed": c.directed,
        "active": c.active,
    }


def _channel_from_dict(d: dict) -> ChannelRecord:
    unknown = set(d) - _CHANNEL_KEYS
    if unknown:
        raise ValueError(f"unknown channel keys: {sorted(unknown)}")
    u, v = d["endpoints"]
    return ChannelRecord(
        edge_id=int(d["edge_id"]),
        endpoints=(int(u), int(v)),
        kind=ChannelKind(d.get("kind", "fiber")),
        cost=cost_from_json(d["cost"]),
        directed=bool(d.get("directed", False)),
        active=bool(d.get("active", True)),
    )


# Generators

def grid_coords(node_id: int, n: int) -> tuple[int, int]:
    """(column, row) of a lattice node."""
    row, col = divmod(node_id, n)
    return col, row


def build_grid(n: int, edge_cost: CostVector = CostVector(1.0, 1.0), has_memory: bool = False) -> NetworkGraph:
    """``n`` x ``n`` square lattice; node ``row * n + col`` sits at (col, row)."""
    if n < 2:
        raise ValueError("grid size must be at least 2")
    g = NetworkGraph()
    for node_id in range(n * n):
        col, row = grid_coords(node_id, n)
        g.add_node(NodeRecord(node_id, position=(float(col), float(row), 0.0), has_memory=has_memory))
    edge_id = 0
    for node_id in range(n * n):
        col, row = grid_coords(node_id, n)
        if col + 1 < n:
            g.add_channel(ChannelRecord(edge_id, (node_id, node_id + 1), cost=edge_cost))
            edge_id += 1
        if row + 1 < n:
            g.add_channel(ChannelRecord(edge_id, (node_id, node_id + n), cost=edge_cost))
            edge_id += 1
    return g


_PERCOLATABLE = (ChannelKind.FIBER, ChannelKind.FREESPACE)


def percolate(g: NetworkGraph, q: float, rng: np.random.Generator) -> NetworkGraph:
    """Copy of ``g`` with each network channel removed independently with probability ``q``.

    One uniform draw is consumed per candidate channel, in edge-id order.
    """
    if not 0.0 <= q <= 1.0:
        raise ValueError("q must lie in [0, 1]")
    out = g.copy()
    candidates = sorted(e for e, c in g.channels.items() if c.kind in _PERCOLATABLE)
    draws = rng.random(len(candidates))
    for edge_id, u in zip(candidates, draws):
        if u < q:
            out.remove_channel(edge_id)
    return out


def sample_user_pairs(g: NetworkGraph, m: int, rng: np.random.Generator) -> list[UserPair]:
    """``m`` pairs over ``2m`` distinct non-asynchronous nodes, sampled without replacement."""
    candidates = sorted(i for i, nd in g.nodes.items() if nd.kind is not NodeKind.ASYNCHRONOUS)
    if m < 1:
        raise ValueError("need at least one pair")
    if 2 * m > len(candidates):
        raise ValueError(f"cannot place {m} disjoint pairs on {len(candidates)} nodes")
    picks = rng.choice(len(candidates), size=2 * m, replace=False)
    return [UserPair(candidates[picks[2 * i]], candidates[picks[2 * i + 1]]) for i in range(m)]


def update_dynamic(g: NetworkGraph, t: int, atmosphere=None, steps: int = 1000) -> NetworkGraph:
    """Graph state at time step ``t``.

    Satellite nodes move at constant velocity and every free-space channel
    is re-costed from the new geometry.  The result depends only on ``t``
    and the input graph's own time stamp, so repeated calls are idempotent.
    """
    from .satellite import AtmosphereModel, freespace_channel_cost

    if t < 0:
        raise ValueError("t must be non-negative")
    atmosphere = atmosphere or AtmosphereModel()
    out = g.copy()
    dt = t - g.time
    out.time = t
    for node_id, node in g.nodes.items():
        if node.kind is NodeKind.SATELLITE:
            pos = tuple(p + dt * v for p, v in zip(node.position, node.velocity))
            out.nodes[node_id] = replace(node, position=pos)
    for edge_id, ch in g.channels.items():
        if ch.kind is not ChannelKind.FREESPACE:
            continue
        a, b = (out.nodes[x] for x in ch.endpoints)
        if a.kind is NodeKind.SATELLITE and b.kind is not NodeKind.SATELLITE:
            a, b = b, a
        if b.kind is not NodeKind.SATELLITE:
            raise ValueError(f"free-space channel {edge_id} has no satellite endpoint")
        if a.position is None:
            raise ValueError(f"free-space channel {edge_id} ground end has no position")
        out.replace_channel(edge_id, cost=freespace_channel_cost(a.position, b.position, atmosphere, steps))
    return out


def graph_from_edges(edges: Iterable[tuple[int, int, CostVector]], nodes: Iterable[int] = ()) -> NetworkGraph:
    """Convenience constructor for small hand-built graphs."""
    g = NetworkGraph()
    edges = list(edges)
    ids = set(nodes) | {u for u, _, _ in edges} | {v for _, v, _ in edges}
    for node_id in sorted(ids):
        g.add_node(NodeRecord(node_id))
    for u, v, cost in edges:
        g.connect(u, v, cost)
    return g
