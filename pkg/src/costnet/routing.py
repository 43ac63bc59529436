"""Shortest-path and greedy multi-path routing over the cost multigraph.

Routing runs on a :class:`RoutingView`, a compressed-sparse-row copy of the
graph whose per-edge ``active`` mask is the mutable working state.  Removing
an accepted path only clears mask entries, so the caller's graph is never
touched unless explicitly asked.

Dijkstra tie-break: the heap orders by (distance, node index) and a node's
predecessor is replaced on an equal-distance relaxation only by a smaller
predecessor node, then a smaller edge id.  Node and edge indices follow
ascending ids, so results are fully deterministic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np
from numba import njit

from .costalg import BLOCKED, PhysicalCost, purify_n, to_physical, CostVector
from .netmodel import NetworkGraph, UserPair


@dataclass(frozen=True)
class RoutingConfig:
    max_paths: int = 4
    threshold: float = math.inf
    w_loss: float = 1.0
    w_deph: float = 1.0

    def __post_init__(self):
        if self.max_paths < 1:
            raise ValueError("max_paths must be at least 1")
        if self.w_loss < 0 or self.w_deph < 0 or (self.w_loss == 0 and self.w_deph == 0):
            raise ValueError("weights must be non-negative and not both zero")
        if not self.threshold > 0:
            raise ValueError("threshold must be positive")


@dataclass(frozen=True)
class Path:
    edges: tuple[int, ...]
    nodes: tuple[int, ...]
    weight: float
    cost: PhysicalCost
    loss_db: float = 0.0
    deph_db: float = 0.0

    @property
    def src(self) -> int:
        return self.nodes[0]

    @property
    def dst(self) -> int:
        return self.nodes[-1]

    def __len__(self):
        return len(self.edges)


@dataclass
class RoutingOutcome:
    pair: UserPair
    paths: list[Path] = field(default_factory=list)

    @property
    def path_count(self) -> int:
        return len(self.paths)

    @property
    def end_to_end(self) -> Optional[PhysicalCost]:
        if not self.paths:
            return None
        return purify_n([p.cost for p in self.paths])


@njit(cache=True)
def _heap_push(keys, items, size, key, item):
    i = size
    keys[i] = key
    items[i] = item
    while i > 0:
        parent = (i - 1) >> 1
        if keys[parent] < key or (keys[parent] == key and items[parent] < item):
            break
        keys[i] = keys[parent]
        items[i] = items[parent]
        i = parent
    keys[i] = key
    items[i] = item
    return size + 1


@njit(cache=True)
def _heap_pop(keys, items, size):
    top_key = keys[0]
    top_item = items[0]
    size -= 1
    key = keys[size]
    item = items[size]
    i = 0
    while True:
        child = 2 * i + 1
        if child >= size:
            break
        other = child + 1
        if other < size and (keys[other] < keys[child] or (keys[other] == keys[child] and items[other] < items[child])):
            child = other
        if key < keys[child] or (key == keys[child] and item < items[child]):
            break
        keys[i] = keys[child]
        items[i] = items[child]
        i = child
    if size > 0:
        keys[i] = key
        items[i] = item
    return top_key, top_item, size


@njit(cache=True)
def _dijkstra(indptr, nbr, slot_edge, weight, active, src, dst):
    """Return (distance, edge indices src->dst); empty path if unreachable."""
    n = indptr.shape[0] - 1
    dist = np.full(n, np.inf)
    pred_node = np.full(n, -1, np.int64)
    pred_edge = np.full(n, -1, np.int64)
    done = np.zeros(n, np.bool_)
    cap = nbr.shape[0] + 1
    keys = np.empty(cap)
    items = np.empty(cap, np.int64)
    size = _heap_push(keys, items, 0, 0.0, src)
    dist[src] = 0.0
    while size > 0:
        d, u, size = _heap_pop(keys, items, size)
        if done[u]:
            continue
        done[u] = True
        if u == dst:
            break
        for k in range(indptr[u], indptr[u + 1]):
            e = slot_edge[k]
            if not active[e]:
                continue
            v = nbr[k]
            if done[v]:
                continue
            nd = d + weight[e]
            if nd < dist[v]:
                dist[v] = nd
                pred_node[v] = u
                pred_edge[v] = e
                size = _heap_push(keys, items, size, nd, v)
            elif nd == dist[v] and (u < pred_node[v] or (u == pred_node[v] and e < pred_edge[v])):
                pred_node[v] = u
                pred_edge[v] = e
    if not done[dst]:
        return np.inf, np.empty(0, np.int64)
    hops = 0
    v = dst
    while v != src:
        hops += 1
        v = pred_node[v]
    path = np.empty(hops, np.int64)
    v = dst
    for i in range(hops - 1, -1, -1):
        path[i] = pred_edge[v]
        v = pred_node[v]
    return dist[dst], path


class RoutingView:
    """Array snapshot of a graph's routable channels.

    Blocked and inactive channels are left out.  ``extra_weight`` adds a
    routing-only offset to chosen edges (used for asynchronous edges) and
    ``persistent`` edges are never consumed by accepted paths.
    """

    def __init__(self, g: NetworkGraph, w_loss=1.0, w_deph=1.0, extra_weight=None, persistent=()):
        self.node_ids = np.array(sorted(g.nodes), dtype=np.int64)
        self.index = {int(node): i for i, node in enumerate(self.node_ids)}
        usable = [c for _, c in sorted(g.channels.items()) if c.active and c.cost is not BLOCKED]
        self.edge_ids = np.array([c.edge_id for c in usable], dtype=np.int64)
        self.edge_index = {int(e): i for i, e in enumerate(self.edge_ids)}
        m = len(usable)
        self.loss = np.array([c.cost.loss_db for c in usable], dtype=float)
        self.deph = np.array([c.cost.deph_db for c in usable], dtype=float)
        self.weight = w_loss * self.loss + w_deph * self.deph
        extra_weight = extra_weight or {}
        self.virtual = np.zeros(m, np.bool_)
        for edge_id, w in extra_weight.items():
            i = self.edge_index.get(edge_id)
            if i is not None:
                self.weight[i] += w
                self.virtual[i] = True
        self.persistent = np.zeros(m, np.bool_)
        for edge_id in persistent:
            i = self.edge_index.get(edge_id)
            if i is not None:
                self.persistent[i] = True
        self.tail = np.empty(m, np.int64)
        self.head = np.empty(m, np.int64)
        rows: list[list[tuple[int, int]]] = [[] for _ in self.node_ids]
        for i, c in enumerate(usable):
            u, v = self.index[c.endpoints[0]], self.index[c.endpoints[1]]
            self.tail[i], self.head[i] = u, v
            rows[u].append((i, v))
            if not c.directed:
                rows[v].append((i, u))
        self.indptr = np.zeros(len(rows) + 1, np.int64)
        self.indptr[1:] = np.cumsum([len(r) for r in rows])
        flat = [entry for row in rows for entry in sorted(row)]
        self.slot_edge = np.array([e for e, _ in flat], dtype=np.int64)
        self.nbr = np.array([v for _, v in flat], dtype=np.int64)
        self.active = np.ones(m, np.bool_)

    def reset(self):
        self.active[:] = True

    def shortest(self, src: int, dst: int) -> tuple[float, np.ndarray]:
        """Shortest path between node ids as (weight, edge indices)."""
        return _dijkstra(self.indptr, self.nbr, self.slot_edge, self.weight, self.active, self.index[src], self.index[dst])

    def consume(self, path_idx: np.ndarray):
        keep = self.persistent[path_idx]
        self.active[path_idx[~keep]] = False

    def make_path(self, src: int, path_idx: np.ndarray) -> Path:
        nodes = [self.index[src]]
        for e in path_idx:
            u, v = self.tail[e], self.head[e]
            nodes.append(v if nodes[-1] == u else u)
        real = path_idx[~self.virtual[path_idx]]
        loss = float(self.loss[real].sum())
        deph = float(self.deph[real].sum())
        # discount the routing-only offsets of virtual edges
        weight = float(self.weight[real].sum())
        return Path(
            edges=tuple(int(self.edge_ids[e]) for e in path_idx),
            nodes=tuple(int(self.node_ids[v]) for v in nodes),
            weight=weight,
            cost=to_physical(CostVector(loss, deph)),
            loss_db=loss,
            deph_db=deph,
        )


def _check_nodes(g: NetworkGraph, *nodes: int):
    for node in nodes:
        if node not in g.nodes:
            raise KeyError(f"unknown node id {node}")


def shortest_path(g: NetworkGraph, src: int, dst: int, weights=(1.0, 1.0)) -> Optional[Path]:
    _check_nodes(g, src, dst)
    if src == dst:
        raise ValueError("source and destination coincide")
    view = RoutingView(g, *weights)
    dist, idx = view.shortest(src, dst)
    if not math.isfinite(dist):
        return None
    return view.make_path(src, idx)


def route_pairs(view: RoutingView, pairs: Sequence[UserPair], config: RoutingConfig) -> list[RoutingOutcome]:
    """Round-robin greedy allocation on an existing view (mutates ``view.active``).

    Each round offers every still-eligible pair, in order, its current
    shortest path.  A pair drops out once it has ``max_paths`` paths or its
    shortest path is missing or over threshold.
    """
    outcomes = [RoutingOutcome(p) for p in pairs]
    eligible = list(range(len(pairs)))
    while eligible:
        still = []
        for i in eligible:
            pair = pairs[i]
            dist, idx = view.shortest(pair.src, pair.dst)
            if not (math.isfinite(dist) and dist <= config.threshold):
                continue
            view.consume(idx)
            outcomes[i].paths.append(view.make_path(pair.src, idx))
            if len(outcomes[i].paths) < config.max_paths:
                still.append(i)
        eligible = still
    return outcomes


def _release(g: NetworkGraph, outcomes: Iterable[RoutingOutcome], persistent=()):
    persistent = set(persistent)
    for outcome in outcomes:
        for path in outcome.paths:
            for edge_id in path.edges:
                if edge_id not in persistent and edge_id in g.channels:
                    g.remove_channel(edge_id)


def greedy_multi_user(
    g: NetworkGraph,
    pairs: Sequence[UserPair],
    config: RoutingConfig = RoutingConfig(),
    in_place: bool = False,
) -> list[RoutingOutcome]:
    """Multi-user, multi-path greedy routing; pairs must be node-disjoint.

    With ``in_place`` the granted channels are removed from ``g``.
    """
    seen: set[int] = set()
    for p in pairs:
        _check_nodes(g, p.src, p.dst)
        if p.src in seen or p.dst in seen:
            raise ValueError("user pairs must not share endpoints")
        seen.update((p.src, p.dst))
    view = RoutingView(g, config.w_loss, config.w_deph)
    outcomes = route_pairs(view, pairs, config)
    if in_place:
        _release(g, outcomes)
    return outcomes


def greedy_multi_path(
    g: NetworkGraph,
    pair: UserPair,
    config: RoutingConfig = RoutingConfig(),
    in_place: bool = False,
) -> RoutingOutcome:
    """Repeated shortest-path removal for one user pair, paths purified together."""
    return greedy_multi_user(g, [pair], config, in_place)[0]
