"""Fixpoint reduction of a cost graph towards a set of terminals.

Three rewrites are applied until none changes the graph:

* parallel edges between one pair of nodes are purified into one edge,
* a non-terminal node with exactly two edges to distinct neighbours is
  swapped out, its edges fused into one whose cost is the dB sum,
* edges whose routing weight ``loss_db + deph_db`` exceeds the threshold
  are pruned.

Only active, undirected channels take part.  A node touching any other
channel (memory, asynchronous, inactive) is never eliminated.  Blocked
channels contribute nothing to a purification and are pruned.
"""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field

from .costalg import BLOCKED, from_physical, purify_n, to_physical
from .netmodel import ChannelRecord, NetworkGraph


@dataclass(frozen=True)
class ReductionConfig:
    threshold: float = math.inf
    terminals: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if not self.threshold > 0:
            raise ValueError("threshold must be positive or infinite")
        object.__setattr__(self, "terminals", frozenset(self.terminals))


def _reducible(c: ChannelRecord) -> bool:
    return c.active and not c.directed


def _parallel_groups(g: NetworkGraph) -> list[list[ChannelRecord]]:
    groups = defaultdict(list)
    for edge_id in sorted(g.channels):
        c = g.channels[edge_id]
        if _reducible(c):
            groups[frozenset(c.endpoints)].append(c)
    return [grp for grp in groups.values() if len(grp) > 1]


def _merge_parallel(g: NetworkGraph) -> bool:
    changed = False
    for group in _parallel_groups(g):
        usable = [c.cost for c in group if c.cost is not BLOCKED]
        cost = from_physical(purify_n([to_physical(x) for x in usable])) if usable else BLOCKED
        g.replace_channel(group[0].edge_id, cost=cost)
        for c in group[1:]:
            g.remove_channel(c.edge_id)
        changed = True
    return changed


def reduce_cycles(g: NetworkGraph) -> NetworkGraph:
    """Purify every bundle of parallel edges into a single edge (lowest id kept)."""
    out = g.copy()
    _merge_parallel(out)
    return out


def _series_candidate(g: NetworkGraph, node: int, terminals) -> tuple[ChannelRecord, ChannelRecord] | None:
    if node in terminals or g.degree(node) != 2:
        return None
    a, b = g.incident(node)
    if not (_reducible(a) and _reducible(b)):
        return None
    if a.other(node) == b.other(node):
        return None
    return a, b


def _merge_series(g: NetworkGraph, terminals) -> bool:
    changed = False
    again = True
    while again:
        again = False
        for node in sorted(g.nodes):
            pair = _series_candidate(g, node, terminals)
            if pair is None:
                continue
            a, b = pair
            u, v = a.other(node), b.other(node)
            g.remove_node(node)
            g.add_channel(ChannelRecord(min(a.edge_id, b.edge_id), (u, v), a.kind, a.cost + b.cost))
            again = changed = True
    return changed


def reduce_linear(g: NetworkGraph, terminals=()) -> NetworkGraph:
    """Swap out degree-2 non-terminal nodes until none remain."""
    out = g.copy()
    _merge_series(out, frozenset(terminals))
    return out


def _prune(g: NetworkGraph, threshold: float) -> bool:
    doomed = [
        c.edge_id
        for c in g.channels.values()
        if _reducible(c) and (c.cost is BLOCKED or c.cost.weight() > threshold)
    ]
    for edge_id in doomed:
        g.remove_channel(edge_id)
    return bool(doomed)


def reduce_fixpoint(g: NetworkGraph, config: ReductionConfig = ReductionConfig()) -> NetworkGraph:
    """Alternate parallel merging, series merging and pruning until nothing changes."""
    missing = config.terminals - set(g.nodes)
    if missing:
        raise KeyError(f"terminals not in graph: {sorted(missing)}")
    out = g.copy()
    while True:
        changed = _merge_parallel(out)
        changed |= _merge_series(out, config.terminals)
        changed |= _prune(out, config.threshold)
        if not changed:
            return out
