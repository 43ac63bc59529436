"""Cost-vector simulation of entanglement-distribution networks."""
from .costalg import BLOCKED, CostVector, PhysicalCost, from_physical, purify, purify_n, swap_compose, swap_n, to_physical
from .netmodel import ChannelKind, ChannelRecord, NetworkGraph, NodeKind, NodeRecord, UserPair, build_grid
from .reduction import ReductionConfig, reduce_cycles, reduce_fixpoint, reduce_linear
from .routing import Path, RoutingConfig, RoutingOutcome, greedy_multi_path, greedy_multi_user, shortest_path
from .temporal import TemporalMetaGraph, TemporalOutcome, build_meta, route_temporal

__version__ = "0.1.0"
