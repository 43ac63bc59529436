"""Toy atmospheric free-space channel and a single satellite pass.

All default parameters are illustrative.  The pass geometry puts the
satellite directly above the midpoint of the two ground stations at
step 5 of 11.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import simpson

from .costalg import (
    Cost,
    CostVector,
    PhysicalCost,
    from_physical,
    purify,
    swap_compose,
    to_physical,
)
from .netmodel import ChannelKind, ChannelRecord, NetworkGraph, NodeKind, NodeRecord, update_dynamic


@dataclass(frozen=True)
class AtmosphereModel:
    rho0: float = 1.0
    h0: float = 0.0  # km
    H: float = 8.0  # scale height, km
    beta: float = 0.02  # per km of effective distance
    d0: float = 100.0  # focal length, km

    def __post_init__(self):
        for name in ("rho0", "H", "beta", "d0"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")

    def density(self, h):
        return self.rho0 * np.exp(-(np.asarray(h, dtype=float) - self.h0) / self.H)


def effective_distance(ground, sat, model: AtmosphereModel = AtmosphereModel(), steps: int = 1000) -> float:
    """Path length through the atmosphere rescaled to ground-level density.

    Integrates the density profile along the straight line from ``ground``
    to ``sat`` (3-vectors in km, third component is altitude) with
    Simpson's rule on ``steps`` intervals.
    """
    if steps < 2:
        raise ValueError("need at least 2 integration steps")
    ground = np.asarray(ground, dtype=float)
    sat = np.asarray(sat, dtype=float)
    length = float(np.linalg.norm(sat - ground))
    if length == 0.0:
        return 0.0
    rise = sat[2] - ground[2]
    if rise <= 0:
        raise ValueError("satellite must be above the ground station")
    sin_elev = rise / length
    x = np.linspace(0.0, length, steps + 1)
    return float(simpson(model.density(ground[2] + x * sin_elev), x=x) / model.rho0)


def vertical_effective_distance(length: float, model: AtmosphereModel = AtmosphereModel(), ground_alt: float = 0.0) -> float:
    """Closed form of :func:`effective_distance` for a vertical path."""
    return model.H * math.exp(-(ground_alt - model.h0) / model.H) * (1.0 - math.exp(-length / model.H))


def freespace_cost(d: float, model: AtmosphereModel = AtmosphereModel()) -> PhysicalCost:
    if d < 0:
        raise ValueError("effective distance must be non-negative")
    decay = math.exp(-model.beta * d)
    return PhysicalCost(decay * model.d0**2 / (d + model.d0) ** 2, (1.0 + decay) / 2.0)


def freespace_channel_cost(ground, sat, model: AtmosphereModel = AtmosphereModel(), steps: int = 1000) -> Cost:
    return from_physical(freespace_cost(effective_distance(ground, sat, model, steps), model))


@dataclass
class PassConfig:
    ground_a: tuple = (-50.0, 0.0, 0.0)
    ground_b: tuple = (50.0, 0.0, 0.0)
    static_cost: CostVector = CostVector(3.0, 3.0)
    sat_position: tuple = (-1000.0, 0.0, 500.0)
    sat_velocity: tuple = (200.0, 0.0, 0.0)
    time_steps: int = 11
    steps: int = 1000
    atmosphere: AtmosphereModel = field(default_factory=AtmosphereModel)

    def __post_init__(self):
        if self.time_steps < 1:
            raise ValueError("time_steps must be at least 1")

    @classmethod
    def from_dict(cls, data: dict) -> "PassConfig":
        known = {"ground_a", "ground_b", "static_cost", "sat_position", "sat_velocity", "time_steps", "steps", "atmosphere"}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown satellite config keys: {sorted(unknown)}")
        kwargs = dict(data)
        for key in ("ground_a", "ground_b", "sat_position", "sat_velocity"):
            if key in kwargs:
                kwargs[key] = tuple(float(x) for x in kwargs[key])
        if "static_cost" in kwargs:
            kwargs["static_cost"] = CostVector(*map(float, kwargs["static_cost"]))
        if "atmosphere" in kwargs:
            kwargs["atmosphere"] = AtmosphereModel(**kwargs["atmosphere"])
        return cls(**kwargs)


@dataclass(frozen=True)
class PassSample:
    t: int
    static: PhysicalCost
    freespace: PhysicalCost
    purified: PhysicalCost


def pass_network(config: PassConfig) -> NetworkGraph:
    """Ground stations 0 and 1 joined by a static fibre; satellite 2 linked to both."""
    g = NetworkGraph()
    g.add_node(NodeRecord(0, position=config.ground_a))
    g.add_node(NodeRecord(1, position=config.ground_b))
    g.add_node(NodeRecord(2, NodeKind.SATELLITE, config.sat_position, config.sat_velocity))
    g.add_channel(ChannelRecord(0, (0, 1), ChannelKind.FIBER, config.static_cost))
    g.add_channel(ChannelRecord(1, (0, 2), ChannelKind.FREESPACE, CostVector()))
    g.add_channel(ChannelRecord(2, (2, 1), ChannelKind.FREESPACE, CostVector()))
    return g


def simulate_pass(config: PassConfig = PassConfig()) -> list[PassSample]:
    base = pass_network(config)
    out = []
    for t in range(config.time_steps):
        g = update_dynamic(base, t, config.atmosphere, config.steps)
        static = to_physical(g.channels[0].cost)
        freespace = swap_compose(to_physical(g.channels[1].cost), to_physical(g.channels[2].cost))
        out.append(PassSample(t, static, freespace, purify(static, freespace)))
    return out
