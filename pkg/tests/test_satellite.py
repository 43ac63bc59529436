import math

import pytest
from hypothesis import given, settings, strategies as st

from costnet.costalg import to_physical
from costnet.satellite import (
    AtmosphereModel,
    PassConfig,
    effective_distance,
    freespace_channel_cost,
    freespace_cost,
    pass_network,
    simulate_pass,
    vertical_effective_distance,
)


@settings(deadline=None)
@given(st.floats(1.0, 2000.0), st.floats(0.0, 5.0))
def test_vertical_path_closed_form(length, ground_alt):
    m = AtmosphereModel()
    # keep the step well under the scale height
    steps = 1000 * math.ceil(length / 500)
    quad = effective_distance((0.0, 0.0, ground_alt), (0.0, 0.0, ground_alt + length), m, steps)
    exact = vertical_effective_distance(length, m, ground_alt)
    assert quad == pytest.approx(exact, rel=1e-6)


def test_default_quadrature_converged():
    cfg = PassConfig()
    for t in range(cfg.time_steps):
        sat = tuple(p + t * v for p, v in zip(cfg.sat_position, cfg.sat_velocity))
        d1 = effective_distance(cfg.ground_a, sat, cfg.atmosphere, cfg.steps)
        d2 = effective_distance(cfg.ground_a, sat, cfg.atmosphere, 2 * cfg.steps)
        assert abs(d1 - d2) < 1e-6 * d2


def test_long_vertical_path_tends_to_scale_height():
    m = AtmosphereModel()
    assert effective_distance((0, 0, 0), (0, 0, 400), m) == pytest.approx(m.H, rel=1e-6)


def test_slant_path_is_stretched():
    m = AtmosphereModel()
    vertical = effective_distance((0, 0, 0), (0, 0, 500), m)
    slant = effective_distance((0, 0, 0), (500, 0, 500), m)
    # same altitude profile, path longer by 1/sin(45 deg)
    assert slant == pytest.approx(vertical * math.sqrt(2), rel=1e-6)


def test_effective_distance_edge_cases():
    assert effective_distance((1, 2, 3), (1, 2, 3)) == 0.0
    with pytest.raises(ValueError):
        effective_distance((0, 0, 10), (0, 0, 5))
    with pytest.raises(ValueError):
        AtmosphereModel(H=0)


def test_freespace_cost_limits():
    m = AtmosphereModel()
    assert freespace_cost(0.0, m).eta == 1.0 and freespace_cost(0.0, m).fidelity == 1.0
    far = freespace_cost(1e4, m)
    assert far.eta < 1e-50 and far.fidelity == pytest.approx(0.5)
    d = 7.3
    assert freespace_cost(d, m).eta == pytest.approx(math.exp(-m.beta * d) * m.d0**2 / (d + m.d0) ** 2)


def test_channel_cost_roundtrip():
    cost = freespace_channel_cost((0, 0, 0), (0, 0, 500))
    pc = to_physical(cost)
    ref = freespace_cost(vertical_effective_distance(500.0))
    # quadrature error only
    assert pc.eta == pytest.approx(ref.eta, rel=1e-7)
    assert pc.fidelity == pytest.approx(ref.fidelity, rel=1e-7)


def test_pass_network_layout():
    g = pass_network(PassConfig())
    assert g.V == 3 and g.E == 3


def test_pass_shape():
    samples = simulate_pass(PassConfig())
    assert len(samples) == 11
    static = {s.static for s in samples}
    assert len(static) == 1
    etas = [s.freespace.eta for s in samples]
    fids = [s.freespace.fidelity for s in samples]
    best = max(range(len(samples)), key=lambda i: etas[i])
    assert best == 5 and max(range(len(samples)), key=lambda i: fids[i]) == 5
    for a, b in zip(etas[:5], etas[1:6]):
        assert b > a
    for i in range(11):
        assert etas[i] == pytest.approx(etas[10 - i], rel=1e-9)
        s = samples[i]
        assert s.purified.fidelity >= max(s.static.fidelity, s.freespace.fidelity)


def test_pass_config_rejects_unknown_keys():
    with pytest.raises(ValueError):
        PassConfig.from_dict({"speed": 3})
    cfg = PassConfig.from_dict({"time_steps": 3, "static_cost": [1, 2], "atmosphere": {"beta": 0.05}})
    assert cfg.time_steps == 3 and cfg.atmosphere.beta == 0.05
