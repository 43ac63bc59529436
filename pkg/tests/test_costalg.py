import math
import pickle

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from costnet.costalg import (
    BLOCKED,
    CostVector,
    PhysicalCost,
    area_law,
    enumerate_trees,
    from_physical,
    purify,
    purify_fidelity,
    purify_n,
    purify_tree,
    swap_compose,
    swap_fidelity,
    swap_n,
    to_physical,
    tree_count,
    tree_leaves,
)
from oracles import dm_purify, dm_swap

fid = st.floats(0.5, 1.0)
unit = st.floats(0.0, 1.0)
db = st.floats(0.0, 40.0)
phys = st.builds(PhysicalCost, unit, fid)


@settings(max_examples=60, deadline=None)
@given(fid, fid)
def test_swap_matches_density_matrix(fa, fb):
    f, p = dm_swap(fa, fb)
    assert swap_fidelity(fa, fb) == pytest.approx(f, abs=1e-12)
    assert p == pytest.approx(0.25)


@settings(max_examples=60, deadline=None)
@given(fid, fid)
def test_purify_matches_density_matrix(fa, fb):
    f, p = dm_purify(fa, fb)
    out = purify(PhysicalCost(1.0, fa), PhysicalCost(1.0, fb))
    assert out.fidelity == pytest.approx(f, abs=1e-12)
    assert out.eta == pytest.approx(p, abs=1e-12)


@given(db, db, db, db)
def test_db_addition_is_swap(l1, d1, l2, d2):
    a, b = CostVector(l1, d1), CostVector(l2, d2)
    direct = to_physical(a + b)
    composed = swap_compose(to_physical(a), to_physical(b))
    assert direct.eta == pytest.approx(composed.eta, rel=1e-12, abs=1e-300)
    assert direct.fidelity == pytest.approx(composed.fidelity, abs=1e-12)


@given(db, db)
def test_physical_roundtrip(loss, deph):
    cv = CostVector(loss, deph)
    back = from_physical(to_physical(cv))
    assert back.loss_db == pytest.approx(loss, abs=1e-9)
    assert back.deph_db == pytest.approx(deph, abs=1e-9)


def test_zero_cost_is_perfect():
    assert to_physical(CostVector()) == PhysicalCost(1.0, 1.0)
    assert from_physical(PhysicalCost(1.0, 1.0)) == CostVector(0.0, 0.0)


def test_three_db_halves():
    pc = to_physical(CostVector(3.0, 3.0))
    assert pc.eta == pytest.approx(0.501187, abs=1e-6)
    assert pc.fidelity == pytest.approx(0.750594, abs=1e-6)


def test_blocked_absorbs_and_maps_to_nothing():
    assert CostVector(1, 1) + BLOCKED is BLOCKED
    assert BLOCKED + CostVector(1, 1) is BLOCKED
    assert BLOCKED.weight() == math.inf
    assert to_physical(BLOCKED) == PhysicalCost(0.0, 0.5)
    assert from_physical(PhysicalCost(0.0, 0.9)) is BLOCKED
    assert from_physical(PhysicalCost(0.5, 0.5)) is BLOCKED
    assert pickle.loads(pickle.dumps(BLOCKED)) is BLOCKED


@pytest.mark.parametrize("bad", [(-1, 0), (0, -0.1), (math.inf, 0), (math.nan, 0)])
def test_cost_vector_rejects(bad):
    with pytest.raises(ValueError):
        CostVector(*bad)


@pytest.mark.parametrize("bad", [(1.1, 0.9), (-0.1, 0.9), (0.5, 1.2)])
def test_physical_rejects(bad):
    with pytest.raises(ValueError):
        PhysicalCost(*bad)


@given(unit, unit)
def test_scalar_laws_commute(a, b):
    assert swap_fidelity(a, b) == swap_fidelity(b, a)
    if a * b + (1 - a) * (1 - b) > 0:
        assert purify_fidelity(a, b) == purify_fidelity(b, a)


@given(st.floats(0.01, 0.99), st.floats(0.01, 0.99), st.floats(0.01, 0.99))
def test_scalar_laws_associate(a, b, c):
    assert swap_fidelity(swap_fidelity(a, b), c) == pytest.approx(swap_fidelity(a, swap_fidelity(b, c)), abs=1e-12)
    assert purify_fidelity(purify_fidelity(a, b), c) == pytest.approx(purify_fidelity(a, purify_fidelity(b, c)), abs=1e-12)


@given(st.floats(0.5, 1.0, exclude_max=True))
def test_identities_and_inverses(f):
    assert purify_fidelity(f, 0.5) == f
    assert swap_fidelity(f, 1.0) == f
    assert purify_fidelity(f, 1.0 - f) == 0.5
    # 1/2 absorbs under swapping
    assert swap_fidelity(f, 0.5) == 0.5


def test_purify_of_two_one_db_edges():
    edge = to_physical(CostVector(1.0, 1.0))
    out = purify(edge, edge)
    # 10^-0.2 * (F^2 + (1-F)^2) with F = (1 + 10^-0.1) / 2
    assert out.eta == pytest.approx(0.514532, abs=1e-6)
    assert out.fidelity == pytest.approx(0.987032, abs=1e-6)
    assert area_law(2, 1, edge) == purify_n([edge, edge])


@settings(deadline=None)
@given(st.lists(phys.filter(lambda p: p.fidelity < 1.0), min_size=1, max_size=6))
def test_purify_n_matches_left_fold(costs):
    closed = purify_n(costs)
    fold = costs[0]
    for c in costs[1:]:
        fold = purify(fold, c)
    assert closed.eta == fold.eta
    assert closed.fidelity == pytest.approx(fold.fidelity, abs=1e-12)


def test_purify_n_efficiency_product_form():
    costs = [PhysicalCost(0.7, 0.9), PhysicalCost(0.5, 0.8), PhysicalCost(0.9, 0.95)]
    good = math.prod(c.fidelity for c in costs)
    bad = math.prod(1 - c.fidelity for c in costs)
    assert purify_n(costs).eta == pytest.approx(0.7 * 0.5 * 0.9 * (good + bad), rel=1e-12)


def test_empty_inputs_rejected():
    with pytest.raises(ValueError):
        purify_n([])
    with pytest.raises(ValueError):
        swap_n([])
    with pytest.raises(ValueError):
        next(enumerate_trees([]))


@pytest.mark.parametrize("n,count", [(1, 1), (2, 1), (3, 3), (4, 15), (5, 105), (6, 945)])
def test_tree_enumeration_counts(n, count):
    leaves = [PhysicalCost(1.0, 0.6 + 0.05 * i) for i in range(n)]
    trees = list(enumerate_trees(leaves))
    assert tree_count(n) == count
    assert len(trees) == count
    # distinct as unordered trees: canonicalise children by sorted repr
    def canon(t):
        if isinstance(t, PhysicalCost):
            return repr(t)
        return "(" + "|".join(sorted([canon(t.left), canon(t.right)])) + ")"
    assert len({canon(t) for t in trees}) == count
    for t in trees:
        assert sorted(map(repr, tree_leaves(t))) == sorted(map(repr, leaves))


def test_tree_results_agree():
    leaves = [PhysicalCost(0.9, 0.7), PhysicalCost(0.5, 0.85), PhysicalCost(0.8, 0.6), PhysicalCost(0.95, 0.99)]
    ref = purify_n(leaves)
    for t in enumerate_trees(leaves):
        out = purify_tree(t)
        assert out.eta == pytest.approx(ref.eta, rel=1e-12)
        assert out.fidelity == pytest.approx(ref.fidelity, abs=1e-12)


def test_area_law_bulk():
    edge = to_physical(CostVector(1.0, 1.0))
    # one strand of depth d is a d-hop swap chain
    assert area_law(1, 4, edge).eta == pytest.approx(to_physical(CostVector(4, 4)).eta, rel=1e-12)
    out = area_law(3, 5, edge, swap_success=0.9)
    ref = swap_n([purify_n([edge] * 3)] * 5)
    assert out.eta == pytest.approx(ref.eta * 0.9**4, rel=1e-12)
    assert out.fidelity == ref.fidelity
    with pytest.raises(ValueError):
        area_law(0, 1, edge)


def test_worked_examples():
    assert to_physical(CostVector(10, 0)) == PhysicalCost(0.1, 1.0)
    back = from_physical(PhysicalCost(0.1, 1.0))
    assert back.loss_db == pytest.approx(10.0, abs=1e-12) and back.deph_db == 0.0
    s = swap_compose(PhysicalCost(0.9, 0.9), PhysicalCost(0.9, 0.9))
    assert s.eta == pytest.approx(0.81) and s.fidelity == pytest.approx(0.82)
    p = purify(PhysicalCost(0.9, 0.8), PhysicalCost(0.9, 0.8))
    assert p.eta == pytest.approx(0.5508) and p.fidelity == pytest.approx(0.64 / 0.68)
    assert purify(PhysicalCost(1, 0.7), PhysicalCost(1, 0.3)).fidelity == pytest.approx(0.5, abs=1e-15)
    assert purify_n([PhysicalCost(1, 0.8)] * 3).fidelity == pytest.approx(0.512 / 0.520)
    chain = area_law(1, 10, to_physical(CostVector(1, 1)))
    assert chain.eta == pytest.approx(0.1) and chain.fidelity == pytest.approx(0.55)


@given(st.floats(0.51, 0.99))
def test_swap_inverse_from_composition_law(f):
    # the algebraic inverse lies outside the physical range
    inv = f / (2 * f - 1)
    assert inv > 1
    assert swap_fidelity(f, inv) == pytest.approx(1.0, abs=1e-9)


@given(st.floats(0.5, 1.0, exclude_min=True, exclude_max=True), st.floats(0.5, 1.0, exclude_min=True, exclude_max=True), unit, unit)
def test_purify_improves_fidelity_and_costs_efficiency(fa, fb, ea, eb):
    out = purify(PhysicalCost(ea, fa), PhysicalCost(eb, fb))
    assert out.fidelity > max(fa, fb) or out.fidelity == pytest.approx(max(fa, fb))
    assert out.eta <= ea * eb


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_every_tree_shape_agrees(n):
    rng = np.random.default_rng(n)
    leaves = [PhysicalCost(float(e), float(f)) for e, f in zip(rng.uniform(0, 1, n), rng.uniform(0.5, 1, n))]
    ref = purify_n(leaves)
    for t in enumerate_trees(leaves):
        out = purify_tree(t)
        assert abs(out.eta - ref.eta) <= 1e-12 and abs(out.fidelity - ref.fidelity) <= 1e-12
