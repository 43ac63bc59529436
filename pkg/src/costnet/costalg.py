"""Additive cost vectors and their physical image.

A channel carries two additive decibel costs, one per error mechanism
(loss and dephasing).  Each cost is ``-10 log10(p)`` of that mechanism's
success probability, so costs along a swapping chain simply add.  The
physical image of a cost vector is the pair (efficiency, conditional
fidelity), on which swapping and purification act as two commutative,
associative compositions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Iterator, Sequence, Union


@dataclass(frozen=True)
class CostVector:
    """Additive channel cost in decibels of success probability."""

    loss_db: float = 0.0
    deph_db: float = 0.0

    def __post_init__(self):
        for name in ("loss_db", "deph_db"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0:
                raise ValueError(f"{name} must be finite and non-negative, got {value!r}")

    def __add__(self, other):
        if other is BLOCKED:
            return BLOCKED
        if not isinstance(other, CostVector):
            return NotImplemented
        return CostVector(self.loss_db + other.loss_db, self.deph_db + other.deph_db)

    __radd__ = __add__

    def weight(self, w_loss: float = 1.0, w_deph: float = 1.0) -> float:
        """Scalar routing weight."""
        return w_loss * self.loss_db + w_deph * self.deph_db

    def to_list(self) -> list:
        return [self.loss_db, self.deph_db]


class _Blocked:
    """Infinite cost.  A channel with this cost transmits nothing."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "BLOCKED"

    def __add__(self, other):
        if isinstance(other, (CostVector, _Blocked)):
            return self
        return NotImplemented

    __radd__ = __add__

    def __reduce__(self):
        return (_Blocked, ())

    def weight(self, w_loss: float = 1.0, w_deph: float = 1.0) -> float:
        return math.inf


BLOCKED = _Blocked()
Cost = Union[CostVector, _Blocked]


@dataclass(frozen=True)
class PhysicalCost:
    """Efficiency ``eta`` and loss-conditioned fidelity of a Bell pair.

    Fidelities below 1/2 are accepted so that the purification group laws
    can be exercised on the whole unit interval; the loss/dephasing model
    itself never produces them.
    """

    eta: float = 1.0
    fidelity: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.eta <= 1.0:
            raise ValueError(f"eta must lie in [0, 1], got {self.eta!r}")
        if not 0.0 <= self.fidelity <= 1.0:
            raise ValueError(f"fidelity must lie in [0, 1], got {self.fidelity!r}")


def _db_to_prob(db: float) -> float:
    return 10.0 ** (-db / 10.0)


def _prob_to_db(p: float) -> float:
    return -10.0 * math.log10(p)


def to_physical(cv: Cost) -> PhysicalCost:
    if cv is BLOCKED:
        return PhysicalCost(0.0, 0.5)
    return PhysicalCost(_db_to_prob(cv.loss_db), (1.0 + _db_to_prob(cv.deph_db)) / 2.0)


def from_physical(pc: PhysicalCost) -> Cost:
    if pc.eta <= 0.0 or pc.fidelity <= 0.5:
        return BLOCKED
    # clamp the -0.0 produced by log10(1.0)
    return CostVector(max(_prob_to_db(pc.eta), 0.0), max(_prob_to_db(2.0 * pc.fidelity - 1.0), 0.0))


# Scalar fidelity laws.  These are defined on all of [0, 1].

def swap_fidelity(f1: float, f2: float) -> float:
    return f1 * f2 + (1.0 - f1) * (1.0 - f2)


def purify_fidelity(f1: float, f2: float) -> float:
    num = f1 * f2
    return num / (num + (1.0 - f1) * (1.0 - f2))


def swap_compose(a: PhysicalCost, b: PhysicalCost) -> PhysicalCost:
    """Entanglement swapping: efficiencies multiply, Pauli errors accumulate."""
    return PhysicalCost(a.eta * b.eta, swap_fidelity(a.fidelity, b.fidelity))


def purify(a: PhysicalCost, b: PhysicalCost) -> PhysicalCost:
    """Post-selected purification of two Bell pairs."""
    fa, fb = a.fidelity, b.fidelity
    success = fa * fb + (1.0 - fa) * (1.0 - fb)
    return PhysicalCost(a.eta * b.eta * success, fa * fb / success)


def purify_n(costs: Sequence[PhysicalCost]) -> PhysicalCost:
    """Purify any number of pairs into one.

    The fidelity uses the order-independent closed form; the efficiency is
    a left fold of pairwise purification in input order.
    """
    costs = list(costs)
    if not costs:
        raise ValueError("purify_n needs at least one input")
    good = math.prod(c.fidelity for c in costs)
    bad = math.prod(1.0 - c.fidelity for c in costs)
    eta = reduce(purify, costs).eta
    return PhysicalCost(eta, good / (good + bad))


def swap_n(costs: Sequence[PhysicalCost]) -> PhysicalCost:
    costs = list(costs)
    if not costs:
        raise ValueError("swap_n needs at least one input")
    return reduce(swap_compose, costs)


# Purification trees

@dataclass(frozen=True)
class Purify:
    """Internal node of a purification tree: purify ``left`` with ``right``."""

    left: "PurificationTree"
    right: "PurificationTree"


PurificationTree = Union[PhysicalCost, Purify]


def purify_tree(tree: PurificationTree) -> PhysicalCost:
    if isinstance(tree, PhysicalCost):
        return tree
    return purify(purify_tree(tree.left), purify_tree(tree.right))


def tree_leaves(tree: PurificationTree) -> list[PhysicalCost]:
    if isinstance(tree, PhysicalCost):
        return [tree]
    return tree_leaves(tree.left) + tree_leaves(tree.right)


def _insert_everywhere(tree: PurificationTree, leaf: PhysicalCost) -> Iterator[PurificationTree]:
    # graft the new leaf above every node of the tree, root included
    yield Purify(tree, leaf)
    if isinstance(tree, Purify):
        for sub in _insert_everywhere(tree.left, leaf):
            yield Purify(sub, tree.right)
        for sub in _insert_everywhere(tree.right, leaf):
            yield Purify(tree.left, sub)


def enumerate_trees(leaves: Sequence[PhysicalCost]) -> Iterator[PurificationTree]:
    """Yield every distinct purification ordering of the given leaves.

    Children are unordered, so ``n`` leaves give ``(2n - 3)!!`` trees.
    """
    leaves = list(leaves)
    if not leaves:
        raise ValueError("need at least one leaf")
    trees: Iterable[PurificationTree] = [leaves[0]]
    for leaf in leaves[1:]:
        trees = [t for tree in trees for t in _insert_everywhere(tree, leaf)]
    yield from trees


def tree_count(n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    return math.prod(range(2 * n - 3, 0, -2))


def area_law(b: int, d: int, edge: PhysicalCost, swap_success: float = 1.0) -> PhysicalCost:
    """End-to-end cost across a strand ``d`` hops deep with ``b`` parallel edges per hop."""
    if b < 1 or d < 1:
        raise ValueError("b and d must be positive")
    if not 0.0 < swap_success <= 1.0:
        raise ValueError("swap_success must lie in (0, 1]")
    hop = purify_n([edge] * b)
    total = swap_n([hop] * d)
    return PhysicalCost(total.eta * swap_success ** (d - 1), total.fidelity)
