import numpy as np
import pytest

from polypack.knapsack1d import (CapacityNegative, KnapsackItem, knapsack_exact, knapsack_fptas,
                                 two_knapsack)

from brute import knapsack_opt_enum, knapsack_opt_int, two_knapsack_opt


def _items(sizes, profits):
    return [KnapsackItem(float(s), float(p), i) for i, (s, p) in enumerate(zip(sizes, profits))]


def _profit(items, ids):
    return sum(it.profit for it in items if it.id in ids)


def _size(items, ids):
    return sum(it.size for it in items if it.id in ids)


def test_textbook_instance():
    items = _items([10, 20, 30], [60, 100, 120])
    assert knapsack_exact(items, 50, 50) == {1, 2}
    assert knapsack_fptas(items, 50, 0.1) == {1, 2}


def test_empty_and_zero_capacity():
    assert knapsack_fptas([], 10, 0.1) == set()
    assert knapsack_exact(_items([0, 1], [1, 1]), 0, 5) == {0}


def test_negative_capacity():
    with pytest.raises(CapacityNegative):
        knapsack_fptas(_items([1], [1]), -1, 0.1)


@pytest.mark.parametrize("eps", [0.5, 0.1])
def test_fptas_ratio_and_feasibility(eps):
    rng = np.random.default_rng(3)
    for _ in range(60):
        n = int(rng.integers(1, 13))
        sizes = rng.integers(1, 30, n)
        profits = rng.integers(1, 50, n)
        cap = int(rng.integers(1, 80))
        items = _items(sizes, profits)
        got = knapsack_fptas(items, cap, eps)
        assert _size(items, got) <= cap
        assert _profit(items, got) >= (1 - eps) * knapsack_opt_enum(sizes, profits, cap) - 1e-9


def test_exact_on_integers_matches_dp():
    rng = np.random.default_rng(4)
    for _ in range(40):
        n = int(rng.integers(1, 16))
        sizes = rng.integers(1, 40, n)
        profits = rng.uniform(0.5, 9.0, n)
        cap = int(rng.integers(1, 120))
        items = _items(sizes, profits)
        got = knapsack_exact(items, cap, cap)
        assert _size(items, got) <= cap
        assert _profit(items, got) == pytest.approx(knapsack_opt_int(sizes, profits, cap))


def test_two_knapsack_matches_ternary_enumeration():
    rng = np.random.default_rng(5)
    for _ in range(40):
        n = int(rng.integers(1, 9))
        sizes = rng.uniform(0.05, 1.0, n)
        profits = rng.uniform(0.1, 5.0, n)
        items = _items(sizes, profits)
        a, b = two_knapsack(items, 1.0, 0.1)
        assert not a & b
        assert _size(items, a) <= 1.0 + 1e-12 and _size(items, b) <= 1.0 + 1e-12
        assert _profit(items, a | b) >= 0.9 * two_knapsack_opt(sizes, profits, 1.0) - 1e-9


def test_two_knapsack_rounded_path_is_feasible():
    rng = np.random.default_rng(6)
    sizes = rng.uniform(0.01, 0.5, 30)
    items = _items(sizes, rng.uniform(1, 2, 30))
    a, b = two_knapsack(items, 1.0, 0.1)
    assert not a & b
    assert _size(items, a) <= 1.0 + 1e-12 and _size(items, b) <= 1.0 + 1e-12
    # with 30 items of mean size 0.25 both bins must be nearly full
    assert _size(items, a) > 0.8 and _size(items, b) > 0.8


def test_item_validation():
    with pytest.raises(ValueError):
        KnapsackItem(1.0, 0.0, 0)
    with pytest.raises(ValueError):
        KnapsackItem(float("nan"), 1.0, 0)
