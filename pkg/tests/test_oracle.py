from pathlib import Path

import pytest

from polypack import Instance, validate_solution
from polypack.classify import classify_all
from polypack.hard import solve_hard_enum
from polypack.io import generate_instance, parse_instance
from polypack.oracle import TooLarge, brute_force_opt
from polypack.pipeline import solve

from conftest import square

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def test_two_unit_squares_both_fit():
    inst = Instance.build(10, [(1, square(), 1.0), (2, square(), 2.0)])
    sol = brute_force_opt(inst)
    assert sol.total_weight == 3.0
    assert validate_solution(inst, sol)


def test_two_right_triangles_fill_halves():
    tri = [(0, 0), (9.5, 0), (0, 9.5)]
    inst = Instance.build(10, [(1, tri, 2.0), (2, tri, 3.0)])
    sol = brute_force_opt(inst)
    assert sol.total_weight == 5.0
    assert validate_solution(inst, sol)


def test_three_strips_fill_the_square():
    r = [(0, 0), (10, 0), (10, 3.3), (0, 3.3)]
    inst = Instance.build(10, [(i, r, 1.0) for i in range(3)])
    assert brute_force_opt(inst).total_weight == 3.0


def test_area_bound_limits_the_packing():
    r = [(0, 0), (8, 0), (8, 6), (0, 6)]
    inst = Instance.build(10, [(1, r, 1.0), (2, r, 1.0), (3, r, 1.5)])
    sol = brute_force_opt(inst)
    assert sol.total_weight == 1.5
    assert validate_solution(inst, sol)


def test_too_many_polygons():
    inst = Instance.build(10, [(i, square(), 1.0) for i in range(4)])
    with pytest.raises(TooLarge):
        brute_force_opt(inst)


def test_nothing_fits():
    inst = Instance.build(10, [(1, [(0, 0), (15, 0), (7, 1)], 1.0)])
    assert brute_force_opt(inst).total_weight == 0


@pytest.mark.parametrize("seed", range(6))
def test_oracle_dominates_bounded_enumeration(seed):
    inst = generate_instance(seed, 16, {"hard": 3}, "near_diagonal" if seed % 2 else "uniform")
    enum = solve_hard_enum(list(inst.items), classify_all(inst), 16)
    orc = brute_force_opt(inst, hints=[enum])
    assert validate_solution(inst, orc)
    assert orc.total_weight >= enum.total_weight


def test_oracle_is_monotone_in_resolution():
    paths = sorted(CORPUS.glob("*.txt"))[:12]
    assert paths
    for p in paths:
        inst = parse_instance(p.read_text())
        weights = [brute_force_opt(inst, fine_grid=g).total_weight for g in (4, 16, 64)]
        assert weights == sorted(weights), p.name


def test_oracle_dominates_the_pipeline_with_hints():
    inst = generate_instance(5, 8, {"easy": 1, "medium": 1, "hard": 1})
    sol = solve(inst)
    assert brute_force_opt(inst, hints=[sol]).total_weight >= sol.total_weight
