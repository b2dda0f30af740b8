import math

import numpy as np
import pytest

from polypack import Instance, SolverConfig, validate_solution
from polypack.classify import classify_all
from polypack.geometry import REL_TOL, ConvexPolygon, canonicalize, segment_hits_polygon
from polypack.triangles import (TRIANGLE_SOLVERS, Infeasible, TriangleMeta, _Fan, facing,
                                solve_bottomright_dp, solve_corner_dp, solve_hard_triangles,
                                solve_single_max, solve_topleft_dp, top_left_place,
                                topleft_table, triangle_candidates)

from conftest import hard_triangle_instance


def _canon_tri(N, L, h, apex=0.5):
    return canonicalize(ConvexPolygon([(0, 0), (L * N, 0), (apex * L * N, h * N)])).vertices


def test_meta_picks_the_vertex_between_the_two_long_edges():
    m = TriangleMeta.of(0, np.array([(0, 0), (10, 0), (2, 1)]))
    assert m.v_star == 1
    assert set(m.long_edges) == {0, 1}


def test_meta_rejects_non_triangles():
    with pytest.raises(ValueError):
        TriangleMeta.of(0, np.zeros((4, 2)))


def test_top_left_place_empty():
    assert top_left_place([], 16, 64) == []


def test_single_thin_triangle_lies_on_the_diagonal():
    N = 16
    v = _canon_tri(N, 1.3, 0.05)
    w = top_left_place([v], N, 64)[0]
    s = TriangleMeta.of(0, v).v_star
    assert np.allclose(w[s], (0, N))
    # the edge v* -> v*+1 follows the diagonal from (0, N) to (N, 0)
    e = w[(s + 1) % 3]
    assert e[0] + e[1] == pytest.approx(N)
    assert w.min() >= -REL_TOL * N and w.max() <= N * (1 + REL_TOL)


def test_second_triangle_does_not_fit():
    N = 16
    v = _canon_tri(N, 1.2, 0.1)
    assert len(top_left_place([v], N, 64)) == 1
    with pytest.raises(Infeasible) as exc:
        top_left_place([v, v], N, 64)
    assert exc.value.index == 1


def test_next_step_is_the_first_free_ray():
    # at t' the ray clears the triangle and p_t'--p_R misses it; at t'-1 one of both fails
    N, T = 16.0, 64
    fan = _Fan(N, T)
    tol = REL_TOL * N
    inst = hard_triangle_instance(7, 16, 12)
    pR = np.array([N, N / 2])
    checked = 0
    for it in inst.items:
        v = it.poly.vertices
        s = TriangleMeta.of(0, v).v_star
        w_all = fan.place_all(v, s)
        ok = fan.fits(w_all)
        for t in np.flatnonzero(ok)[::7]:
            w = w_all[t]
            tp = int(fan.next_step(w[None], s, np.array([t]))[0])
            assert tp >= t

            def free(k):
                p = np.array([fan.x_of(k), N / 2])
                up = w[(s - 1) % 3] - w[s]
                clears = fan.angles[k] >= math.atan2(up[1], up[0]) - 1e-12
                return clears and not segment_hits_polygon(p, pR, w, tol)

            if tp <= T:
                assert free(tp)
            if tp - 1 >= t and tp <= T + 1:
                assert not free(tp - 1)
            checked += 1
    assert checked > 10


@pytest.mark.parametrize("seed", range(6))
def test_dp_tables_are_monotone(seed):
    inst = hard_triangle_instance(seed, 16 if seed % 2 else 32, 8)
    cl = classify_all(inst)
    for mirror in (False, True):
        tb = topleft_table(list(inst.items), cl, inst.N, mirror=mirror)
        assert np.all(tb.weights[:-1] >= tb.weights[1:] - 1e-9)
        assert np.all(tb.weights[:, :-1] >= tb.weights[:, 1:] - 1e-9)


@pytest.mark.parametrize("seed", range(8))
def test_all_triangle_solvers_are_feasible(seed):
    inst = hard_triangle_instance(100 + seed, [8, 16, 32, 64][seed % 4], 1 + seed)
    cl = classify_all(inst)
    cands = triangle_candidates(list(inst.items), cl, inst.N)
    for name, sol in cands.items():
        assert validate_solution(inst, sol), name
    best = solve_hard_triangles(list(inst.items), cl, inst.N)
    assert best.total_weight == max(s.total_weight for s in cands.values())
    assert best.total_weight >= cands["SingleMax"].total_weight


def _mirrored(inst):
    return Instance.build(inst.N, [(it.id, it.poly.vertices[:, ::-1], it.weight) for it in inst.items])


@pytest.mark.parametrize("seed", range(5))
def test_bottom_right_is_top_left_of_the_mirror_image(seed):
    inst = hard_triangle_instance(200 + seed, 16, 5)
    mir = _mirrored(inst)
    br = solve_bottomright_dp(list(inst.items), classify_all(inst), inst.N)
    tl = solve_topleft_dp(list(mir.items), classify_all(mir), mir.N)
    assert br.total_weight == pytest.approx(tl.total_weight)


def test_symmetric_triangle_gets_the_same_weight_from_both_dps():
    N = 16
    inst = Instance.build(N, [(0, _canon_tri(N, 1.2, 0.05), 3.0)])
    cl = classify_all(inst)
    assert cl[0].cls == "Hard"
    tl = solve_topleft_dp(list(inst.items), cl, N)
    br = solve_bottomright_dp(list(inst.items), cl, N)
    assert tl.total_weight == br.total_weight == 3.0


def test_corner_dp_wins_on_a_known_instance():
    inst = hard_triangle_instance(6, 32, 2)
    cl = classify_all(inst)
    cands = triangle_candidates(list(inst.items), cl, 32)
    others = max(cands[k].total_weight for k in ("SingleMax", "TriangleTL", "TriangleBR"))
    assert cands["TriangleCorner"].total_weight > others
    assert validate_solution(inst, cands["TriangleCorner"])
    assert solve_hard_triangles(list(inst.items), cl, 32).producer == "TriangleCorner"


def test_corner_dp_output_faces_the_bottom_right_corner():
    inst = hard_triangle_instance(9, 16, 6)
    cl = classify_all(inst)
    sol = solve_corner_dp(list(inst.items), cl, 16)
    from polypack.model import placed_vertices
    for pid, w in placed_vertices(inst, sol).items():
        kind, sides = facing(w, TriangleMeta.of(pid, inst[pid].poly.vertices).v_star, 16)
        assert kind == "corner" and set(sides) == {"bottom", "right"}


def test_no_triangles_gives_empty_solutions():
    for name, fn in TRIANGLE_SOLVERS:
        assert fn([], [], 16).total_weight == 0


def test_small_node_budget_still_feasible():
    inst = hard_triangle_instance(9, 16, 6)
    cl = classify_all(inst)
    sol = solve_corner_dp(list(inst.items), cl, 16, SolverConfig(node_budget=5))
    assert validate_solution(inst, sol)
    assert any("budget" in n for n in sol.notes)


def test_single_max_is_the_heaviest_triangle():
    inst = hard_triangle_instance(3, 16, 4)
    sol = solve_single_max(list(inst.items), classify_all(inst), 16)
    assert sol.total_weight == max(it.weight for it in inst.items)
