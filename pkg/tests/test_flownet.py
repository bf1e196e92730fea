import random

import pytest

from eqcolor import (
    CliqueDecomposition,
    Graph,
    PartialColoring,
    brute_extendable,
    build_network,
    extract_coloring,
    feasible_flow,
    find_non_adjacent_cliques,
    flow_prune,
    gen_gnp,
)
from eqcolor.flownet import _exact_feasible, _greedy_assignment, flow_feasible
from helpers import (
    assignment_feasible,
    check_flow,
    cliques_only_state,
    find_extension,
    proper_and_equitable,
    random_state,
    table1_flow,
)


def hub_triangles_state():
    """Hub 0 colored first; two triangles and the hub's private neighbors
    remain. No equitable 3-coloring can extend this."""
    edges = [(0, v) for v in range(1, 6)]
    edges += [(6, 7), (7, 8), (6, 8), (9, 10), (10, 11), (9, 11)]
    g = Graph(12, edges)
    pc = PartialColoring(g)
    pc.extend(0, 0)
    decomp = find_non_adjacent_cliques(g, pc.uncolored)
    return g, pc, decomp


def test_hub_triangles_sink_arc_bounds():
    _, pc, decomp = hub_triangles_state()
    net = build_network(pc, decomp, 3)
    sink_arcs = net.arcs[-3:]
    # 12/3 = 4 exactly, the hub's class already holds one vertex
    assert sink_arcs[0][2:] == (3, 3)
    assert sink_arcs[1][2:] == (4, 4)
    assert sink_arcs[2][2:] == (4, 4)


def test_hub_triangles_not_extendable_at_three_colors():
    g, pc, decomp = hub_triangles_state()
    net = build_network(pc, decomp, 3)
    assert feasible_flow(net).feasible is False
    assert brute_extendable(g, pc, 3) is False
    # with a fourth color the state opens up again
    assert brute_extendable(g, pc, 4) is True
    assert feasible_flow(build_network(pc, decomp, 4)).feasible is True


def test_k2_empty_coloring_unit_windows():
    g = Graph(2, [(0, 1)])
    pc = PartialColoring(g)
    decomp = find_non_adjacent_cliques(g, pc.uncolored)
    net = build_network(pc, decomp, 2)
    assert [arc[2:] for arc in net.arcs[-2:]] == [(1, 1), (1, 1)]
    res = feasible_flow(net)
    assert res.feasible
    check_flow(net, res.flow)
    assert sum(res.flow[: net.a1_count]) == 2


def test_star_center_colored_seven_colors_feasible():
    g = Graph(12, [(0, v) for v in range(1, 12)])
    pc = PartialColoring(g)
    pc.extend(0, 0)
    decomp = find_non_adjacent_cliques(g, pc.uncolored)
    assert not decomp.cliques  # leaves are independent: all residual
    net = build_network(pc, decomp, 7)
    assert feasible_flow(net).feasible is True
    assert brute_extendable(g, pc, 7) is True


def test_sink_capacity_shortfall_is_infeasible():
    """Cut at the sink: when the color->sink upper bounds sum below |U| no
    flow can reach the target value. Built networks never produce this on
    their own, so squeeze one sink window by hand."""
    g = Graph(6, [])
    pc = PartialColoring(g)
    decomp = find_non_adjacent_cliques(g, pc.uncolored)
    net = build_network(pc, decomp, 2)
    assert feasible_flow(net).feasible is True
    squeezed = []
    for tail, head, lo, up in net.arcs:
        if head == net.sink:
            squeezed.append((tail, head, 0, 1))
        else:
            squeezed.append((tail, head, lo, up))
    net.arcs = squeezed
    assert sum(arc[3] for arc in net.arcs[-2:]) < net.value_target
    assert feasible_flow(net).feasible is False


def test_trivial_decomposition_copy_layer_not_binding():
    """With everything in the residual part the copy layer's bounds equal
    |U| and feasibility matches a direct assignment model."""
    rng = random.Random(61)
    for _ in range(300):
        g, pc, _, k0 = random_state(rng, n_max=7)
        trivial = CliqueDecomposition((), set(pc.uncolored))
        net = build_network(pc, trivial, k0)
        for tail, head, lo, up in net.arcs[net.a1_count + net.a2_count :][: net.a3_count]:
            assert lo == 0 and up == len(pc.uncolored)
        assert feasible_flow(net).feasible == assignment_feasible(net)


def test_build_network_rejects_oversized_class():
    g = Graph(6, [])
    pc = PartialColoring(g)
    for v in range(4):
        pc.extend(v, 0)
    decomp = find_non_adjacent_cliques(g, pc.uncolored)
    with pytest.raises(ValueError):
        build_network(pc, decomp, 2)  # ceil(6/2)=3 < 4


def test_build_network_rejects_low_k0():
    g = Graph(4, [])
    pc = PartialColoring(g)
    pc.extend(0, 0)
    pc.extend(1, 1)
    decomp = find_non_adjacent_cliques(g, pc.uncolored)
    with pytest.raises(ValueError):
        build_network(pc, decomp, 1)


def test_arc_windows_well_formed():
    rng = random.Random(46)
    for _ in range(300):
        _, pc, decomp, k0 = random_state(rng, n_max=8)
        net = build_network(pc, decomp, k0)
        for tail, head, lo, up in net.arcs:
            assert 0 <= lo <= up, (tail, head, lo, up)


def test_feasible_flow_agrees_with_assignment_oracle():
    rng = random.Random(47)
    agree = 0
    for _ in range(600):
        _, pc, decomp, k0 = random_state(rng, n_max=7)
        net = build_network(pc, decomp, k0)
        assert feasible_flow(net).feasible == assignment_feasible(net)
        agree += 1
    assert agree == 600


def test_flow_soundness_against_brute_force():
    rng = random.Random(48)
    for _ in range(1500):
        g, pc, decomp, k0 = random_state(rng, n_max=8)
        if brute_extendable(g, pc, k0):
            net = build_network(pc, decomp, k0)
            assert feasible_flow(net).feasible


def test_flow_exactness_on_clique_decompositions():
    rng = random.Random(49)
    done = 0
    while done < 600:
        state = cliques_only_state(rng)
        if state is None:
            continue
        g, pc, decomp, k0 = state
        net = build_network(pc, decomp, k0)
        assert feasible_flow(net).feasible == brute_extendable(g, pc, k0)
        done += 1


def test_extension_transforms_to_admissible_flow():
    rng = random.Random(50)
    done = 0
    while done < 400:
        g, pc, decomp, k0 = random_state(rng, n_max=8)
        ext = find_extension(g, pc, k0)
        if ext is None:
            continue
        net = build_network(pc, decomp, k0)
        check_flow(net, table1_flow(net, ext))
        done += 1


def test_feasible_flow_decodes_to_extension_when_residual_empty():
    rng = random.Random(51)
    done = 0
    while done < 400:
        state = cliques_only_state(rng)
        if state is None:
            continue
        g, pc, decomp, k0 = state
        net = build_network(pc, decomp, k0)
        res = feasible_flow(net)
        if not res.feasible:
            continue
        check_flow(net, res.flow)
        assign = extract_coloring(net, res)
        assert set(assign) == pc.uncolored
        full = list(pc.color_of)
        for v, c in assign.items():
            full[v] = c
        assert proper_and_equitable(g, full, k0)
        done += 1


def test_extract_requires_feasible():
    g, pc, decomp = hub_triangles_state()
    net = build_network(pc, decomp, 3)
    with pytest.raises(ValueError):
        extract_coloring(net, feasible_flow(net))


def test_flow_prune_hub_triangles_root():
    g, pc, decomp = hub_triangles_state()
    assert flow_prune(pc, decomp, 3, 4) is True
    assert flow_prune(pc, decomp, 3, 5) is False  # k0=4 is feasible


def test_flow_prune_open_at_known_chi():
    g = Graph(5, [(i, (i + 1) % 5) for i in range(5)])
    pc = PartialColoring(g)
    decomp = find_non_adjacent_cliques(g, pc.uncolored)
    assert flow_prune(pc, decomp, 3, 5) is False  # an equitable 3-coloring exists


def test_flow_prune_empty_candidate_range():
    g = Graph(12, [])
    pc = PartialColoring(g)
    for v in range(5):
        pc.extend(v, 0)
    pc.extend(5, 1)
    pc.extend(6, 2)
    decomp = find_non_adjacent_cliques(g, pc.uncolored)
    # k_used=3 forces k0=3, but M=5 > ceil(12/3)=4: nothing to test
    assert flow_prune(pc, decomp, 1, 4) is True
    assert brute_extendable(g, pc, 3) is False


def test_flow_prune_prefilter_equivalent():
    rng = random.Random(52)
    for _ in range(800):
        g, pc, decomp, k0 = random_state(rng, n_max=8)
        k_upper = rng.randint(k0, g.n + 1)
        k_lower = rng.randint(1, max(1, pc.k_used))
        a = flow_prune(pc, decomp, k_lower, k_upper, use_rule_prefilter=True)
        b = flow_prune(pc, decomp, k_lower, k_upper, use_rule_prefilter=False)
        assert a == b


def test_fast_path_matches_reference():
    rng = random.Random(53)
    for _ in range(2000):
        _, pc, decomp, k0 = random_state(rng, n_max=9)
        ref = feasible_flow(build_network(pc, decomp, k0)).feasible
        assert flow_feasible(pc, decomp, k0) == ref
        complete, assign = _greedy_assignment(pc, decomp, k0)
        if complete:
            assert ref is True
        else:
            assert _exact_feasible(pc, decomp, k0, assign) == ref
            assert _exact_feasible(pc, decomp, k0, None) == ref


def test_flow_prune_never_cuts_optimal_path():
    """A prune below the best reachable color count would break exactness:
    whenever some equitable k-coloring extends the state, flow_prune with
    that k inside its candidate range must keep the branch."""
    rng = random.Random(54)
    for _ in range(400):
        g, pc, decomp, _ = random_state(rng, n_max=9)
        feasible_ks = [
            k
            for k in range(max(1, pc.k_used), g.n + 1)
            if brute_extendable(g, pc, k)
        ]
        if feasible_ks:
            assert flow_prune(pc, decomp, 1, feasible_ks[0] + 1) is False


def test_network_dump_format():
    g = Graph(2, [(0, 1)])
    pc = PartialColoring(g)
    decomp = find_non_adjacent_cliques(g, pc.uncolored)
    net = build_network(pc, decomp, 2)
    lines = net.dump().strip().splitlines()
    assert len(lines) == len(net.arcs)
    assert all(len(line.split()) == 4 for line in lines)
