"""Acceptance suite: one test per criterion, exact arithmetic throughout.

Every criterion prints a single PASS/FAIL line (run with -s to stream
them). Exhaustive small-graph tiers: every valid DAG on up to 4 nodes
with every integer weight assignment from {0,1,2,3}, plus every valid
5-node topology at the weight extremes {0,3}; the full 5-node cross
product over {0,1,2,3} is 5.7 million weighted graphs, hours of exact
arithmetic, so the extremes stand in for it (ties and straddles live
there). The random tier is the seeded sampler at n <= 12.
"""

import itertools
from fractions import Fraction as F

import pytest

from presentbias.agents import AgentKind, AgentSpec, Objective, cost_table, simulate
from presentbias.commitment import best_zero_edge, commit_by_deletion, search_plan
from presentbias.fixtures import (
    binary_counter_bias,
    generate,
    internal_ratio_placement,
    random_dag,
)
from presentbias.goal_reward import (
    check_internal_distribution,
    feasible_reward_set,
    is_traversable,
    min_internal_reward_search,
    min_reward,
    min_reward_with_deletion,
    path_for_reward,
    traverse_with_reward,
)
from presentbias.graph import heaviest_path, shortest_path, validate
from presentbias.oracle import brute_force_equilibrium_check, feasibility_grid, grid_rewards
from presentbias.reward_seeking import reward_table
from presentbias.reward_seeking import simulate as reward_simulate
from presentbias.tiebreak import TieBreakPolicy

from conftest import enumerate_small_dags

BIASES = [F(3, 2), F(2), F(3)]
LATER = TieBreakPolicy.PREFER_LATER_SUCCESSOR_ID


def criterion(number, text):
    def decorate(fn):
        def wrapper(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"criterion {number:2d}: FAIL  {text}")
                raise
            print(f"criterion {number:2d}: PASS  {text}")

        wrapper.__name__ = fn.__name__
        return wrapper

    return decorate


def exhaustive_cost_graphs():
    yield from enumerate_small_dags((2, 3, 4), (0, 1, 2, 3))
    yield from enumerate_small_dags((5,), (0, 3))


def exhaustive_reward_graphs():
    yield from enumerate_small_dags((2, 3, 4), (0, 1, 2, 3), rewards=True)
    yield from enumerate_small_dags((5,), (0, 3), rewards=True)


def random_suite():
    for seed in range(1000):
        yield seed, random_dag(seed, 2 + seed % 11)


def soph(b, tie_break=TieBreakPolicy.MIN_TRUE_CONTINUATION):
    return AgentSpec(AgentKind.SOPHISTICATED, b, tie_break=tie_break)


@criterion(1, "worked examples reproduce exactly")
def test_criterion_01_worked_examples():
    g = generate("path_switch")
    for b, nodes, cost in [(F(1), "sut", 5), (F(2), "svt", 6), (F(10), "sut", 5)]:
        agent = AgentSpec(AgentKind.OPTIMAL) if b == 1 else soph(b)
        trace = simulate(g, agent)
        assert trace.path.nodes == tuple(nodes) and trace.true_total == cost

    two = generate("two_period", c=F(3, 2), b=2)
    for agent in (soph(F(2)), AgentSpec(AgentKind.NAIVE, F(2))):
        trace = simulate(two, agent)
        assert trace.path.nodes == ("s", "v1", "t") and trace.true_total == F(3, 2)

    three = generate("three_period", c=F(3, 2), b=2)
    assert simulate(three, soph(F(2))).path.nodes == ("s", "t")
    assert simulate(three, soph(F(2))).true_total == 1
    assert simulate(three, AgentSpec(AgentKind.NAIVE, F(2))).true_total == F(9, 4)

    g = generate("sophistication_penalty", x=1000, b=2, eps=F(1, 100))
    assert simulate(g, AgentSpec(AgentKind.NAIVE, F(2))).true_total == F(100199, 100)
    assert simulate(g, soph(F(2))).true_total == F(100099, 50)


@criterion(2, "sophisticated cost ratio <= b on exhaustive and random suites")
def test_criterion_02_cost_ratio_bound():
    checked = 0
    for g in exhaustive_cost_graphs():
        optimal, _ = shortest_path(g)
        base = optimal[g.source]
        for b in BIASES:
            assert cost_table(g, soph(b)).values[g.source] <= b * base
            checked += 1
    assert checked > 80_000
    for seed, g in random_suite():
        optimal, _ = shortest_path(g)
        base = optimal[g.source]
        for b in BIASES:
            assert cost_table(g, soph(b)).values[g.source] <= b * base


@criterion(3, "partially-naive transition: pessimistic/optimistic/future-biased")
def test_criterion_03_partial_naivete():
    for seed, g in random_suite():
        optimal, _ = shortest_path(g)
        base = optimal[g.source]
        b = BIASES[seed % 3]
        for bp in (b + F(1, 2), 2 * b):
            agent = AgentSpec(AgentKind.PARTIALLY_NAIVE, b, bp)
            assert cost_table(g, agent).values[g.source] <= bp * base
        fb = [F(1, 2), F(3, 4)][seed % 2]
        agent = AgentSpec(AgentKind.FUTURE_BIASED, fb)
        assert cost_table(g, agent).values[g.source] <= base / fb

    fan = generate("optimist_fan", b=2, n=4)
    agent = AgentSpec(AgentKind.PARTIALLY_NAIVE, F(2), F(3, 2), LATER)
    values, _ = shortest_path(fan)
    assert cost_table(fan, agent).values["s"] / values["s"] == 16 == F(2) ** 4


@criterion(4, "reward-at-goal fixtures: exact minima, paths, and interval sets")
def test_criterion_04_reward_fixtures():
    detour = generate("reward_detour")
    assert min_reward(detour, F(2)) == 7
    assert path_for_reward(detour, F(2), F(10)).nodes == ("s", "u", "t")

    got = feasible_reward_set(generate("nonmonotone_reward"), F(2))
    assert got.intervals == ((F(9), F(10)), (F(11), None))

    g1 = generate("rmin_above_cs")
    assert min_reward(g1, F(2)) == 2
    assert cost_table(g1, soph(F(2))).values["s"] == 1

    g2 = generate("rmin_below_cs")
    assert min_reward(g2, F(2), LATER) == 11
    assert cost_table(g2, soph(F(2), LATER)).values["s"] == 12


@criterion(5, "minimum-reward chain and tightness on exhaustive and random suites")
def test_criterion_05_chain():
    def chain_holds(g, b):
        optimal, _ = shortest_path(g)
        base = optimal[g.source]
        smallest = min_reward(g, b)
        with_deletion, _ = min_reward_with_deletion(g, b)
        assert base <= with_deletion <= smallest <= b * base

    for i, g in enumerate(exhaustive_cost_graphs()):
        chain_holds(g, BIASES[i % 3])
    for seed, g in random_suite():
        chain_holds(g, BIASES[seed % 3])

    # tightness: a single edge needs exactly b*c, and the calibrated snake
    # chain at (n=4, eps=1/100) needs exactly b(n+1)(1-eps)
    from conftest import build

    single = build(["s", "t"], [("s", "t", F(7, 3))])
    assert min_reward(single, F(2)) == F(14, 3)
    snake = generate("snake_chain", n=4, b=2, eps=F(1, 100))
    assert min_reward(snake, F(2)) == F(2) * 5 * F(99, 100)


@criterion(6, "binary counter: 256 distinct encoded paths; 128 feasible intervals")
def test_criterion_06_binary_counter():
    n, c = 8, F(8, 5)
    b = binary_counter_bias(c)
    assert b == F(13, 8) and b * c - 2 == F(3, 5)
    g = generate("binary_counter", n=n, c=c)
    seen = set()
    for x in range(2**n):
        path = path_for_reward(g, b, 2**n + F(3, 5) * x)
        encoded = sum(1 << i for i in range(n) if f"w{i}" in path.nodes)
        assert encoded == x
        seen.add(path.nodes)
    assert len(seen) == 2**n

    restarted = validate(g.restarted_at("w0"))
    intervals = feasible_reward_set(restarted, b)
    assert len(intervals) == 2 ** (n - 1)


@criterion(7, "edge deletion vs internal rewards (exact ratios per construction)")
def test_criterion_07_deletion_vs_internal():
    g = generate("deletion_vs_internal")
    b = F(4)
    assert not is_traversable(g, b, F(52))
    assert is_traversable(generate("deletion_vs_internal", pruned=True), b, F(52))
    value, path = min_reward_with_deletion(g, b)
    assert value == 52 and path.nodes == ("s", "u", "w", "t")

    # exhaustive search at total 52: t is reachable only through w, and w
    # moves only when 4*10 - r(w,t) <= 0, so any candidate needs
    # r(w,t) >= 40; every integer split of the remaining 12 fails too.
    edges = [("s", "u"), ("u", "w"), ("u", "v"), ("v", "w")]
    for wt in range(40, 53):
        rest = 52 - wt
        for a in range(rest + 1):
            for bb in range(rest - a + 1):
                for cc in range(rest - a - bb + 1):
                    amounts = (a, bb, cc, rest - a - bb - cc)
                    placement = {("w", "t"): F(wt)}
                    placement.update(
                        {e: F(v) for e, v in zip(edges, amounts) if v}
                    )
                    assert not check_internal_distribution(g, b, placement).reached
    assert min_internal_reward_search(g, b) == 53 > 52

    # internal-ratio family: the prescribed placement is traversable and
    # R_i/R_d matches the construction-derived closed form exactly,
    # increasing toward 2
    b3, q = F(3), F(3, 2)
    previous = None
    for n in (3, 5, 8):
        graph, placement, total = internal_ratio_placement(b3, n)
        assert check_internal_distribution(graph, b3, placement).reached
        deletion_min, _ = min_reward_with_deletion(graph, b3)
        assert deletion_min == b3 * q**n
        ratio = total / deletion_min
        d_last = (b3 * (b3 - 1) / (b3 + 1)) * (q ** (n - 1) - F(1, 2 ** (n - 1)))
        assert ratio == 1 + d_last / (b3 * q**n)
        derived = (
            1
            + (b3 - 1) ** 2 / (b3 * (b3 + 1))
            - 2 * ((b3 - 1) / (b3 + 1)) * ((b3 - 1) / (2 * b3)) ** n
        )
        assert ratio == derived
        if previous is not None:
            assert ratio > previous
        previous = ratio
    assert previous < 2


@pytest.mark.xfail(
    strict=True,
    reason="stated closed form 1 + (b-1)^2/(b(b+1)) - 2((b-1)/(2b))^n drops a "
    "factor (b-1)/(b+1) on its last term; the construction's own recurrences "
    "(p_i, D_i) force the measured ratio 35/27 at b=3, n=3, not 34/27 — see "
    "notes/decisions.md",
)
def test_criterion_07_internal_ratio_stated_constant():
    b, q, n = F(3), F(3, 2), 3
    graph, placement, total = internal_ratio_placement(b, n)
    assert check_internal_distribution(graph, b, placement).reached
    deletion_min, _ = min_reward_with_deletion(graph, b)
    stated = 1 + (b - 1) ** 2 / (b * (b + 1)) - 2 * ((b - 1) / (2 * b)) ** n
    assert total / deletion_min == stated


@criterion(8, "reward seeking: fan exact values and naive claim, zero violations")
def test_criterion_08_reward_seeking():
    fan = generate("reward_fan", c=F(7, 5), n=4)
    s_agent = AgentSpec(AgentKind.SOPHISTICATED, F(3, 2), objective=Objective.MAXIMIZE_REWARD)
    n_agent = AgentSpec(AgentKind.NAIVE, F(3, 2), objective=Objective.MAXIMIZE_REWARD)
    assert reward_simulate(fan, s_agent).true_total == 1
    assert reward_simulate(fan, n_agent).true_total == F(7, 5) ** 3

    def claim_holds(g, b):
        agent = AgentSpec(AgentKind.NAIVE, b, objective=Objective.MAXIMIZE_REWARD)
        collected = reward_table(g, agent).values[g.source]
        optimal, _ = heaviest_path(g)
        assert b * collected >= optimal[g.source]

    for i, g in enumerate(exhaustive_reward_graphs()):
        claim_holds(g, BIASES[i % 3])
    for seed, g in random_suite():
        for b in BIASES:
            claim_holds(g, b)


@criterion(9, "commitment devices: deletion bounds, zero edges, planning bounds")
def test_criterion_09_commitment():
    c = F(7, 5)
    for n, k in itertools.product((6, 8, 10), (3, 4, 5)):
        fan = generate("reward_fan", c=c, n=n)
        result = commit_by_deletion(fan, F(3, 2), k)
        assert result.certificate["removed_edges"] <= (2 * len(fan.edges)) // k
        assert result.reward_after >= result.certificate["reward_floor"]
    for seed in range(200):
        g = random_dag(seed, 5 + seed % 6)
        k = (3, 4, 5)[seed % 3]
        result = commit_by_deletion(g, F(2), k)
        assert result.certificate["removed_within_budget"]
        assert result.certificate["floor_holds"]

    for n in (4, 6):
        fan = generate("reward_fan", c=c, n=n)
        result = best_zero_edge(fan, F(3, 2))
        assert result.reward_after == c**n
    ladder = generate("zero_edge_resistant", b=2, n=4)
    result = best_zero_edge(ladder, F(2), TieBreakPolicy.MAX_IMMEDIATE_EDGE_WEIGHT)
    assert result.reward_after == 1 and result.modification["added_edges"] == []

    accepted_plans = 0
    for seed in range(40):
        g = random_dag(seed, 4 + seed % 4, density=F(1, 3))
        if len(g.edges) > 12:
            continue
        result = search_plan(g, F(2))
        if result.budget > 0:
            accepted_plans += 1
            assert result.certificate["budget_bound_holds"]
    fan = generate("reward_fan", c=c, n=4)
    result = search_plan(fan, F(3, 2))
    assert result.certificate["accepted"] and result.certificate["budget_bound_holds"]
    assert result.certificate["net_outcome"] == c**4

    resistant = generate("planning_resistant_fan", b=3, n=4)
    result = search_plan(resistant, F(3))
    assert result.modification["placement"] == {} and result.budget == 0


@criterion(10, "oracle concordance: equilibria and 10,000-sample reward grids")
def test_criterion_10_oracle_concordance():
    fixture_checks = [
        ("path_switch", soph(F(2))),
        ("path_switch", soph(F(10))),
        ("path_switch", AgentSpec(AgentKind.OPTIMAL)),
        ("sophistication_penalty", AgentSpec(AgentKind.NAIVE, F(2))),
        ("optimist_fan", AgentSpec(AgentKind.PARTIALLY_NAIVE, F(2), F(3, 2), LATER)),
        ("pessimist_fork", AgentSpec(AgentKind.PARTIALLY_NAIVE, F(2), F(3), LATER)),
        ("future_fork", AgentSpec(AgentKind.FUTURE_BIASED, F(1, 2))),
        ("rmin_below_cs", soph(F(2), LATER)),
        ("reward_detour", soph(F(2))),
    ]
    for family, agent in fixture_checks:
        g = generate(family)
        report = brute_force_equilibrium_check(g, agent, cost_table(g, agent))
        assert report.ok, (family, report.failures)

    kinds = [
        lambda b: AgentSpec(AgentKind.OPTIMAL),
        lambda b: AgentSpec(AgentKind.NAIVE, b),
        lambda b: AgentSpec(AgentKind.SOPHISTICATED, b),
        lambda b: AgentSpec(AgentKind.PARTIALLY_NAIVE, b, b + F(1, 2)),
        lambda b: AgentSpec(AgentKind.FUTURE_BIASED, F(1, 2)),
    ]
    for seed, g in random_suite():
        agent = kinds[seed % 5](BIASES[seed % 3])
        report = brute_force_equilibrium_check(g, agent, cost_table(g, agent))
        assert report.ok, (seed, report.failures)

    reward_fixtures = [
        generate("nonmonotone_reward"),
        generate("reward_detour"),
        generate("rmin_above_cs"),
        generate("rmin_below_cs"),
        generate("deletion_vs_internal"),
        generate("binary_counter", n=4, c=F(8, 5)),
        validate(generate("binary_counter", n=4, c=F(8, 5)).restarted_at("w0")),
    ]
    for g in reward_fixtures:
        b = binary_counter_bias(F(8, 5)) if "v0" in g.nodes else F(2)
        intervals = feasible_reward_set(g, b)
        optimal, _ = shortest_path(g)
        samples = grid_rewards(F(0), b * optimal[g.source] + 1, 10_000)
        verdicts = feasibility_grid(g, b, samples)
        assert verdicts == [intervals.contains(r) for r in samples]
