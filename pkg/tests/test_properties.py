"""Randomized invariants over the DAG sampler, driven by hypothesis."""

from fractions import Fraction as F

from hypothesis import given, settings, strategies as st

from presentbias.agents import AgentKind, AgentSpec, Objective, cost_table
from presentbias.fixtures import random_dag
from presentbias.goal_reward import (
    feasible_reward_set,
    min_reward,
    min_reward_with_deletion,
    traverse_with_reward,
)
from presentbias.graph import heaviest_path, shortest_path, topological_order, validate
from presentbias.oracle import feasibility_grid, grid_rewards
from presentbias.reward_seeking import simulate as reward_simulate
from presentbias.tiebreak import TieBreakPolicy

seeds = st.integers(min_value=0, max_value=10**9)
sizes = st.integers(min_value=2, max_value=9)
biases = st.sampled_from([F(5, 4), F(3, 2), F(2), F(3), F(7, 2)])
policies = st.sampled_from(list(TieBreakPolicy))

COMMON = dict(deadline=None, max_examples=60)


@given(seeds, sizes)
@settings(**COMMON)
def test_validate_idempotent_and_topo_forward(seed, n):
    g = random_dag(seed, n)
    assert validate(g) == g
    position = {node: i for i, node in enumerate(topological_order(g))}
    assert all(position[e.src] < position[e.dst] for e in g.edges)


@given(seeds, sizes, biases)
@settings(**COMMON)
def test_sophisticated_cost_at_most_b_times_optimal(seed, n, b):
    g = random_dag(seed, n)
    table = cost_table(g, AgentSpec(AgentKind.SOPHISTICATED, b))
    optimal, _ = shortest_path(g)
    assert table.values[g.source] <= b * optimal[g.source]


@given(seeds, sizes, biases, policies)
@settings(**COMMON)
def test_partially_naive_boundary_cases(seed, n, b, policy):
    g = random_dag(seed, n)
    pn_soph = cost_table(g, AgentSpec(AgentKind.PARTIALLY_NAIVE, b, b, policy))
    soph = cost_table(g, AgentSpec(AgentKind.SOPHISTICATED, b, tie_break=policy))
    assert pn_soph.successors == soph.successors
    pn_naive = cost_table(g, AgentSpec(AgentKind.PARTIALLY_NAIVE, b, F(1), policy))
    naive = cost_table(g, AgentSpec(AgentKind.NAIVE, b, tie_break=policy))
    assert pn_naive.successors == naive.successors


@given(seeds, st.integers(min_value=2, max_value=7), biases)
@settings(deadline=None, max_examples=40)
def test_reward_chain_of_inequalities(seed, n, b):
    g = random_dag(seed, n)
    optimal, _ = shortest_path(g)
    base = optimal[g.source]
    smallest = min_reward(g, b)
    with_deletion, path = min_reward_with_deletion(g, b)
    assert base <= with_deletion <= smallest <= b * base
    assert path.nodes[0] == g.source and path.nodes[-1] == g.target


@given(seeds, st.integers(min_value=2, max_value=7), biases, st.integers(0, 30))
@settings(deadline=None, max_examples=40)
def test_no_mid_course_abandonment(seed, n, b, reward):
    g = random_dag(seed, n)
    trace = traverse_with_reward(g, b, F(reward))
    if trace.abandoned_at is None:
        assert trace.path.nodes[0] == g.source and trace.path.nodes[-1] == g.target
    else:
        assert trace.abandoned_at == g.source and trace.path.nodes == ()


@given(seeds, st.integers(min_value=2, max_value=6), biases)
@settings(deadline=None, max_examples=30)
def test_interval_set_matches_pointwise_oracle(seed, n, b):
    g = random_dag(seed, n)
    intervals = feasible_reward_set(g, b)
    assert intervals.intervals[-1][1] is None
    optimal, _ = shortest_path(g)
    samples = grid_rewards(F(0), b * optimal[g.source] + 2, 101)
    verdicts = feasibility_grid(g, b, samples)
    assert verdicts == [intervals.contains(r) for r in samples]


@given(seeds, sizes, biases)
@settings(**COMMON)
def test_naive_reward_claim(seed, n, b):
    g = random_dag(seed, n)
    agent = AgentSpec(AgentKind.NAIVE, b, objective=Objective.MAXIMIZE_REWARD)
    collected = reward_simulate(g, agent).true_total
    optimal, _ = heaviest_path(g)
    assert b * collected >= optimal[g.source]
