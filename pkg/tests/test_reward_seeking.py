from fractions import Fraction as F

import pytest

from presentbias import errors
from presentbias.agents import AgentKind, AgentSpec, Objective
from presentbias.fixtures import generate, random_dag
from presentbias.graph import heaviest_path
from presentbias.reward_seeking import reward_ratio, reward_table, simulate

from conftest import build


def agent(kind, b=None, b_prime=None):
    return AgentSpec(
        kind,
        F(b) if b is not None else F(1),
        F(b_prime) if b_prime is not None else None,
        objective=Objective.MAXIMIZE_REWARD,
    )


FAN = generate("reward_fan", c=F(7, 5), n=4)
C = F(7, 5)


class TestRewardTable:
    def test_fan_sophisticated_leaves_immediately(self):
        trace = simulate(FAN, agent(AgentKind.SOPHISTICATED, 1.5))
        assert trace.path.nodes == ("s", "t")
        assert trace.true_total == 1

    def test_fan_naive_walks_almost_to_the_end(self):
        trace = simulate(FAN, agent(AgentKind.NAIVE, 1.5))
        assert trace.path.nodes == ("s", "v1", "v2", "v3", "t")
        assert trace.true_total == C**3

    def test_fan_optimal_collects_heaviest(self):
        trace = simulate(FAN, agent(AgentKind.OPTIMAL))
        assert trace.true_total == C**4

    def test_single_edge_same_for_every_kind(self):
        g = build(["s", "t"], [("s", "t", F(5, 2))], rewards=True)
        specs = [
            agent(AgentKind.OPTIMAL),
            agent(AgentKind.NAIVE, 2),
            agent(AgentKind.SOPHISTICATED, 2),
            agent(AgentKind.PARTIALLY_NAIVE, 2, b_prime=3),
            agent(AgentKind.FUTURE_BIASED, F(1, 2)),
        ]
        for spec in specs:
            assert simulate(g, spec).true_total == F(5, 2)

    def test_objective_guard(self):
        with pytest.raises(errors.BiasOutOfRange):
            reward_table(FAN, AgentSpec(AgentKind.SOPHISTICATED, F(2)))


class TestRewardRatio:
    def test_fan_ratios(self):
        assert reward_ratio(FAN, agent(AgentKind.SOPHISTICATED, 1.5)) == C**4
        assert reward_ratio(FAN, agent(AgentKind.NAIVE, 1.5)) == C
        assert reward_ratio(FAN, agent(AgentKind.OPTIMAL)) == 1

    def test_zero_collected(self):
        g = build(["s", "t"], [("s", "t", 0)], rewards=True)
        with pytest.raises(errors.ZeroCollectedReward):
            reward_ratio(g, agent(AgentKind.SOPHISTICATED, 2))


class TestInvariants:
    def test_naive_collects_at_least_optimal_over_b(self):
        for seed in range(80):
            b = [F(3, 2), F(2), F(3)][seed % 3]
            g = random_dag(seed, 2 + seed % 9)
            collected = simulate(g, agent(AgentKind.NAIVE, b)).true_total
            optimal, _ = heaviest_path(g)
            assert b * collected >= optimal[g.source]

    def test_no_agent_beats_the_heaviest_path(self):
        kinds = [
            agent(AgentKind.NAIVE, 2),
            agent(AgentKind.SOPHISTICATED, 2),
            agent(AgentKind.PARTIALLY_NAIVE, 2, b_prime=3),
            agent(AgentKind.FUTURE_BIASED, F(1, 2)),
        ]
        for seed in range(40):
            g = random_dag(seed, 2 + seed % 9)
            optimal, _ = heaviest_path(g)
            for spec in kinds:
                assert simulate(g, spec).true_total <= optimal[g.source]

    def test_sophisticated_argmax_fixed_point(self):
        b = F(2)
        for seed in range(40):
            g = random_dag(seed, 2 + seed % 9)
            table = reward_table(g, agent(AgentKind.SOPHISTICATED, b))
            for u in g.nodes:
                if u == g.target:
                    continue
                chosen = g.edge(u, table.successors[u])
                lhs = b * chosen.reward + table.values[chosen.dst]
                for e in g.out_edges(u):
                    assert lhs >= b * e.reward + table.values[e.dst]

    def test_reversal_on_fan_family(self):
        # cost-model roles flip: sophistication hurts reward seeking; the
        # gap is strict as soon as the naive agent walks at all (c^(n-1) > b)
        b = F(3, 2)
        for c_num in (11, 13, 14):
            c = F(c_num, 10)
            for n in (2, 3, 5):
                g = generate("reward_fan", c=c, n=n)
                soph_ratio = reward_ratio(g, agent(AgentKind.SOPHISTICATED, b))
                naive_ratio = reward_ratio(g, agent(AgentKind.NAIVE, b))
                assert soph_ratio == c**n >= naive_ratio
                assert naive_ratio <= b
                if c ** (n - 1) > b:
                    assert naive_ratio == c < soph_ratio
