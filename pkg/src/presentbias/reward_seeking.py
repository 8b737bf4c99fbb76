"""Pure reward model: edge rewards only, agents maximize what they collect.

The recursions mirror the cost model with argmax in place of argmin. The
agent always travels to the target (there is no abandonment and no
outside option; this model has no costs). The reward ratio is reported as
optimal/collected, so it is >= 1 and directly comparable to cost ratios.
"""

from fractions import Fraction
from typing import Optional

from . import errors
from .agents import (
    AgentKind,
    AgentSpec,
    CostTable,
    Objective,
    Step,
    TraversalTrace,
    biased_fixed_point,
    one_step_biased,
)
from .graph import Graph, Path, ZERO, ensure_validated, heaviest_path


def reward_table(graph: Graph, agent: AgentSpec) -> CostTable:
    """Per-node collected-reward values and argmax successors."""
    if agent.objective is not Objective.MAXIMIZE_REWARD:
        raise errors.BiasOutOfRange("reward_table requires objective = reward")
    agent.check_bias()
    graph = ensure_validated(graph)
    kind = agent.kind
    if kind is AgentKind.OPTIMAL:
        values, succ = heaviest_path(graph, agent.tie_break)
        perceived = {u: (values[u] if u != graph.target else None) for u in values}
        return CostTable(values, succ, perceived)
    if kind is AgentKind.SOPHISTICATED:
        return biased_fixed_point(graph, agent.bias_b, agent.tie_break, reward_mode=True)
    if kind in (AgentKind.NAIVE, AgentKind.FUTURE_BIASED):
        inner, _ = heaviest_path(graph, agent.tie_break)
        return one_step_biased(graph, agent.bias_b, inner, agent.tie_break, reward_mode=True)
    bp = agent.believed_bias_b_prime
    if bp == 1:
        inner, _ = heaviest_path(graph, agent.tie_break)
    else:
        inner = biased_fixed_point(graph, bp, agent.tie_break, reward_mode=True).values
    return one_step_biased(graph, agent.bias_b, inner, agent.tie_break, reward_mode=True)


def simulate(graph: Graph, agent: AgentSpec, start: Optional[str] = None) -> TraversalTrace:
    """Walk the argmax successor table; true_total is the collected reward."""
    graph = ensure_validated(graph)
    table = reward_table(graph, agent)
    u = graph.source if start is None else start
    nodes = [u]
    steps = []
    cost = ZERO
    reward = ZERO
    while u != graph.target:
        v = table.successors[u]
        e = graph.edge(u, v)
        steps.append(Step(u, v, table.perceived[u]))
        cost += e.cost
        reward += e.reward
        nodes.append(v)
        u = v
    return TraversalTrace(Path(tuple(nodes), cost, reward), tuple(steps), reward)


def reward_ratio(graph: Graph, agent: AgentSpec) -> Fraction:
    """Heaviest-path reward divided by what the agent collects (>= 1)."""
    graph = ensure_validated(graph)
    collected = simulate(graph, agent).true_total
    if collected == 0:
        raise errors.ZeroCollectedReward("agent collects zero reward; ratio undefined")
    optimal, _ = heaviest_path(graph, agent.tie_break)
    return optimal[graph.source] / collected
