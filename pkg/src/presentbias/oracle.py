"""Independent brute-force verifiers.

These recompute agent optimality conditions from scratch (path
enumeration, its own fixed-point loop) and share nothing with the main
implementations beyond the graph types, so a bug would have to appear
twice, in different code, to slip through. Exponential cost is fine here;
oracles run on desk-scale instances only.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .agents import AgentKind, AgentSpec, CostTable, Objective
from .goal_reward import traverse_with_reward
from .graph import Graph, ZERO, ensure_validated, enumerate_paths, topological_order
from .rationals import fmt
from .tiebreak import TieBreakPolicy


@dataclass(frozen=True)
class OracleReport:
    ok: bool
    failures: Tuple[str, ...]


def _enumerated_extreme(graph: Graph, reward_mode: bool) -> Dict[str, Fraction]:
    """Best continuation per node, by brute-force path enumeration."""
    out = {}
    for node in graph.nodes:
        if node == graph.target:
            out[node] = ZERO
            continue
        paths = enumerate_paths(graph, node, graph.target)
        totals = [p.total_reward for p in paths] if reward_mode else [p.total_cost for p in paths]
        out[node] = max(totals) if reward_mode else min(totals)
    return out


def _own_fixed_point(
    graph: Graph, bias: Fraction, reward_mode: bool, policy: TieBreakPolicy
) -> Dict[str, Fraction]:
    """Re-derivation of the self-aware recursion's values, written
    separately from the production engine. Exact ties change the values
    (tied options can differ in true weight), so the policy matters here
    too and is re-applied from scratch."""
    values = {graph.target: ZERO}
    for u in reversed(topological_order(graph)):
        if u == graph.target:
            continue
        scored = []
        for e in graph.out_edges(u):
            w = e.reward if reward_mode else e.cost
            scored.append((bias * w + values[e.dst], w + values[e.dst], e))
        best = max(s for s, _, _ in scored) if reward_mode else min(s for s, _, _ in scored)
        tied = [(value, e) for s, value, e in scored if s == best]
        if len(tied) == 1:
            values[u] = tied[0][0]
            continue
        if policy is TieBreakPolicy.MIN_TRUE_CONTINUATION:
            pick = min(tied, key=lambda t: (values[t[1].dst], t[1].dst))
        elif policy is TieBreakPolicy.MAX_TRUE_CONTINUATION:
            pick = min(tied, key=lambda t: (-values[t[1].dst], t[1].dst))
        elif policy is TieBreakPolicy.PREFER_EARLIER_SUCCESSOR_ID:
            pick = min(tied, key=lambda t: t[1].dst)
        elif policy is TieBreakPolicy.PREFER_LATER_SUCCESSOR_ID:
            pick = max(tied, key=lambda t: t[1].dst)
        else:
            pick = min(
                tied,
                key=lambda t: (-(t[1].reward if reward_mode else t[1].cost), t[1].dst),
            )
        values[u] = pick[0]
    return values


def _rule_continuations(graph: Graph, agent: AgentSpec, table: CostTable) -> Dict[str, Fraction]:
    reward_mode = agent.objective is Objective.MAXIMIZE_REWARD
    kind = agent.kind
    if kind in (AgentKind.OPTIMAL, AgentKind.NAIVE, AgentKind.FUTURE_BIASED):
        return _enumerated_extreme(graph, reward_mode)
    if kind is AgentKind.SOPHISTICATED:
        return table.values
    return _own_fixed_point(graph, agent.believed_bias_b_prime, reward_mode, agent.tie_break)


def brute_force_equilibrium_check(graph: Graph, agent: AgentSpec, table: CostTable) -> OracleReport:
    """Confirm, edge by edge, that the table's successor attains the optimum
    of the agent's decision rule and that values accumulate true weights.
    Exact ties must fall the way the declared tie-break policy orders them.
    """
    graph = ensure_validated(graph)
    reward_mode = agent.objective is Objective.MAXIMIZE_REWARD
    bias = Fraction(1) if agent.kind is AgentKind.OPTIMAL else agent.bias_b
    contin = _rule_continuations(graph, agent, table)
    weight = (lambda e: e.reward) if reward_mode else (lambda e: e.cost)
    failures: List[str] = []
    if table.values[graph.target] != 0:
        failures.append(f"value at target is {fmt(table.values[graph.target])}, want 0")
    for u in graph.nodes:
        if u == graph.target:
            continue
        chosen_id = table.successors[u]
        edges = graph.out_edges(u)
        objective = {e.dst: bias * weight(e) + contin[e.dst] for e in edges}
        best = max(objective.values()) if reward_mode else min(objective.values())
        if objective[chosen_id] != best:
            failures.append(
                f"at {u}: successor {chosen_id} scores {fmt(objective[chosen_id])}, optimum is {fmt(best)}"
            )
            continue
        chosen_edge = graph.edge(u, chosen_id)
        want = weight(chosen_edge) + table.values[chosen_id]
        if table.values[u] != want:
            failures.append(
                f"at {u}: value {fmt(table.values[u])} != edge weight + successor value {fmt(want)}"
            )
        tied = [e for e in edges if objective[e.dst] == best]
        if len(tied) > 1 and not _tie_ok(agent.tie_break, tied, table, chosen_id, weight):
            failures.append(f"at {u}: tie among {sorted(e.dst for e in tied)} broken to {chosen_id}")
    return OracleReport(not failures, tuple(failures))


def _tie_ok(policy: TieBreakPolicy, tied, table: CostTable, chosen_id: str, weight) -> bool:
    if policy is TieBreakPolicy.MIN_TRUE_CONTINUATION:
        want = min(tied, key=lambda e: (table.values[e.dst], e.dst)).dst
    elif policy is TieBreakPolicy.MAX_TRUE_CONTINUATION:
        want = min(tied, key=lambda e: (-table.values[e.dst], e.dst)).dst
    elif policy is TieBreakPolicy.PREFER_EARLIER_SUCCESSOR_ID:
        want = min(e.dst for e in tied)
    elif policy is TieBreakPolicy.PREFER_LATER_SUCCESSOR_ID:
        want = max(e.dst for e in tied)
    else:
        want = min(tied, key=lambda e: (-weight(e), e.dst)).dst
    return want == chosen_id


def feasibility_grid(
    graph: Graph,
    b: Fraction,
    rewards,
    tie_break: TieBreakPolicy = TieBreakPolicy.MIN_TRUE_CONTINUATION,
) -> List[bool]:
    """Pointwise traversability at each sampled reward; the cross-check for
    interval sets."""
    graph = ensure_validated(graph)
    return [
        traverse_with_reward(graph, b, Fraction(r), tie_break).abandoned_at is None
        for r in rewards
    ]


def grid_rewards(lo: Fraction, hi: Fraction, count: int) -> List[Fraction]:
    """count exact evenly spaced samples covering [lo, hi]."""
    lo, hi = Fraction(lo), Fraction(hi)
    if count == 1:
        return [lo]
    step = (hi - lo) / (count - 1)
    return [lo + i * step for i in range(count)]
