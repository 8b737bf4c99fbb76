"""Agent decision rules for cost minimization on a DAG.

Five kinds share one skeleton. Writing C_x(u) for the true cost of the
walk an agent of kind x induces from u, the successor rules are:

  optimal        argmin   c(u,v) + C_o(v)
  sophisticated  argmin b*c(u,v) + C_s(v)   (self-referential fixed point)
  naive          argmin b*c(u,v) + C_o(v)   with b > 1
  future-biased  argmin b*c(u,v) + C_o(v)   with 0 < b < 1
  partially      argmin b*c(u,v) + C'(v)    where C' is the sophisticated
  naive                                      table at the believed bias b'

Values accumulate true edge costs along the induced walk; only the
immediate edge is scaled by the bias. Everything is exact and pure.
"""

import json
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Dict, Optional, Tuple

from . import errors
from .graph import Graph, Path, ZERO, ensure_validated, shortest_path, topological_order
from .rationals import fmt, rat
from .tiebreak import DEFAULT_TIE_BREAK, TieBreakPolicy, choose


class AgentKind(Enum):
    OPTIMAL = "optimal"
    NAIVE = "naive"
    SOPHISTICATED = "sophisticated"
    PARTIALLY_NAIVE = "partially_naive"
    FUTURE_BIASED = "future_biased"


class Objective(Enum):
    MINIMIZE_COST = "cost"
    MAXIMIZE_REWARD = "reward"


ONE = Fraction(1)


@dataclass(frozen=True)
class AgentSpec:
    kind: AgentKind
    bias_b: Fraction = ONE
    believed_bias_b_prime: Optional[Fraction] = None
    tie_break: TieBreakPolicy = DEFAULT_TIE_BREAK
    objective: Objective = Objective.MINIMIZE_COST

    def check_bias(self) -> None:
        b = self.bias_b
        if self.kind in (AgentKind.NAIVE, AgentKind.SOPHISTICATED, AgentKind.PARTIALLY_NAIVE):
            if not b > 1:
                raise errors.BiasOutOfRange(f"{self.kind.value} agent requires b > 1, got {fmt(b)}")
        elif self.kind is AgentKind.FUTURE_BIASED:
            if not (0 < b < 1):
                raise errors.BiasOutOfRange(
                    f"future_biased agent requires 0 < b < 1, got {fmt(b)}"
                )
        if self.kind is AgentKind.PARTIALLY_NAIVE:
            bp = self.believed_bias_b_prime
            if bp is None or bp < 1:
                raise errors.BiasOutOfRange("partially_naive agent requires believed bias b' >= 1")

    def to_dict(self) -> dict:
        out = {"kind": self.kind.value, "b": fmt(self.bias_b)}
        if self.believed_bias_b_prime is not None:
            out["b_prime"] = fmt(self.believed_bias_b_prime)
        out["tie_break"] = self.tie_break.value
        out["objective"] = self.objective.value
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "AgentSpec":
        kind = AgentKind(str(data["kind"]).strip().lower().replace("-", "_"))
        return cls(
            kind=kind,
            bias_b=rat(data.get("b", 1)),
            believed_bias_b_prime=rat(data["b_prime"]) if "b_prime" in data else None,
            tie_break=TieBreakPolicy.parse(data.get("tie_break", DEFAULT_TIE_BREAK.value)),
            objective=Objective(data.get("objective", "cost")),
        )

    @classmethod
    def from_json(cls, text: str) -> "AgentSpec":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class CostTable:
    """Per-node value, chosen successor, and perceived value at the choice."""

    values: Dict[str, Fraction]
    successors: Dict[str, Optional[str]]
    perceived: Dict[str, Optional[Fraction]]

    def value(self, node: str) -> Fraction:
        return self.values[node]

    def successor(self, node: str) -> Optional[str]:
        return self.successors[node]


@dataclass(frozen=True)
class Step:
    node: str
    chosen: str
    perceived: Fraction


@dataclass(frozen=True)
class TraversalTrace:
    path: Path
    steps: Tuple[Step, ...]
    true_total: Fraction
    abandoned_at: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "path": list(self.path.nodes),
            "total": fmt(self.true_total),
            "steps": [
                {"node": s.node, "next": s.chosen, "perceived": fmt(s.perceived)}
                for s in self.steps
            ],
            "abandoned_at": self.abandoned_at,
        }


# -- shared recursion engines -------------------------------------------------


def biased_fixed_point(
    graph: Graph,
    bias: Fraction,
    tie_break: TieBreakPolicy,
    reward_mode: bool = False,
) -> CostTable:
    """Exact fixed point of the self-aware recursion, in reverse topological
    order: the successor optimizes bias*w(edge) + value(successor), and the
    value accumulates true weights along the induced walk."""
    graph = ensure_validated(graph)
    weight = (lambda e: e.reward) if reward_mode else (lambda e: e.cost)
    pick = max if reward_mode else min
    values: Dict[str, Fraction] = {graph.target: ZERO}
    succ: Dict[str, Optional[str]] = {graph.target: None}
    perceived: Dict[str, Optional[Fraction]] = {graph.target: None}
    for u in reversed(topological_order(graph)):
        if u == graph.target:
            continue
        out = graph.out_edges(u)
        best = pick(bias * weight(e) + values[e.dst] for e in out)
        tied = [e for e in out if bias * weight(e) + values[e.dst] == best]
        chosen = choose(tie_break, tied, values.__getitem__, weight)
        values[u] = weight(chosen) + values[chosen.dst]
        succ[u] = chosen.dst
        perceived[u] = best
    return CostTable(values, succ, perceived)


def one_step_biased(
    graph: Graph,
    bias: Fraction,
    inner: Dict[str, Fraction],
    tie_break: TieBreakPolicy,
    reward_mode: bool = False,
) -> CostTable:
    """One-pass rule for agents that optimize bias*w(edge) + inner(successor)
    while actually incurring true weights: the value column is the true total
    of the induced walk, and perceived-equal ties are ordered by the agent's
    own true continuation."""
    graph = ensure_validated(graph)
    weight = (lambda e: e.reward) if reward_mode else (lambda e: e.cost)
    pick = max if reward_mode else min
    values: Dict[str, Fraction] = {graph.target: ZERO}
    succ: Dict[str, Optional[str]] = {graph.target: None}
    perceived: Dict[str, Optional[Fraction]] = {graph.target: None}
    for u in reversed(topological_order(graph)):
        if u == graph.target:
            continue
        out = graph.out_edges(u)
        best = pick(bias * weight(e) + inner[e.dst] for e in out)
        tied = [e for e in out if bias * weight(e) + inner[e.dst] == best]
        chosen = choose(tie_break, tied, values.__getitem__, weight)
        values[u] = weight(chosen) + values[chosen.dst]
        succ[u] = chosen.dst
        perceived[u] = best
    return CostTable(values, succ, perceived)


# -- public operations --------------------------------------------------------


def cost_table(graph: Graph, agent: AgentSpec) -> CostTable:
    """Per-node cost values and successors for the agent's decision rule."""
    if agent.objective is not Objective.MINIMIZE_COST:
        raise errors.BiasOutOfRange("cost_table requires objective = cost")
    agent.check_bias()
    graph = ensure_validated(graph)
    kind = agent.kind
    if kind is AgentKind.OPTIMAL:
        values, succ = shortest_path(graph, agent.tie_break)
        perceived = {u: (values[u] if u != graph.target else None) for u in values}
        return CostTable(values, succ, perceived)
    if kind is AgentKind.SOPHISTICATED:
        return biased_fixed_point(graph, agent.bias_b, agent.tie_break)
    if kind in (AgentKind.NAIVE, AgentKind.FUTURE_BIASED):
        inner, _ = shortest_path(graph, agent.tie_break)
        return one_step_biased(graph, agent.bias_b, inner, agent.tie_break)
    # partially naive: imagines a sophisticated self with bias b'
    bp = agent.believed_bias_b_prime
    if bp == 1:
        inner, _ = shortest_path(graph, agent.tie_break)
    else:
        inner = biased_fixed_point(graph, bp, agent.tie_break).values
    return one_step_biased(graph, agent.bias_b, inner, agent.tie_break)


def trace_from_table(graph: Graph, table: CostTable, start: Optional[str] = None) -> TraversalTrace:
    graph = ensure_validated(graph)
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
    path = Path(tuple(nodes), cost, reward)
    return TraversalTrace(path, tuple(steps), cost)


def simulate(graph: Graph, agent: AgentSpec) -> TraversalTrace:
    """Forward walk from the source driven by the agent's successor table.

    Naive-style agents re-decide at every node, but their rule is memoryless,
    so the walk coincides with following the table. In this model (no reward,
    traversal mandatory) there is no abandonment.
    """
    graph = ensure_validated(graph)
    return trace_from_table(graph, cost_table(graph, agent))


def cost_ratio(graph: Graph, agent: AgentSpec) -> Fraction:
    """Agent's incurred cost divided by the optimal cost from the source."""
    graph = ensure_validated(graph)
    optimal, _ = shortest_path(graph, agent.tie_break)
    if optimal[graph.source] == 0:
        raise errors.ZeroOptimalCost("optimal cost from source is 0; ratio undefined")
    return simulate(graph, agent).true_total / optimal[graph.source]
