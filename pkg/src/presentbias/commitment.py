"""Commitment devices for reward-seeking sophisticated agents.

Three pre-play modifications of the instance, each packaged with the
certificate its guarantee promises:

  * interval deletion -- delete every off-optimal-path edge whose reward
    falls strictly inside a well-chosen multiplicative interval; at most
    2|E|/k edges go, and the agent then collects at least R* n^-k.
  * zero edges -- add one zero-reward edge (a bypass); the best single
    addition collects at least R_o(s) / (b n).
  * planning phase -- pay a budget B up front (perceived as b*B) to place
    extra reward on edges; a plan is adopted only when the collected
    reward beats leaving things alone by at least b*B.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from . import errors
from .agents import AgentKind, AgentSpec, Objective
from .graph import Edge, Graph, ZERO, ensure_validated, enumerate_paths, follow_successors, heaviest_path, topological_order
from .rationals import fmt
from .reward_seeking import reward_table, simulate
from .tiebreak import DEFAULT_TIE_BREAK, TieBreakPolicy

ONE = Fraction(1)


def _sophisticated(b: Fraction, tie_break: TieBreakPolicy) -> AgentSpec:
    return AgentSpec(
        AgentKind.SOPHISTICATED, b, tie_break=tie_break, objective=Objective.MAXIMIZE_REWARD
    )


def _jsonable(value):
    if isinstance(value, Fraction):
        return fmt(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    return value


@dataclass(frozen=True)
class CommitmentResult:
    device: str
    modification: dict
    budget: Fraction
    reward_before: Fraction
    reward_after: Fraction
    certificate: dict

    def to_dict(self) -> dict:
        return {
            "device": self.device,
            "modification": _jsonable(self.modification),
            "budget": fmt(self.budget),
            "reward_before": fmt(self.reward_before),
            "reward_after": fmt(self.reward_after),
            "certificate": _jsonable(self.certificate),
        }


def commit_by_deletion(
    graph: Graph,
    b: Fraction,
    k: int,
    tie_break: TieBreakPolicy = DEFAULT_TIE_BREAK,
) -> CommitmentResult:
    """Delete off-optimal-path edges whose reward lies strictly inside the
    emptiest of k overlapping intervals (R* n^(i-k-1), R* n^(i-k+1)).

    Averaging over the k intervals guarantees one holds at most 2|E|/k
    off-path edges, and with that interval cleared the agent's collected
    reward is at least R* n^-k.
    """
    graph = ensure_validated(graph)
    n = Fraction(len(graph.nodes))
    if not n > b:
        raise errors.PreconditionViolated(f"requires |V| > b (|V|={len(graph.nodes)}, b={fmt(b)})")
    if not (isinstance(k, int) and k > 2):
        raise errors.PreconditionViolated(f"requires integer k > 2, got {k!r}")
    agent = _sophisticated(b, tie_break)
    before = simulate(graph, agent).true_total
    values, succ = heaviest_path(graph, tie_break)
    rstar = values[graph.source]
    optimal_path = follow_successors(graph, succ, graph.source)
    on_path = {
        (optimal_path.nodes[i], optimal_path.nodes[i + 1])
        for i in range(len(optimal_path.nodes) - 1)
    }
    off_path = [e for e in graph.edges if e.key not in on_path]
    edge_total = len(graph.edges)
    budget_edges = (2 * edge_total) // k

    best_i = 0
    best_inside: List[Edge] = []
    if rstar > 0:
        counted: Optional[int] = None
        for i in range(k):
            lo = rstar * n ** (i - k - 1)
            hi = rstar * n ** (i - k + 1)
            inside = [e for e in off_path if lo < e.reward < hi]
            if counted is None or len(inside) < counted:
                counted = len(inside)
                best_i = i
                best_inside = inside
    deleted = sorted(e.key for e in best_inside)
    modified = ensure_validated(graph.without_edges(deleted))
    after = simulate(modified, agent).true_total
    floor = rstar * n ** (-k)
    lo = rstar * n ** (best_i - k - 1)
    hi = rstar * n ** (best_i - k + 1)
    certificate = {
        "optimal_reward": rstar,
        "optimal_path": list(optimal_path.nodes),
        "interval_index": best_i,
        "interval": (lo, hi),
        "removed_edges": len(deleted),
        "removed_budget": budget_edges,
        "removed_within_budget": len(deleted) <= budget_edges,
        "reward_floor": floor,
        "floor_holds": after >= floor,
    }
    return CommitmentResult(
        device="interval_deletion",
        modification={"deleted_edges": deleted},
        budget=ZERO,
        reward_before=before,
        reward_after=after,
        certificate=certificate,
    )


def best_zero_edge(
    graph: Graph,
    b: Fraction,
    tie_break: TieBreakPolicy = DEFAULT_TIE_BREAK,
) -> CommitmentResult:
    """Try every single zero-reward edge addition (source to any node, plus
    any forward pair) and keep the one the sophisticated agent does best on;
    no addition at all is also a candidate."""
    graph = ensure_validated(graph)
    agent = _sophisticated(b, tie_break)
    before = simulate(graph, agent).true_total
    order = topological_order(graph)
    position = {node: i for i, node in enumerate(order)}
    candidates: List[Optional[Tuple[str, str]]] = [None]
    seen = set()
    for v in graph.nodes:
        if v != graph.source and not graph.has_edge(graph.source, v):
            candidates.append((graph.source, v))
            seen.add((graph.source, v))
    for u in graph.nodes:
        for v in graph.nodes:
            if u == v or position[u] >= position[v]:
                continue
            if graph.has_edge(u, v) or (u, v) in seen:
                continue
            candidates.append((u, v))
    best_edge: Optional[Tuple[str, str]] = None
    best_after = before
    for cand in candidates[1:]:
        added = ensure_validated(graph.with_edges([Edge(cand[0], cand[1], ZERO, ZERO)]))
        after = simulate(added, agent).true_total
        if after > best_after or (after == best_after and best_edge is not None and cand < best_edge):
            best_after = after
            best_edge = cand
    optimal, _ = heaviest_path(graph, tie_break)
    rstar = optimal[graph.source]
    n = Fraction(len(graph.nodes))
    certificate = {
        "optimal_reward": rstar,
        "candidates_tried": len(candidates) - 1,
        "bound_holds": b * n * best_after >= rstar,
    }
    return CommitmentResult(
        device="zero_edge",
        modification={"added_edges": [] if best_edge is None else [best_edge]},
        budget=ZERO,
        reward_before=before,
        reward_after=best_after,
        certificate=certificate,
    )


def evaluate_plan(
    graph: Graph,
    b: Fraction,
    placement: Dict[Tuple[str, str], Fraction],
    tie_break: TieBreakPolicy = DEFAULT_TIE_BREAK,
) -> CommitmentResult:
    """Score one planning-phase proposal.

    The planner pays the budget B = sum(placement) now (perceived b*B) and
    the placed rewards are collected en route, so the plan is adopted only
    when the collected reward on the augmented graph reaches R_s(s) + b*B.
    """
    graph = ensure_validated(graph)
    for key, value in placement.items():
        if value < 0:
            raise errors.NegativeWeight(f"placement on {key[0]}->{key[1]} is negative")
    budget = sum(placement.values(), ZERO)
    agent = _sophisticated(b, tie_break)
    before = simulate(graph, agent).true_total
    augmented = graph.with_added_rewards(dict(placement))
    collected = simulate(augmented, agent).true_total
    accepted = collected >= before + b * budget
    outcome = collected - budget if accepted else before
    optimal, _ = heaviest_path(graph, tie_break)
    bound = (optimal[graph.source] - before) / (b - 1) if b != 1 else None
    certificate = {
        "accepted": accepted,
        "collected": collected,
        "net_outcome": outcome,
        "budget_bound": bound,
        "budget_bound_holds": (budget <= bound) if (accepted and bound is not None) else None,
    }
    return CommitmentResult(
        device="planning_phase",
        modification={"placement": {f"{u}->{v}": amt for (u, v), amt in sorted(placement.items())}},
        budget=budget,
        reward_before=before,
        reward_after=collected if accepted else before,
        certificate=certificate,
    )


_BUMP = Fraction(1, 10**6)


def _force_path_placement(
    graph: Graph, b: Fraction, nodes: Tuple[str, ...], tie_break: TieBreakPolicy
) -> Optional[Dict[Tuple[str, str], Fraction]]:
    """Smallest backward-greedy placement on the path's own edges that makes
    the sophisticated agent follow it, or None."""
    agent = _sophisticated(b, tie_break)
    optimal, _ = heaviest_path(graph, tie_break)
    bump = _BUMP * max(ONE, optimal[graph.source])
    placement: Dict[Tuple[str, str], Fraction] = {}
    for i in range(len(nodes) - 2, -1, -1):
        u, v = nodes[i], nodes[i + 1]
        for attempt in range(3):
            augmented = graph.with_added_rewards(placement)
            table = reward_table(augmented, agent)
            if table.successors[u] == v:
                break
            if attempt == 2:
                return None
            e = augmented.edge(u, v)
            ours = b * e.reward + table.values[v]
            gap = table.perceived[u] - ours
            # gap/b reaches an exact tie; if the policy then drops the tie,
            # any strictly positive bump settles it.
            extra = gap / b if attempt == 0 and gap > 0 else bump
            placement[(u, v)] = placement.get((u, v), ZERO) + extra
    augmented = graph.with_added_rewards(placement)
    table = reward_table(augmented, agent)
    walk = [nodes[0]]
    while walk[-1] != graph.target:
        walk.append(table.successors[walk[-1]])
    if tuple(walk) != nodes:
        return None
    return placement


def search_plan(
    graph: Graph,
    b: Fraction,
    tie_break: TieBreakPolicy = DEFAULT_TIE_BREAK,
    max_edges: int = 12,
) -> CommitmentResult:
    """Search planning-phase placements over every source-target path,
    keeping the accepted plan with the best net outcome (smallest budget on
    ties). Returns the empty plan when nothing beats staying put."""
    graph = ensure_validated(graph)
    if len(graph.edges) > max_edges:
        raise errors.SearchBudgetExceeded(
            f"graph has {len(graph.edges)} edges; search supports at most {max_edges}"
        )
    best = evaluate_plan(graph, b, {}, tie_break)
    for path in enumerate_paths(graph, graph.source, graph.target, limit=10_000):
        placement = _force_path_placement(graph, b, path.nodes, tie_break)
        if not placement:
            continue
        result = evaluate_plan(graph, b, placement, tie_break)
        if not result.certificate["accepted"]:
            continue
        better = result.certificate["net_outcome"] > best.certificate["net_outcome"] or (
            result.certificate["net_outcome"] == best.certificate["net_outcome"]
            and result.budget < best.budget
        )
        if better:
            best = result
    return best
