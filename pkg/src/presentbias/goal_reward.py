"""Reward-at-goal analysis for a sophisticated agent.

A reward R sits on the target; the agent traverses only while the reward
covers the perceived cost of the continuation it would actually take, and
it anticipates (exactly) which future nodes it would abandon. The core is
a reverse-topological pruning pass; everything else (feasible-reward
intervals, minimum rewards with and without edge deletion, internal
reward distributions) builds on it.

Willingness uses the weak inequality: the agent continues when the
perceived cost is <= R. Interval sets are therefore left-closed.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from . import errors
from .agents import Step, TraversalTrace
from .graph import (
    Graph,
    Path,
    ZERO,
    ensure_validated,
    enumerate_paths,
    shortest_path,
    topological_order,
)
from .rationals import fmt
from .tiebreak import DEFAULT_TIE_BREAK, TieBreakPolicy, choose


def _check_pre(b: Fraction, reward: Optional[Fraction] = None) -> None:
    if not b > 1:
        raise errors.BiasOutOfRange(f"goal-reward model requires b > 1, got {fmt(b)}")
    if reward is not None and reward < 0:
        raise errors.NegativeWeight("reward must be nonnegative")


@dataclass(frozen=True)
class PruneReport:
    """Outcome of the abandonment sweep for one reward value.

    values/choices describe the sophisticated table inside the surviving
    subgraph; a node is abandoned exactly when all its out-edges were
    pruned, and an edge is pruned when its head is abandoned or the
    perceived cost of the continuation through it exceeds the reward.
    """

    surviving: Graph
    abandoned_nodes: FrozenSet[str]
    pruned_edges: FrozenSet[Tuple[str, str]]
    reward: Fraction
    values: Dict[str, Fraction]
    choices: Dict[str, Optional[str]]

    @property
    def source_abandoned(self) -> bool:
        return self.surviving.source in self.abandoned_nodes


def prune(
    graph: Graph,
    b: Fraction,
    reward: Fraction,
    tie_break: TieBreakPolicy = DEFAULT_TIE_BREAK,
) -> PruneReport:
    """Reverse-topological abandonment sweep at one reward value."""
    graph = ensure_validated(graph)
    _check_pre(b, reward)
    values: Dict[str, Fraction] = {graph.target: ZERO}
    choices: Dict[str, Optional[str]] = {graph.target: None}
    abandoned: List[str] = []
    pruned: List[Tuple[str, str]] = []
    for u in reversed(topological_order(graph)):
        if u == graph.target:
            continue
        options = []
        for e in graph.out_edges(u):
            if e.dst not in values:
                pruned.append(e.key)
                continue
            perceived = b * e.cost + values[e.dst]
            if perceived <= reward:
                options.append((perceived, e))
            else:
                pruned.append(e.key)
        if not options:
            abandoned.append(u)
            continue
        best = min(p for p, _ in options)
        tied = [e for p, e in options if p == best]
        chosen = choose(tie_break, tied, values.__getitem__, lambda e: e.cost)
        values[u] = chosen.cost + values[chosen.dst]
        choices[u] = chosen.dst
    alive = [n for n in graph.nodes if n not in set(abandoned)]
    pruned_set = frozenset(pruned)
    kept = [e for e in graph.edges if e.key not in pruned_set]
    surviving = Graph(alive, kept, graph.source, graph.target)
    return PruneReport(surviving, frozenset(abandoned), pruned_set, reward, values, choices)


def traverse_with_reward(
    graph: Graph,
    b: Fraction,
    reward: Fraction,
    tie_break: TieBreakPolicy = DEFAULT_TIE_BREAK,
) -> TraversalTrace:
    """Trace of the agent's walk for reward R: either it abandons at the
    source without stepping, or it follows the sophisticated choices inside
    the pruned graph all the way to the target."""
    graph = ensure_validated(graph)
    report = prune(graph, b, reward, tie_break)
    if report.source_abandoned:
        return TraversalTrace(Path((), ZERO, ZERO), (), ZERO, abandoned_at=graph.source)
    nodes = [graph.source]
    steps = []
    cost = ZERO
    rew = ZERO
    u = graph.source
    while u != graph.target:
        v = report.choices[u]
        e = graph.edge(u, v)
        steps.append(Step(u, v, b * e.cost + report.values[v]))
        cost += e.cost
        rew += e.reward
        nodes.append(v)
        u = v
    return TraversalTrace(Path(tuple(nodes), cost, rew), tuple(steps), cost)


def is_traversable(
    graph: Graph, b: Fraction, reward: Fraction, tie_break: TieBreakPolicy = DEFAULT_TIE_BREAK
) -> bool:
    return not prune(graph, b, reward, tie_break).source_abandoned


# -- feasible rewards ---------------------------------------------------------


def _path_cost_sets(graph: Graph, path_limit: int) -> Dict[str, List[Fraction]]:
    """Distinct true costs of node-to-target paths, per node."""
    costs: Dict[str, set] = {graph.target: {ZERO}}
    budget = path_limit
    for u in reversed(topological_order(graph)):
        if u == graph.target:
            continue
        acc = set()
        for e in graph.out_edges(u):
            for c in costs[e.dst]:
                acc.add(e.cost + c)
        budget -= len(acc)
        if budget < 0:
            raise errors.PathLimitExceeded(
                f"more than {path_limit} distinct continuation costs; graph too large for exact sweep"
            )
        costs[u] = acc
    return {u: sorted(v) for u, v in costs.items()}


def reward_breakpoints(graph: Graph, b: Fraction, path_limit: int = 200_000) -> List[Fraction]:
    """Every reward value at which agent behavior can change: b*c(u,v) plus
    the true cost of some v-to-target path."""
    graph = ensure_validated(graph)
    _check_pre(b)
    costs = _path_cost_sets(graph, path_limit)
    points = set()
    for e in graph.edges:
        for c in costs[e.dst]:
            points.add(b * e.cost + c)
    return sorted(points)


@dataclass(frozen=True)
class RewardIntervalSet:
    """Sorted union of disjoint half-open intervals [lo, hi); hi=None means
    unbounded. Nonempty sets always end with an unbounded interval."""

    intervals: Tuple[Tuple[Fraction, Optional[Fraction]], ...]

    def __len__(self) -> int:
        return len(self.intervals)

    def contains(self, reward: Fraction) -> bool:
        for lo, hi in self.intervals:
            if reward < lo:
                return False
            if hi is None or reward < hi:
                return True
        return False

    def to_json_list(self) -> list:
        return [[fmt(lo), None if hi is None else fmt(hi)] for lo, hi in self.intervals]


def feasible_reward_set(
    graph: Graph,
    b: Fraction,
    tie_break: TieBreakPolicy = DEFAULT_TIE_BREAK,
    path_limit: int = 200_000,
) -> RewardIntervalSet:
    """Exact set of rewards for which the agent reaches the target.

    Behavior is constant on [p_i, p_{i+1}) for consecutive breakpoints, so
    evaluating each breakpoint is exact; midpoints of the open gaps are
    evaluated as well as a consistency cross-check.
    """
    graph = ensure_validated(graph)
    points = reward_breakpoints(graph, b, path_limit)
    status = [is_traversable(graph, b, p, tie_break) for p in points]
    for i in range(len(points) - 1):
        mid = (points[i] + points[i + 1]) / 2
        if is_traversable(graph, b, mid, tie_break) != status[i]:
            raise AssertionError(
                f"behavior changed strictly between breakpoints {fmt(points[i])} and {fmt(points[i + 1])}"
            )
    intervals: List[Tuple[Fraction, Optional[Fraction]]] = []
    open_lo: Optional[Fraction] = None
    for p, ok in zip(points, status):
        if ok and open_lo is None:
            open_lo = p
        elif not ok and open_lo is not None:
            intervals.append((open_lo, p))
            open_lo = None
    if open_lo is not None:
        intervals.append((open_lo, None))
    return RewardIntervalSet(tuple(intervals))


def min_reward(
    graph: Graph,
    b: Fraction,
    tie_break: TieBreakPolicy = DEFAULT_TIE_BREAK,
    path_limit: int = 200_000,
) -> Fraction:
    """Minimum reward at the target that motivates the agent to reach it."""
    graph = ensure_validated(graph)
    _check_pre(b)
    optimal, _ = shortest_path(graph)
    cap = b * optimal[graph.source]
    for p in reward_breakpoints(graph, b, path_limit):
        if p < optimal[graph.source]:
            continue
        if p > cap:
            break
        if is_traversable(graph, b, p, tie_break):
            return p
    raise AssertionError("no feasible reward at or below b * optimal cost")


def path_for_reward(
    graph: Graph,
    b: Fraction,
    reward: Fraction,
    tie_break: TieBreakPolicy = DEFAULT_TIE_BREAK,
) -> Path:
    """The traversal path at a feasible reward; NotFeasible otherwise."""
    trace = traverse_with_reward(graph, b, reward, tie_break)
    if trace.abandoned_at is not None:
        raise errors.NotFeasible(f"graph is not traversable for reward {fmt(reward)}")
    return trace.path


# -- edge deletion ------------------------------------------------------------


def find_motivating_path(graph: Graph, b: Fraction, reward: Fraction) -> Optional[Path]:
    """A single path every vertex of which is willing to continue for the
    given reward, or None. Greedy in reverse topological order: among
    successors whose perceived cost fits the reward, take the one with the
    smallest true cost through it; minimizing true cost is what keeps every
    earlier perceived cost as small as possible."""
    graph = ensure_validated(graph)
    _check_pre(b, reward)
    true_cost: Dict[str, Fraction] = {graph.target: ZERO}
    choice: Dict[str, str] = {}
    for u in reversed(topological_order(graph)):
        if u == graph.target:
            continue
        best: Optional[Tuple[Fraction, str]] = None
        for e in graph.out_edges(u):
            if e.dst not in true_cost:
                continue
            if b * e.cost + true_cost[e.dst] > reward:
                continue
            key = (e.cost + true_cost[e.dst], e.dst)
            if best is None or key < best:
                best = key
        if best is None:
            continue
        true_cost[u] = best[0]
        choice[u] = best[1]
    if graph.source not in true_cost:
        return None
    nodes = [graph.source]
    cost = ZERO
    rew = ZERO
    u = graph.source
    while u != graph.target:
        v = choice[u]
        e = graph.edge(u, v)
        cost += e.cost
        rew += e.reward
        nodes.append(v)
        u = v
    return Path(tuple(nodes), cost, rew)


def min_reward_with_deletion(
    graph: Graph, b: Fraction, path_limit: int = 200_000
) -> Tuple[Fraction, Path]:
    """Minimum reward for which some subgraph is traversable, with a
    motivating path attaining it. Traversability-with-deletion is monotone
    in the reward, so a binary search over the breakpoints restricted to
    [C_o(s), b*C_o(s)] is exact."""
    graph = ensure_validated(graph)
    _check_pre(b)
    optimal, _ = shortest_path(graph)
    lo_bound = optimal[graph.source]
    hi_bound = b * lo_bound
    candidates = [p for p in reward_breakpoints(graph, b, path_limit) if lo_bound <= p <= hi_bound]
    lo, hi = 0, len(candidates) - 1
    assert candidates and find_motivating_path(graph, b, candidates[hi]) is not None
    while lo < hi:
        mid = (lo + hi) // 2
        if find_motivating_path(graph, b, candidates[mid]) is None:
            lo = mid + 1
        else:
            hi = mid
    best = candidates[lo]
    path = find_motivating_path(graph, b, best)
    return best, path


# -- internal rewards ---------------------------------------------------------


@dataclass(frozen=True)
class InternalCheck:
    reached: bool
    trace: TraversalTrace


def check_internal_distribution(
    graph: Graph,
    b: Fraction,
    edge_rewards: Dict[Tuple[str, str], Fraction],
    tie_break: TieBreakPolicy = DEFAULT_TIE_BREAK,
) -> InternalCheck:
    """Simulate the agent when rewards sit on edges instead of the target.

    A reward r(u,v) is collected after the step across (u,v), so it is
    never scaled by b. At node u the perceived net of continuing through v
    is b*c(u,v) - r(u,v) + (true cost minus uncollected rewards of the
    continuation actually taken from v); the agent moves only where some
    successor's perceived net is <= 0. Rewards already on the graph's edges
    and the given placement add together.
    """
    graph = ensure_validated(graph)
    _check_pre(b)
    for key, value in edge_rewards.items():
        if value < 0:
            raise errors.NegativeWeight(f"placement on {key[0]}->{key[1]} is negative")
    augmented = ensure_validated(graph.with_added_rewards(dict(edge_rewards)))
    net: Dict[str, Fraction] = {augmented.target: ZERO}
    choicemap: Dict[str, Optional[str]] = {augmented.target: None}
    for u in reversed(topological_order(augmented)):
        if u == augmented.target:
            continue
        options = []
        for e in augmented.out_edges(u):
            if e.dst not in net:
                continue
            perceived = b * e.cost - e.reward + net[e.dst]
            if perceived <= 0:
                options.append((perceived, e))
        if not options:
            continue
        best = min(p for p, _ in options)
        tied = [e for p, e in options if p == best]
        chosen = choose(tie_break, tied, net.__getitem__, lambda e: e.cost)
        net[u] = (chosen.cost - chosen.reward) + net[chosen.dst]
        choicemap[u] = chosen.dst
    if augmented.source not in net:
        trace = TraversalTrace(Path((), ZERO, ZERO), (), ZERO, abandoned_at=augmented.source)
        return InternalCheck(False, trace)
    nodes = [augmented.source]
    steps = []
    cost = ZERO
    rew = ZERO
    u = augmented.source
    while u != augmented.target:
        v = choicemap[u]
        e = augmented.edge(u, v)
        steps.append(Step(u, v, b * e.cost - e.reward + net[v]))
        cost += e.cost
        rew += e.reward
        nodes.append(v)
        u = v
    path = Path(tuple(nodes), cost, rew)
    return InternalCheck(True, TraversalTrace(path, tuple(steps), cost - rew))


def isolation_reward(path_nodes: Sequence[str], graph: Graph, b: Fraction) -> Fraction:
    """Reward needed at the target to traverse this path in isolation: the
    maximum over its vertices of b*(next edge cost) + (true cost of the rest)."""
    edges = [graph.edge(path_nodes[i], path_nodes[i + 1]) for i in range(len(path_nodes) - 1)]
    suffix = ZERO
    needs = []
    for e in reversed(edges):
        needs.append(b * e.cost + suffix)
        suffix += e.cost
    return max(needs)


def min_internal_reward_search(
    graph: Graph,
    b: Fraction,
    tie_break: TieBreakPolicy = DEFAULT_TIE_BREAK,
    max_edges: int = 12,
) -> Fraction:
    """Desk-scale search for the least total reward distributable over edges
    that gets the agent to the target.

    Candidate totals are the per-path isolation minima together with the
    reward breakpoints in [C_o(s), b*C_o(s)]; candidate placements load the
    reward onto the final edge of a path (with split variants), and every
    candidate is verified with check_internal_distribution. The value
    returned is always achieved by a verified placement, so it lies between
    the deletion minimum and the plain minimum reward.
    """
    graph = ensure_validated(graph)
    _check_pre(b)
    if len(graph.edges) > max_edges:
        raise errors.SearchBudgetExceeded(
            f"graph has {len(graph.edges)} edges; search supports at most {max_edges}"
        )
    paths = enumerate_paths(graph, graph.source, graph.target, limit=10_000)
    iso = {p.nodes: isolation_reward(p.nodes, graph, b) for p in paths}
    optimal, _ = shortest_path(graph)
    lo_bound = optimal[graph.source]
    hi_bound = b * lo_bound
    totals = set(iso.values())
    totals.update(
        p for p in reward_breakpoints(graph, b) if lo_bound <= p <= hi_bound
    )
    rmin = min_reward(graph, b, tie_break)
    totals.add(rmin)
    for total in sorted(totals):
        for p in paths:
            if iso[p.nodes] > total:
                continue
            last = (p.nodes[-2], p.nodes[-1])
            placements = [{last: total}]
            spare = total - iso[p.nodes]
            if spare > 0:
                for i in range(len(p.nodes) - 1):
                    key = (p.nodes[i], p.nodes[i + 1])
                    if key != last:
                        placements.append({last: iso[p.nodes], key: spare})
            for placement in placements:
                if check_internal_distribution(graph, b, placement, tie_break).reached:
                    return total
    raise errors.SearchBudgetExceeded("no candidate placement reached the target")
