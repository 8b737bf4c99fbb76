"""Exact-arithmetic DAG core: types, validation, orderings, path utilities.

A Graph is immutable after construction and safe to share across threads;
every operation here is a pure function. Costs and rewards are exact
Fractions; each edge carries both fields (default 0) and the caller's
objective decides which one is active.
"""

import heapq
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import errors
from .rationals import fmt, json_number, rat
from .tiebreak import DEFAULT_TIE_BREAK, TieBreakPolicy, choose

ZERO = Fraction(0)


@dataclass(frozen=True)
class Edge:
    src: str
    dst: str
    cost: Fraction = ZERO
    reward: Fraction = ZERO

    @property
    def key(self) -> Tuple[str, str]:
        return (self.src, self.dst)


@dataclass(frozen=True)
class Path:
    """A simple node sequence with its exact totals."""

    nodes: Tuple[str, ...]
    total_cost: Fraction
    total_reward: Fraction

    def __len__(self) -> int:
        return len(self.nodes)


class Graph:
    """Directed graph container with a designated source and target.

    The constructor performs no validation beyond building adjacency maps;
    call validate() to check invariants and strip nodes that lie on no
    source-to-target path. Treat instances as immutable.
    """

    def __init__(self, nodes: Sequence[str], edges: Iterable[Edge], source: str, target: str):
        self.nodes: Tuple[str, ...] = tuple(nodes)
        self.edges: Tuple[Edge, ...] = tuple(edges)
        self.source = source
        self.target = target
        self._out: Dict[str, List[Edge]] = {n: [] for n in self.nodes}
        self._in: Dict[str, List[Edge]] = {n: [] for n in self.nodes}
        self._by_key: Dict[Tuple[str, str], Edge] = {}
        for e in self.edges:
            if e.src in self._out:
                self._out[e.src].append(e)
            if e.dst in self._in:
                self._in[e.dst].append(e)
            self._by_key.setdefault(e.key, e)
        self._topo: Optional[Tuple[str, ...]] = None
        self._validated = False

    # -- inspection -------------------------------------------------------

    def out_edges(self, node: str) -> Tuple[Edge, ...]:
        return tuple(self._out.get(node, ()))

    def in_edges(self, node: str) -> Tuple[Edge, ...]:
        return tuple(self._in.get(node, ()))

    def edge(self, src: str, dst: str) -> Edge:
        return self._by_key[(src, dst)]

    def has_edge(self, src: str, dst: str) -> bool:
        return (src, dst) in self._by_key

    @property
    def is_validated(self) -> bool:
        return self._validated

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.nodes == other.nodes
            and self.edges == other.edges
            and self.source == other.source
            and self.target == other.target
        )

    def __repr__(self) -> str:
        return (
            f"Graph({len(self.nodes)} nodes, {len(self.edges)} edges, "
            f"{self.source!r}->{self.target!r})"
        )

    # -- derived graphs ---------------------------------------------------

    def without_edges(self, keys: Iterable[Tuple[str, str]]) -> "Graph":
        drop = set(keys)
        kept = [e for e in self.edges if e.key not in drop]
        return Graph(self.nodes, kept, self.source, self.target)

    def with_edges(self, new_edges: Iterable[Edge]) -> "Graph":
        return Graph(self.nodes, list(self.edges) + list(new_edges), self.source, self.target)

    def with_added_rewards(self, placement: Dict[Tuple[str, str], Fraction]) -> "Graph":
        for key in placement:
            if key not in self._by_key:
                raise errors.UnknownNode(f"no edge {key[0]}->{key[1]} to place reward on")
        new = [
            Edge(e.src, e.dst, e.cost, e.reward + placement.get(e.key, ZERO))
            for e in self.edges
        ]
        return Graph(self.nodes, new, self.source, self.target)

    def restarted_at(self, node: str) -> "Graph":
        if node not in self._out:
            raise errors.UnknownNode(f"unknown node {node!r}")
        return Graph(self.nodes, self.edges, node, self.target)


# -- validation ------------------------------------------------------------


def topological_order(graph: Graph) -> Tuple[str, ...]:
    """Node order with every edge pointing forward; ties broken by node id."""
    if graph._topo is not None:
        return graph._topo
    indegree = {n: 0 for n in graph.nodes}
    for e in graph.edges:
        if e.src in indegree and e.dst in indegree:
            indegree[e.dst] += 1
    ready = [n for n, d in indegree.items() if d == 0]
    heapq.heapify(ready)
    order: List[str] = []
    while ready:
        u = heapq.heappop(ready)
        order.append(u)
        for e in graph._out.get(u, ()):
            if e.dst not in indegree:
                continue
            indegree[e.dst] -= 1
            if indegree[e.dst] == 0:
                heapq.heappush(ready, e.dst)
    if len(order) != len(graph.nodes):
        stuck = sorted(n for n, d in indegree.items() if d > 0)
        raise errors.CycleDetected(f"cycle through nodes {stuck}")
    graph._topo = tuple(order)
    return graph._topo


def validate(graph: Graph) -> Graph:
    """Check all graph invariants; strip nodes lying on no source-target path.

    Raises InvalidGraph carrying every violation found. Idempotent: running
    it on its own output returns an equal graph.
    """
    violations: List[errors.DomainError] = []
    seen = set()
    for n in graph.nodes:
        if n in seen:
            violations.append(errors.DuplicateEdge(f"node id {n!r} listed twice"))
        seen.add(n)
    if graph.source not in seen or graph.target not in seen:
        violations.append(
            errors.MissingSourceOrTarget(
                f"source {graph.source!r} or target {graph.target!r} not among nodes"
            )
        )
    if graph.source == graph.target:
        violations.append(
            errors.MissingSourceOrTarget("source and target must be distinct nodes")
        )
    keys = set()
    for e in graph.edges:
        if e.src not in seen or e.dst not in seen:
            violations.append(errors.UnknownNode(f"edge {e.src}->{e.dst} references unknown node"))
            continue
        if e.key in keys:
            violations.append(errors.DuplicateEdge(f"duplicate edge {e.src}->{e.dst}"))
        keys.add(e.key)
        if e.cost < 0 or e.reward < 0:
            violations.append(errors.NegativeWeight(f"edge {e.src}->{e.dst} has a negative weight"))
        if e.src == e.dst:
            violations.append(errors.CycleDetected(f"self-loop at {e.src}"))
    if violations:
        raise errors.InvalidGraph(violations)
    try:
        topological_order(graph)
    except errors.CycleDetected as exc:
        raise errors.InvalidGraph([exc])

    # Keep exactly the nodes reachable from the source that also reach the
    # target; everything else is stripped rather than rejected, because the
    # reward-pruning machinery produces such graphs internally.
    fwd = {graph.source}
    for u in topological_order(graph):
        if u in fwd:
            for e in graph._out[u]:
                fwd.add(e.dst)
    back = {graph.target}
    for u in reversed(topological_order(graph)):
        if u in back:
            for e in graph._in[u]:
                back.add(e.src)
    keep = fwd & back
    if graph.source not in keep or graph.target not in keep:
        raise errors.InvalidGraph(
            [errors.MissingSourceOrTarget("no path from source to target")]
        )
    nodes = tuple(n for n in graph.nodes if n in keep)
    edges = tuple(e for e in graph.edges if e.src in keep and e.dst in keep)
    out = Graph(nodes, edges, graph.source, graph.target)
    out._validated = True
    return out


def ensure_validated(graph: Graph) -> Graph:
    return graph if graph.is_validated else validate(graph)


# -- orderings and tables ----------------------------------------------------


def shortest_path(
    graph: Graph, tie_break: TieBreakPolicy = DEFAULT_TIE_BREAK
) -> Tuple[Dict[str, Fraction], Dict[str, Optional[str]]]:
    """Min-cost table to the target: value per node plus chosen successor."""
    graph = ensure_validated(graph)
    value: Dict[str, Fraction] = {graph.target: ZERO}
    succ: Dict[str, Optional[str]] = {graph.target: None}
    for u in reversed(topological_order(graph)):
        if u == graph.target:
            continue
        best = min(e.cost + value[e.dst] for e in graph._out[u])
        tied = [e for e in graph._out[u] if e.cost + value[e.dst] == best]
        chosen = choose(tie_break, tied, value.__getitem__, lambda e: e.cost)
        value[u] = best
        succ[u] = chosen.dst
    return value, succ


def heaviest_path(
    graph: Graph, tie_break: TieBreakPolicy = DEFAULT_TIE_BREAK
) -> Tuple[Dict[str, Fraction], Dict[str, Optional[str]]]:
    """Max-reward table to the target: value per node plus chosen successor."""
    graph = ensure_validated(graph)
    value: Dict[str, Fraction] = {graph.target: ZERO}
    succ: Dict[str, Optional[str]] = {graph.target: None}
    for u in reversed(topological_order(graph)):
        if u == graph.target:
            continue
        best = max(e.reward + value[e.dst] for e in graph._out[u])
        tied = [e for e in graph._out[u] if e.reward + value[e.dst] == best]
        chosen = choose(tie_break, tied, value.__getitem__, lambda e: e.reward)
        value[u] = best
        succ[u] = chosen.dst
    return value, succ


def follow_successors(graph: Graph, succ: Dict[str, Optional[str]], start: str) -> Path:
    nodes = [start]
    cost = ZERO
    reward = ZERO
    u = start
    while u != graph.target:
        v = succ[u]
        e = graph.edge(u, v)
        cost += e.cost
        reward += e.reward
        nodes.append(v)
        u = v
    return Path(tuple(nodes), cost, reward)


def enumerate_paths(graph: Graph, start: str, end: str, limit: int = 100_000) -> List[Path]:
    """All simple start-to-end paths with exact totals (desk-scale oracle).

    Raises PathLimitExceeded once more than `limit` paths exist.
    """
    if start not in graph._out or end not in graph._out:
        raise errors.UnknownNode(f"unknown endpoint {start!r} or {end!r}")
    paths: List[Path] = []
    stack: List[str] = [start]

    def walk(u: str, cost: Fraction, reward: Fraction) -> None:
        if u == end:
            if len(paths) >= limit:
                raise errors.PathLimitExceeded(f"more than {limit} paths")
            paths.append(Path(tuple(stack), cost, reward))
            return
        for e in graph._out.get(u, ()):
            stack.append(e.dst)
            walk(e.dst, cost + e.cost, reward + e.reward)
            stack.pop()

    walk(start, ZERO, ZERO)
    return paths


# -- serialization -----------------------------------------------------------


def graph_to_dict(graph: Graph) -> dict:
    return {
        "nodes": list(graph.nodes),
        "edges": [
            {
                "from": e.src,
                "to": e.dst,
                "cost": json_number(e.cost),
                "reward": json_number(e.reward),
            }
            for e in graph.edges
        ],
        "source": graph.source,
        "target": graph.target,
    }


def graph_from_dict(data: dict) -> Graph:
    try:
        nodes = [str(n) for n in data["nodes"]]
        edges = [
            Edge(
                str(e["from"]),
                str(e["to"]),
                rat(e.get("cost", 0)),
                rat(e.get("reward", 0)),
            )
            for e in data["edges"]
        ]
        return Graph(nodes, edges, str(data["source"]), str(data["target"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise errors.InvalidGraph(
            [errors.MissingSourceOrTarget(f"malformed graph document: {exc}")]
        )


def dumps(graph: Graph, indent: int = 2) -> str:
    return json.dumps(graph_to_dict(graph), indent=indent)


def loads(text: str) -> Graph:
    return graph_from_dict(json.loads(text))


def to_dot(graph: Graph) -> str:
    """Graphviz text for documentation; output only, never parsed back."""
    lines = ["digraph G {", "  rankdir=LR;"]
    for n in graph.nodes:
        shape = "doublecircle" if n in (graph.source, graph.target) else "circle"
        lines.append(f'  "{n}" [shape={shape}];')
    for e in graph.edges:
        if e.reward == 0:
            label = fmt(e.cost)
        elif e.cost == 0:
            label = f"r={fmt(e.reward)}"
        else:
            label = f"c={fmt(e.cost)}, r={fmt(e.reward)}"
        lines.append(f'  "{e.src}" -> "{e.dst}" [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
