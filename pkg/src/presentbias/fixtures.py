"""Deterministic instance generators.

Each family builds, from exact rational parameters, a small graph
exhibiting one behavior of present-biased planning (a worst case, a
non-monotonicity, a counter gadget, ...). Families whose headline
behavior depends on an exact tie record the tie-break policy that
realizes it. A layered random-DAG sampler feeds the property suites.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from . import errors
from .graph import Edge, Graph, validate
from .rationals import fmt, rat
from .tiebreak import TieBreakPolicy

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class FixtureSpec:
    family: str
    parameters: Dict[str, object]
    required_tie_break: Optional[TieBreakPolicy]
    description: str


@dataclass(frozen=True)
class Family:
    name: str
    description: str
    parameters: str
    defaults: Dict[str, object]
    build: Callable[..., Graph]
    required_tie_break: Optional[TieBreakPolicy] = None


def _need(condition: bool, constraint: str) -> None:
    if not condition:
        raise errors.ParameterConstraintViolated(constraint)


def _graph(nodes, edges, source="s", target="t") -> Graph:
    return validate(Graph(nodes, edges, source, target))


def _cost(u, v, c) -> Edge:
    return Edge(u, v, cost=Fraction(c))


def _rew(u, v, r) -> Edge:
    return Edge(u, v, reward=Fraction(r))


def _snake(edges: List[Edge], frm: str, to: str, total: Fraction, m: int, prefix: str, nodes: List[str]) -> None:
    """A path of m equal-cost sub-edges standing in for one edge whose
    perceived cost should track its true cost."""
    step = total / m
    prev = frm
    for j in range(1, m):
        mid = f"{prefix}_{j:02d}"
        nodes.append(mid)
        edges.append(_cost(prev, mid, step))
        prev = mid
    edges.append(_cost(prev, to, step))


def _vname(i: int, n: int) -> str:
    width = len(str(n))
    return f"v{i:0{width}d}" if n >= 10 else f"v{i}"


# -- cost-model families -------------------------------------------------------


def two_period(c, b) -> Graph:
    c, b = rat(c), rat(b)
    _need(1 < c < b, "requires 1 < c < b")
    return _graph(
        ["s", "v1", "t"],
        [_cost("s", "v1", 0), _cost("s", "t", 1), _cost("v1", "t", c)],
    )


def three_period(c, b) -> Graph:
    c, b = rat(c), rat(b)
    _need(1 < c < b < c * c, "requires 1 < c < b < c^2")
    return _graph(
        ["s", "v1", "v2", "t"],
        [
            _cost("s", "v1", 0),
            _cost("s", "t", 1),
            _cost("v1", "t", c),
            _cost("v1", "v2", 0),
            _cost("v2", "t", c * c),
        ],
    )


def path_switch() -> Graph:
    """Five-node graph on which the traversed path is not monotone in b:
    small and large biases share a path that the middle bias avoids."""
    return _graph(
        ["s", "u", "v", "w", "t"],
        [
            _cost("s", "u", 3),
            _cost("s", "v", 1),
            _cost("u", "t", 2),
            _cost("v", "w", 0),
            _cost("v", "t", 5),
            _cost("w", "t", 49),
        ],
    )


def sophistication_penalty(x, b, eps) -> Graph:
    """Family on which the sophisticated agent pays almost b times what the
    naive agent pays; the gap widens as x grows."""
    x, b, eps = rat(x), rat(b), rat(eps)
    _need(b > 1, "requires b > 1")
    _need(x > 0, "requires x > 0")
    _need(0 < eps < (b - 1) / 2, "requires 0 < eps < (b-1)/2")
    return _graph(
        ["s", "u", "v", "w", "t"],
        [
            _cost("s", "u", x),
            _cost("s", "w", 0),
            _cost("u", "t", 1),
            _cost("u", "v", 0),
            _cost("v", "t", b - eps),
            _cost("w", "t", b * x + b - 2 * eps),
        ],
    )


def reward_detour() -> Graph:
    """The minimum motivating reward sends the agent down a path that no
    single path would need in isolation."""
    return _graph(
        ["s", "u", "v", "w", "t"],
        [
            _cost("s", "u", 2),
            _cost("u", "t", 2),
            _cost("u", "v", 0),
            _cost("v", "t", 3),
            _cost("v", "w", 0),
            _cost("w", "t", 5),
        ],
    )


def nonmonotone_reward() -> Graph:
    """Traversable at reward 9 and 11 but not 10: a larger reward revives a
    tempting branch that inflates the perceived cost upstream."""
    return _graph(
        ["s", "v", "w", "t"],
        [
            _cost("s", "v", 3),
            _cost("v", "w", 0),
            _cost("v", "t", 3),
            _cost("w", "t", 5),
        ],
    )


def binary_counter(n, c) -> Graph:
    """Counter gadget: with bias (1+c)/c, reward 2^n + (bc-2)x routes the
    agent along the path spelling x in binary (bypass at bit i set)."""
    n = int(n)
    c = rat(c)
    _need(n >= 1, "requires n >= 1")
    _need(c > 1, "requires c > 1")
    _need(1 + c >= c * c, "requires (1+c)/c >= c, i.e. 1 + c >= c^2")
    nodes = ["s"] + [f"v{i}" for i in range(n)] + [f"w{i}" for i in range(n)] + ["t"]
    edges = [_cost("s", "v0", 0)]
    for i in range(n):
        nxt = f"v{i + 1}" if i + 1 < n else "t"
        edges.append(_cost(f"v{i}", nxt, 2**i))
        edges.append(_cost(f"v{i}", f"w{i}", 0))
        edges.append(_cost(f"w{i}", nxt, c * 2**i))
    return _graph(nodes, edges)


def binary_counter_bias(c) -> Fraction:
    """The bias forced by the counter's constraint 1 + c = b*c."""
    c = rat(c)
    return (1 + c) / c


def snake_chain(n, b, eps, m="auto") -> Graph:
    """Unit-cost chain with a parallel near-true-perception path per leg.

    With m="auto" the parallel path's total W is calibrated so that the
    minimum motivating reward is exactly b(n+1)(1-eps): a finite chain of
    positive sub-edges always carries a perception excess of (b-1)W/m at
    its entry, so W solves W((n+1) + (b-1)/m) = b(n+1)(1-eps). Passing an
    integer m instead keeps the uncalibrated total W = b(1-eps).
    """
    n = int(n)
    b, eps = rat(b), rat(eps)
    _need(n >= 1, "requires n >= 1")
    _need(b > 1, "requires b > 1")
    _need(0 < eps < 1, "requires 0 < eps < 1")
    if m == "auto":
        # W((n+1) + (b-1)/m) = b(n+1)(1-eps); the parallel path stays
        # preferred when m > n(b-1)/((n+1) eps), so scale m with 1/eps.
        floor = n * (b - 1) / ((n + 1) * eps)
        count = max(100, int(floor) + 1)
        total = b * (n + 1) * (1 - eps) / ((n + 1) + Fraction(b - 1, count))
    else:
        count = int(m)
        _need(count >= 1, "requires m >= 1")
        total = b * (1 - eps)
    _need(
        total * (1 + Fraction(b - 1, count)) < b,
        "requires W(1 + (b-1)/m) < b so the parallel path is preferred",
    )
    mains = ["s"] + [_vname(i, n) for i in range(1, n + 1)] + ["t"]
    nodes = list(mains)
    edges: List[Edge] = []
    for i in range(n + 1):
        edges.append(_cost(mains[i], mains[i + 1], 1))
        _snake(edges, mains[i], mains[i + 1], total, count, f"x{i}", nodes)
    return _graph(nodes, edges)


def rmin_above_cs() -> Graph:
    """Single unit edge: the motivating reward b exceeds the no-reward cost 1."""
    return _graph(["s", "t"], [_cost("s", "t", 1)])


def rmin_below_cs() -> Graph:
    """Graph whose no-reward sophisticated cost (12, under the later-id tie
    break) exceeds the minimum motivating reward (11)."""
    return _graph(
        ["s", "u", "v", "w", "t"],
        [
            _cost("s", "u", 2),
            _cost("u", "v", 4),
            _cost("v", "w", 0),
            _cost("v", "t", 3),
            _cost("w", "t", 6),
        ],
    )


def deletion_vs_internal(pruned=False) -> Graph:
    """At b=4 the full graph needs reward 53 but deleting u->v lowers the
    need to 52; no internal distribution of 52 works."""
    edges = [
        _cost("s", "u", 8),
        _cost("u", "w", 10),
        _cost("w", "t", 10),
    ]
    nodes = ["s", "u", "w", "t"]
    if not pruned:
        nodes = ["s", "u", "v", "w", "t"]
        edges += [_cost("u", "v", 5), _cost("v", "w", 6)]
    return _graph(nodes, edges)


def optimist_fan(b, n=4) -> Graph:
    """Exponential cost ratio for an agent that underestimates its bias:
    every hop is an exact tie the later-id policy resolves forward."""
    b = rat(b)
    n = int(n)
    _need(b > 1, "requires b > 1")
    _need(n >= 1, "requires n >= 1")
    names = [_vname(i, n) for i in range(1, n + 1)]
    nodes = ["s"] + names + ["t"]
    edges = [_cost("s", names[0], 0), _cost("s", "t", 1)]
    for i, name in enumerate(names, start=1):
        if i < n:
            edges.append(_cost(name, names[i], 0))
        edges.append(_cost(name, "t", b**i))
    return _graph(nodes, edges)


def pessimist_fork(b_prime, eps) -> Graph:
    """Worst case for an agent that overestimates its bias as b': it takes
    the b'-eps branch because its imagined self dawdles on the other one."""
    bp, eps = rat(b_prime), rat(eps)
    _need(bp > 1, "requires b' > 1")
    _need(0 < eps < bp, "requires 0 < eps < b'")
    return _graph(
        ["s", "u", "v", "w", "t"],
        [
            _cost("s", "u", 0),
            _cost("s", "w", 0),
            _cost("u", "t", 1),
            _cost("u", "v", 0),
            _cost("v", "t", bp),
            _cost("w", "t", bp - eps),
        ],
    )


def future_fork(b) -> Graph:
    """Worst case for a future-biased agent: both options are perceived at
    1, and the direct edge costs 1/b."""
    b = rat(b)
    _need(0 < b < 1, "requires 0 < b < 1")
    return _graph(
        ["s", "v", "t"],
        [_cost("s", "t", 1 / b), _cost("s", "v", 0), _cost("v", "t", 1)],
    )


def internal_ratio_chain(b, n, m=8) -> Graph:
    """Chain with calibrated bypasses on which distributing rewards along
    edges costs almost twice what deletion plus a goal reward costs.

    Direct leg i costs y_i = (b/(b-1))^i; bypass i (i = 1..n-1) is a path
    of m sub-edges totalling p_i with p_1 = (b+1) y_1 / 2 and
    p_i = y_i + p_{i-1}/2, the indifference point between subsidizing the
    direct edge and letting the agent take the bypass.
    """
    b = rat(b)
    n = int(n)
    m = int(m)
    _need(b > 1, "requires b > 1")
    _need(n >= 2, "requires n >= 2")
    _need(m >= 2, "requires m >= 2")
    q = b / (b - 1)
    y = [q**i for i in range(n + 1)]
    p = internal_ratio_bypass_totals(b, n)
    names = [_vname(i, n) for i in range(1, n + 1)]
    mains = ["s"] + names + ["t"]
    nodes = list(mains)
    edges: List[Edge] = []
    for i in range(n + 1):
        edges.append(_cost(mains[i], mains[i + 1], y[i]))
    for i in range(1, n):
        _snake(edges, mains[i], mains[i + 1], p[i], m, f"w{i}", nodes)
    return _graph(nodes, edges)


def internal_ratio_bypass_totals(b, n) -> Dict[int, Fraction]:
    b = rat(b)
    q = b / (b - 1)
    p: Dict[int, Fraction] = {}
    for i in range(1, int(n)):
        p[i] = (b + 1) * q / 2 if i == 1 else q**i + p[i - 1] / 2
    return p


def internal_ratio_placement(b, n, m=8) -> Tuple[Graph, Dict[Tuple[str, str], Fraction], Fraction]:
    """The graph together with the indifference placement: b*y_n on the last
    direct edge and p_i - y_i on the final sub-edge of each bypass. The
    total is b*(b/(b-1))^n + D_{n-1} with D_i = (b(b-1)/(b+1))(q^i - 2^-i).
    """
    b = rat(b)
    n = int(n)
    m = int(m)
    graph = internal_ratio_chain(b, n, m)
    q = b / (b - 1)
    p = internal_ratio_bypass_totals(b, n)
    names = [_vname(i, n) for i in range(1, n + 1)]
    placement: Dict[Tuple[str, str], Fraction] = {(names[-1], "t"): b * q**n}
    for i in range(1, n):
        last_mid = f"w{i}_{m - 1:02d}"
        placement[(last_mid, names[i])] = p[i] - q**i
    total = sum(placement.values(), ZERO)
    return graph, placement, total


# -- reward-model families -----------------------------------------------------


def reward_fan(c, n=4, b=None) -> Graph:
    """Fan of escalating exit rewards c^i: a sophisticated agent leaves at
    once with 1 while a naive agent walks out to c^(n-1)."""
    c = rat(c)
    n = int(n)
    _need(c > 1, "requires c > 1")
    _need(n >= 1, "requires n >= 1")
    if b is not None:
        _need(c < rat(b), "requires c < b")
    names = [_vname(i, n) for i in range(1, n + 1)]
    nodes = ["s"] + names + ["t"]
    edges = [_rew("s", names[0], 0), _rew("s", "t", 1)]
    for i, name in enumerate(names, start=1):
        if i < n:
            edges.append(_rew(name, names[i], 0))
        edges.append(_rew(name, "t", c**i))
    return _graph(nodes, edges)


def planning_resistant_fan(b, n=4) -> Graph:
    """Fan with exit rewards ((b(b-1))/(2b-1))^i on which no affordable
    planning-phase placement moves the agent off the direct exit."""
    b = rat(b)
    n = int(n)
    ratio = b * (b - 1) / (2 * b - 1)
    _need(ratio > 1, "requires b(b-1)/(2b-1) > 1")
    _need(n >= 1, "requires n >= 1")
    names = [_vname(i, n) for i in range(1, n + 1)]
    nodes = ["s"] + names + ["t"]
    edges = [_rew("s", names[0], 0), _rew("s", "t", 1)]
    for i, name in enumerate(names, start=1):
        if i < n:
            edges.append(_rew(name, names[i], 0))
        edges.append(_rew(name, "t", ratio**i))
    return _graph(nodes, edges)


def zero_edge_resistant(b, n=4) -> Graph:
    """Ladder of (b-1)-reward rungs where the sophisticated agent exits for
    1 at every step (largest-edge tie-break) and no zero-reward edge helps."""
    b = rat(b)
    n = int(n)
    _need(b > 1, "requires b > 1")
    _need(n >= 1, "requires n >= 1")
    nodes = ["s"]
    edges = [_rew("s", "t", 1)]
    prev = "s"
    for i in range(1, n + 1):
        gate = _vname(i, n) + "g"
        name = _vname(i, n)
        nodes += [gate, name]
        edges.append(_rew(prev, gate, 0))
        edges.append(_rew(gate, name, b - 1))
        edges.append(_rew(name, "t", 1))
        prev = name
    nodes.append("t")
    return _graph(nodes, edges)


# -- random suite sampler --------------------------------------------------------


def random_dag(
    seed: int,
    n: int,
    density=Fraction(1, 2),
    weight_range: Tuple[int, int] = (0, 10),
    reward_range: Optional[Tuple[int, int]] = None,
) -> Graph:
    """Deterministic layered-ish DAG with every node on a source-target path.

    Node ids follow the topological order; every non-source node draws an
    incoming edge from an earlier node and every non-target node an
    outgoing edge to a later one, then each remaining forward pair appears
    with the given density. Weights are integers from the given ranges.
    """
    if n < 2:
        raise errors.ParameterConstraintViolated("requires n >= 2")
    rng = random.Random(seed)
    width = len(str(n - 1))
    ids = [f"n{i:0{width}d}" for i in range(n)]
    present = set()
    for i in range(1, n):
        present.add((rng.randrange(i), i))
    for i in range(n - 1):
        if not any(a == i for a, _ in present):
            present.add((i, rng.randrange(i + 1, n)))
    dens = float(density)
    for i in range(n):
        for j in range(i + 1, n):
            if (i, j) not in present and rng.random() < dens:
                present.add((i, j))
    lo, hi = weight_range
    rlo, rhi = reward_range if reward_range is not None else weight_range
    edges = [
        Edge(ids[i], ids[j], Fraction(rng.randint(lo, hi)), Fraction(rng.randint(rlo, rhi)))
        for (i, j) in sorted(present)
    ]
    return validate(Graph(ids, edges, ids[0], ids[-1]))


# -- registry --------------------------------------------------------------------


FAMILIES: Dict[str, Family] = {
    f.name: f
    for f in [
        Family("two_period", "do a task now for 1 or tomorrow for c, 1 < c < b", "c, b", {"c": "3/2", "b": "2"}, two_period),
        Family("three_period", "now for 1, next for c, last for c^2, with 1 < c < b < c^2", "c, b", {"c": "3/2", "b": "2"}, three_period),
        Family("path_switch", "biases 1 and 10 share a path that bias 2 avoids", "", {}, path_switch),
        Family("sophistication_penalty", "sophisticated pays ~b times the naive cost as x grows", "x, b, eps", {"x": "1000", "b": "2", "eps": "1/100"}, sophistication_penalty),
        Family("reward_detour", "minimum motivating reward forces a detour path", "", {}, reward_detour),
        Family("nonmonotone_reward", "traversable at rewards 9 and 11 but not 10 (b=2)", "", {}, nonmonotone_reward),
        Family("binary_counter", "reward 2^n + (bc-2)x routes the agent along x's binary encoding", "n, c", {"n": 3, "c": "8/5"}, binary_counter),
        Family("snake_chain", "unit chain vs near-true-perception parallels; motivating reward approaches b per unit", "n, b, eps, m", {"n": 4, "b": "2", "eps": "1/100", "m": "auto"}, snake_chain),
        Family("rmin_above_cs", "single edge: motivating reward b exceeds no-reward cost 1", "", {}, rmin_above_cs),
        Family("rmin_below_cs", "no-reward cost 12 exceeds motivating reward 11 (b=2, later-id ties)", "", {}, rmin_below_cs, TieBreakPolicy.PREFER_LATER_SUCCESSOR_ID),
        Family("deletion_vs_internal", "deleting one edge motivates at 52 where no 52-distribution works (b=4)", "pruned", {"pruned": False}, deletion_vs_internal),
        Family("optimist_fan", "believed bias below b costs a factor b^n", "b, n", {"b": "2", "n": 4}, optimist_fan, TieBreakPolicy.PREFER_LATER_SUCCESSOR_ID),
        Family("pessimist_fork", "believed bias b' above b costs a factor approaching b'", "b_prime, eps", {"b_prime": "3", "eps": "1/10"}, pessimist_fork, TieBreakPolicy.PREFER_LATER_SUCCESSOR_ID),
        Family("future_fork", "future-biased agent pays 1/b times optimal", "b", {"b": "1/2"}, future_fork),
        Family("internal_ratio_chain", "edge-distributed rewards cost up to ~2x the deletion minimum", "b, n, m", {"b": "3", "n": 3, "m": 8}, internal_ratio_chain),
        Family("reward_fan", "sophisticated collects 1 while naive collects c^(n-1)", "c, n[, b]", {"c": "7/5", "n": 4}, reward_fan),
        Family("planning_resistant_fan", "no affordable planning placement helps", "b, n", {"b": "3", "n": 4}, planning_resistant_fan),
        Family("zero_edge_resistant", "no zero-reward edge addition helps (largest-edge ties)", "b, n", {"b": "2", "n": 4}, zero_edge_resistant, TieBreakPolicy.MAX_IMMEDIATE_EDGE_WEIGHT),
    ]
}


def generate(family: str, **params) -> Graph:
    """Build one fixture graph; unknown families or parameters are errors."""
    if family not in FAMILIES:
        known = ", ".join(sorted(FAMILIES))
        raise errors.ParameterConstraintViolated(f"unknown family {family!r} (one of: {known})")
    info = FAMILIES[family]
    merged = dict(info.defaults)
    for key, value in params.items():
        if key not in info.defaults:
            raise errors.ParameterConstraintViolated(
                f"family {family!r} takes parameters ({info.parameters}), not {key!r}"
            )
        merged[key] = value
    return info.build(**merged)


def fixture_spec(family: str, **params) -> FixtureSpec:
    info = FAMILIES[family]
    merged = dict(info.defaults)
    merged.update(params)
    return FixtureSpec(family, merged, info.required_tie_break, info.description)
