import itertools
from fractions import Fraction

import pytest

from presentbias.graph import Edge, Graph, validate


def build(nodes, edge_triples, source="s", target="t", rewards=False):
    """Small-graph literal: triples (u, v, weight) land on cost or reward."""
    edges = []
    for u, v, w in edge_triples:
        w = Fraction(w)
        edges.append(Edge(u, v, reward=w) if rewards else Edge(u, v, cost=w))
    return validate(Graph(nodes, edges, source, target))


def valid_edge_subsets(n):
    """Every edge set over nodes 0..n-1 (edges i<j) keeping all nodes on a
    source-target path. Edges are listed in (i, j) lexicographic order, so a
    single forward (resp. backward) sweep settles reachability."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    found = []
    for bits in range(1, 1 << len(pairs)):
        chosen = [pairs[k] for k in range(len(pairs)) if bits >> k & 1]
        fwd = {0}
        for i, j in chosen:
            if i in fwd:
                fwd.add(j)
        back = {n - 1}
        for i, j in sorted(chosen, key=lambda p: -p[1]):
            if j in back:
                back.add(i)
        if fwd & back == set(range(n)):
            found.append(chosen)
    return found


def enumerate_small_dags(node_counts, weights, rewards=False):
    """Exhaustive weighted DAGs: every valid topology on the given node
    counts crossed with every weight assignment from `weights`."""
    for n in node_counts:
        ids = [f"n{i}" for i in range(n)]
        for chosen in valid_edge_subsets(n):
            for ws in itertools.product(weights, repeat=len(chosen)):
                if rewards:
                    edges = [
                        Edge(ids[i], ids[j], reward=Fraction(w))
                        for (i, j), w in zip(chosen, ws)
                    ]
                else:
                    edges = [
                        Edge(ids[i], ids[j], cost=Fraction(w))
                        for (i, j), w in zip(chosen, ws)
                    ]
                yield validate(Graph(ids, edges, ids[0], ids[-1]))
