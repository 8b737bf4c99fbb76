"""Deterministic tie-breaking among perceived-equal successors.

Every decision rule in this package reduces to "pick the out-edge
optimizing a perceived value"; whenever several edges tie exactly, the
policy below produces a strict order. Node-id (lexicographic) is always
the final fallback, so any two candidates are strictly ordered.
"""

from enum import Enum
from fractions import Fraction
from typing import Callable, Sequence


class TieBreakPolicy(Enum):
    # Among perceived-equal successors, prefer the one whose continuation
    # has the smallest true total (then smaller node id). This matches the
    # greedy used for motivating-path construction.
    MIN_TRUE_CONTINUATION = "min_true_continuation"
    MAX_TRUE_CONTINUATION = "max_true_continuation"
    PREFER_EARLIER_SUCCESSOR_ID = "prefer_earlier_successor_id"
    PREFER_LATER_SUCCESSOR_ID = "prefer_later_successor_id"
    MAX_IMMEDIATE_EDGE_WEIGHT = "max_immediate_edge_weight"

    @classmethod
    def parse(cls, text: str) -> "TieBreakPolicy":
        try:
            return cls(text.strip().lower())
        except ValueError:
            names = ", ".join(p.value for p in cls)
            raise ValueError(f"unknown tie-break policy {text!r} (one of: {names})")


DEFAULT_TIE_BREAK = TieBreakPolicy.MIN_TRUE_CONTINUATION


def choose(
    policy: TieBreakPolicy,
    tied_edges: Sequence,
    continuation: Callable[[str], Fraction],
    weight: Callable,
):
    """Pick one edge from a perceived-equal set.

    continuation(node_id) is the true total of the agent's own continuation
    from that successor; weight(edge) is the immediate active edge weight
    (cost or reward, depending on objective).
    """
    if len(tied_edges) == 1:
        return tied_edges[0]
    p = TieBreakPolicy(policy)
    if p is TieBreakPolicy.MIN_TRUE_CONTINUATION:
        key = lambda e: (continuation(e.dst), e.dst)
    elif p is TieBreakPolicy.MAX_TRUE_CONTINUATION:
        key = lambda e: (-continuation(e.dst), e.dst)
    elif p is TieBreakPolicy.PREFER_EARLIER_SUCCESSOR_ID:
        key = lambda e: e.dst
    elif p is TieBreakPolicy.PREFER_LATER_SUCCESSOR_ID:
        return max(tied_edges, key=lambda e: e.dst)
    else:  # MAX_IMMEDIATE_EDGE_WEIGHT
        key = lambda e: (-weight(e), e.dst)
    return min(tied_edges, key=key)
