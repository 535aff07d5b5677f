"""Element-connectivity preserving reductions on non-terminal edges.

For an edge between two non-terminals, at least one of deleting it or
contracting it keeps every pairwise terminal connectivity unchanged. We
prefer deletion whenever it preserves the table; when it does not, the
contraction is guaranteed to, and we verify that instead of trusting it.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Literal, Mapping, Optional

from .errors import InternalInvariantError, TerminalEndpointError
from .flow import ConnTable, conn_table_elements
from .multigraph import ElementConnInstance

Action = Literal["deleted", "contracted"]


@dataclass(frozen=True)
class ReductionStep:
    """One applied reduction: which edge, what happened, who absorbed whom."""

    edge: tuple[int, int]
    edge_id: int
    action: Action
    merged_into: Optional[int] = None


@dataclass(frozen=True)
class MinorTrace:
    """Ordered reduction steps plus the surviving-vertex -> original-vertices map.

    Every surviving non-terminal maps to the connected set of original
    non-terminals contracted into it; untouched vertices map to themselves.
    """

    steps: tuple[ReductionStep, ...]
    vertex_map: Mapping[int, frozenset[int]]

    def __post_init__(self):
        object.__setattr__(
            self,
            "vertex_map",
            MappingProxyType({v: frozenset(s) for v, s in self.vertex_map.items()}),
        )


def is_deletion_preserving(inst: ElementConnInstance, edge_id: int, baseline: ConnTable) -> bool:
    """True iff deleting the edge leaves the whole terminal pair table intact."""
    trimmed = inst.with_graph(inst.graph.without_edge(edge_id))
    return conn_table_elements(trimmed) == baseline


def reduce_edge(
    inst: ElementConnInstance, edge_id: int, baseline: ConnTable
) -> tuple[ElementConnInstance, ReductionStep]:
    """Delete the edge if that preserves ``baseline``; otherwise contract it.

    Both endpoints must be non-terminals. When deletion does not preserve,
    contraction must (that is the reduction theorem); a contracted table that
    differs from the baseline is reported as an internal error because it can
    only mean a bug on our side.
    """
    u, v = inst.graph.endpoints(edge_id)
    for w in (u, v):
        if w in inst.terminals:
            raise TerminalEndpointError(f"endpoint {w} of edge {edge_id} is a terminal")
    if is_deletion_preserving(inst, edge_id, baseline):
        out = inst.with_graph(inst.graph.without_edge(edge_id))
        return out, ReductionStep(edge=(u, v), edge_id=edge_id, action="deleted")
    graph, kept, _ = inst.graph.contracted(edge_id)
    out = inst.with_graph(graph)
    if conn_table_elements(out) != baseline:
        raise InternalInvariantError(
            f"neither deleting nor contracting edge {edge_id} preserved the table"
        )
    return out, ReductionStep(edge=(u, v), edge_id=edge_id, action="contracted", merged_into=kept)


def _ordered(inst: ElementConnInstance, edge_ids: Iterable[int]) -> list[int]:
    # (min endpoint, max endpoint, id among parallels): fixed processing order.
    return sorted(edge_ids, key=lambda e: (*inst.graph.endpoints(e), e))


def reduce_to_stable(
    inst: ElementConnInstance, *, within: Optional[Iterable[int]] = None
) -> tuple[ElementConnInstance, MinorTrace]:
    """Reduce non-terminal edges until none remain; the table never changes.

    With ``within``, only edges whose endpoints both descend from that vertex
    set are reduced (contraction keeps candidates inside the set because the
    surviving endpoint is one of the two). Without it, the result has its
    non-terminals as a stable set.
    """
    baseline = conn_table_elements(inst)
    tracked = None if within is None else set(within)
    vertex_map = {v: frozenset({v}) for v in inst.graph.vertices}
    steps: list[ReductionStep] = []
    cur = inst
    while True:
        nonterminals = cur.nonterminals
        pool = nonterminals if tracked is None else (nonterminals & tracked)
        candidates = [
            e
            for e, (a, b) in cur.graph.edges.items()
            if a in pool and b in pool
        ]
        if not candidates:
            break
        edge_id = _ordered(cur, candidates)[0]
        a, b = cur.graph.endpoints(edge_id)
        cur, step = reduce_edge(cur, edge_id, baseline)
        steps.append(step)
        if step.action == "contracted":
            kept = step.merged_into
            dropped = b if kept == a else a
            vertex_map[kept] = vertex_map[kept] | vertex_map.pop(dropped)
            if tracked is not None:
                tracked.discard(dropped)
    return cur, MinorTrace(steps=tuple(steps), vertex_map=vertex_map)


def maximal_preserving_deletions(
    inst: ElementConnInstance, candidates: Iterable[int]
) -> tuple[ElementConnInstance, tuple[int, ...]]:
    """Greedily delete candidates whose removal preserves the entry table.

    One deterministic pass is maximal for non-terminal edges: an edge whose
    deletion breaks the table now cannot become deletable after further
    preserving reductions, so revisiting rejected candidates gains nothing.
    """
    ids = list(candidates)
    for e in ids:
        inst.graph.endpoints(e)  # raises MissingEdgeError on unknown ids
    baseline = conn_table_elements(inst)
    deleted: list[int] = []
    cur = inst
    for edge_id in _ordered(inst, ids):
        if is_deletion_preserving(cur, edge_id, baseline):
            cur = cur.with_graph(cur.graph.without_edge(edge_id))
            deleted.append(edge_id)
    return cur, tuple(deleted)
