"""Directly-follows process models discovered from traces.

Per-instance models are linear chains; the merged model sums node, edge,
start and end counts over all instances of a context.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .errors import DomainError
from .event_log import Trace


@dataclass
class ProcessModel:
    nodes: set[str] = field(default_factory=set)
    edges: Counter = field(default_factory=Counter)  # (from, to) -> count
    start_counts: Counter = field(default_factory=Counter)
    end_counts: Counter = field(default_factory=Counter)
    source_case_ids: set[str] = field(default_factory=set)

    def __eq__(self, other):
        if not isinstance(other, ProcessModel):
            return NotImplemented
        return (self.nodes == other.nodes
                and +self.edges == +other.edges
                and +self.start_counts == +other.start_counts
                and +self.end_counts == +other.end_counts
                and self.source_case_ids == other.source_case_ids)

    def to_dict(self) -> dict:
        return {
            "nodes": sorted(self.nodes),
            "edges": [{"from": a, "to": b, "count": c}
                      for (a, b), c in sorted(self.edges.items())],
            "starts": {a: c for a, c in sorted(self.start_counts.items())},
            "ends": {a: c for a, c in sorted(self.end_counts.items())},
        }


def instance_model(trace: Trace) -> ProcessModel:
    """Linear chain model of a single trace; repeated pairs add up."""
    if not trace.steps:
        raise DomainError(f"trace {trace.case_id!r} is empty", case_id=trace.case_id)
    names = trace.activities
    m = ProcessModel()
    m.nodes.update(names)
    m.start_counts[names[0]] += 1
    m.end_counts[names[-1]] += 1
    for a, b in zip(names, names[1:]):
        m.edges[(a, b)] += 1
    m.source_case_ids.add(trace.case_id)
    return m


def merge_models(models: list[ProcessModel]) -> ProcessModel:
    """Union of nodes, sums of all count maps; order-independent."""
    out = ProcessModel()
    for m in models:
        out.nodes |= m.nodes
        out.edges.update(m.edges)
        out.start_counts.update(m.start_counts)
        out.end_counts.update(m.end_counts)
        out.source_case_ids |= m.source_case_ids
    return out


def discover_model(traces: list[Trace]) -> ProcessModel:
    return merge_models([instance_model(t) for t in traces if t.steps])
