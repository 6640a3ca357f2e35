"""Context similarity scoring and the recommendation confidence indicator.

The confidence of a pattern against an ongoing trace is the product of an
external-context score and an internal-context score, so a mismatch on
either side caps the result. An optional user-vs-crowd balance factor
(lambda) rescales confidence by the requesting participant's share of the
pattern's source traces.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .event_log import ExternalContext, InternalContext, TraceStep
from .mining import ActivityPattern, ActivityTemplate
from .preferences import Preferences


def external_similarity(a: ExternalContext, b: ExternalContext) -> float:
    """1.0 for equal ids, else Jaccard similarity of (key, value) pairs."""
    if a.id == b.id:
        return 1.0
    pa, pb = a.attribute_pairs(), b.attribute_pairs()
    union = pa | pb
    if not union:
        return 0.0
    return len(pa & pb) / len(union)


def _dim_status(query: InternalContext, template: ActivityTemplate, dim: str):
    """(skipped, matched) for one dimension of one anchored position."""
    qvals = query.values(dim)
    modal = template.modal_values(dim)
    if not qvals and not modal:
        return True, False
    return False, bool(qvals & modal)


def internal_similarity(query: InternalContext, template: ActivityTemplate,
                        dims) -> float:
    """Mean per-dimension modal match; dimensions absent on both sides are
    skipped; vacuous (all skipped) compares as 1.0."""
    scores = []
    for dim in dims:
        skipped, matched = _dim_status(query, template, dim)
        if skipped:
            continue
        scores.append(1.0 if matched else 0.0)
    if not scores:
        return 1.0
    return sum(scores) / len(scores)


def anchor_match(trace_steps: list[TraceStep],
                 pattern: ActivityPattern) -> tuple[int, int] | None:
    """Longest k >= 1 with the trace's last k activities equal to
    templates[i:i+k] and a non-empty continuation left; smallest i among
    equal k. None when no such k exists."""
    names = [s.activity for s in trace_steps]
    pat = pattern.activities
    max_k = min(len(names), len(pat) - 1)
    for k in range(max_k, 0, -1):
        suffix = tuple(names[-k:])
        for i in range(len(pat) - k):
            if pat[i:i + k] == suffix:
                return k, i
    return None


@dataclass
class MatchBreakdown:
    structure_anchor_len: int
    internal_score: float
    external_score: float
    confidence: float
    per_dimension: dict[str, dict[str, int]] = field(default_factory=dict)

    def matched_dimensions(self) -> list[str]:
        return sorted(d for d, c in self.per_dimension.items()
                      if c["matched"] == c["total"])

    def differing_dimensions(self) -> list[str]:
        return sorted(d for d, c in self.per_dimension.items()
                      if c["matched"] < c["total"])

    def to_dict(self) -> dict:
        return {
            "structure_anchor_len": self.structure_anchor_len,
            "internal_score": self.internal_score,
            "external_score": self.external_score,
            "confidence": self.confidence,
            "per_dimension": {d: dict(c) for d, c in sorted(self.per_dimension.items())},
        }


def confidence(trace_steps: list[TraceStep], query_ctx: ExternalContext,
               pattern: ActivityPattern, anchor: tuple[int, int] | None,
               prefs: Preferences, *,
               pattern_context: ExternalContext | None = None,
               participant: str | None = None) -> MatchBreakdown:
    """Score one anchored pattern against the ongoing trace.

    anchor=None (or k=0) means a start-anchored candidate for an empty
    trace: the internal score is vacuous 1.0.
    """
    k, i = anchor if anchor is not None else (0, 0)
    dims = prefs.context_dimensions
    per_dim: dict[str, dict[str, int]] = {}
    position_scores = []
    for j in range(k):
        step = trace_steps[len(trace_steps) - k + j]
        template = pattern.templates[i + j]
        scores = []
        for dim in dims:
            skipped, matched = _dim_status(step.context, template, dim)
            if skipped:
                continue
            tally = per_dim.setdefault(dim, {"matched": 0, "total": 0})
            tally["total"] += 1
            if matched:
                tally["matched"] += 1
            scores.append(1.0 if matched else 0.0)
        position_scores.append(sum(scores) / len(scores) if scores else 1.0)
    internal = sum(position_scores) / len(position_scores) if position_scores else 1.0

    if pattern_context is None:
        pattern_context = ExternalContext.of(pattern.external_context_id)
    external = external_similarity(query_ctx, pattern_context)

    value = external * internal
    lam = prefs.user_crowd_lambda
    if lam > 0.0:
        user_support = 0
        if participant is not None:
            user_support = sum(
                1 for cid in pattern.source_case_ids
                if participant in pattern.participants_of(cid))
        value *= (1.0 - lam) + lam * (user_support / pattern.support)

    return MatchBreakdown(
        structure_anchor_len=k,
        internal_score=internal,
        external_score=external,
        confidence=value,
        per_dimension=per_dim,
    )
