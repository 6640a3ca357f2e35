"""Recommendation formulation: match, filter by success, rank, justify.

The response is a ranked list of triples: the pattern continuation after
the anchored position, a confidence indicator in [0, 1], and a
human-readable justification.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .event_log import EventLog, ExternalContext, TraceStep
from .matching import MatchBreakdown, anchor_match, confidence
from .mining import ActivityPattern, ActivityTemplate, PatternRepository
from .preferences import Preferences


@dataclass
class RecommendationRequest:
    steps: list[TraceStep]
    external_context: ExternalContext
    requesting_participant: str | None = None
    prefs_override: Preferences | None = None


@dataclass
class RecommendationItem:
    pattern_id: str
    continuation: tuple[ActivityTemplate, ...]
    confidence: float
    justification: str
    breakdown: MatchBreakdown
    support: int
    successful_support: int

    def to_dict(self) -> dict:
        return {
            "pattern_id": self.pattern_id,
            "continuation": [t.to_dict() for t in self.continuation],
            "confidence": self.confidence,
            "justification": self.justification,
            "breakdown": self.breakdown.to_dict(),
        }


def justify(breakdown: MatchBreakdown, pattern: ActivityPattern,
            anchor: tuple[int, int] | None) -> str:
    if anchor is None or anchor[0] == 0:
        anchored = "anchored at process start"
    else:
        k, i = anchor
        anchored = f"anchored at '{pattern.templates[i + k - 1].activity}'"
    matched = ", ".join(breakdown.matched_dimensions()) or "none"
    differing = ", ".join(breakdown.differing_dimensions()) or "none"
    return (f"Observed in {pattern.successful_support} successful instance(s) "
            f"in context {pattern.external_context_id}; {anchored}; "
            f"matched dimensions: {matched}; differing: {differing}.")


def recommend(request: RecommendationRequest, repo: PatternRepository,
              prefs: Preferences | None = None) -> list[RecommendationItem]:
    """Rank pattern continuations for an ongoing trace.

    Only patterns frequent among successful instances are candidates; an
    empty trace is served start-anchored patterns (the full pattern as
    continuation). Candidates without any context match (confidence 0)
    are dropped.
    """
    prefs = request.prefs_override or prefs or repo.preferences
    items = []
    for pattern in repo.patterns:
        if pattern.successful_support < prefs.min_support:
            continue
        if request.steps:
            anchor = anchor_match(request.steps, pattern)
            if anchor is None:
                continue
            k, i = anchor
            continuation = pattern.templates[i + k:]
        else:
            anchor = None
            continuation = pattern.templates
        breakdown = confidence(
            request.steps, request.external_context, pattern, anchor, prefs,
            pattern_context=repo.context_of(pattern.external_context_id),
            participant=request.requesting_participant)
        if breakdown.confidence <= 0.0:
            continue
        items.append((pattern, RecommendationItem(
            pattern_id=pattern.id,
            continuation=continuation,
            confidence=breakdown.confidence,
            justification=justify(breakdown, pattern, anchor),
            breakdown=breakdown,
            support=pattern.support,
            successful_support=pattern.successful_support,
        )))
    items.sort(key=lambda pi: (-pi[1].confidence, -pi[0].support, pi[0].id))
    return [item for _, item in items[:prefs.top_k]]


def replay(log: EventLog, case_id: str, repo: PatternRepository,
           prefs: Preferences | None = None) -> list[tuple[int, list[RecommendationItem]]]:
    """Per-prefix recommendations for one case; drives the CLI demo and
    the UI parity check."""
    trace = log.trace(case_id)
    ctx = repo.context_of(trace.external_context_id)
    if not ctx.attributes:
        ctx = log.get_context(trace.external_context_id)
    out = []
    for k in range(1, len(trace.steps) + 1):
        request = RecommendationRequest(steps=trace.steps[:k], external_context=ctx)
        out.append((k, recommend(request, repo, prefs)))
    return out


def response_dict(items: list[RecommendationItem]) -> dict:
    return {"items": [item.to_dict() for item in items]}


def canonical_json(obj) -> str:
    """The one serialization used by both the CLI and the HTTP service so
    their recommendation bodies are byte-identical."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
