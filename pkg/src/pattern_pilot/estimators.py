"""Scikit-learn style wrappers so the miner and recommender compose with
pipelines and parameter search (get_params/set_params come from
BaseEstimator).
"""

from __future__ import annotations

from sklearn.base import BaseEstimator

from .errors import DomainError
from .event_log import EventLog, Trace
from .mining import PatternRepository, mine_patterns, mine_repository
from .preferences import DEFAULT_DIMENSIONS, Preferences, SuccessPredicate
from .recommend import RecommendationRequest, recommend


def check_traces(X) -> list[Trace]:
    """Accept an EventLog or a list of Trace; reject anything else."""
    if isinstance(X, EventLog):
        return X.traces()
    if isinstance(X, list) and all(isinstance(t, Trace) for t in X):
        return X
    raise DomainError("expected an EventLog or a list of Trace objects")


class _PreferencesMixin:
    def _preferences(self) -> Preferences:
        return Preferences(
            min_support=self.min_support,
            min_length=self.min_length,
            success_predicate=self.success_predicate or SuccessPredicate(),
            context_dimensions=tuple(self.dimensions),
            user_crowd_lambda=self.user_crowd_lambda,
            top_k=self.top_k,
        )


class ActivityPatternMiner(BaseEstimator, _PreferencesMixin):
    """Mines closed frequent contiguous activity patterns from traces.

    After fit, ``patterns_`` holds the mined patterns (ranked by support,
    then length) and ``repository_`` the full versioned repository.
    """

    def __init__(self, min_support=3, min_length=2, success_predicate=None,
                 dimensions=DEFAULT_DIMENSIONS, user_crowd_lambda=0.0, top_k=5):
        self.min_support = min_support
        self.min_length = min_length
        self.success_predicate = success_predicate
        self.dimensions = dimensions
        self.user_crowd_lambda = user_crowd_lambda
        self.top_k = top_k

    def fit(self, X, y=None):
        prefs = self._preferences()
        if isinstance(X, EventLog):
            self.repository_ = mine_repository(X, prefs)
            self.patterns_ = self.repository_.patterns
        else:
            self.patterns_ = mine_patterns(check_traces(X), prefs)
            self.repository_ = PatternRepository(patterns=self.patterns_,
                                                 preferences=prefs)
        return self

    def transform(self, X):
        """Per-trace pattern incidence: which mined patterns occur
        contiguously in each trace."""
        self._check_fitted()
        rows = []
        for trace in check_traces(X):
            names = tuple(trace.activities)
            rows.append([
                p.id for p in self.patterns_
                if p.external_context_id == trace.external_context_id
                and any(names[i:i + len(p)] == p.activities
                        for i in range(len(names) - len(p) + 1))
            ])
        return rows

    def _check_fitted(self):
        if not hasattr(self, "patterns_"):
            raise DomainError("estimator is not fitted; call fit first")


class PatternRecommender(BaseEstimator, _PreferencesMixin):
    """fit on a log, predict ranked continuations for ongoing traces."""

    def __init__(self, min_support=3, min_length=2, success_predicate=None,
                 dimensions=DEFAULT_DIMENSIONS, user_crowd_lambda=0.0, top_k=5):
        self.min_support = min_support
        self.min_length = min_length
        self.success_predicate = success_predicate
        self.dimensions = dimensions
        self.user_crowd_lambda = user_crowd_lambda
        self.top_k = top_k

    def fit(self, X, y=None):
        prefs = self._preferences()
        if isinstance(X, EventLog):
            self.repository_ = mine_repository(X, prefs)
        else:
            self.repository_ = PatternRepository(
                patterns=mine_patterns(check_traces(X), prefs), preferences=prefs)
        return self

    def predict(self, requests):
        if not hasattr(self, "repository_"):
            raise DomainError("estimator is not fitted; call fit first")
        if isinstance(requests, RecommendationRequest):
            requests = [requests]
        return [recommend(r, self.repository_) for r in requests]
