"""Activity-pattern mining and context-aware continuation recommendations
for collaborative process event logs."""

from .errors import (
    BusyError,
    DomainError,
    IntegrityError,
    NotFoundError,
    OrderingError,
    ParseError,
    PatternPilotError,
    SchemaError,
    VersionError,
)
from .event_log import (
    Event,
    EventLog,
    ExternalContext,
    InternalContext,
    Trace,
    TraceStep,
    evaluate_outcome,
    load_context_catalog,
    parse_log,
    step_from_dict,
)
from .discovery import ProcessModel, discover_model, instance_model, merge_models
from .preferences import Preferences, SuccessPredicate
from .mining import (
    ActivityPattern,
    ActivityTemplate,
    PatternRepository,
    brute_force_patterns,
    load_repository,
    mine_patterns,
    mine_repository,
    save_repository,
)
from .matching import (
    MatchBreakdown,
    anchor_match,
    confidence,
    external_similarity,
    internal_similarity,
)
from .recommend import (
    RecommendationItem,
    RecommendationRequest,
    canonical_json,
    justify,
    recommend,
    replay,
    response_dict,
)
from .estimators import ActivityPatternMiner, PatternRecommender, check_traces

__all__ = [name for name in dir() if not name.startswith("_")]
