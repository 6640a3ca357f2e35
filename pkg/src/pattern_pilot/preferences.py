"""User preferences: mining thresholds, context scope, success definition.

Serialized form (also accepted inline in API requests):

    {"min_support": 3, "min_length": 2,
     "success": {"terminal": ["contract signing"]},
     "dimensions": ["participants", "tool", "data", "mode"],
     "lambda": 0.0, "top_k": 5}
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import SchemaError

DEFAULT_DIMENSIONS = ("participants", "tool", "data", "mode")


@dataclass(frozen=True)
class SuccessPredicate:
    """Clauses classifying a completed trace as successful.

    An empty predicate means: every completed trace counts as successful.
    The implicit "status = completed" clause always applies.
    """

    terminal_activities: frozenset[str] | None = None
    must_contain: frozenset[str] | None = None
    max_length: int | None = None
    max_duration_seconds: float | None = None

    @classmethod
    def from_dict(cls, obj) -> "SuccessPredicate":
        if obj is None:
            return cls()
        if not isinstance(obj, dict):
            raise SchemaError("success predicate must be an object", field="success")
        terminal = obj.get("terminal")
        contain = obj.get("must_contain")
        return cls(
            terminal_activities=frozenset(terminal) if terminal is not None else None,
            must_contain=frozenset(contain) if contain is not None else None,
            max_length=obj.get("max_length"),
            max_duration_seconds=obj.get("max_duration"),
        )

    def to_dict(self) -> dict:
        out = {}
        if self.terminal_activities is not None:
            out["terminal"] = sorted(self.terminal_activities)
        if self.must_contain is not None:
            out["must_contain"] = sorted(self.must_contain)
        if self.max_length is not None:
            out["max_length"] = self.max_length
        if self.max_duration_seconds is not None:
            out["max_duration"] = self.max_duration_seconds
        return out


@dataclass(frozen=True)
class Preferences:
    min_support: int = 3
    min_length: int = 2
    success_predicate: SuccessPredicate = field(default_factory=SuccessPredicate)
    context_dimensions: tuple[str, ...] = DEFAULT_DIMENSIONS
    external_weight: float = 0.5  # reserved, unused by the default formula
    user_crowd_lambda: float = 0.0
    top_k: int = 5

    def __post_init__(self):
        if self.min_support < 1:
            raise SchemaError("min_support must be >= 1", field="min_support")
        if self.min_length < 1:
            raise SchemaError("min_length must be >= 1", field="min_length")
        if not 0.0 <= self.user_crowd_lambda <= 1.0:
            raise SchemaError("lambda must be in [0, 1]", field="lambda")
        if not 0.0 <= self.external_weight <= 1.0:
            raise SchemaError("external_weight must be in [0, 1]", field="external_weight")
        if self.top_k < 1:
            raise SchemaError("top_k must be >= 1", field="top_k")

    @classmethod
    def from_dict(cls, obj) -> "Preferences":
        if obj is None:
            return cls()
        if not isinstance(obj, dict):
            raise SchemaError("preferences must be an object")
        kwargs = {}
        if "min_support" in obj:
            kwargs["min_support"] = int(obj["min_support"])
        if "min_length" in obj:
            kwargs["min_length"] = int(obj["min_length"])
        if "success" in obj:
            kwargs["success_predicate"] = SuccessPredicate.from_dict(obj["success"])
        if "dimensions" in obj:
            kwargs["context_dimensions"] = tuple(obj["dimensions"])
        if "lambda" in obj:
            kwargs["user_crowd_lambda"] = float(obj["lambda"])
        if "external_weight" in obj:
            kwargs["external_weight"] = float(obj["external_weight"])
        if "top_k" in obj:
            kwargs["top_k"] = int(obj["top_k"])
        return cls(**kwargs)

    def to_dict(self) -> dict:
        return {
            "min_support": self.min_support,
            "min_length": self.min_length,
            "success": self.success_predicate.to_dict(),
            "dimensions": list(self.context_dimensions),
            "lambda": self.user_crowd_lambda,
            "external_weight": self.external_weight,
            "top_k": self.top_k,
        }
