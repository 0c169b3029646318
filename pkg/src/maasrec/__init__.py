"""MaaS recommenders: constraint-filtered plan ranking and context-aware,
Borda-fused multimodal route ranking, with an HTTP service and CLI on top."""

from .catalog import (
    Catalog,
    MaasPlan,
    ModeQuota,
    PLAN_MODES,
    parse_catalog,
    remove_plan,
    serialize_catalog,
    upsert_plan,
)
from .context import ContextConfig, ContextState, infer_context
from .errors import AdapterError, EmptyCatalogError, RuleSyntaxError, SchemaError, Violation
from .plans import (
    ModeRates,
    RankedPlans,
    VectorizationConfig,
    csp_filter,
    normalize,
    plan_vector,
    recommend_plans,
    user_vector,
    weighted_similarity,
    weights_from_likert,
)
from .profiles import FrequencyAnswer, UserProfile, parse_profile, serialize_profile
from .route_recommender import (
    EmissionConfig,
    PersonalWeights,
    RankMatrix,
    RankedList,
    RouteRecommendation,
    RouteRecommenderConfig,
    borda_fuse,
    filter_routes,
    recommend_routes,
)
from .routes import Leg, Route, ingest_routes, serialize_routes
from .rules import ConstraintRule, condition_holds, consequence_satisfied, load_rules, parse_rule, print_rule
from .usage import Subscription, TripRecord, UsageLog, consumed_quota, record_trip

__version__ = "0.1.0"

__all__ = [
    "AdapterError",
    "Catalog",
    "ConstraintRule",
    "ContextConfig",
    "ContextState",
    "EmissionConfig",
    "EmptyCatalogError",
    "FrequencyAnswer",
    "Leg",
    "MaasPlan",
    "ModeQuota",
    "ModeRates",
    "PLAN_MODES",
    "PersonalWeights",
    "RankMatrix",
    "RankedList",
    "RankedPlans",
    "Route",
    "RouteRecommendation",
    "RouteRecommenderConfig",
    "RuleSyntaxError",
    "SchemaError",
    "Subscription",
    "TripRecord",
    "UsageLog",
    "UserProfile",
    "VectorizationConfig",
    "Violation",
    "borda_fuse",
    "condition_holds",
    "consequence_satisfied",
    "consumed_quota",
    "csp_filter",
    "filter_routes",
    "infer_context",
    "ingest_routes",
    "load_rules",
    "normalize",
    "parse_catalog",
    "parse_profile",
    "parse_rule",
    "plan_vector",
    "print_rule",
    "recommend_plans",
    "recommend_routes",
    "record_trip",
    "remove_plan",
    "serialize_catalog",
    "serialize_profile",
    "serialize_routes",
    "upsert_plan",
    "user_vector",
    "weighted_similarity",
    "weights_from_likert",
]
