"""Canonical JSON wire forms shared by the HTTP service and the CLI.

Everything user-visible over the wire goes through canonical_json so that the
CLI's --json output is byte-identical to the service response body.
"""

from __future__ import annotations

import json

from .plans import RankedPlans
from .route_recommender import RouteRecommendation


def canonical_json(payload) -> str:
    """Deterministic encoding: sorted keys, compact separators, one newline."""
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def ranked_plans_payload(result: RankedPlans) -> dict:
    return {
        "entries": [{"plan_id": plan_id, "score": score} for plan_id, score in result.entries],
        "fallback_used": result.fallback_used,
        "budget_applied": result.budget_applied,
    }


def route_recommendation_payload(recommendation: RouteRecommendation) -> dict:
    return {
        "entries": [
            {
                "route_id": entry.route_id,
                "score": entry.score,
                "badges": list(entry.badges),
                "is_default": entry.is_default,
            }
            for entry in recommendation.entries
        ],
        "status": recommendation.status,
        "truncated_to": recommendation.truncated_to,
    }


def violations_payload(message: str, violations) -> dict:
    return {
        "error": message,
        "violations": [{"path": v.path, "reason": v.reason} for v in violations],
    }
