"""Registry of checkable claims, the runner and the command line."""

from .registry import (
    BadParameter,
    Claim,
    Outcome,
    Report,
    RunConfig,
    UnknownClaim,
    Verdict,
    get_claim,
    list_claims,
    run_all,
    run_claim,
    run_claims,
)

__all__ = [
    "BadParameter",
    "Claim",
    "Outcome",
    "Report",
    "RunConfig",
    "UnknownClaim",
    "Verdict",
    "get_claim",
    "list_claims",
    "run_all",
    "run_claim",
    "run_claims",
]
