"""Claim registry, verdicts and the execution engine."""

from __future__ import annotations

import fnmatch
import random
import time
import traceback
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Mapping, Sequence

from .. import __version__
from ..projlin import BudgetExceeded as MatrixBudgetExceeded
from ..weyl import DEFAULT_BUDGET
from ..weyl import BudgetExceeded as WeylBudgetExceeded

VERIFIED = "verified"
REFUTED = "refuted"
SKIPPED = "skipped"
EXCEEDED = "exceeded"
ERROR = "error"
STATUSES = (VERIFIED, REFUTED, SKIPPED, EXCEEDED, ERROR)


class UnknownClaim(KeyError):
    pass


class BadParameter(ValueError):
    pass


@dataclass
class Outcome:
    """What a claim runner returns; timing and parameters are added by the engine."""

    status: str
    witness: Any = None
    detail: dict = field(default_factory=dict)
    reason: str | None = None


def verified(**detail) -> Outcome:
    return Outcome(VERIFIED, detail=detail)


def refuted(witness: Any, **detail) -> Outcome:
    if witness is None:
        raise ValueError("a refutation needs a witness")
    return Outcome(REFUTED, witness=witness, detail=detail)


def check(ok: bool, witness: Any = None, **detail) -> Outcome:
    return verified(**detail) if ok else refuted(witness, **detail)


@dataclass
class RunContext:
    claim_id: str
    seed: int
    budget: int

    def rng(self) -> random.Random:
        return random.Random(f"{self.seed}:{self.claim_id}")


Runner = Callable[[dict, RunContext], Outcome]


@dataclass(frozen=True)
class Claim:
    id: str
    description: str
    anchor: str
    defaults: Mapping[str, Any]
    runner: Runner
    # "stated-zero" marks claims whose source asserts a vanishing that we test
    expectation: str | None = None

    def summary(self) -> dict:
        out = {"id": self.id, "description": self.description, "anchor": self.anchor}
        if self.defaults:
            out["params"] = {k: _param_json(v) for k, v in self.defaults.items()}
        if self.expectation:
            out["expectation"] = self.expectation
        return out


_REGISTRY: dict[str, Claim] = {}


def register(
    id: str, description: str, anchor: str, defaults: Mapping[str, Any] | None = None, expectation: str | None = None
) -> Callable[[Runner], Runner]:
    def deco(fn: Runner) -> Runner:
        if id in _REGISTRY:
            raise ValueError(f"duplicate claim id {id}")
        _REGISTRY[id] = Claim(id, description, anchor, dict(defaults or {}), fn, expectation)
        return fn

    return deco


def _ensure_loaded() -> None:
    from . import claims  # noqa: F401  (registers on import)


def get_claim(claim_id: str) -> Claim:
    _ensure_loaded()
    try:
        return _REGISTRY[claim_id]
    except KeyError:
        raise UnknownClaim(claim_id) from None


def list_claims(prefix: str = "") -> list[Claim]:
    _ensure_loaded()
    return [c for k, c in sorted(_REGISTRY.items()) if k.startswith(prefix)]


# ---------------------------------------------------------------------------
# Parameters


def _param_json(v: Any) -> Any:
    return list(v) if isinstance(v, tuple) else v


def coerce_param(name: str, value: Any, default: Any) -> Any:
    if not isinstance(value, str):
        return value
    try:
        if isinstance(default, bool):
            if value.lower() in ("1", "true", "yes"):
                return True
            if value.lower() in ("0", "false", "no"):
                return False
            raise ValueError(value)
        if isinstance(default, int):
            return int(value)
        if isinstance(default, tuple):
            items = [s.strip() for s in value.split(",") if s.strip()]
            if default and isinstance(default[0], int):
                return tuple(int(s) for s in items)
            return tuple(items)
    except ValueError:
        raise BadParameter(f"{name}={value!r} does not match the type of the default {default!r}") from None
    return value


def merge_params(claim: Claim, overrides: Mapping[str, Any], strict: bool = True) -> dict:
    params = dict(claim.defaults)
    for k, v in overrides.items():
        if k not in claim.defaults:
            if strict:
                raise BadParameter(f"claim {claim.id} has no parameter {k!r}")
            continue
        params[k] = coerce_param(k, v, claim.defaults[k])
    return params


def parse_param_args(items: Sequence[str]) -> dict[str, str]:
    out = {}
    for item in items:
        k, sep, v = item.partition("=")
        if not sep or not k.strip():
            raise BadParameter(f"expected key=value, got {item!r}")
        out[k.strip()] = v.strip()
    return out


# ---------------------------------------------------------------------------
# Verdicts and reports


@dataclass
class Verdict:
    claim_id: str
    anchor: str
    params: dict
    status: str
    millis: int
    witness: Any = None
    detail: dict = field(default_factory=dict)
    reason: str | None = None
    expected_refuted: bool = False

    @property
    def counts_as_failure(self) -> bool:
        return self.status == REFUTED and not self.expected_refuted

    def to_json(self) -> dict:
        out = {
            "id": self.claim_id,
            "anchor": self.anchor,
            "params": {k: _param_json(v) for k, v in sorted(self.params.items())},
            "verdict": self.status,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if self.reason:
            out["reason"] = self.reason
        if self.detail:
            out["detail"] = self.detail
        if self.expected_refuted:
            out["expected_refuted"] = True
        out["millis"] = self.millis
        return out


@dataclass
class RunConfig:
    seed: int = 0
    budget: int = DEFAULT_BUDGET
    jobs: int = 1
    exclude: tuple[str, ...] = ()
    expect_refuted: tuple[str, ...] = ()
    params: Mapping[str, Any] = field(default_factory=dict)
    normalize_timing: bool = False

    def fingerprint(self) -> dict:
        return {
            "budget": self.budget,
            "exclude": list(self.exclude),
            "expect_refuted": list(self.expect_refuted),
            "params": dict(sorted(self.params.items())),
        }


@dataclass
class Report:
    seed: int
    config: dict
    verdicts: list[Verdict]
    version: str = __version__

    def summary(self) -> dict:
        counts = {s: 0 for s in (VERIFIED, REFUTED, SKIPPED, EXCEEDED)}
        errors = 0
        for v in self.verdicts:
            if v.status == ERROR:
                errors += 1
            else:
                counts[v.status] += 1
        if errors:
            counts["errors"] = errors
        return counts

    def exit_code(self) -> int:
        if any(v.status == ERROR for v in self.verdicts):
            return 2
        if any(v.counts_as_failure for v in self.verdicts):
            return 1
        return 0

    def to_json(self) -> dict:
        return {
            "version": self.version,
            "seed": self.seed,
            "config": self.config,
            "claims": [v.to_json() for v in self.verdicts],
            "summary": self.summary(),
        }


def _matches(claim_id: str, patterns: Sequence[str]) -> bool:
    return any(fnmatch.fnmatchcase(claim_id, p) for p in patterns)


def run_claim(
    claim_id: str,
    overrides: Mapping[str, Any] | None = None,
    seed: int = 0,
    budget: int = DEFAULT_BUDGET,
    strict: bool = True,
    expect_refuted: Sequence[str] = (),
) -> Verdict:
    claim = get_claim(claim_id)
    params = merge_params(claim, overrides or {}, strict=strict)
    ctx = RunContext(claim_id, seed, budget)
    start = time.perf_counter()
    try:
        out = claim.runner(dict(params), ctx)
    except (WeylBudgetExceeded, MatrixBudgetExceeded) as exc:
        out = Outcome(EXCEEDED, reason=str(exc))
    except Exception as exc:  # reported as an internal error, exit code 2
        out = Outcome(ERROR, reason=f"{type(exc).__name__}: {exc}", detail={"traceback": traceback.format_exc()})
    millis = int(round((time.perf_counter() - start) * 1000))
    if out.status == REFUTED and out.witness is None:
        out = Outcome(ERROR, reason="refutation without a witness")
    return Verdict(
        claim_id,
        claim.anchor,
        params,
        out.status,
        millis,
        out.witness,
        out.detail,
        out.reason,
        expected_refuted=out.status == REFUTED and _matches(claim_id, expect_refuted),
    )


def _run_one(args: tuple) -> Verdict:
    claim_id, overrides, seed, budget, expect = args
    return run_claim(claim_id, overrides, seed, budget, strict=False, expect_refuted=expect)


def run_claims(claim_ids: Sequence[str], config: RunConfig) -> Report:
    """Run the given claims; excluded ones are Skipped.  Output is ordered by id."""
    ids = sorted(set(claim_ids))
    for cid in ids:
        get_claim(cid)
    todo = [cid for cid in ids if not _matches(cid, config.exclude)]
    args = [(cid, dict(config.params), config.seed, config.budget, tuple(config.expect_refuted)) for cid in todo]
    if config.jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(_run_one, args))
    else:
        results = [_run_one(a) for a in args]
    by_id = {v.claim_id: v for v in results}
    verdicts = []
    for cid in ids:
        if cid in by_id:
            v = by_id[cid]
        else:
            c = get_claim(cid)
            v = Verdict(cid, c.anchor, dict(c.defaults), SKIPPED, 0, reason="excluded by configuration")
        if config.normalize_timing:
            v.millis = 0
        verdicts.append(v)
    return Report(config.seed, config.fingerprint(), verdicts)


def run_all(config: RunConfig) -> Report:
    return run_claims([c.id for c in list_claims()], config)
