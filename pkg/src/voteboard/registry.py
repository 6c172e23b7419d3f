"""All named rules in one table, plus the aggregate() entry point."""

from __future__ import annotations

from typing import Any

from . import iterative, majority, metrics, scoring
from .model import Leaderboard, RuleOutcome
from .modes import BASIC, MODES, Rule, run_rule

RULES: dict[str, Rule] = {
    **scoring.RULES,
    **iterative.RULES,
    **majority.RULES,
    **metrics.RULES,
}


def rule_ids() -> tuple[str, ...]:
    return tuple(sorted(RULES))


def get_rule(rule_id: str) -> Rule:
    try:
        return RULES[rule_id]
    except KeyError:
        raise ValueError(f"unknown rule: {rule_id!r}") from None


def aggregate(
    lb: Leaderboard, rule: str, mode: str = BASIC, **params: Any
) -> RuleOutcome:
    """Apply a registered rule to a leaderboard under the chosen mode."""
    if mode not in MODES:
        raise ValueError(f"unknown mode: {mode!r}")
    return run_rule(lb, get_rule(rule), mode, **params)
