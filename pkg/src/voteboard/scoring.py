"""Positional scoring rules.

A scoring vector c assigns c[p] points for finishing in place p. A system's
total is the weighted sum over tasks; a tie group of size g spanning places
p..p+g-1 earns each member the mean of those entries, which is the same as
splitting the group's position mass evenly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import MissingScore, VectorLengthMismatch
from .model import Leaderboard, RankProfile, RuleOutcome, as_fraction, group_by_score
from .modes import BASIC, Rule, RuleParts, run_rule


@dataclass(frozen=True)
class ScoringVector:
    """Non-increasing score-per-place vector."""

    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.entries:
            raise ValueError("a scoring vector cannot be empty")
        for a, b in zip(self.entries, self.entries[1:]):
            if b > a:
                raise ValueError("scoring vector entries must be non-increasing")

    def __len__(self) -> int:
        return len(self.entries)

    @classmethod
    def plurality(cls, n: int) -> "ScoringVector":
        return cls._top_k(n, 1)

    @classmethod
    def two_approval(cls, n: int) -> "ScoringVector":
        return cls._top_k(n, 2)

    @classmethod
    def antiplurality(cls, n: int) -> "ScoringVector":
        # everything but last place scores a point
        return cls._top_k(n, n - 1) if n > 1 else cls((Fraction(0),))

    @classmethod
    def top_k(cls, n: int, k: int) -> "ScoringVector":
        if not 1 <= k <= n:
            raise ValueError("k must be between 1 and n")
        return cls._top_k(n, k)

    @classmethod
    def _top_k(cls, n: int, k: int) -> "ScoringVector":
        if n < 1:
            raise ValueError("need at least one place")
        k = min(k, n)
        return cls(tuple(Fraction(1 if p < k else 0) for p in range(n)))

    @classmethod
    def borda(cls, n: int) -> "ScoringVector":
        if n < 1:
            raise ValueError("need at least one place")
        return cls(tuple(Fraction(n - 1 - p) for p in range(n)))

    @classmethod
    def dowdall(cls, n: int) -> "ScoringVector":
        if n < 1:
            raise ValueError("need at least one place")
        return cls(tuple(Fraction(1, p + 1) for p in range(n)))

    @classmethod
    def custom(cls, values: Sequence[int | float | Fraction | str]) -> "ScoringVector":
        entries = tuple(as_fraction(v) for v in values)
        vec = cls(entries)
        if len(set(entries)) == 1:
            raise ValueError("a custom scoring vector must not be constant")
        return vec


def score_with_vector(
    profile: RankProfile,
    vector: ScoringVector,
    weights: Mapping[str, int | float | Fraction | str] | None = None,
) -> dict[str, Fraction]:
    """Exact per-system totals for one vector over a complete profile."""
    n = len(profile.systems)
    if len(vector) != n:
        raise VectorLengthMismatch(
            f"vector has {len(vector)} entries for {n} systems"
        )
    entries = vector.entries
    totals = {m: Fraction(0) for m in profile.systems}
    for task in profile.tasks:
        if len(profile.positions[task]) != n:
            raise MissingScore(f"task {task!r} does not rank every system")
        w = as_fraction(1 if weights is None else weights.get(task, 1))
        place = 0
        for group in profile.tie_groups(task):
            g = len(group)
            share = sum(entries[place:place + g], Fraction(0)) / g * w
            for member in group:
                totals[member] += share
            place += g
    return totals


def _parts_for_vector(
    profile: RankProfile,
    weights: Mapping[str, Fraction],
    vector: ScoringVector,
) -> RuleParts:
    scores = score_with_vector(profile, vector, weights)
    return RuleParts(
        ranking=group_by_score(scores),
        scores=scores,
        diagnostics={"vector": vector.entries},
    )


def _named(rule_id: str, factory) -> Rule:
    def run(profile: RankProfile, weights: Mapping[str, Fraction]) -> RuleParts:
        return _parts_for_vector(profile, weights, factory(len(profile.systems)))

    return Rule(rule_id, profile_run=run)


def _custom_run(
    profile: RankProfile,
    weights: Mapping[str, Fraction],
    *,
    vector: ScoringVector | Sequence[int | float | Fraction | str],
) -> RuleParts:
    if not isinstance(vector, ScoringVector):
        vector = ScoringVector.custom(vector)
    return _parts_for_vector(profile, weights, vector)


RULES: dict[str, Rule] = {
    rule.rule_id: rule
    for rule in (
        _named("plurality", ScoringVector.plurality),
        _named("two_approval", ScoringVector.two_approval),
        _named("antiplurality", ScoringVector.antiplurality),
        _named("borda", ScoringVector.borda),
        _named("dowdall", ScoringVector.dowdall),
        Rule("custom", profile_run=_custom_run),
    )
}


def apply_scoring_rule(
    lb: Leaderboard,
    rule: str,
    mode: str = BASIC,
    *,
    vector: ScoringVector | Sequence[int | float | Fraction | str] | None = None,
) -> RuleOutcome:
    """Run a named scoring rule (or 'custom' with an explicit vector)."""
    if rule not in RULES:
        raise ValueError(f"unknown scoring rule: {rule!r}")
    if rule == "custom":
        if vector is None:
            raise ValueError("custom scoring needs a vector")
        return run_rule(lb, RULES[rule], mode, vector=vector)
    if vector is not None:
        raise ValueError("only the custom rule accepts a vector")
    return run_rule(lb, RULES[rule], mode)
