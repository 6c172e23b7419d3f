"""Iterative rules: threshold tie-breaking and elimination procedures.

Elimination rules drop every survivor at the losing score simultaneously,
re-rank the rest, and repeat. If a round would eliminate everyone, the
survivors stop as one tie group instead. The final ranking reads the
elimination order backwards, best group first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Mapping

from .majority import condorcet_winner, majority_graph_from_profile
from .model import (
    Leaderboard,
    RankProfile,
    RuleOutcome,
    group_by_score,
    position_counts,
)
from .modes import BASIC, Rule, RuleParts, run_rule
from .scoring import ScoringVector, score_with_vector


@dataclass(frozen=True)
class EliminationRound:
    survivors: tuple[str, ...]
    vector: tuple[Fraction, ...]
    scores: Mapping[str, Fraction]
    eliminated: frozenset[str]


@dataclass(frozen=True)
class EliminationTrace:
    """One entry per round that actually eliminated somebody."""

    rounds: tuple[EliminationRound, ...]


def _total_weight(profile: RankProfile, weights: Mapping[str, Fraction]) -> Fraction:
    return sum((weights.get(t, Fraction(1)) for t in profile.tasks), Fraction(0))


# -- threshold -------------------------------------------------------------


def _threshold_winner(
    profile: RankProfile, weights: Mapping[str, Fraction]
) -> tuple[frozenset[str], list[dict[str, Any]]]:
    """Tied set left after the top-k tie-break cascade on this profile."""
    systems = profile.systems
    n = len(systems)
    if n == 1:
        return frozenset(systems), []
    stages: list[dict[str, Any]] = []
    tied: frozenset[str] | None = None
    for zeros in range(1, n):
        vector = ScoringVector.top_k(n, n - zeros)
        scores = score_with_vector(profile, vector, weights)
        pool = systems if tied is None else tied
        best = max(scores[m] for m in pool)
        tied = frozenset(m for m in pool if scores[m] == best)
        stages.append({"zeros": zeros, "scores": scores, "tied": tuple(sorted(tied))})
        if len(tied) == 1:
            break
    assert tied is not None
    return tied, stages


def _threshold_run(profile: RankProfile, weights: Mapping[str, Fraction]) -> RuleParts:
    remaining = list(profile.systems)
    groups: list[frozenset[str]] = []
    repetitions: list[dict[str, Any]] = []
    while remaining:
        sub = profile.restrict(remaining)
        winners, stages = _threshold_winner(sub, weights)
        groups.append(winners)
        repetitions.append({"candidates": tuple(remaining), "stages": stages})
        remaining = [m for m in remaining if m not in winners]
    first = repetitions[0]["stages"]
    diagnostics = {
        "repetitions": repetitions,
        "first_round_scores": dict(first[0]["scores"]) if first else None,
    }
    return RuleParts(ranking=tuple(groups), diagnostics=diagnostics)


# -- elimination rules ------------------------------------------------------


def _finish(
    survivors: list[str],
    tiers: list[frozenset[str]],
    rounds: list[EliminationRound],
    extra: Mapping[str, Any] | None = None,
) -> RuleParts:
    ranking = (frozenset(survivors), *reversed(tiers))
    diagnostics: dict[str, Any] = {"trace": EliminationTrace(tuple(rounds))}
    if extra:
        diagnostics.update(extra)
    return RuleParts(ranking=ranking, diagnostics=diagnostics)


def _baldwin_run(profile: RankProfile, weights: Mapping[str, Fraction]) -> RuleParts:
    survivors = list(profile.systems)
    tiers: list[frozenset[str]] = []
    rounds: list[EliminationRound] = []
    while len(survivors) > 1:
        sub = profile.restrict(survivors)
        vector = ScoringVector.borda(len(survivors))
        scores = score_with_vector(sub, vector, weights)
        low = min(scores.values())
        gone = frozenset(m for m in survivors if scores[m] == low)
        if len(gone) == len(survivors):
            break
        rounds.append(EliminationRound(tuple(survivors), vector.entries, scores, gone))
        tiers.append(gone)
        survivors = [m for m in survivors if m not in gone]
    return _finish(survivors, tiers, rounds)


def _hare_run(profile: RankProfile, weights: Mapping[str, Fraction]) -> RuleParts:
    survivors = list(profile.systems)
    tiers: list[frozenset[str]] = []
    rounds: list[EliminationRound] = []
    while len(survivors) > 1:
        sub = profile.restrict(survivors)
        vector = ScoringVector.plurality(len(survivors))
        scores = score_with_vector(sub, vector, weights)
        low = min(scores.values())
        gone = frozenset(m for m in survivors if scores[m] == low)
        if len(gone) == len(survivors):
            break
        rounds.append(EliminationRound(tuple(survivors), vector.entries, scores, gone))
        tiers.append(gone)
        survivors = [m for m in survivors if m not in gone]
    return _finish(survivors, tiers, rounds)


def _coombs_run(profile: RankProfile, weights: Mapping[str, Fraction]) -> RuleParts:
    survivors = list(profile.systems)
    tiers: list[frozenset[str]] = []
    rounds: list[EliminationRound] = []
    total = _total_weight(profile, weights)
    while len(survivors) > 1:
        sub = profile.restrict(survivors)
        k = len(survivors)
        plur = score_with_vector(sub, ScoringVector.plurality(k), weights)
        best = max(plur.values())
        if 2 * best > total:
            # strict first-place majority short-circuits the eliminations;
            # at most one system can clear half the weight
            winner = next(m for m in survivors if plur[m] == best)
            rest = frozenset(m for m in survivors if m != winner)
            ranking = (frozenset({winner}), rest, *reversed(tiers))
            diagnostics = {
                "trace": EliminationTrace(tuple(rounds)),
                "majority_winner": winner,
                "majority_share": plur[winner] / total,
            }
            return RuleParts(ranking=ranking, diagnostics=diagnostics)
        last = {m: position_counts(sub, m, weights)[k - 1] for m in survivors}
        worst = max(last.values())
        gone = frozenset(m for m in survivors if last[m] == worst)
        if len(gone) == len(survivors):
            break
        vector = tuple(Fraction(1 if p == k - 1 else 0) for p in range(k))
        rounds.append(EliminationRound(tuple(survivors), vector, last, gone))
        tiers.append(gone)
        survivors = [m for m in survivors if m not in gone]
    return _finish(survivors, tiers, rounds)


def _nanson_run(profile: RankProfile, weights: Mapping[str, Fraction]) -> RuleParts:
    survivors = list(profile.systems)
    tiers: list[frozenset[str]] = []
    rounds: list[EliminationRound] = []
    while True:
        sub = profile.restrict(survivors)
        vector = ScoringVector.borda(len(survivors))
        scores = score_with_vector(sub, vector, weights)
        mean = sum(scores.values(), Fraction(0)) / len(survivors)
        gone = frozenset(m for m in survivors if scores[m] < mean)
        if not gone:
            break
        rounds.append(EliminationRound(tuple(survivors), vector.entries, scores, gone))
        tiers.append(gone)
        survivors = [m for m in survivors if m not in gone]
    return _finish(survivors, tiers, rounds)


def _black_run(profile: RankProfile, weights: Mapping[str, Fraction]) -> RuleParts:
    graph = majority_graph_from_profile(profile, weights)
    winner = condorcet_winner(graph)
    n = len(profile.systems)
    scores = score_with_vector(profile, ScoringVector.borda(n), weights)
    borda_groups = group_by_score(scores)
    if winner is None:
        return RuleParts(
            ranking=borda_groups,
            scores=scores,
            diagnostics={"path": "borda", "condorcet_winner": None},
        )
    trimmed = tuple(
        g for g in (group - {winner} for group in borda_groups) if g
    )
    return RuleParts(
        ranking=(frozenset({winner}), *trimmed),
        scores=scores,
        diagnostics={"path": "condorcet", "condorcet_winner": winner},
    )


RULES: dict[str, Rule] = {
    rule.rule_id: rule
    for rule in (
        Rule("threshold", profile_run=_threshold_run),
        Rule("baldwin", profile_run=_baldwin_run),
        Rule("hare", profile_run=_hare_run),
        Rule("coombs", profile_run=_coombs_run),
        Rule("nanson", profile_run=_nanson_run),
        Rule("black", profile_run=_black_run),
    )
}


def _wrapper(rule_id: str):
    def apply(lb: Leaderboard, mode: str = BASIC) -> RuleOutcome:
        return run_rule(lb, RULES[rule_id], mode)

    apply.__name__ = f"{rule_id}_rule"
    return apply


threshold_rule = _wrapper("threshold")
baldwin_rule = _wrapper("baldwin")
hare_rule = _wrapper("hare")
coombs_rule = _wrapper("coombs")
nanson_rule = _wrapper("nanson")
black_rule = _wrapper("black")
