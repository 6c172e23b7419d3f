"""Pairwise-majority relation and the rules built on it.

For systems a and b, each task contributes its weight with sign +1 when it
ranks a strictly above b, -1 when strictly below, and 0 on a tie or when
either score is missing. a dominates b when the signed sum is positive, so
missing cells shrink the evidence for a pair instead of being imputed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Mapping

from .model import (
    Leaderboard,
    RankProfile,
    RuleOutcome,
    as_fraction,
    build_profile,
    group_by_score,
)
from .modes import BASIC, Rule, RuleParts, base_weights

COPELAND_VARIANTS = ("I", "II", "III")

# exhaustive weakly-stable search is exponential in the dominant component
_WEAKLY_STABLE_LIMIT = 18


@dataclass(frozen=True)
class MajorityGraph:
    """Signed pairwise margins plus the supporting task weight per edge.

    margins[(a, b)] is the weighted signed comparison count; an edge a -> b
    exists when it is positive. supports[(a, b)] is the weight of tasks
    ranking a strictly above b if that edge exists, else 0.
    """

    systems: tuple[str, ...]
    margins: Mapping[tuple[str, str], Fraction]
    supports: Mapping[tuple[str, str], Fraction]

    def margin(self, a: str, b: str) -> Fraction:
        return self.margins.get((a, b), Fraction(0))

    def support(self, a: str, b: str) -> Fraction:
        return self.supports.get((a, b), Fraction(0))

    def beats(self, a: str, b: str) -> bool:
        return self.margin(a, b) > 0

    def dominated(self, m: str) -> frozenset[str]:
        """L(m): systems that m beats."""
        return frozenset(x for x in self.systems if x != m and self.beats(m, x))

    def dominators(self, m: str) -> frozenset[str]:
        """U(m): systems that beat m."""
        return frozenset(x for x in self.systems if x != m and self.beats(x, m))

    def edges(self) -> tuple[tuple[str, str], ...]:
        return tuple(
            (a, b)
            for a in self.systems
            for b in self.systems
            if a != b and self.beats(a, b)
        )

    def adjacency(self) -> dict[str, dict[str, Fraction]]:
        """Outgoing edges with margins, for graph export."""
        out: dict[str, dict[str, Fraction]] = {a: {} for a in self.systems}
        for a, b in self.edges():
            out[a][b] = self.margin(a, b)
        return out


@dataclass(frozen=True)
class CounterSets:
    """The two counter sets of one system in a majority graph."""

    system: str
    dominated: frozenset[str]
    dominators: frozenset[str]


def majority_graph_from_profile(
    profile: RankProfile,
    weights: Mapping[str, int | float | Fraction | str] | None = None,
) -> MajorityGraph:
    tasks = profile.tasks
    wts = {t: as_fraction(1 if weights is None else weights.get(t, 1)) for t in tasks}
    margins: dict[tuple[str, str], Fraction] = {}
    supports: dict[tuple[str, str], Fraction] = {}
    zero = Fraction(0)
    for a, b in combinations(profile.systems, 2):
        above = zero
        below = zero
        for t in tasks:
            entries = profile.positions[t]
            pa = entries.get(a)
            pb = entries.get(b)
            if pa is None or pb is None:
                continue
            if pa < pb:
                above += wts[t]
            elif pb < pa:
                below += wts[t]
        margins[(a, b)] = above - below
        margins[(b, a)] = below - above
        supports[(a, b)] = above if above > below else zero
        supports[(b, a)] = below if below > above else zero
    return MajorityGraph(profile.systems, margins, supports)


def build_majority_graph(lb: Leaderboard) -> MajorityGraph:
    """Majority graph of a leaderboard, tolerating missing cells."""
    return majority_graph_from_profile(build_profile(lb, missing_ok=True), base_weights(lb))


def counter_sets(graph: MajorityGraph, system: str) -> CounterSets:
    return CounterSets(system, graph.dominated(system), graph.dominators(system))


def condorcet_winner(graph: MajorityGraph) -> str | None:
    """The system beating every other one strictly, if any."""
    for m in graph.systems:
        if all(graph.beats(m, x) for x in graph.systems if x != m):
            return m
    return None


def copeland_scores(graph: MajorityGraph, variant: str = "I") -> dict[str, Fraction]:
    if variant not in COPELAND_VARIANTS:
        raise ValueError(f"variant must be one of {COPELAND_VARIANTS}")
    scores: dict[str, Fraction] = {}
    for m in graph.systems:
        wins = len(graph.dominated(m))
        losses = len(graph.dominators(m))
        if variant == "I":
            scores[m] = Fraction(wins - losses)
        elif variant == "II":
            scores[m] = Fraction(wins)
        else:
            scores[m] = Fraction(losses)
    return scores


def copeland(graph: MajorityGraph, variant: str = "I") -> RuleOutcome:
    scores = copeland_scores(graph, variant)
    ascending = variant == "III"
    rule_id = {"I": "copeland", "II": "copeland2", "III": "copeland3"}[variant]
    return RuleOutcome(
        rule_id=rule_id,
        mode=BASIC,
        ranking=group_by_score(scores, ascending=ascending),
        scores=scores,
        diagnostics={"score_order": "ascending" if ascending else "descending"},
    )


def minimax_scores(graph: MajorityGraph) -> dict[str, Fraction]:
    """0 for undefeated systems, else minus the strongest defeat's support."""
    scores: dict[str, Fraction] = {}
    for m in graph.systems:
        foes = graph.dominators(m)
        if not foes:
            scores[m] = Fraction(0)
        else:
            scores[m] = -max(graph.support(b, m) for b in foes)
    return scores


def minimax(graph: MajorityGraph) -> RuleOutcome:
    scores = minimax_scores(graph)
    return RuleOutcome(
        rule_id="minimax",
        mode=BASIC,
        ranking=group_by_score(scores),
        scores=scores,
    )


def _closure(seeds: Iterable[str], expand: Callable[[str], Iterable[str]]) -> frozenset[str]:
    seen = set(seeds)
    todo = list(seen)
    while todo:
        x = todo.pop()
        for y in expand(x):
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return frozenset(seen)


def minimal_dominant_set(graph: MajorityGraph) -> frozenset[str]:
    """Smallest set whose members all beat every outside system.

    Dominant sets are totally ordered by inclusion, so the minimal one is
    the smallest closure of a single system under "fails to beat".
    """
    def needs(x: str) -> list[str]:
        return [y for y in graph.systems if y != x and not graph.beats(x, y)]

    best: frozenset[str] | None = None
    for m in graph.systems:
        c = _closure([m], needs)
        if best is None or len(c) < len(best):
            best = c
    assert best is not None
    return best


def minimal_undominated_set(graph: MajorityGraph) -> frozenset[str]:
    """Union of all inclusion-minimal sets no outsider beats into."""
    closures = {m: _closure([m], graph.dominators) for m in graph.systems}
    distinct = set(closures.values())
    minimal = [c for c in distinct if not any(o < c for o in distinct)]
    out: set[str] = set()
    for c in minimal:
        out |= c
    return frozenset(out)


def _undominated_under(
    graph: MajorityGraph, wins_over: Callable[[str, str], bool]
) -> frozenset[str]:
    return frozenset(
        a
        for a in graph.systems
        if not any(b != a and wins_over(b, a) for b in graph.systems)
    )


def uncovered_set(graph: MajorityGraph, variant: str = "I") -> frozenset[str]:
    """Systems not covered: variant I compares the sets they beat, variant II
    additionally requires a majority edge and compares the sets beating them."""
    if variant not in ("I", "II"):
        raise ValueError("variant must be 'I' or 'II'")
    lower = {m: graph.dominated(m) for m in graph.systems}
    upper = {m: graph.dominators(m) for m in graph.systems}
    if variant == "I":
        return _undominated_under(graph, lambda b, a: lower[b] > lower[a])
    return _undominated_under(
        graph, lambda b, a: graph.beats(b, a) and upper[b] <= upper[a]
    )


def richelson_set(graph: MajorityGraph) -> frozenset[str]:
    lower = {m: graph.dominated(m) for m in graph.systems}
    upper = {m: graph.dominators(m) for m in graph.systems}

    def wins(b: str, a: str) -> bool:
        return (
            lower[b] >= lower[a]
            and upper[b] <= upper[a]
            and (lower[b] > lower[a] or upper[b] < upper[a])
        )

    return _undominated_under(graph, wins)


def fishburn_set(graph: MajorityGraph) -> frozenset[str]:
    upper = {m: graph.dominators(m) for m in graph.systems}
    return _undominated_under(graph, lambda b, a: upper[b] < upper[a])


def _is_weakly_stable(graph: MajorityGraph, candidate: frozenset[str]) -> bool:
    for x in candidate:
        for y in graph.dominators(x):
            if y in candidate:
                continue
            if not any(graph.beats(z, y) for z in candidate):
                return False
    return True


def minimal_weakly_stable_set(graph: MajorityGraph) -> frozenset[str]:
    """Union of all inclusion-minimal weakly stable sets.

    A set is weakly stable when every outside threat to a member is itself
    beaten from inside. Every minimal weakly stable set lives inside the
    minimal dominant set, which keeps the subset search small.
    """
    pool = sorted(minimal_dominant_set(graph))
    if len(pool) > _WEAKLY_STABLE_LIMIT:
        raise RuntimeError(
            f"dominant component of size {len(pool)} is too large for exhaustive search"
        )
    found: list[frozenset[str]] = []
    for size in range(1, len(pool) + 1):
        for combo in combinations(pool, size):
            candidate = frozenset(combo)
            if any(smaller <= candidate for smaller in found):
                continue
            if _is_weakly_stable(graph, candidate):
                found.append(candidate)
    union: set[str] = set()
    for q in found:
        union |= q
    return frozenset(union)


# -- registry wiring ------------------------------------------------------


def _graph_of(profile: RankProfile, weights: Mapping[str, Fraction]) -> MajorityGraph:
    return majority_graph_from_profile(profile, weights)


def _condorcet_run(profile: RankProfile, weights: Mapping[str, Fraction]) -> RuleParts:
    graph = _graph_of(profile, weights)
    winner = condorcet_winner(graph)
    if winner is None:
        return RuleParts(
            ranking=(),
            unranked=frozenset(profile.systems),
            diagnostics={"condorcet_winner": None},
        )
    return RuleParts(
        ranking=(frozenset({winner}),),
        unranked=frozenset(m for m in profile.systems if m != winner),
        diagnostics={"condorcet_winner": winner},
    )


def _copeland_run(variant: str):
    def run(profile: RankProfile, weights: Mapping[str, Fraction]) -> RuleParts:
        outcome = copeland(_graph_of(profile, weights), variant)
        return RuleParts(
            ranking=outcome.ranking,
            scores=outcome.scores,
            diagnostics=dict(outcome.diagnostics),
        )

    return run


def _minimax_run(profile: RankProfile, weights: Mapping[str, Fraction]) -> RuleParts:
    outcome = minimax(_graph_of(profile, weights))
    return RuleParts(ranking=outcome.ranking, scores=outcome.scores)


def _set_rule_run(chooser: Callable[[MajorityGraph], frozenset[str]]):
    def run(profile: RankProfile, weights: Mapping[str, Fraction]) -> RuleParts:
        graph = _graph_of(profile, weights)
        winners = chooser(graph)
        return RuleParts(
            ranking=(winners,),
            unranked=frozenset(m for m in profile.systems if m not in winners),
        )

    return run


RULES: dict[str, Rule] = {
    rule.rule_id: rule
    for rule in (
        Rule("condorcet", profile_run=_condorcet_run, handles_missing=True, elector=False),
        Rule("copeland", profile_run=_copeland_run("I"), handles_missing=True),
        Rule("copeland2", profile_run=_copeland_run("II"), handles_missing=True),
        Rule("copeland3", profile_run=_copeland_run("III"), handles_missing=True),
        Rule("minimax", profile_run=_minimax_run, handles_missing=True),
        Rule("minimal_dominant", profile_run=_set_rule_run(minimal_dominant_set),
             handles_missing=True, elector=False),
        Rule("minimal_undominated", profile_run=_set_rule_run(minimal_undominated_set),
             handles_missing=True, elector=False),
        Rule("uncovered", profile_run=_set_rule_run(lambda g: uncovered_set(g, "I")),
             handles_missing=True, elector=False),
        Rule("uncovered2", profile_run=_set_rule_run(lambda g: uncovered_set(g, "II")),
             handles_missing=True, elector=False),
        Rule("richelson", profile_run=_set_rule_run(richelson_set),
             handles_missing=True, elector=False),
        Rule("fishburn", profile_run=_set_rule_run(fishburn_set),
             handles_missing=True, elector=False),
        Rule("weakly_stable", profile_run=_set_rule_run(minimal_weakly_stable_set),
             handles_missing=True, elector=False),
    )
}
