"""Baseline score aggregators and ranking comparison measures.

The aggregators (weighted arithmetic mean, geometric mean, optimality gap)
order systems by their raw scores and exist mostly as references to compare
the voting rules against. The comparison measures operate on pairs of
finished outcomes and are tie-aware throughout: ranks are fractional, and
correlation values are computed from exact rationals so that identities
like rho(r, r) = 1 hold bit-for-bit.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .errors import (
    MismatchedSystems,
    MissingScore,
    NonPositiveScore,
    ScoreOutOfRange,
)
from .model import Leaderboard, RuleOutcome, as_fraction, group_by_score
from .modes import BASIC, Rule, RuleParts, run_rule

TOP = "top"
LEAST = "least"


def _complete_columns(lb: Leaderboard) -> None:
    for i, system in enumerate(lb.systems):
        for j, task in enumerate(lb.tasks):
            if lb.scores[i][j] is None:
                raise MissingScore(f"system {system!r} has no score on task {task!r}")


def _weight_total(weights: Mapping[str, Fraction], tasks: Sequence[str]) -> Fraction:
    return sum((as_fraction(weights.get(t, 1)) for t in tasks), Fraction(0))


def _mean_run(lb: Leaderboard, weights: Mapping[str, Fraction]) -> RuleParts:
    _complete_columns(lb)
    total = _weight_total(weights, lb.tasks)
    scores: dict[str, Fraction] = {}
    for i, system in enumerate(lb.systems):
        acc = Fraction(0)
        for j, task in enumerate(lb.tasks):
            acc += as_fraction(weights.get(task, 1)) * as_fraction(lb.scores[i][j])
        scores[system] = acc / total
    return RuleParts(ranking=group_by_score(scores), scores=scores)


def _gmean_run(lb: Leaderboard, weights: Mapping[str, Fraction]) -> RuleParts:
    _complete_columns(lb)
    wts = [as_fraction(weights.get(t, 1)) for t in lb.tasks]
    # clear denominators so the ordering can use exact integer exponents:
    # ranking by prod(score^n_j) equals ranking by the geometric mean
    scale = math.lcm(*(w.denominator for w in wts))
    exps = [int(w * scale) for w in wts]
    n_total = sum(exps)
    products: dict[str, Fraction] = {}
    display: dict[str, float] = {}
    for i, system in enumerate(lb.systems):
        prod = Fraction(1)
        terms = []
        for j, task in enumerate(lb.tasks):
            cell = lb.scores[i][j]
            if cell <= 0:
                raise NonPositiveScore(
                    f"geometric mean needs positive scores; {system!r} on {task!r} is {cell}"
                )
            prod *= as_fraction(cell) ** exps[j]
            terms.append(exps[j] * math.log(cell))
        products[system] = prod
        # fsum is correctly rounded, so the report does not depend on task order
        display[system] = math.exp(math.fsum(terms) / n_total)
    return RuleParts(ranking=group_by_score(products), scores=display)


def _og_run(
    lb: Leaderboard,
    weights: Mapping[str, Fraction],
    gamma: int | float | Fraction | str = 0.95,
) -> RuleParts:
    _complete_columns(lb)
    g = as_fraction(gamma)
    total = _weight_total(weights, lb.tasks)
    scores: dict[str, Fraction] = {}
    for i, system in enumerate(lb.systems):
        acc = Fraction(0)
        for j, task in enumerate(lb.tasks):
            cell = as_fraction(lb.scores[i][j])
            if cell < 0 or cell > 1:
                raise ScoreOutOfRange(
                    f"optimality gap expects scores in [0, 1]; {system!r} on {task!r} is {float(cell)}"
                )
            acc += as_fraction(weights.get(task, 1)) * max(Fraction(0), g - cell)
        scores[system] = acc / total
    return RuleParts(
        ranking=group_by_score(scores, ascending=True),
        scores=scores,
        diagnostics={"gamma": g, "score_order": "ascending"},
    )


RULES: dict[str, Rule] = {
    "mean": Rule("mean", score_run=_mean_run, elector=False),
    "gmean": Rule("gmean", score_run=_gmean_run, elector=False),
    "optimality_gap": Rule("optimality_gap", score_run=_og_run, elector=False),
}


def mean_agg(lb: Leaderboard) -> RuleOutcome:
    """Task-weighted arithmetic mean, exact."""
    return run_rule(lb, RULES["mean"], BASIC)


def gmean_agg(lb: Leaderboard) -> RuleOutcome:
    """Task-weighted geometric mean; scores must be positive."""
    return run_rule(lb, RULES["gmean"], BASIC)


def optimality_gap(lb: Leaderboard, gamma: int | float | Fraction | str = 0.95) -> RuleOutcome:
    """Mean shortfall below the target gamma; smaller is better."""
    return run_rule(lb, RULES["optimality_gap"], BASIC, gamma=gamma)


# -- comparison measures ----------------------------------------------------


def _check_pair(r1: RuleOutcome, r2: RuleOutcome) -> list[str]:
    if not r1.is_total() or not r2.is_total():
        raise MismatchedSystems("both outcomes must rank every system")
    a, b = r1.ranked_systems, r2.ranked_systems
    if a != b:
        raise MismatchedSystems("outcomes rank different system sets")
    return sorted(a)


def _paired_ranks(r1: RuleOutcome, r2: RuleOutcome) -> tuple[list[Fraction], list[Fraction]]:
    order = _check_pair(r1, r2)
    f1, f2 = r1.fractional_ranks(), r2.fractional_ranks()
    return [f1[m] for m in order], [f2[m] for m in order]


def end_set(outcome: RuleOutcome, k: int, end: str = TOP) -> frozenset[str]:
    """The k best (or worst) systems, grown to whole tie groups."""
    if end not in (TOP, LEAST):
        raise ValueError("end must be 'top' or 'least'")
    if not outcome.is_total():
        raise MismatchedSystems("outcome must rank every system")
    n = len(outcome.ranked_systems)
    if not 1 <= k <= n:
        raise ValueError(f"k must be between 1 and {n}")
    groups = outcome.ranking if end == TOP else tuple(reversed(outcome.ranking))
    chosen: set[str] = set()
    for group in groups:
        if len(chosen) >= k:
            break
        chosen |= group
    return frozenset(chosen)


def agreement_rate(r1: RuleOutcome, r2: RuleOutcome, k: int, end: str = TOP) -> float:
    """Overlap of the two end-k sets, normalized by the larger set.

    Tie groups straddling the k boundary are included whole, so the sets
    can exceed k; without boundary ties the denominator is exactly k.
    """
    _check_pair(r1, r2)
    s1 = end_set(r1, k, end)
    s2 = end_set(r2, k, end)
    return len(s1 & s2) / max(len(s1), len(s2))


def _signed_root(num: Fraction, den: Fraction) -> float:
    # sign(num) * sqrt(num^2 / den), exact when the ratio is 0 or 1
    if num == 0:
        return 0.0
    ratio = Fraction(num * num, den)
    root = math.sqrt(float(ratio))
    return root if num > 0 else -root


def kendall_tau(r1: RuleOutcome, r2: RuleOutcome) -> float:
    """Tie-corrected pairwise agreement in [-1, 1]."""
    x, y = _paired_ranks(r1, r2)
    if x == y:
        return 1.0
    n = len(x)
    concordant = discordant = 0
    for i, j in combinations(range(n), 2):
        sx = (x[i] > x[j]) - (x[i] < x[j])
        sy = (y[i] > y[j]) - (y[i] < y[j])
        prod = sx * sy
        if prod > 0:
            concordant += 1
        elif prod < 0:
            discordant += 1
    pairs = n * (n - 1) // 2
    ties_x = pairs - sum(1 for i, j in combinations(range(n), 2) if x[i] != x[j])
    ties_y = pairs - sum(1 for i, j in combinations(range(n), 2) if y[i] != y[j])
    den_x = pairs - ties_x
    den_y = pairs - ties_y
    if den_x == 0 or den_y == 0:
        return 0.0
    return _signed_root(Fraction(concordant - discordant), Fraction(den_x * den_y))


def spearman_rho(r1: RuleOutcome, r2: RuleOutcome) -> float:
    """Pearson correlation of the fractional rank vectors."""
    x, y = _paired_ranks(r1, r2)
    return rho_from_rank_vectors(x, y)


def rho_from_rank_vectors(x: Sequence[Fraction], y: Sequence[Fraction]) -> float:
    if len(x) != len(y):
        raise ValueError("rank vectors differ in length")
    if list(x) == list(y):
        return 1.0
    n = len(x)
    sx = sum(x, Fraction(0))
    sy = sum(y, Fraction(0))
    sxx = sum((v * v for v in x), Fraction(0))
    syy = sum((v * v for v in y), Fraction(0))
    sxy = sum((a * b for a, b in zip(x, y)), Fraction(0))
    num = n * sxy - sx * sy
    den_x = n * sxx - sx * sx
    den_y = n * syy - sy * sy
    if den_x == 0 or den_y == 0:
        return 0.0
    return _signed_root(num, den_x * den_y)


def discriminative_power(outcome: RuleOutcome) -> int:
    """How many strict separations the outcome draws: |M| minus #tie groups."""
    groups = len(outcome.ranking) + (1 if outcome.unranked else 0)
    return len(outcome.all_systems) - groups
