"""Leaderboard data model, rank profiles, and rule outcomes.

A Leaderboard is a systems-by-tasks matrix of optional scores plus per-task
metadata (direction, weight, optional group). Rules never read raw scores
directly; they consume a RankProfile, the per-task fractional ranking derived
from the scores. Tied systems share the mean of the integer places they span,
so position mass is conserved within every task.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from itertools import combinations
from typing import Any, Iterable, Mapping, Sequence

from .errors import EmptySubset, MissingScore, UnknownSystem

MAXIMIZE = "max"
MINIMIZE = "min"

Numeric = "int | float | Fraction | str"


def as_fraction(value: int | float | Fraction | str) -> Fraction:
    """Exact rational from a numeric input.

    Floats convert through their shortest decimal repr, so 0.1 becomes 1/10
    rather than the binary expansion. Strings accept decimal ("0.25") and
    ratio ("1/4") forms.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite value: {value!r}")
        return Fraction(Decimal(repr(value)))
    if isinstance(value, str):
        text = value.strip()
        try:
            return Fraction(Decimal(text))
        except InvalidOperation:
            return Fraction(text)
    raise TypeError(f"unsupported numeric type: {type(value).__name__}")


def _check_unique(names: Sequence[str], kind: str) -> None:
    seen = set()
    for name in names:
        if name in seen:
            raise ValueError(f"duplicate {kind} id: {name!r}")
        seen.add(name)


@dataclass(frozen=True)
class Leaderboard:
    """Immutable score matrix with task directions, weights, and groups.

    scores[i][j] is the score of systems[i] on tasks[j]; None means missing.
    A minimize-direction task is negated when rankings are built, the stored
    value stays as given. groups, when present, is an ordered mapping of
    group name to its tasks; a task belongs to at most one group.
    """

    systems: tuple[str, ...]
    tasks: tuple[str, ...]
    scores: tuple[tuple[float | None, ...], ...]
    directions: tuple[str, ...]
    weights: tuple[Fraction, ...]
    groups: tuple[tuple[str, tuple[str, ...]], ...] | None = None

    def __post_init__(self) -> None:
        if not self.systems:
            raise ValueError("leaderboard needs at least one system")
        if not self.tasks:
            raise ValueError("leaderboard needs at least one task")
        _check_unique(self.systems, "system")
        _check_unique(self.tasks, "task")
        if len(self.scores) != len(self.systems):
            raise ValueError("score matrix must have one row per system")
        for row in self.scores:
            if len(row) != len(self.tasks):
                raise ValueError("score row length must match task count")
            for cell in row:
                if cell is not None and not math.isfinite(cell):
                    raise ValueError("scores must be finite or None")
        if len(self.directions) != len(self.tasks):
            raise ValueError("one direction per task required")
        for d in self.directions:
            if d not in (MAXIMIZE, MINIMIZE):
                raise ValueError(f"direction must be 'max' or 'min', got {d!r}")
        if len(self.weights) != len(self.tasks):
            raise ValueError("one weight per task required")
        if any(w < 0 for w in self.weights):
            raise ValueError("task weights must be non-negative")
        if not any(w > 0 for w in self.weights):
            raise ValueError("at least one task weight must be positive")
        if self.groups is not None:
            _check_unique([name for name, _ in self.groups], "group")
            known = set(self.tasks)
            claimed: set[str] = set()
            for name, members in self.groups:
                if not members:
                    raise ValueError(f"group {name!r} has no tasks")
                for t in members:
                    if t not in known:
                        raise ValueError(f"group {name!r} names unknown task {t!r}")
                    if t in claimed:
                        raise ValueError(f"task {t!r} appears in two groups")
                    claimed.add(t)

    @classmethod
    def from_scores(
        cls,
        scores: Mapping[str, Mapping[str, float | int | None]],
        *,
        tasks: Sequence[str] | None = None,
        directions: Mapping[str, str] | None = None,
        weights: Mapping[str, int | float | Fraction | str] | None = None,
        groups: Mapping[str, Sequence[str]] | None = None,
    ) -> "Leaderboard":
        """Build from nested dicts; iteration order fixes system/task order."""
        systems = tuple(scores)
        if tasks is None:
            ordered: list[str] = []
            for row in scores.values():
                for t in row:
                    if t not in ordered:
                        ordered.append(t)
            tasks = ordered
        task_tuple = tuple(tasks)
        matrix = tuple(
            tuple(
                None if (v := scores[m].get(t)) is None else float(v)
                for t in task_tuple
            )
            for m in systems
        )
        dirs = tuple((directions or {}).get(t, MAXIMIZE) for t in task_tuple)
        wts = tuple(as_fraction((weights or {}).get(t, 1)) for t in task_tuple)
        grp = None
        if groups is not None:
            grp = tuple((name, tuple(members)) for name, members in groups.items())
        return cls(systems, task_tuple, matrix, dirs, wts, grp)

    # -- lookups ---------------------------------------------------------

    def _sys_index(self, system: str) -> int:
        try:
            return self.systems.index(system)
        except ValueError:
            raise UnknownSystem(f"unknown system: {system!r}") from None

    def _task_index(self, task: str) -> int:
        try:
            return self.tasks.index(task)
        except ValueError:
            raise ValueError(f"unknown task: {task!r}") from None

    def score(self, system: str, task: str) -> float | None:
        return self.scores[self._sys_index(system)][self._task_index(task)]

    def direction(self, task: str) -> str:
        return self.directions[self._task_index(task)]

    def task_weight(self, task: str) -> Fraction:
        return self.weights[self._task_index(task)]

    @property
    def total_weight(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    @property
    def group_map(self) -> dict[str, tuple[str, ...]]:
        return dict(self.groups) if self.groups else {}

    def task_group(self, task: str) -> str | None:
        if self.groups:
            for name, members in self.groups:
                if task in members:
                    return name
        return None

    def present_cells(self) -> tuple[tuple[str, str], ...]:
        """All (system, task) pairs that carry a score."""
        return tuple(
            (m, t)
            for i, m in enumerate(self.systems)
            for j, t in enumerate(self.tasks)
            if self.scores[i][j] is not None
        )

    # -- derived leaderboards -------------------------------------------

    def restrict_systems(self, keep: Iterable[str]) -> "Leaderboard":
        wanted = set(keep)
        for m in wanted:
            self._sys_index(m)
        systems = tuple(m for m in self.systems if m in wanted)
        if not systems:
            raise ValueError("cannot drop every system")
        rows = tuple(self.scores[self.systems.index(m)] for m in systems)
        return Leaderboard(systems, self.tasks, rows, self.directions, self.weights, self.groups)

    def restrict_tasks(self, keep: Iterable[str]) -> "Leaderboard":
        wanted = set(keep)
        for t in wanted:
            self._task_index(t)
        idx = [j for j, t in enumerate(self.tasks) if t in wanted]
        if not idx:
            raise ValueError("cannot drop every task")
        tasks = tuple(self.tasks[j] for j in idx)
        rows = tuple(tuple(row[j] for j in idx) for row in self.scores)
        dirs = tuple(self.directions[j] for j in idx)
        wts = tuple(self.weights[j] for j in idx)
        groups = None
        if self.groups:
            kept = []
            for name, members in self.groups:
                inside = tuple(t for t in members if t in wanted)
                if inside:
                    kept.append((name, inside))
            groups = tuple(kept) or None
        return Leaderboard(systems=self.systems, tasks=tasks, scores=rows,
                           directions=dirs, weights=wts, groups=groups)

    def with_score(self, system: str, task: str, value: float | None) -> "Leaderboard":
        i, j = self._sys_index(system), self._task_index(task)
        rows = [list(row) for row in self.scores]
        rows[i][j] = None if value is None else float(value)
        return Leaderboard(self.systems, self.tasks, tuple(tuple(r) for r in rows),
                           self.directions, self.weights, self.groups)

    def without_cells(self, cells: Iterable[tuple[str, str]]) -> "Leaderboard":
        rows = [list(row) for row in self.scores]
        for system, task in cells:
            rows[self._sys_index(system)][self._task_index(task)] = None
        return Leaderboard(self.systems, self.tasks, tuple(tuple(r) for r in rows),
                           self.directions, self.weights, self.groups)


def _fractional_positions(ordered_groups: Sequence[Sequence[str]]) -> dict[str, Fraction]:
    # mean of the integer places a tie group spans: place + (g - 1) / 2
    positions: dict[str, Fraction] = {}
    place = 1
    for group in ordered_groups:
        g = len(group)
        pos = Fraction(2 * place + g - 1, 2)
        for member in group:
            positions[member] = pos
        place += g
    return positions


@dataclass(frozen=True)
class RankProfile:
    """Per-task fractional rankings: positions[task][system] -> place.

    Best place is 1. A system missing from a task simply has no entry for
    it (missing-tolerant profiles); a complete task covers every system and
    its positions sum to n(n+1)/2.
    """

    systems: tuple[str, ...]
    tasks: tuple[str, ...]
    positions: Mapping[str, Mapping[str, Fraction]]

    def position(self, task: str, system: str) -> Fraction | None:
        return self.positions[task].get(system)

    def tie_groups(self, task: str) -> tuple[tuple[str, ...], ...]:
        """Ordered tie groups for one task, best first, members sorted."""
        entries = self.positions[task]
        by_pos: dict[Fraction, list[str]] = {}
        for system, pos in entries.items():
            by_pos.setdefault(pos, []).append(system)
        return tuple(tuple(sorted(by_pos[p])) for p in sorted(by_pos))

    def is_complete(self) -> bool:
        n = len(self.systems)
        return all(len(self.positions[t]) == n for t in self.tasks)

    def restrict(self, keep: Sequence[str]) -> "RankProfile":
        """Drop systems and re-rank the rest, preserving order and ties."""
        wanted = set(keep)
        systems = tuple(m for m in self.systems if m in wanted)
        positions = {}
        for task in self.tasks:
            surviving = [
                [m for m in group if m in wanted]
                for group in self.tie_groups(task)
            ]
            positions[task] = _fractional_positions([g for g in surviving if g])
        return RankProfile(systems, self.tasks, positions)


def build_profile(
    lb: Leaderboard,
    task_subset: Sequence[str] | None = None,
    *,
    missing_ok: bool = False,
) -> RankProfile:
    """Rank every task of the subset (default: all tasks) by adjusted score.

    Minimize-direction tasks are negated first. Equal scores tie and share
    the mean of the places they span. A missing cell raises MissingScore
    unless missing_ok is set, in which case the system is simply unranked
    on that task.
    """
    if task_subset is None:
        tasks = lb.tasks
    else:
        tasks = tuple(task_subset)
        if not tasks:
            raise EmptySubset("task subset is empty")
        for t in tasks:
            lb._task_index(t)
    positions: dict[str, dict[str, Fraction]] = {}
    for task in tasks:
        j = lb._task_index(task)
        sign = -1.0 if lb.directions[j] == MINIMIZE else 1.0
        scored: list[tuple[float, str]] = []
        for i, system in enumerate(lb.systems):
            cell = lb.scores[i][j]
            if cell is None:
                if not missing_ok:
                    raise MissingScore(f"system {system!r} has no score on task {task!r}")
                continue
            scored.append((sign * cell, system))
        scored.sort(key=lambda pair: (-pair[0], pair[1]))
        groups: list[list[str]] = []
        last: float | None = None
        for value, system in scored:
            if last is None or value != last:
                groups.append([])
                last = value
            groups[-1].append(system)
        positions[task] = _fractional_positions(groups)
    return RankProfile(lb.systems, tasks, positions)


def position_counts(
    profile: RankProfile,
    system: str,
    weights: Mapping[str, int | float | Fraction | str] | None = None,
) -> tuple[Fraction, ...]:
    """Weighted mass the system places at each integer rank 1..n.

    A tie group of size g spanning places p..p+g-1 contributes w/g of the
    task's weight w at each spanned place, so the total mass equals the
    weight of the tasks that rank the system.
    """
    if system not in profile.systems:
        raise UnknownSystem(f"unknown system: {system!r}")
    n = len(profile.systems)
    counts = [Fraction(0)] * n
    for task in profile.tasks:
        entries = profile.positions[task]
        pos = entries.get(system)
        if pos is None:
            continue
        w = as_fraction(1 if weights is None else weights.get(task, 1))
        g = sum(1 for p in entries.values() if p == pos)
        start = int(pos - Fraction(g - 1, 2))
        share = w / g
        for place in range(start, start + g):
            counts[place - 1] += share
    return tuple(counts)


def group_by_score(
    scores: Mapping[str, Fraction | float | int],
    *,
    ascending: bool = False,
) -> tuple[frozenset[str], ...]:
    """Partition systems into tie groups ordered best-first by exact score."""
    distinct = sorted(set(scores.values()), reverse=not ascending)
    return tuple(
        frozenset(m for m, s in scores.items() if s == v) for v in distinct
    )


def fractional_ranks_of(groups: Sequence[frozenset[str] | Sequence[str]]) -> dict[str, Fraction]:
    """Fractional rank of each system given ordered tie groups."""
    ranks: dict[str, Fraction] = {}
    place = 1
    for group in groups:
        g = len(group)
        rank = Fraction(2 * place + g - 1, 2)
        for member in group:
            ranks[member] = rank
        place += g
    return ranks


@dataclass(frozen=True)
class RuleOutcome:
    """Result of applying a rule: ordered tie groups plus bookkeeping.

    ranking holds disjoint nonempty tie groups, best first. Rules that only
    produce a winning set put it in ranking[0] and list everything else in
    unranked. scores, when present, maps each ranked system to the value the
    rule ordered by (exact rationals where the rule allows it).
    """

    rule_id: str
    mode: str
    ranking: tuple[frozenset[str], ...]
    scores: Mapping[str, Fraction] | None = None
    unranked: frozenset[str] = frozenset()
    diagnostics: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for group in self.ranking:
            if not group:
                raise ValueError("empty tie group in ranking")
            if seen & group:
                raise ValueError("tie groups must be disjoint")
            seen |= group
        if seen & self.unranked:
            raise ValueError("a system cannot be both ranked and unranked")

    @property
    def winners(self) -> frozenset[str]:
        return self.ranking[0] if self.ranking else frozenset()

    @property
    def ranked_systems(self) -> frozenset[str]:
        out: set[str] = set()
        for group in self.ranking:
            out |= group
        return frozenset(out)

    @property
    def all_systems(self) -> frozenset[str]:
        return self.ranked_systems | self.unranked

    def is_total(self) -> bool:
        return not self.unranked

    def competition_ranks(self) -> dict[str, int]:
        """1224-style ranks: a group's rank is 1 + systems ranked above it."""
        ranks: dict[str, int] = {}
        place = 1
        for group in self.ranking:
            for member in group:
                ranks[member] = place
            place += len(group)
        return ranks

    def fractional_ranks(self) -> dict[str, Fraction]:
        return fractional_ranks_of(self.ranking)

    def pair_relations(
        self, systems: Iterable[str] | None = None
    ) -> dict[tuple[str, str], int]:
        """-1, 0, +1 per ordered pair: sign of rank(a) - rank(b)."""
        ranks = self.fractional_ranks()
        pool = sorted(ranks) if systems is None else sorted(systems)
        for m in pool:
            if m not in ranks:
                raise ValueError(f"system {m!r} is unranked in this outcome")
        rel = {}
        for a, b in combinations(pool, 2):
            ra, rb = ranks[a], ranks[b]
            rel[(a, b)] = (ra > rb) - (ra < rb)
        return rel
