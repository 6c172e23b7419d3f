import random

import pytest

from voteboard import Leaderboard

# the worked example used throughout: five tasks, four systems, per-task
# orders chosen so B is the majority champion but plurality picks A
TOY_ORDERS = {
    "t1": ["A", "B", "C", "D"],
    "t2": ["A", "C", "D", "B"],
    "t3": ["B", "D", "C", "A"],
    "t4": ["C", "B", "D", "A"],
    "t5": ["D", "B", "C", "A"],
}


def board_from_orders(orders, *, weights=None, groups=None):
    """Build a leaderboard whose per-task orders match the given lists.

    Scores are descending integers, so any strictly monotone transform of
    them would induce the same profile.
    """
    systems = sorted({m for order in orders.values() for m in order})
    scores = {m: {} for m in systems}
    for task, order in orders.items():
        for place, m in enumerate(order):
            scores[m][task] = float(len(order) - place)
    return Leaderboard.from_scores(
        scores, tasks=list(orders), weights=weights, groups=groups
    )


@pytest.fixture
def toy():
    return board_from_orders(TOY_ORDERS)


def random_board(rng: random.Random, *, max_systems=5, max_tasks=7,
                 min_systems=2, min_tasks=1, lo=1, hi=9,
                 allow_min_direction=False, allow_weights=False):
    """Random integer-score leaderboard. Small score range makes ties common."""
    n = rng.randint(min_systems, max_systems)
    t = rng.randint(min_tasks, max_tasks)
    systems = [f"m{i}" for i in range(n)]
    tasks = [f"t{j}" for j in range(t)]
    scores = {m: {tk: float(rng.randint(lo, hi)) for tk in tasks} for m in systems}
    directions = None
    if allow_min_direction and rng.random() < 0.3:
        directions = {tk: rng.choice(["max", "min"]) for tk in tasks}
    weights = None
    if allow_weights and rng.random() < 0.3:
        weights = {tk: rng.randint(1, 3) for tk in tasks}
    return Leaderboard.from_scores(
        scores, tasks=tasks, directions=directions, weights=weights
    )
