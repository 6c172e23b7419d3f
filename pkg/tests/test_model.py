import random
from fractions import Fraction as F

import pytest

from voteboard import (
    EmptySubset,
    Leaderboard,
    MissingScore,
    UnknownSystem,
    as_fraction,
    build_profile,
    fractional_ranks_of,
    group_by_score,
    position_counts,
)

from conftest import TOY_ORDERS, board_from_orders, random_board


def test_as_fraction_uses_decimal_text_for_floats():
    assert as_fraction(0.1) == F(1, 10)
    assert as_fraction(0.95) == F(19, 20)
    assert as_fraction(2) == F(2)
    assert as_fraction("1/4") == F(1, 4)
    assert as_fraction("0.5") == F(1, 2)
    assert as_fraction(F(3, 7)) == F(3, 7)


def test_as_fraction_rejects_bool():
    with pytest.raises(TypeError):
        as_fraction(True)


def test_leaderboard_validation():
    with pytest.raises(ValueError):
        Leaderboard.from_scores({"a": {"t": 1.0}}, tasks=["t", "t"])
    with pytest.raises(ValueError):
        Leaderboard.from_scores({"a": {"t": float("nan")}}, tasks=["t"])
    with pytest.raises(ValueError):
        Leaderboard.from_scores(
            {"a": {"t": 1.0}}, tasks=["t"], directions={"t": "up"}
        )
    with pytest.raises(ValueError):
        Leaderboard.from_scores({"a": {"t": 1.0}}, tasks=["t"], weights={"t": -1})
    with pytest.raises(ValueError):
        Leaderboard.from_scores({"a": {"t": 1.0}}, tasks=["t"], weights={"t": 0})
    with pytest.raises(ValueError):
        Leaderboard.from_scores(
            {"a": {"t": 1.0}}, tasks=["t"], groups={"g": ["t"], "h": ["t"]}
        )
    with pytest.raises(ValueError):
        Leaderboard.from_scores({"a": {"t": 1.0}}, tasks=["t"], groups={"g": ["zz"]})


def test_toy_profile_positions(toy):
    prof = build_profile(toy)
    assert prof.is_complete()
    assert prof.position("t1", "A") == 1
    assert prof.position("t1", "B") == 2
    assert prof.position("t2", "B") == 4
    assert prof.position("t5", "A") == 4
    assert prof.tie_groups("t3") == (("B",), ("D",), ("C",), ("A",))


def test_tied_scores_get_mean_position():
    lb = Leaderboard.from_scores(
        {"a": {"t": 3.0}, "b": {"t": 3.0}, "c": {"t": 1.0}}, tasks=["t"]
    )
    prof = build_profile(lb)
    assert prof.position("t", "a") == F(3, 2)
    assert prof.position("t", "b") == F(3, 2)
    assert prof.position("t", "c") == 3
    assert prof.tie_groups("t") == (("a", "b"), ("c",))


def test_min_direction_reverses_order():
    lb = Leaderboard.from_scores(
        {"a": {"t": 3.0}, "b": {"t": 1.0}},
        tasks=["t"],
        directions={"t": "min"},
    )
    prof = build_profile(lb)
    assert prof.position("t", "b") == 1
    assert prof.position("t", "a") == 2


def test_position_sums_are_conserved():
    # complete task: positions over all systems sum to n(n+1)/2
    rng = random.Random(101)
    for _ in range(60):
        lb = random_board(rng, allow_min_direction=True)
        prof = build_profile(lb)
        n = len(lb.systems)
        for task in lb.tasks:
            total = sum(prof.position(task, m) for m in lb.systems)
            assert total == F(n * (n + 1), 2)


def test_build_profile_subset_and_errors(toy):
    prof = build_profile(toy, task_subset=["t1", "t2"])
    assert prof.tasks == ("t1", "t2")
    with pytest.raises(EmptySubset):
        build_profile(toy, task_subset=[])
    holed = toy.with_score("B", "t1", None)
    with pytest.raises(MissingScore):
        build_profile(holed)
    prof = build_profile(holed, missing_ok=True)
    assert prof.position("t1", "B") is None
    assert prof.position("t1", "A") == 1
    assert prof.position("t1", "C") == 2


def test_position_counts_toy(toy):
    prof = build_profile(toy)
    assert position_counts(prof, "A") == (F(2), F(0), F(0), F(3))
    assert position_counts(prof, "B") == (F(1), F(3), F(0), F(1))
    with pytest.raises(UnknownSystem):
        position_counts(prof, "Z")


def test_position_counts_split_ties():
    lb = Leaderboard.from_scores(
        {"a": {"t": 2.0}, "b": {"t": 2.0}, "c": {"t": 1.0}}, tasks=["t"]
    )
    prof = build_profile(lb)
    assert position_counts(prof, "a") == (F(1, 2), F(1, 2), F(0))
    assert position_counts(prof, "c") == (F(0), F(0), F(1))


def test_profile_restrict_reranks():
    prof = build_profile(board_from_orders(TOY_ORDERS))
    sub = prof.restrict(["B", "C", "D"])
    assert sub.position("t1", "B") == 1
    assert sub.position("t1", "D") == 3
    assert set(sub.systems) == {"B", "C", "D"}


def test_board_edits(toy):
    fewer = toy.restrict_systems(["A", "B"])
    assert fewer.systems == ("A", "B")
    assert fewer.score("A", "t1") == 4.0
    narrowed = toy.restrict_tasks(["t2", "t4"])
    assert narrowed.tasks == ("t2", "t4")
    poked = toy.without_cells([("A", "t1"), ("B", "t2")])
    assert poked.score("A", "t1") is None
    assert poked.score("B", "t2") is None
    assert toy.score("A", "t1") == 4.0
    assert len(toy.present_cells()) == 20
    assert len(poked.present_cells()) == 18


def test_group_by_score_and_fractional_ranks():
    groups = group_by_score({"a": F(3), "b": F(1), "c": F(3)})
    assert groups == (frozenset({"a", "c"}), frozenset({"b"}))
    groups = group_by_score({"a": F(3), "b": F(1), "c": F(3)}, ascending=True)
    assert groups == (frozenset({"b"}), frozenset({"a", "c"}))
    ranks = fractional_ranks_of([frozenset({"a", "c"}), frozenset({"b"})])
    assert ranks == {"a": F(3, 2), "c": F(3, 2), "b": F(3)}


def test_outcome_accessors(toy):
    import voteboard as vb

    out = vb.aggregate(toy, "borda")
    assert out.winners == frozenset({"B"})
    assert out.is_total()
    assert out.competition_ranks() == {"B": 1, "C": 2, "D": 3, "A": 4}
    rel = out.pair_relations()
    # +1 means the first system of the sorted pair sits lower in the ranking
    assert rel[("A", "B")] == 1
    assert rel[("A", "C")] == 1
    plur = vb.aggregate(toy, "plurality")
    assert plur.competition_ranks() == {"A": 1, "B": 2, "C": 2, "D": 2}
    assert plur.fractional_ranks()["B"] == F(3)
    assert plur.pair_relations()[("B", "C")] == 0
