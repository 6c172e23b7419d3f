import random
from fractions import Fraction as F

import pytest

import voteboard as vb
from voteboard import (
    build_majority_graph,
    condorcet_winner,
    counter_sets,
    minimal_dominant_set,
    minimal_undominated_set,
    minimal_weakly_stable_set,
    fishburn_set,
    richelson_set,
    uncovered_set,
)

import oracle
from conftest import board_from_orders, random_board

TOY_EDGES = {
    ("B", "A"), ("C", "A"), ("D", "A"),
    ("B", "C"), ("B", "D"), ("C", "D"),
}


def cycle_board():
    return board_from_orders(
        {
            "t1": ["a", "b", "c"],
            "t2": ["b", "c", "a"],
            "t3": ["c", "a", "b"],
        }
    )


def test_toy_edges_and_margins(toy):
    g = build_majority_graph(toy)
    assert set(g.edges()) == TOY_EDGES
    assert g.margin("B", "A") == F(1)
    assert g.margin("A", "B") == F(-1)
    assert g.margin("B", "C") == F(1)
    assert g.support("B", "A") == F(3)
    assert g.support("A", "B") == F(0)
    assert g.beats("B", "C")
    assert not g.beats("C", "B")


def test_missing_cell_recounts_margin(toy):
    holed = toy.with_score("B", "t1", None)
    g = build_majority_graph(holed)
    # A vs B decided on t2..t5 only: B still leads 3-1
    assert g.margin("B", "A") == F(2)
    assert ("B", "A") in set(g.edges())


def test_counter_sets(toy):
    g = build_majority_graph(toy)
    cs = counter_sets(g, "C")
    assert cs.dominated == {"A", "D"}
    assert cs.dominators == {"B"}


def test_toy_condorcet_and_copeland(toy):
    g = build_majority_graph(toy)
    assert condorcet_winner(g) == "B"
    out = vb.aggregate(toy, "copeland")
    assert out.scores == {"A": F(-3), "B": F(3), "C": F(1), "D": F(-1)}
    out2 = vb.aggregate(toy, "copeland2")
    assert out2.scores == {"A": F(0), "B": F(3), "C": F(2), "D": F(1)}
    out3 = vb.aggregate(toy, "copeland3")
    assert out3.scores == {"A": F(3), "B": F(0), "C": F(1), "D": F(2)}
    # all three agree on the toy ranking
    assert out.ranking == out2.ranking == out3.ranking


def test_toy_minimax(toy):
    out = vb.aggregate(toy, "minimax")
    assert out.scores == {"A": F(-3), "B": F(0), "C": F(-3), "D": F(-3)}
    assert out.winners == {"B"}


def test_edgeless_graph_ties_everyone():
    lb = vb.Leaderboard.from_scores(
        {"a": {"t1": 1.0, "t2": 0.0}, "b": {"t1": 0.0, "t2": 1.0}},
        tasks=["t1", "t2"],
    )
    g = build_majority_graph(lb)
    assert g.edges() == ()
    assert condorcet_winner(g) is None
    for rule in ("copeland", "copeland2", "copeland3", "minimax"):
        assert vb.aggregate(lb, rule).winners == {"a", "b"}
    assert vb.aggregate(lb, "condorcet").winners == frozenset()


def test_three_cycle_sets():
    g = build_majority_graph(cycle_board())
    everyone = {"a", "b", "c"}
    assert minimal_dominant_set(g) == everyone
    assert uncovered_set(g, "I") == everyone
    assert minimal_undominated_set(g) == everyone
    assert minimal_weakly_stable_set(g) == everyone


def test_condorcet_winner_is_every_selection(toy):
    g = build_majority_graph(toy)
    assert minimal_dominant_set(g) == {"B"}
    assert minimal_undominated_set(g) == {"B"}
    assert uncovered_set(g, "I") == {"B"}
    assert uncovered_set(g, "II") == {"B"}
    assert richelson_set(g) == {"B"}
    assert fishburn_set(g) == {"B"}
    assert minimal_weakly_stable_set(g) == {"B"}


def test_condorcet_rule_outcome_shape(toy):
    out = vb.aggregate(toy, "condorcet")
    assert out.ranking == (frozenset({"B"}),)
    assert out.unranked == {"A", "C", "D"}
    assert out.diagnostics["condorcet_winner"] == "B"


def test_set_rules_match_subset_enumeration():
    rng = random.Random(91)
    for _ in range(60):
        lb = random_board(rng, allow_weights=True)
        g = build_majority_graph(lb)
        assert minimal_dominant_set(g) == oracle.minimal_dominant(lb)
        assert minimal_undominated_set(g) == oracle.minimal_undominated(lb)
        assert minimal_weakly_stable_set(g) == oracle.minimal_weakly_stable(lb)
        assert uncovered_set(g, "I") == oracle.uncovered(lb, 1)
        assert uncovered_set(g, "II") == oracle.uncovered(lb, 2)
        assert richelson_set(g) == oracle.uncovered(lb, 3)
        assert fishburn_set(g) == oracle.uncovered(lb, 4)


def test_pairwise_rules_match_oracle():
    rng = random.Random(92)
    for _ in range(60):
        lb = random_board(rng, allow_weights=True, allow_min_direction=True)
        g = build_majority_graph(lb)
        mg = oracle.margins(lb)
        for a in lb.systems:
            for b in lb.systems:
                if a != b:
                    assert g.margin(a, b) == mg[(a, b)]
        assert condorcet_winner(g) == oracle.condorcet_winner(lb)
        assert vb.aggregate(lb, "copeland").winners == oracle.copeland_winners(lb, 1)
        assert vb.aggregate(lb, "copeland2").winners == oracle.copeland_winners(lb, 2)
        assert vb.aggregate(lb, "copeland3").winners == oracle.copeland_winners(lb, 3)
        assert vb.aggregate(lb, "minimax").winners == oracle.minimax_winners(lb)


def test_margin_antisymmetry_and_support_consistency():
    rng = random.Random(93)
    for _ in range(30):
        lb = random_board(rng)
        g = build_majority_graph(lb)
        for a in lb.systems:
            for b in lb.systems:
                if a == b:
                    continue
                assert g.margin(a, b) == -g.margin(b, a)
                if g.beats(a, b):
                    assert g.support(a, b) > 0
                    assert g.support(b, a) == 0
                elif not g.beats(b, a):
                    assert g.support(a, b) == 0
