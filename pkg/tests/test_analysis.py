from __future__ import annotations

from fractions import Fraction

import pytest

from adq.analysis import (
    ExpectedCost,
    check_theorems,
    expected_questions,
    optimal_set,
    scenarios,
)
from adq.met import approx_gt, compute_metrics, sea, up_down
from adq.strategies import PreconditionError, StrategyId

from conftest import build_met, chain, random_uniform_met, random_variable_met


def test_scenarios_are_sea_plus_nobug(figure4):
    assert scenarios(figure4) == [0, 1, 2, 3, 4, None]
    assert scenarios(figure4, include_nobug=False) == [0, 1, 2, 3, 4]


def test_expected_cost_exact_value():
    cost = ExpectedCost(total=16, scenarios=6)
    assert cost.value == Fraction(16, 6)
    assert cost.value * cost.scenarios == cost.total


def test_optimal_set_figure4(figure4):
    assert optimal_set(figure4) == {1, 3}


def test_optimal_set_figure7(figure7):
    assert optimal_set(figure7) == {1}


def test_optimal_set_single_node():
    assert optimal_set(build_met({})) == {0}


def test_optimal_set_empty_area_raises():
    from adq.met import MetNode, make_met

    met = make_met([MetNode(0, "only")], root=0, root_marked_wrong=True)
    with pytest.raises(PreconditionError):
        optimal_set(met)


def test_chain_costs_by_first_pick(figure3):
    # Middle first: 8 questions over the four scenarios; leaf first: 9.
    mid = expected_questions(figure3, StrategyId.DQO, first_pick=2)
    leaf = expected_questions(figure3, StrategyId.DQO, first_pick=1)
    assert mid.value == Fraction(8, 4)
    assert leaf.value == Fraction(9, 4)
    assert mid.scenarios == leaf.scenarios == 4


def test_chain_costs_on_plain_ids():
    met = chain(3)
    assert expected_questions(met, StrategyId.DQO, first_pick=1).value == Fraction(8, 4)
    assert expected_questions(met, StrategyId.DQO, first_pick=2).value == Fraction(9, 4)


def test_figure4_dqo_cost(figure4):
    cost = expected_questions(figure4, StrategyId.DQO)
    assert cost.value == Fraction(16, 6)
    assert cost.scenarios == 6


def test_figure4_both_optimal_picks_equal_cost(figure4):
    w4 = expected_questions(figure4, StrategyId.DQO, first_pick=1)
    w2 = expected_questions(figure4, StrategyId.DQO, first_pick=3)
    assert w4.value == w2.value == Fraction(16, 6)


def test_optimal_first_pick_beats_forced_bad_picks(figure3, figure4):
    for met, best_first in ((figure3, 2), (figure4, 1)):
        best = expected_questions(met, StrategyId.DQO, first_pick=best_first).value
        for n in sorted(sea(met)):
            if n in optimal_set(met):
                continue
            forced = expected_questions(met, StrategyId.DQO, first_pick=n).value
            assert best <= forced


def test_selected_nodes_hit_brute_force_optimum():
    for seed in range(60):
        met = random_uniform_met(seed, max_nodes=30)
        from adq.strategies import select_dqo

        assert select_dqo(met).chosen in optimal_set(met)


def test_check_theorems_clean_on_uniform():
    for seed in range(60):
        assert check_theorems(random_uniform_met(seed, max_nodes=25)) == []


def test_check_theorems_clean_on_variable():
    for seed in range(60):
        assert check_theorems(random_variable_met(seed, max_nodes=25)) == []


def test_check_theorems_figure7_and_sum_comparison(figure7):
    assert check_theorems(figure7) == []
    # The decisive comparison on this tree: total 20 against 12 + 8 - 1.
    metrics = compute_metrics(figure7)
    assert metrics[0].w >= metrics[1].w + metrics[2].w - figure7.nodes[0].wi
    assert not approx_gt(metrics[1].w + metrics[2].w - figure7.nodes[0].wi, metrics[0].w)


def test_majority_condition_matches_direct_comparison():
    met = chain(3, weights={0: 1.0, 1: 4.0, 2: 1.0})
    assert check_theorems(met) == []
    metrics = compute_metrics(met)
    root_w = metrics[0].w
    for n in sea(met):
        up, down = up_down(met, n)
        lhs = down > up
        rhs = metrics[n].w - met.nodes[n].wi / 2 > root_w / 2
        assert lhs == rhs


def test_perfect_split_node_is_optimal():
    # A node with up == down (gap 0) must land in the optimal set.
    met = build_met({0: [1], 1: [2], 2: [3]})  # 4-chain: node 1 has up=1, down=2... pick one with equality
    metrics = compute_metrics(met)
    perfect = [n for n in sea(met) if metrics[n].up == metrics[n].down]
    for n in perfect:
        assert n in optimal_set(met)
    assert check_theorems(met) == []
