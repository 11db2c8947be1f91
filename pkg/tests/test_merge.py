import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from opfcliques.decomposition import (
    CliqueList,
    CliqueTree,
    count_linking_constraints,
    decompose,
    satisfies_rip,
)
from opfcliques.exceptions import InvalidPlan
from opfcliques.merge import MergeModel, MergePlan, apply_merge, merge_rounds, solve_merge
from opfcliques.ordering import chordal_extension
from opfcliques.patterns import build_complex_pattern, realify_graph
from opfcliques.synthetic import transmission_like

from oracles import brute_merge, random_clique_forest


@pytest.fixture
def lmbm3_decomp(lmbm3_real):
    return decompose(chordal_extension(lmbm3_real, "min_degree"))


def test_model_edge_data(lmbm3_decomp):
    model = MergeModel(*lmbm3_decomp, s_max=50)
    assert model.overlap(0) == 4
    assert model.merged_size(0) == 6
    assert model.weight(0) == 10  # 0.5 * 4 * 5


def test_lmbm3_plan_selects_edge(lmbm3_decomp):
    plan = solve_merge(MergeModel(*lmbm3_decomp, s_max=50))
    assert plan == MergePlan((0,), 10)


def test_lmbm3_plan_respects_size_cap(lmbm3_decomp):
    assert solve_merge(MergeModel(*lmbm3_decomp, s_max=5)) == MergePlan((), 0)


def test_apply_lmbm3_plan(lmbm3_decomp):
    cl, tree = lmbm3_decomp
    cl2, tree2 = apply_merge(cl, tree, MergePlan((0,), 10))
    assert cl2.cliques == (frozenset(range(6)),)
    assert tree2.edges == ()
    assert count_linking_constraints(tree2) == 0


def test_empty_plan_is_identity(lmbm3_decomp):
    cl, tree = lmbm3_decomp
    assert apply_merge(cl, tree, MergePlan((), 0)) == (cl, tree)


def test_middle_edge_of_three_path():
    cl = CliqueList((frozenset({0, 1}), frozenset({1, 2}), frozenset({2, 3}), ))
    tree = CliqueTree(3, ((0, 1, frozenset({1})), (1, 2, frozenset({2}))))
    cl2, tree2 = apply_merge(cl, tree, MergePlan((1,), 1))
    assert cl2.cliques == (frozenset({0, 1}), frozenset({1, 2, 3}))
    assert tree2.edges == ((0, 1, frozenset({1})),)


def test_invalid_plans():
    cl = CliqueList((frozenset({0, 1}), frozenset({1, 2}), frozenset({2, 3})))
    tree = CliqueTree(3, ((0, 1, frozenset({1})), (1, 2, frozenset({2}))))
    with pytest.raises(InvalidPlan):
        apply_merge(cl, tree, MergePlan((0, 1), 2))
    with pytest.raises(InvalidPlan):
        apply_merge(cl, tree, MergePlan((5,), 1))


def test_nested_blocks_are_absorbed():
    # block 2 only holds the separator it shares with block 1
    cl = CliqueList((frozenset({0, 1}), frozenset({1, 2, 3}), frozenset({2, 3})))
    tree = CliqueTree(3, ((0, 1, frozenset({1})), (1, 2, frozenset({2, 3}))))
    cl2, tree2 = apply_merge(cl, tree, MergePlan((0,), 1))
    assert cl2.cliques == (frozenset({0, 1, 2, 3}),)
    assert tree2.edges == ()


def test_rounds_zero_is_identity(lmbm3_decomp):
    cl, tree, hist = merge_rounds(*lmbm3_decomp, s_max=50, rounds=0)
    assert (cl, tree) == lmbm3_decomp
    assert [h.nlc for h in hist] == [10]


def test_lmbm3_converges_after_one_round(lmbm3_decomp):
    cl, tree, hist = merge_rounds(*lmbm3_decomp, s_max=50, rounds=4)
    assert [(h.round, h.nc, h.nlc, h.max_block_size) for h in hist] == [(0, 2, 10, 5), (1, 1, 0, 6)]


def test_negative_rounds_rejected(lmbm3_decomp):
    with pytest.raises(ValueError):
        merge_rounds(*lmbm3_decomp, rounds=-1)


def test_lexicographic_tie_break():
    # star of three equal-weight edges around block 0: only one may be merged
    cl = CliqueList((frozenset({0, 1, 2, 3}), frozenset({1, 4}), frozenset({2, 5}), frozenset({3, 6})))
    tree = CliqueTree(4, ((0, 1, frozenset({1})), (0, 2, frozenset({2})), (0, 3, frozenset({3}))))
    assert solve_merge(MergeModel(cl, tree, 50)).selected_edges == (0,)


def test_grid_rounds_nlc_non_increasing():
    gr = realify_graph(build_complex_pattern(transmission_like(150, seed=4)))
    cl, tree = decompose(chordal_extension(gr, "min_degree"))
    _, _, hist = merge_rounds(cl, tree, s_max=50, rounds=6)
    nlcs = [h.nlc for h in hist]
    assert nlcs == sorted(nlcs, reverse=True)
    assert all(h.max_block_size <= max(hist[0].max_block_size, 50) for h in hist)


@settings(max_examples=200, deadline=None)
@given(r=st.integers(1, 13), s_max=st.integers(1, 20), seed=st.integers(0, 2**32 - 1))
def test_dp_matches_exhaustive_search(r, s_max, seed):
    cl, tree = random_clique_forest(np.random.default_rng(seed), r)
    assert len(tree.edges) <= 12
    plan = solve_merge(MergeModel(cl, tree, s_max))
    best, best_set = brute_merge(cl, tree, s_max)
    assert plan.objective == best
    assert plan.selected_edges == best_set


@settings(max_examples=150, deadline=None)
@given(r=st.integers(1, 13), s_max=st.integers(1, 20), seed=st.integers(0, 2**32 - 1))
def test_merge_invariants(r, s_max, seed):
    cl, tree = random_clique_forest(np.random.default_rng(seed), r)
    model = MergeModel(cl, tree, s_max)
    plan = solve_merge(model)
    ends = [x for k in plan.selected_edges for x in tree.edges[k][:2]]
    assert len(ends) == len(set(ends))
    assert all(model.merged_size(k) <= s_max for k in plan.selected_edges)
    assert plan.objective == sum(model.weight(k) for k in plan.selected_edges)
    cl2, tree2 = apply_merge(cl, tree, plan)
    assert count_linking_constraints(tree2) == count_linking_constraints(tree) - plan.objective
    assert len(cl2) <= len(cl)
    assert cl2.max_size() <= max(cl.max_size(), s_max)
    assert satisfies_rip(cl2.cliques, tree2)
    assert frozenset().union(*cl2.cliques) == frozenset().union(*cl.cliques)
