import math
from unittest.mock import patch

import numpy as np
import pytest

from corrcomplete.completion import (
    Block,
    RootPolicy,
    clique_order,
    complete,
    merge_models,
    merge_step,
    plan_merges,
)
from corrcomplete.errors import CliqueBlockNotPD, InvalidInput, NotChordal, SeparatorMismatch
from corrcomplete.graph import build_clique_tree, build_pattern_graph, maximal_cliques
from corrcomplete.linalg import cholesky, inverse_spd, log_det, schur_complement
from corrcomplete.models import XccyParams, random_instance, xccy_closed_form, xccy_pattern
from corrcomplete.pattern import DenseCorrMatrix, PartialMatrix
from tests.helpers import FIXTURE_FILLS


def _xccy_tree(m):
    return build_clique_tree(maximal_cliques(build_pattern_graph(m)))


def test_three_path_completion(three_path):
    completed, report = complete(three_path)
    assert completed.entry('a', 'c') == pytest.approx(0.3, abs=1e-15)
    assert report.log_det == pytest.approx(math.log(0.48), abs=1e-14)
    assert report.fill_value('c', 'a') == pytest.approx(0.3, abs=1e-15)
    assert [pair for pair, _ in report.fill_in] == [('a', 'c')]


def test_xccy_fixture_fills(xccy_fixture):
    completed, report = complete(xccy_fixture)
    assert len(report.fill_in) == 9
    for (row, col), expected in FIXTURE_FILLS.items():
        assert completed.entry(row, col) == pytest.approx(expected, abs=1e-15)
        assert report.fill_value(row, col) == pytest.approx(expected, abs=1e-15)


def test_fill_in_covers_unspecified_pairs(xccy_fixture):
    _, report = complete(xccy_fixture)
    filled = {frozenset(pair) for pair, _ in report.fill_in}
    expected = {frozenset(xccy_fixture.label_pair(p)) for p in xccy_fixture.unspecified_pairs()}
    assert filled == expected


def test_specified_entries_are_preserved_exactly(xccy_fixture):
    completed, _ = complete(xccy_fixture)
    for (i, j), value in xccy_fixture.specified.items():
        assert completed.values[i, j] == value
        assert completed.values[j, i] == value
    assert np.all(np.diag(completed.values) == 1.0)


def test_fully_specified_input_is_unchanged():
    values = np.array([[1.0, 0.2, 0.1], [0.2, 1.0, 0.3], [0.1, 0.3, 1.0]])
    m = DenseCorrMatrix(('a', 'b', 'c'), values).to_partial()
    completed, report = complete(m)
    assert np.array_equal(completed.values, values)
    assert report.fill_in == ()
    assert report.steps == ()


def test_disconnected_components_fill_zero():
    m = PartialMatrix.from_entries(('a', 'b', 'c', 'd'), [('a', 'b', 0.5), ('c', 'd', -0.4)])
    completed, report = complete(m)
    assert completed.entry('a', 'c') == 0.0
    assert completed.entry('b', 'd') == 0.0
    assert report.diagnostics['separator_sizes'] == [0]


def test_single_variable():
    completed, report = complete(PartialMatrix(('x',), {}))
    assert completed.values.tolist() == [[1.0]]
    assert report.log_det == 0.0


def test_not_chordal_carries_labels(four_cycle):
    with pytest.raises(NotChordal) as e:
        complete(four_cycle)
    assert e.value.labels == ['a', 'b', 'c', 'd']


def test_clique_block_not_pd_names_the_clique():
    m = PartialMatrix.from_entries(
        ('a', 'b', 'c', 'd'),
        [('a', 'b', 0.99), ('a', 'c', 0.99), ('b', 'c', -0.99), ('c', 'd', 0.1)],
    )
    with pytest.raises(CliqueBlockNotPD) as e:
        complete(m)
    assert e.value.labels == ['a', 'b', 'c']


def test_clique_order_examples(xccy_fixture):
    tree = _xccy_tree(xccy_fixture)
    assert clique_order(tree, 1) == [1, 0, 2, 3]
    assert clique_order(tree, 0) == [0, 1, 2, 3]


def test_clique_order_single_clique():
    m = PartialMatrix.from_entries(('a', 'b'), [('a', 'b', 0.1)])
    tree = _xccy_tree(m)
    assert clique_order(tree, 0) == [0]


def test_plan_merges_separators(xccy_fixture):
    plan = plan_merges(xccy_fixture)
    assert plan.root == 1
    labels = xccy_fixture.labels
    seps = [[labels[v] for v in sorted(s.separator)] for s in plan.steps]
    assert seps == [['E'], ['A'], ['X']]
    # absorbed vertices are the processed ones outside the separator
    assert sorted(labels[v] for v in plan.steps[-1].absorbed) == ['A', 'E', 'nu_A', 'nu_E']


def test_explicit_root_resolution(xccy_fixture):
    assert plan_merges(xccy_fixture, RootPolicy.EXPLICIT, ['E', 'nu_E']).root == 0
    assert plan_merges(xccy_fixture, RootPolicy.EXPLICIT, 'nu_X').root == 3
    assert plan_merges(xccy_fixture, RootPolicy.INDEX, 2).root == 2
    with pytest.raises(InvalidInput):
        plan_merges(xccy_fixture, RootPolicy.EXPLICIT, ['E', 'nu_X'])
    with pytest.raises(InvalidInput):
        plan_merges(xccy_fixture, RootPolicy.INDEX, 9)


def test_merge_step_cross_currency_steps():
    # acc over {E, A, X} = {0, 1, 2}, clique {X, nu_X} = {2, 3}
    acc = Block((0, 1, 2), [[1.0, 0.4, 0.5], [0.4, 1.0, 0.6], [0.5, 0.6, 1.0]])
    clique = Block((2, 3), [[1.0, 0.7], [0.7, 1.0]])
    merged, step = merge_step(acc, clique, {2})
    assert merged.sub((0, 3))[0, 1] == pytest.approx(0.35, abs=1e-15)
    assert merged.sub((1, 3))[0, 1] == pytest.approx(0.42, abs=1e-15)
    assert {pair for pair, _ in step.filled} == {(0, 3), (1, 3)}

    clique = Block((1, 4), [[1.0, 0.3], [0.3, 1.0]])
    merged, step = merge_step(merged, clique, {1})
    assert merged.sub((3, 4))[0, 1] == pytest.approx(0.3 * 0.7 * 0.6, abs=1e-15)
    assert {pair for pair, _ in step.filled} == {(0, 4), (2, 4), (3, 4)}


def test_merge_step_empty_separator():
    merged, step = merge_step(Block((0,), [[1.0]]), Block((1,), [[1.0]]), set())
    assert merged.values.tolist() == [[1.0, 0.0], [0.0, 1.0]]
    assert step.filled == (((0, 1), 0.0),)


def test_merge_step_checks_separator():
    acc = Block((0, 1), [[1.0, 0.5], [0.5, 1.0]])
    with pytest.raises(InvalidInput):
        merge_step(acc, Block((1, 2), [[1.0, 0.2], [0.2, 1.0]]), set())
    acc3 = Block((0, 1, 2), [[1.0, 0.5, 0.1], [0.5, 1.0, 0.2], [0.1, 0.2, 1.0]])
    clique = Block((1, 2, 3), [[1.0, 0.25, 0.0], [0.25, 1.0, 0.0], [0.0, 0.0, 1.0]])
    with pytest.raises(SeparatorMismatch):
        merge_step(acc3, clique, {1, 2})


def test_merge_models():
    left = DenseCorrMatrix(('a', 'b'), [[1.0, 0.6], [0.6, 1.0]])
    right = DenseCorrMatrix(('b', 'c'), [[1.0, 0.5], [0.5, 1.0]])
    merged, step = merge_models(left, right)
    assert merged.labels == ('b', 'c', 'a')
    assert merged.entry('a', 'c') == pytest.approx(0.3, abs=1e-15)
    assert merged.entry('a', 'b') == 0.6


def test_merge_models_separator_mismatch():
    left = DenseCorrMatrix(('a', 'b', 'c'), [[1.0, 0.1, 0.2], [0.1, 1.0, 0.3], [0.2, 0.3, 1.0]])
    right = DenseCorrMatrix(('b', 'c', 'd'), [[1.0, 0.31, 0.1], [0.31, 1.0, 0.1], [0.1, 0.1, 1.0]])
    with pytest.raises(SeparatorMismatch) as e:
        merge_models(left, right)
    assert e.value.labels == ['b', 'c']
    merged, _ = merge_models(left, right, atol=0.02)
    assert merged.entry('b', 'c') == 0.31


def test_report_diagnostics(xccy_fixture):
    _, report = complete(xccy_fixture)
    d = report.diagnostics
    assert d['clique_count'] == 4
    assert d['largest_clique'] == 3
    assert d['separator_sizes'] == [1, 1, 1]
    assert d['zero_fill_pd'] is True
    assert d['zero_fill_log_det'] <= report.log_det
    assert report.clique_tree['root'] == 1
    assert report.clique_tree['heights'] == [1, 0, 1, 1]
    document = report.to_dict()
    assert len(document['steps']) == 3
    assert document['fill_in'][0].keys() == {'row', 'col', 'value'}


def test_step_log_dets_are_finite_and_match(xccy_fixture):
    completed, report = complete(xccy_fixture)
    assert len(report.step_log_dets) == 4
    assert all(math.isfinite(v) for v in report.step_log_dets)
    assert report.step_log_dets[-1] == pytest.approx(cholesky(completed.values).log_det, abs=1e-12)


def _assert_step_increments(m):
    completed, report = complete(m)
    for k, step in enumerate(report.steps):
        clique = sorted(step.new_clique)
        sub = completed.values[np.ix_(clique, clique)]
        block = [clique.index(v) for v in sorted(step.separator)]
        increment = report.step_log_dets[k + 1] - report.step_log_dets[k]
        assert increment == pytest.approx(log_det(schur_complement(sub, block)), abs=1e-10)


def test_step_log_det_increments_xccy(xccy_fixture):
    _assert_step_increments(xccy_fixture)


@pytest.mark.parametrize('seed', range(20))
def test_step_log_det_increments_random(seed):
    pattern, _ = random_instance(3 + seed, seed)
    _assert_step_increments(pattern)


@patch('corrcomplete.completion.engine.logger')
def test_complete_logs_summary(mock_logger, three_path):
    complete(three_path)
    mock_logger.info.assert_called_once()
    args, kwargs = mock_logger.info.call_args
    assert args == ('Completed correlation matrix',)
    assert kwargs['extra']['filled'] == 1


@pytest.mark.parametrize('seed', range(50))
def test_xccy_matches_closed_form(seed):
    params = XccyParams.sample(np.random.default_rng(seed))
    completed, _ = complete(xccy_pattern(params))
    np.testing.assert_allclose(completed.values, xccy_closed_form(params).values, rtol=0, atol=1e-12)


@pytest.mark.parametrize('seed', range(30))
def test_random_completion_properties(seed):
    m, _ = random_instance(4 + seed % 20, seed)
    completed, report = complete(m)
    factor = cholesky(completed.values)
    assert factor.min_pivot > 0
    inverse = inverse_spd(completed.values)
    for i, j in m.unspecified_pairs():
        assert abs(inverse[i, j]) <= 1e-10
    for (i, j), value in m.specified.items():
        assert completed.values[i, j] == value


@pytest.mark.parametrize('seed', range(20))
def test_root_invariance(seed):
    m, _ = random_instance(10, 500 + seed)
    reference, report = complete(m)
    for index in range(report.diagnostics['clique_count']):
        other, _ = complete(m, RootPolicy.INDEX, index)
        np.testing.assert_allclose(other.values, reference.values, rtol=0, atol=1e-10)


def test_xccy_root_invariance(xccy_fixture):
    reference, _ = complete(xccy_fixture)
    for root in (['E', 'nu_E'], ['E', 'A', 'X'], ['A', 'nu_A'], ['X', 'nu_X']):
        other, _ = complete(xccy_fixture, RootPolicy.EXPLICIT, root)
        np.testing.assert_allclose(other.values, reference.values, rtol=0, atol=1e-10)


@pytest.mark.slow
@pytest.mark.parametrize('seed', range(1000))
def test_xccy_matches_closed_form_full(seed):
    params = XccyParams.sample(np.random.default_rng(10_000 + seed))
    completed, _ = complete(xccy_pattern(params))
    np.testing.assert_allclose(completed.values, xccy_closed_form(params).values, rtol=0, atol=1e-12)
