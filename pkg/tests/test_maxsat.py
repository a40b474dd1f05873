# -*- coding: utf-8 -*-

from itertools import product

import numpy as np
import pytest

from regsat.core.errors import CapacityError
from regsat.core.errors import ParameterError
from regsat.formula import Formula
from regsat.formula import generate
from regsat.formula import write_dimacs
from regsat.maxsat import concentration_bound
from regsat.maxsat import count_satisfied
from regsat.maxsat import exhaustive_maxsat
from regsat.maxsat import experiment
from regsat.maxsat import ExperimentSummary
from regsat.maxsat import local_search_maxsat
from regsat.maxsat import maxsat
from regsat.maxsat import p_sat_experiment

################################################################################

def _brute_force(formula):
    return max( count_satisfied(formula, values)
        for values in product((False, True), repeat=formula.n) )

################################################################################

def test_single_clause():
    formula = Formula(n=2, k=2, clauses=((1, -2),))
    result = exhaustive_maxsat(formula)
    assert result.best_count == 1
    assert result.best_fraction == 1.0
    assert count_satisfied(formula, result.best_assignment) == 1

def test_count_satisfied():
    formula = Formula(n=2, k=2, clauses=((1, 2), (-1, -2), (1, -1)))
    assert count_satisfied(formula, [True, True]) == 2
    assert count_satisfied(formula, [True, False]) == 3
    with pytest.raises(ParameterError):
        count_satisfied(formula, [True])

@pytest.mark.parametrize('n, k, r, seed', [ (8, 2, 2, 0), (9, 3, 3, 1), (12, 3, 4, 2),
    (8, 4, 4, 3) ])
def test_exhaustive_matches_brute_force(n, k, r, seed):
    formula = generate(n, k, r, seed=seed)
    result = exhaustive_maxsat(formula)
    assert result.best_count == _brute_force(formula)
    assert count_satisfied(formula, result.best_assignment) == result.best_count
    assert result.evaluations == 2 ** n

def _relabelled(formula, seed):
    rng = np.random.default_rng(seed)
    target = rng.permutation(formula.n) + 1
    sign = rng.choice((-1, 1), size=formula.n)
    clauses = [ tuple( int(np.sign(x) * sign[abs(x) - 1] * target[abs(x) - 1])
        for x in clause ) for clause in formula.clauses ]
    order = rng.permutation(len(clauses))
    return Formula(n=formula.n, k=formula.k, clauses=tuple( clauses[i] for i in order ))

@pytest.mark.parametrize('seed', range(4))
def test_exhaustive_invariant_under_relabelling(seed):
    formula = generate(10, 3, 6, seed=seed)
    relabelled = _relabelled(formula, seed)
    assert exhaustive_maxsat(relabelled).best_count == exhaustive_maxsat(formula).best_count

def test_exhaustive_with_gray_code_block():
    # n above the numpy block size exercises the Gray-code walk.
    formula = generate(18, 3, 6, seed=4)
    result = exhaustive_maxsat(formula)
    assert count_satisfied(formula, result.best_assignment) == result.best_count
    assert result.best_count >= local_search_maxsat(formula, seed=4).best_count

def test_exhaustive_capacity():
    formula = generate(12, 3, 3, seed=0)
    with pytest.raises(CapacityError):
        exhaustive_maxsat(formula, cap=10)

@pytest.mark.parametrize('seed', range(5))
def test_local_search_below_exhaustive(seed):
    formula = generate(12, 3, 5, seed=seed)
    exact = exhaustive_maxsat(formula).best_count
    found = local_search_maxsat(formula, seed=seed)
    assert found.best_count <= exact
    assert count_satisfied(formula, found.best_assignment) == found.best_count

def test_local_search_zero_budget():
    formula = generate(10, 3, 3, seed=1)
    result = local_search_maxsat(formula, budget=0, seed=1)
    assert result.evaluations == 1
    assert count_satisfied(formula, result.best_assignment) == result.best_count

def test_local_search_budget_monotone():
    formula = generate(30, 3, 6, seed=2)
    counts = [ local_search_maxsat(formula, budget=b, seed=7).best_count
        for b in (0, 10, 100, 1000) ]
    assert all( a <= b for a, b in zip(counts, counts[1:]) )

def test_local_search_rejects_negative_budget():
    with pytest.raises(ParameterError):
        local_search_maxsat(generate(4, 2, 1, seed=0), budget=-1)

def test_local_search_solves_easy_formula():
    formula = generate(42, 3, 1, seed=3)
    result = local_search_maxsat(formula, seed=3)
    assert result.best_count == formula.m

def test_result_record():
    formula = generate(6, 3, 2, seed=5)
    record = exhaustive_maxsat(formula).as_record()
    assert u'wall_time' not in record
    assert len(record[u'best_assignment']) == 6
    assert set(record[u'best_assignment']) <= {u'0', u'1'}

################################################################################

def test_concentration_bound():
    assert concentration_bound(0.0, 2.0, 100) == 2.0
    assert concentration_bound(10.0, 2.0, 100) == pytest.approx(2.0 * np.exp(-1.0))

def test_experiment_summary():
    summary = p_sat_experiment(3, 2, 0.5, 12, 6, seed=1)
    assert isinstance(summary, ExperimentSummary)
    assert summary.method == u'exhaustive'
    assert summary.samples == 6
    assert 0.0 <= summary.psat_fraction <= 1.0
    assert 0.0 < summary.mean_frac <= 1.0
    assert len(summary.as_row()) == len(ExperimentSummary._row_headings)

def test_experiment_is_deterministic():
    a = p_sat_experiment(3, 3, 0.5, 12, 4, seed=9)
    b = p_sat_experiment(3, 3, 0.5, 12, 4, seed=9)
    assert a.as_row() == b.as_row()

def test_experiment_trend_in_r():
    low = p_sat_experiment(3, 1, 1.0, 15, 20, seed=3)
    high = p_sat_experiment(3, 9, 1.0, 15, 20, seed=3)
    assert low.psat_fraction >= high.psat_fraction
    assert low.mean_frac >= high.mean_frac

def test_experiment_trend_in_p():
    strict = p_sat_experiment(3, 6, 1.0, 16, 12, seed=5)
    loose = p_sat_experiment(3, 6, 0.5, 16, 12, seed=5)
    assert loose.psat_fraction >= strict.psat_fraction

def test_experiment_rejects_method():
    with pytest.raises(ParameterError):
        p_sat_experiment(3, 3, 0.5, 12, 2, seed=0, method=u'sat')

@pytest.mark.slow
def test_experiment_below_and_above_threshold():
    # k = 3, p = 0.9: alpha = 2 lies well below, alpha = 12 above the upper bound.
    below = p_sat_experiment(3, 3, 0.9, 40, 10, seed=1, method=u'local-search')
    above = p_sat_experiment(3, 18, 0.9, 40, 10, seed=1, method=u'local-search')
    assert below.psat_fraction == 1.0
    assert above.psat_fraction == 0.0

################################################################################

def test_maxsat_command(tmp_path):
    formula = generate(8, 3, 3, seed=6)
    path = tmp_path / u'f.cnf'
    path.write_text(write_dimacs(formula))
    record = maxsat(str(path))
    assert record[u'method'] == u'exhaustive'
    assert record[u'best_count'] == _brute_force(formula)
    assert record[u'seed'] == 6

def test_maxsat_command_local_search(tmp_path):
    path = tmp_path / u'f.cnf'
    path.write_text(write_dimacs(generate(8, 3, 3, seed=6)))
    record = maxsat(str(path), method=u'local-search', budget=50, seed=2)
    assert record[u'method'] == u'local-search'
    assert record[u'evaluations'] <= 51

def test_experiment_command():
    table = experiment(3, [2, 3], 0.5, 12, 3, 4)
    assert len(table) == 2
    assert table[u'r'] == [2, 3]
    assert table.headings == ExperimentSummary._row_headings

################################################################################

@pytest.mark.slow
def test_experiment_spread_shrinks_with_n():
    # alpha = 8 leaves every formula unsatisfiable, so the max-sat fraction varies.
    small = p_sat_experiment(3, 12, 0.9, 6, 40, seed=11, method=u'exhaustive')
    large = p_sat_experiment(3, 12, 0.9, 18, 40, seed=11, method=u'exhaustive')
    assert 0.0 < large.std_frac < small.std_frac

################################################################################
