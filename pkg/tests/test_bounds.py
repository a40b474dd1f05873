# -*- coding: utf-8 -*-

from functools import lru_cache
import math

import numpy as np
import pytest

from regsat.asymptotics import first_moment_growth_rate
import regsat.bounds as bounds_module
from regsat.bounds import bounds
from regsat.bounds import dominance
from regsat.bounds import DOMINANT
from regsat.bounds import find_r_star
from regsat.bounds import GridConfig
from regsat.bounds import NOT_DOMINANT
from regsat.bounds import reference_ratio
from regsat.bounds import second_moment_prefactor
from regsat.bounds import second_moment_probability_constant
from regsat.bounds import SearchConfig
from regsat.bounds import threshold_table
from regsat.bounds import ThresholdBounds
from regsat.bounds import upper_bound
from regsat.bounds import verify_dominance
from regsat.core import const
from regsat.core.errors import ParameterError
from regsat.params import Params

################################################################################

_small_grid = GridConfig(size=41, refine_levels=1, refine_factor=4, exclusion_radius=0.05)

################################################################################

def test_upper_bound_closed_form():
    alpha_upper, _ = upper_bound(3, 0.5)
    assert alpha_upper == pytest.approx(8.0 * math.log(2.0) / (0.5 + 0.5 * math.log(0.5)))
    assert alpha_upper == pytest.approx(36.14, abs=0.01)

@pytest.mark.parametrize('k', [3, 6, 12])
def test_upper_bound_p1(k):
    alpha_upper, alpha_upper_tight = upper_bound(k, 1.0)
    assert alpha_upper == pytest.approx(2.0 ** k * math.log(2.0))
    assert alpha_upper_tight <= alpha_upper

@pytest.mark.parametrize('k', range(3, 13))
def test_tight_bound_below_closed_form(k):
    # 10 widths by 100 fractions spanning [1e-6, 1].
    for p in np.geomspace(1e-6, 1.0, 100):
        alpha_upper, alpha_upper_tight = upper_bound(k, float(p))
        assert 0.0 < alpha_upper_tight <= alpha_upper * (1.0 + 1e-12)

def test_upper_bound_decreases_in_p():
    values = [ upper_bound(6, p)[0] for p in (0.1, 0.3, 0.5, 0.7, 0.9) ]
    assert all( a > b for a, b in zip(values, values[1:]) )

@pytest.mark.parametrize('p', [0.0, 1e-7, 1.5])
def test_upper_bound_rejects_p(p):
    with pytest.raises(ParameterError):
        upper_bound(3, p)

def test_bounds_command():
    table = bounds(k=[3], p=[0.5, 1.0])
    assert table.headings == ('k', 'p', 'alpha_upper', 'alpha_upper_tight')
    assert len(table) == 2
    assert table['alpha_upper'][1] == pytest.approx(8.0 * math.log(2.0))

def test_bounds_command_defaults():
    assert len(bounds()) == 27

################################################################################

def test_grid_config_validation():
    with pytest.raises(ParameterError):
        GridConfig(size=40)
    with pytest.raises(ParameterError):
        GridConfig(size=3)
    with pytest.raises(ParameterError):
        GridConfig(clamp=0.5)
    assert 'size=41' in _small_grid.meta()

def test_dominant_below_threshold():
    report = verify_dominance(Params(k=3, r=1.0, p=0.9), grid=_small_grid)
    assert report.verdict == DOMINANT
    assert all( x < 0.0 for x in report.hessian_eigenvalues )
    assert report.max_surplus < -report.grid.margin
    assert report.dominant_value == pytest.approx(
        2.0 * first_moment_growth_rate(Params(k=3, r=1.0, p=0.9)), abs=1e-8)

def test_dominant_with_default_refinement():
    report = verify_dominance(Params(k=3, r=1.0, p=0.9), grid=GridConfig(size=41))
    assert report.verdict == DOMINANT
    assert report.failed_points == ()
    assert report.as_record()[u'dismissed_failures'] == report.dismissed_failures

def test_not_dominant_above_first_moment_bound():
    params = Params(k=3, r=12.0, p=0.9)
    # A negative first-moment rate puts s(1, c) = phi above s* = 2 phi.
    assert first_moment_growth_rate(params) < 0.0
    report = verify_dominance(params, grid=_small_grid)
    assert report.verdict == NOT_DOMINANT

def test_not_dominant_p1():
    params = Params(k=3, r=6.0, p=1.0)
    assert first_moment_growth_rate(params) < 0.0
    assert verify_dominance(params, grid=_small_grid).verdict == NOT_DOMINANT

def test_report_record():
    report = verify_dominance(Params(k=3, r=1.0, p=0.9), grid=_small_grid)
    record = report.as_record()
    assert record['verdict'] == report.verdict
    assert record['k'] == 3
    assert len(record['hessian_eigenvalues']) == 2
    assert report.surplus(0.5, Params(k=3, r=1.0, p=0.9).c ** 2) == 0.0

def test_probability_constant_positive():
    assert second_moment_probability_constant(Params(k=3, r=1.0, p=0.9)) > 0.0

def test_second_moment_prefactor():
    assert second_moment_prefactor(Params(k=3, r=1.0, p=0.9)) > 0.0
    with pytest.raises(ParameterError):
        second_moment_prefactor(Params(k=3, r=1.0, p=1.0))

def test_dominance_command(isolated_config, monkeypatch):
    monkeypatch.setattr(bounds_module, u'config', isolated_config)
    record = dominance(3, 1.0, p=0.9, grid=41)
    assert record[u'verdict'] == DOMINANT
    assert record[u'probability_constant'] > 0.0
    assert record[u'second_moment_prefactor'] > 0.0
    assert u'size=41' in record[u'grid_meta']

################################################################################

def test_reference_ratio():
    assert reference_ratio(3, 0.5) == 0.295
    assert reference_ratio(6, 0.9) == 0.855
    assert reference_ratio(12, 0.1) == 0.977
    assert reference_ratio(4, 0.5) is None
    assert reference_ratio(3, 0.55) is None

def test_table_constants_are_frozen():
    assert const.table_k == (3, 6, 12)
    assert len(const.table_p) == len(const.reference_ratios[3])
    with pytest.raises(TypeError):
        const.table_k = (3,)
    with pytest.raises(TypeError):
        const.reference_ratios[4] = ()
    with pytest.raises(TypeError):
        del const.table_p

def test_reference_ratios_increase_with_k():
    for p in const.table_p:
        ratios = [ reference_ratio(k, p) for k in const.table_k ]
        assert all( a < b for a, b in zip(ratios, ratios[1:]) )

def test_threshold_row():
    tb = ThresholdBounds(k=3, p=0.5, alpha_upper=36.0, alpha_upper_tight=30.0,
        r_star_real=5.5, r_star_int=5, alpha_lower=11.0 / 3.0, ratio=0.1,
        verdict=DOMINANT, grid_meta='size=5')
    row = tb.as_row()
    assert len(row) == len(ThresholdBounds._row_headings)
    assert row[0] == 3 and row[5] == 5

@pytest.mark.slow
def test_find_r_star_brackets_bounds():
    tb = find_r_star(3, 0.9, search=SearchConfig(rel_tol=1e-2, max_scans=25),
        grid=_small_grid)
    assert tb.alpha_lower <= tb.alpha_upper
    assert 0.0 < tb.ratio <= 1.0
    assert tb.r_star_int == math.floor(tb.r_star_real)

@lru_cache(maxsize=None)
def _threshold_cell(k, p):
    return find_r_star(k, p)

@pytest.mark.slow
@pytest.mark.parametrize('p', const.table_p)
@pytest.mark.parametrize('k', const.table_k)
def test_reference_ratios(k, p):
    tb = _threshold_cell(k, p)
    assert tb.alpha_lower <= tb.alpha_upper
    assert tb.ratio == pytest.approx(reference_ratio(k, p), abs=0.01)

@pytest.mark.slow
@pytest.mark.parametrize('p', const.table_p)
def test_ratio_increases_with_k(p):
    ratios = [ _threshold_cell(k, p).ratio for k in const.table_k ]
    assert all( a < b for a, b in zip(ratios, ratios[1:]) )

@pytest.mark.slow
def test_threshold_table_cells():
    search = SearchConfig(rel_tol=1e-2, max_scans=25)
    rows = threshold_table([3], [0.5, 0.9], threads=1, search=search, grid=_small_grid)
    assert [ (tb.k, tb.p) for tb in rows ] == [ (3, 0.5), (3, 0.9) ]
    assert all( tb.alpha_lower <= tb.alpha_upper for tb in rows )

################################################################################
