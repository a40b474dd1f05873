# -*- coding: utf-8 -*-

from itertools import islice
import gzip
import json

import pytest
from scipy.stats import chisquare

from regsat.core.errors import ParameterError
from regsat.core.errors import RetryBudgetError
from regsat.formula import batch
from regsat.formula import degree_audit
from regsat.formula import Formula
from regsat.formula import formula_stream
from regsat.formula import gen
from regsat.formula import generate
from regsat.formula import read_dimacs
from regsat.formula import reject_to_simple
from regsat.formula import simple_acceptance_estimate
from regsat.formula import write_batch
from regsat.formula import write_dimacs

################################################################################

@pytest.mark.parametrize('n, k, r', [ (2, 2, 1), (6, 3, 2), (30, 3, 6), (12, 4, 2) ])
def test_generate_is_regular(n, k, r):
    formula = generate(n, k, r, seed=1)
    assert formula.m * k == 2 * n * r
    assert all( len(clause) == k for clause in formula.clauses )
    assert formula.is_regular()
    assert set(degree_audit(formula).values()) == {r}

def test_generate_is_deterministic():
    assert generate(20, 3, 3, seed=7) == generate(20, 3, 3, seed=7)
    assert generate(20, 3, 3, seed=7).clauses != generate(20, 3, 3, seed=8).clauses

def test_generate_rejects_bad_parameters():
    with pytest.raises(ParameterError):
        generate(2, 3, 1)
    with pytest.raises(ParameterError):
        generate(0, 3, 3)
    with pytest.raises(ParameterError):
        generate(3, 1, 2)

def test_smallest_case():
    formula = generate(2, 2, 1, seed=0)
    assert formula.m == 2
    assert sorted( abs(x) for c in formula.clauses for x in c ) == [1, 1, 2, 2]
    assert sorted( x for c in formula.clauses for x in c ) == [-2, -1, 1, 2]

def test_legal_and_simple():
    formula = Formula(n=2, k=2, clauses=((1, -1), (2, -2)))
    assert formula.legal == (False, False)
    assert not formula.simple
    formula = Formula(n=2, k=2, clauses=((1, -2), (-1, 2)))
    assert formula.simple

def test_formula_validation():
    with pytest.raises(ParameterError):
        Formula(n=2, k=2, clauses=((1, 3),))
    with pytest.raises(ParameterError):
        Formula(n=2, k=2, clauses=((1, 2, -1),))
    with pytest.raises(ParameterError):
        Formula(n=2, k=2, clauses=((0, 1),))

def test_formula_stream_and_rejection():
    stream = formula_stream(2, 2, 1, seed=3)
    formulas = list(islice(stream, 5))
    assert len(set( f.seed for f in formulas )) == 5
    simple = reject_to_simple(formula_stream(2, 2, 1, seed=3))
    assert simple.simple
    assert simple.is_regular()

def test_stream_is_deterministic():
    a = [ f.clauses for f in islice(formula_stream(10, 3, 3, seed=5), 3) ]
    b = [ f.clauses for f in islice(formula_stream(10, 3, 3, seed=5), 3) ]
    assert a == b

def test_retry_budget():
    # With k = 2, n = 1 every clause holds x1 and its negation.
    with pytest.raises(RetryBudgetError):
        reject_to_simple(formula_stream(1, 2, 1, seed=0), budget=10)

def test_acceptance_estimate():
    assert simple_acceptance_estimate(3, 6) == pytest.approx(2.718281828 ** -12)

@pytest.mark.slow
def test_acceptance_rate_k3_r6():
    stream = formula_stream(100, 3, 6, seed=11)
    accepted = sum( f.simple for f in islice(stream, 5000) )
    # Poisson estimate exp(-12) is about 6e-6; a nonzero count is not expected.
    assert accepted / 5000.0 < 0.01

################################################################################

def test_dimacs_example():
    formula = read_dimacs(u'p cnf 2 1\n1 -2 0\n')
    assert formula.n == 2
    assert formula.k == 2
    assert formula.clauses == ((1, -2),)
    assert formula.r is None

def test_dimacs_round_trip():
    formula = generate(12, 3, 3, seed=42)
    text = write_dimacs(formula)
    assert u'p cnf 12 24' in text
    assert text.startswith(u'c seed 42\n')
    assert read_dimacs(text) == formula

def test_dimacs_multiline_clauses():
    formula = read_dimacs(u'c comment\np cnf 3 2\n1 -2\n3 0 -1\n2 -3 0\n')
    assert formula.clauses == ((1, -2, 3), (-1, 2, -3))

@pytest.mark.parametrize('text', [
    u'1 -2 0\n',
    u'p cnf 2\n1 -2 0\n',
    u'p cnf 2 2\n1 -2 0\n',
    u'p cnf 2 1\n1 -2\n',
    u'p cnf 2 2\n1 -2 0\n1 0\n',
    u'p cnf 2 1\n1 3 0\n',
    u'p cnf 2 1\n1 x 0\n',
    u'c only a comment\n'
])
def test_dimacs_errors(text):
    with pytest.raises(ParameterError):
        read_dimacs(text)

def test_read_dimacs_file(tmp_path):
    formula = generate(6, 3, 2, seed=9)
    path = tmp_path / u'f.cnf.gz'
    with gzip.open(str(path), 'wt') as fh:
        fh.write(write_dimacs(formula))
    assert read_dimacs(str(path)) == formula

def test_read_dimacs_missing_file(tmp_path):
    with pytest.raises(IOError):
        read_dimacs(str(tmp_path / u'missing.cnf'))

################################################################################

def test_write_batch(tmp_path):

    outdir = str(tmp_path / u'batch')
    manifest = write_batch(6, 3, 2, 17, 3, outdir)

    assert manifest[u'count'] == 3
    assert manifest[u'm'] == 8
    assert [ f[u'file'] for f in manifest[u'files'] ] == \
        [u'formula-0.cnf', u'formula-1.cnf', u'formula-2.cnf']

    with open(str(tmp_path / u'batch' / u'manifest.json')) as fh:
        assert json.load(fh)[u'seed'] == 17

    formula = read_dimacs(str(tmp_path / u'batch' / u'formula-1.cnf'))
    assert formula.seed == manifest[u'files'][1][u'seed']
    assert formula.is_regular()

def test_write_batch_simple(tmp_path):
    manifest = write_batch(6, 3, 1, 2, 4, str(tmp_path), simple=True)
    assert all( f[u'simple'] for f in manifest[u'files'] )

def test_gen_command():
    text = gen(4, 2, 1, seed=1)
    assert read_dimacs(str(text)) == generate(4, 2, 1, seed=1)

def test_batch_command(tmp_path):
    record = batch(4, 2, 1, 5, 2, str(tmp_path / u'out'))
    assert record[u'count'] == 2
    assert len(record[u'files']) == 2

################################################################################

@pytest.mark.slow
def test_configuration_model_is_uniform(configuration_law):

    law = configuration_law(2, 2, 1)
    keys = sorted(law)

    samples = 20000
    counts = dict.fromkeys(keys, 0)
    for seed in range(samples):
        formula = generate(2, 2, 1, seed=seed)
        key = tuple(sorted( tuple(sorted(c)) for c in formula.clauses ))
        counts[key] += 1

    observed = [ counts[key] for key in keys ]
    expected = [ float(law[key]) * samples for key in keys ]

    assert sum(observed) == samples
    assert chisquare(observed, expected).pvalue > 0.01

################################################################################
