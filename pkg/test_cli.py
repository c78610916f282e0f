import json

import pytest
from click.testing import CliRunner

from mucoal.automata import constant, dumps
from mucoal.cli import cli
from mucoal.frontend import save_model
from mucoal.functors import Powerset


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def chain_file(tmp_path, chain3):
    path = tmp_path / 'chain.json'
    save_model(chain3, path)
    return str(path)


def test_check_agrees_with_fixpoint(runner, chain_file):
    result = runner.invoke(cli, ['check', 'mu x. p | <>x', chain_file])
    assert result.exit_code == 0
    assert 'accepted (game) / true (fixpoint)' in result.output
    assert 'bound: none (exact)' in result.output
    result = runner.invoke(cli, ['check', '<>p', chain_file])
    assert result.exit_code == 1
    assert 'rejected (game) / false (fixpoint)' in result.output


def test_check_reports_input_errors(runner, chain_file):
    result = runner.invoke(cli, ['check', 'p &', chain_file])
    assert result.exit_code == 2
    assert 'error' in result.output


def test_monotone(runner):
    result = runner.invoke(cli, ['--bound', '2', 'monotone', 'mu x. p | <>x', '--var', 'p'])
    assert result.exit_code == 0
    assert 'monotone in p (enum)' in result.output
    result = runner.invoke(cli, ['--bound', '2', 'monotone', '~p', '--var', 'p'])
    assert result.exit_code == 1
    assert 'not monotone in p (enum)' in result.output
    assert 'rejected after enlarging p' in result.output


def test_synth(runner, tmp_path):
    result = runner.invoke(cli, ['synth', 'false'])
    assert result.exit_code == 1
    assert 'empty' in result.output
    result = runner.invoke(cli, ['synth', 'mu x. p | <>x'])
    assert result.exit_code == 0
    assert '"functor": "powerset"' in result.output
    path = tmp_path / 'false.aut'
    path.write_text(dumps(constant(Powerset(), False, ['p'])))
    result = runner.invoke(cli, ['synth', str(path)])
    assert result.exit_code == 1


def test_simulate(runner):
    result = runner.invoke(cli, ['simulate', 'nu y. mu x. (p & <>y) | <>x'])
    assert result.exit_code == 0
    assert result.output.startswith('functor powerset')
    result = runner.invoke(cli, ['simulate', '--equations', '<>p'])
    assert result.exit_code == 0
    assert '=[' in result.output


def test_one_step_commands(runner):
    result = runner.invoke(cli, ['onestep', 'disjunctive', 'nabla{a, b}'])
    assert result.exit_code == 0
    assert result.output.startswith('disjunctive')
    result = runner.invoke(cli, ['onestep', 'disjunctive', '[]a & <>b'])
    assert result.exit_code == 1
    assert 'counterexample' in result.output
    assert runner.invoke(cli, ['onestep', 'equiv', '<>(a | b)', '<>a | <>b']).exit_code == 0
    assert runner.invoke(cli, ['-f', 'bag', 'onestep', 'equiv', '<2>a', '<1>a']).exit_code == 1
    result = runner.invoke(cli, ['onestep', 'yoneda', 'nabla{a, b}'])
    assert result.exit_code == 0
    assert 'divisible' in result.output
    result = runner.invoke(cli, ['onestep', 'normalform', '<>a & []b'])
    assert result.exit_code == 0
    assert 'nabla' in result.output


def test_basis_selftest(runner):
    result = runner.invoke(cli, ['basis', 'powerset', 'selftest'])
    assert result.exit_code == 0
    assert '0 failed' in result.output


def test_lyndon(runner):
    result = runner.invoke(cli, ['lyndon', '<>(a | ~a) & <>a', '--var', 'a', '--one-step'])
    assert result.exit_code == 0
    assert '~' not in result.output.splitlines()[0]
    result = runner.invoke(cli, ['lyndon', '<>~a', '--var', 'a', '--one-step'])
    assert result.exit_code == 1
    result = runner.invoke(cli, ['lyndon', '~p', '--var', 'p'])
    assert result.exit_code == 0
    assert result.output.startswith('functor powerset')


def test_interpolate(runner):
    result = runner.invoke(cli, ['--bound', '2', 'interpolate', 'p & q', '--keep', 'q', '--consequence', 'q'])
    assert result.exit_code == 0
    assert 'certificate: input implies interpolant: holds' in result.output
    assert 'certificate: interpolant implies q: holds' in result.output


def test_caps_and_functor_options(runner):
    assert runner.invoke(cli, ['--cap', 'nonsense', 'model-schema']).exit_code == 2
    result = runner.invoke(cli, ['--cap', 'automaton_states=1', 'simulate', '<>p'])
    assert result.exit_code == 3
    assert 'inconclusive' in result.output
    assert runner.invoke(cli, ['-f', 'tree', 'simulate', 'p']).exit_code == 2


def test_model_schema(runner):
    result = runner.invoke(cli, ['model-schema'])
    assert result.exit_code == 0
    assert 'transitions' in json.loads(result.output)['properties']
