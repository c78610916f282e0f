import pytest

from mucoal.automata import accepts, enumerate_models, simulate
from mucoal.bases import basis_for
from mucoal.errors import FormulaError, NonMonotoneError
from mucoal.frontend import compile_formula, parse, satisfies
from mucoal.functors import Powerset
from mucoal.semantics import one_step_equivalent
from mucoal.syntax import modal, var
from mucoal.transforms import (InterpolationRequest, depends_only_on, exists_p, is_monotone, lyndon_automaton,
                               one_step_lyndon, positive_in, uniform_interpolant)

a = var('a')
P = Powerset()


def disjunctive(text: str):
    return simulate(compile_formula(parse(text), P).automaton, basis_for(P))


def test_positive_in():
    assert not positive_in(parse('<>~p & q'), 'p')
    assert positive_in(parse('<>~p & q'), 'q')
    assert positive_in(parse('mu x. p | <>x'), 'p')


def test_one_step_lyndon_removes_harmless_negations():
    alpha = modal('<>', a | ~a) & modal('<>', a)
    result = one_step_lyndon(alpha, 'a', P)
    assert result.verified
    assert not result.bounded
    assert positive_in(result.formula, 'a')
    assert one_step_equivalent(result.formula, alpha, P).equivalent


def test_one_step_lyndon_rejects_non_monotone_input():
    with pytest.raises(NonMonotoneError) as info:
        one_step_lyndon(modal('<>', ~a), 'a', P)
    smaller, larger = info.value.counterexample
    assert smaller.carrier == larger.carrier


def test_lyndon_automaton_reads_smaller_colours():
    aut = compile_formula(parse('~p'), P).automaton
    lyndon = lyndon_automaton(aut, 'p')
    assert aut.theta(aut.initial, ['p']) != lyndon.theta(lyndon.initial, ['p'])
    assert lyndon.theta(lyndon.initial, []) == aut.theta(aut.initial, [])


def test_reachability_is_monotone():
    verdict = is_monotone(parse('mu x. p | <>x'), 'p', functor=P, bound=2)
    assert verdict.monotone
    assert verdict.mode == 'enum'
    assert verdict.bounded
    assert verdict.checked > 0


@pytest.mark.parametrize('text', ['~p', '<>~p & q', 'nu x. ~p & []x'])
def test_negated_letters_are_caught(text):
    verdict = is_monotone(parse(text), 'p', functor=P, bound=2)
    assert not verdict.monotone
    smaller, larger = verdict.counterexample
    assert larger is not None
    assert accepts(compile_formula(parse(text), P, props=['p', 'q']).automaton, smaller.restrict(['p', 'q']))


def test_oracle_mode():
    verdict = is_monotone(parse('<>~p & q'), 'p', mode='oracle', functor=P, bound=2)
    assert not verdict.monotone
    smaller, larger = verdict.counterexample
    f = parse('<>~p & q')
    assert satisfies(f, smaller) and not satisfies(f, larger)
    assert is_monotone(parse('<>p'), 'p', mode='oracle', functor=P, bound=2).monotone


def test_emptiness_mode_is_exact():
    verdict = is_monotone(parse('mu x. p | <>x'), 'p', mode='empty', functor=P)
    assert verdict.monotone
    assert not verdict.bounded


def test_monotonicity_arguments_are_checked():
    with pytest.raises(NotImplementedError):
        is_monotone(parse('p'), 'p', mode='bogus', functor=P)
    with pytest.raises(FormulaError):
        is_monotone(parse('p'), 'p')


def test_projection_is_a_bisimulation_quantifier():
    aut = disjunctive('p & <>q')
    projected = exists_p(aut, 'p')
    assert projected.props == ('q', )
    assert depends_only_on(projected, ['q'])
    assert not depends_only_on(aut, ['q'])
    target = parse('<>q')
    for model in enumerate_models(P, ['q'], 2):
        assert accepts(projected, model) == satisfies(target, model)


def test_interpolant_of_conjunction():
    result = uniform_interpolant(InterpolationRequest(parse('p & q'), ['q'], functor=P, bound=2))
    assert result.keep == ['q']
    assert result.certified
    for model in enumerate_models(P, ['q'], 2):
        assert accepts(result.automaton, model) == satisfies(parse('q'), model)


def test_interpolant_certificates():
    req = InterpolationRequest(parse('<>(p & q)'), ['q'], functor=P, consequences=[parse('<>q'), parse('<>p')],
                               bound=2)
    result = uniform_interpolant(req)
    assert result.certified
    claims = {c.claim: c.holds for c in result.certificates}
    assert claims['input implies interpolant'] is True
    assert claims['interpolant implies <>q'] is True
    assert [c.holds for c in result.certificates if 'skipped' in c.claim] == [None]
    assert 'mu' in result.equations or 'nu' in result.equations


def test_interpolation_request_validation():
    with pytest.raises(FormulaError):
        InterpolationRequest(parse('p'), ['q'], functor=P)
    with pytest.raises(FormulaError):
        InterpolationRequest(parse('p & q & r'), ['q'], eliminate=['p'], functor=P)
    req = InterpolationRequest(parse('p & q & r'), ['q'], functor=P)
    assert req.eliminate == ['p', 'r']
