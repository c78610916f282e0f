import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mucoal.automata import (LambdaAutomaton, TModel, accepts, complement, constant, determinize_nbt, dumps,
                             enumerate_models, equivalent, has_bad_trace, implies, loads, preimage_cover, simulate,
                             strongly_accepts, synthesize_model, to_equations, winning_states)
from mucoal.bases import basis_for
from mucoal.config import default_caps
from mucoal.errors import FormulaError, FormulaSyntaxError, ResourceError, UnsupportedFunctorError
from mucoal.frontend import compile_formula, parse
from mucoal.functors import Bag, Powerset
from mucoal.generators import random_automaton
from mucoal.syntax import Var, disj, modal, nabla, var

P = Powerset()
REACH_P = 'mu x. p | <>x'
INFINITELY_P = 'nu y. mu x. (p & <>y) | <>x'


def automaton(text: str, functor=P) -> LambdaAutomaton:
    return compile_formula(parse(text), functor).automaton


def test_reachability_on_chain(chain3):
    aut = automaton(REACH_P)
    assert accepts(aut, chain3)
    assert aut.initial in winning_states(aut, chain3)[2]
    assert not accepts(automaton('<>p'), chain3)


def test_fixpoint_kinds_on_cycle(two_cycle):
    assert accepts(automaton('nu x. <>x'), two_cycle)
    assert not accepts(automaton('mu x. <>x'), two_cycle)
    assert accepts(automaton(INFINITELY_P), two_cycle)


def test_complement_flips_acceptance():
    aut = automaton(INFINITELY_P)
    dual = complement(aut)
    for model in enumerate_models(P, ['p'], 2):
        assert accepts(aut, model) != accepts(dual, model)


@pytest.mark.parametrize('source', [
    automaton(REACH_P),
    automaton(INFINITELY_P),
    automaton('<>p & <>~p'),
    random_automaton(P, ['p'], states=1, seed=3),
    random_automaton(P, ['p'], states=1, seed=7),
])
def test_simulation_preserves_language(source):
    sim = simulate(source, basis_for(P))
    assert sim.states[0] == 's0'
    sim.validate()
    for model in enumerate_models(P, ['p'], 2):
        assert accepts(source, model) == accepts(sim, model)


def test_preimage_cover_is_strongly_accepted(chain3, two_cycle):
    fork = TModel(P, [0, 1, 2], {0: frozenset([1, 2]), 1: frozenset(), 2: frozenset()}, {'p': [1]}, 0).validate()
    for text, model in ((REACH_P, chain3), ('nu x. <>x', two_cycle), ('<>p & <>~p', fork)):
        sim = simulate(automaton(text), basis_for(P))
        cover = preimage_cover(sim, model, depth=2)
        assert cover.is_morphism(model)
        assert accepts(sim, cover.model)
        assert strongly_accepts(sim, cover.model, cover.assignment)


def test_synthesis_finds_small_models():
    sim = simulate(automaton(INFINITELY_P), basis_for(P))
    result = synthesize_model(sim)
    assert result.status == 'model'
    assert len(result.model.carrier) <= len(sim)
    assert accepts(sim, result.model)
    assert not result.bounded


def test_synthesis_reports_emptiness():
    assert synthesize_model(constant(P, False, ['p'])).status == 'empty'
    assert synthesize_model(constant(P, True)).status == 'model'
    contradiction = simulate(automaton('p & ~p'), basis_for(P))
    assert not synthesize_model(contradiction)


def test_synthesis_handles_wide_transitions():
    states = ['q{}'.format(i) for i in range(10)]
    transitions = {('q0', frozenset()): disj(*(nabla([Var(q)]) for q in states[1:]))}
    transitions.update({(q, frozenset()): nabla([]) for q in states[1:]})
    aut = LambdaAutomaton(P, states, transitions, {q: 0 for q in states}, 'q0')
    result = synthesize_model(aut, default_caps(carrier=3))
    assert result.status == 'model'
    assert len(result.model.carrier) == 2
    assert accepts(aut, result.model)


def test_acceptance_checks_automaton_size(chain3):
    with pytest.raises(ResourceError) as raised:
        accepts(automaton('<>p'), chain3, default_caps(automaton_states=1))
    assert raised.value.cap == 'automaton_states'


def test_language_inclusion_by_enumeration():
    assert implies(automaton('p'), automaton('p | q')).holds
    verdict = implies(automaton('p | q'), automaton('p'))
    assert not verdict.holds
    assert verdict.counterexample is not None
    assert equivalent(automaton('<>p | <>q'), automaton('<>(p | q)')).holds


def test_language_inclusion_by_emptiness():
    verdict = implies(automaton('[]p & <>p'), automaton('<>p'), mode='empty')
    assert verdict.holds
    assert not verdict.bounded
    verdict = implies(automaton('<>p'), automaton('[]p'), mode='empty')
    assert not verdict.holds
    assert accepts(automaton('<>p'), verdict.counterexample)
    assert not accepts(automaton('[]p'), verdict.counterexample)


def test_language_modes_are_checked():
    with pytest.raises(NotImplementedError):
        implies(automaton('p'), automaton('p'), mode='bogus')
    with pytest.raises(UnsupportedFunctorError):
        implies(automaton('<1>p', Bag()), automaton('<1>p', Bag()), mode='empty')


def test_text_format():
    aut = automaton(INFINITELY_P)
    back = loads(dumps(aut))
    assert back.states == aut.states
    assert back.priority == aut.priority
    assert back.transitions == aut.transitions
    assert 'mu' in to_equations(aut) and 'nu' in to_equations(aut)
    with pytest.raises(FormulaSyntaxError):
        loads('functor powerset\ninitial q0\nnonsense\n')


def test_validation_rejects_broken_inputs():
    with pytest.raises(FormulaError):
        LambdaAutomaton(P, ['q0'], {('q0', frozenset()): modal('<>', var('q1'))}, {'q0': 0}, 'q0').validate()
    with pytest.raises(FormulaError):
        TModel(P, [0], {0: frozenset()}, {}, 5).validate()


def test_stream_automaton_on_simple_lassos():
    dpa = determinize_nbt(['a', 'b'], {'a': 1, 'b': 2}, 'a')
    stay = frozenset([('a', 'a')])
    assert not dpa.accepts_lasso([], [stay])
    swap = [frozenset([('a', 'b')]), frozenset([('b', 'a')])]
    assert dpa.accepts_lasso([], swap)
    assert dpa.accepts_lasso([frozenset([('a', 'b')])], [frozenset([('b', 'b')])])


_STATES = ['a', 'b', 'c']
_PRIORITY = {'a': 1, 'b': 2, 'c': 3}
_letters = st.sets(st.sampled_from([(x, y) for x in _STATES for y in _STATES]), max_size=4).map(frozenset)


@given(prefix=st.lists(_letters, max_size=3), loop=st.lists(_letters, min_size=1, max_size=3))
@settings(max_examples=80, deadline=None)
def test_stream_automaton_agrees_with_trace_search(prefix, loop):
    dpa = determinize_nbt(_STATES, _PRIORITY, 'a')
    assert dpa.accepts_lasso(prefix, loop) == (not has_bad_trace(_PRIORITY, 'a', prefix, loop))
