import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mucoal.automata import accepts
from mucoal.config import default_caps
from mucoal.errors import FormulaError, FormulaSyntaxError, ResourceError, UnboundPropositionError, UnguardedFormulaError
from mucoal.frontend import (ModelFile, binder_priorities, compile_formula, dumps_model, eval_fixpoint, guard,
                             load_model, loads_model, model_schema, parse, satisfies, save_model, tokenize)
from mucoal.functors import Bag, Powerset, parse_functor
from mucoal.generators import random_formula, random_model
from mucoal.syntax import TOP, BOT, Modal, Mu, Nu, conj, counting, disj, modal, nabla, render, var

p, q, x = var('p'), var('q'), var('x')
P = Powerset()


@pytest.mark.parametrize('text,expected', [
    ('p & q | ~p', disj(conj(p, q), ~p)),
    ('mu x. p | <>x', Mu('x', disj(p, modal('<>', x)))),
    ('<2>(p & q)', modal('<2>', conj(p, q))),
    ('1:<>p', Modal('1:<>', (p, ))),
    ('2~:[]true', Modal('2~:[]', (TOP, ))),
    ('X p', modal('X', p)),
    ('!a & X false', conj(Modal('!a'), modal('X', BOT))),
    ('nabla{p, q}', nabla([p, q])),
    ('nabla{}', nabla([])),
    ('count(p; q)', counting([p], [q])),
    ('nu x. mu y. []x', Nu('x', Mu('y', modal('[]', x)))),
])
def test_parse(text, expected):
    assert parse(text) == expected


def test_tokenize():
    assert tokenize('<>p & q') == [('MODAL', '<>'), ('IDENT', 'p'), ('AND', '&'), ('IDENT', 'q')]
    assert tokenize('1:nabla{') == [('NABLA', '1:'), ('LBRACE', '{')]


@pytest.mark.parametrize('text,line,column', [
    ('p $ q', 1, 3),
    ('p &\n& q', 2, 1),
    ('p &', 1, 4),
    ('', 1, 1),
])
def test_syntax_errors_carry_positions(text, line, column):
    with pytest.raises(FormulaSyntaxError) as info:
        parse(text)
    assert (info.value.line, info.value.column) == (line, column)


@pytest.mark.parametrize('spec', ['powerset', 'bag', 'sum(powerset,identity)', 'prod(identity,bag)'])
@given(seed=st.integers(0, 2**31 - 1))
@settings(max_examples=30, deadline=None)
def test_render_parses_back(spec, seed):
    f = random_formula(parse_functor(spec), ['p', 'q'], depth=5, binders=2, seed=seed)
    assert parse(render(f)) == f


def test_fixpoint_evaluation(chain3, two_cycle):
    assert eval_fixpoint(parse('mu x. <>x | x'), chain3) == frozenset()
    assert eval_fixpoint(parse('nu x. x'), chain3) == frozenset([0, 1, 2])
    assert eval_fixpoint(parse('mu x. p | <>x'), chain3) == frozenset([0, 1, 2])
    assert eval_fixpoint(parse('[]false'), chain3) == frozenset([2])
    assert eval_fixpoint(parse('nu x. p & <>x'), two_cycle) == frozenset()
    assert satisfies(parse('nu x. <>x'), two_cycle)
    with pytest.raises(UnboundPropositionError):
        satisfies(parse('q'), chain3)


def test_compile_letter():
    compiled = compile_formula(parse('p'), P)
    aut = compiled.automaton
    assert compiled.states == 1
    assert aut.theta(aut.initial, ['p']) == TOP
    assert aut.theta(aut.initial, []) == BOT


def test_compile_respects_alphabet_and_caps():
    with pytest.raises(FormulaError):
        compile_formula(parse('p & q'), P, props=['p'])
    assert compile_formula(parse('p'), P, props=['p', 'q']).props == ['p', 'q']
    with pytest.raises(ResourceError):
        compile_formula(parse('<>p'), P, caps=default_caps(automaton_states=1))


def test_binder_priorities():
    priority, body = binder_priorities(parse('nu y. mu x. (p & <>y) | <>x'))
    assert priority == {'x': 1, 'y': 2}
    assert set(body) == {'x', 'y'}


def test_unguarded_binders_are_rewritten():
    assert guard(parse('mu x. x | p')) == (Mu('x', p), True)
    assert guard(parse('nu x. x & <>x')) == (Nu('x', modal('<>', x)), True)
    assert guard(parse('mu x. p | <>x'))[1] is False
    assert compile_formula(parse('mu x. x | p'), P).rewritten
    with pytest.raises(UnguardedFormulaError):
        guard(parse('mu x. x | p'), rewrite=False)
    with pytest.raises(UnguardedFormulaError):
        compile_formula(parse('mu x. x | p'), P, rewrite=False)


@given(seed=st.integers(0, 2**31 - 1))
@settings(max_examples=40, deadline=None)
def test_game_acceptance_matches_fixpoint_semantics(seed):
    f = random_formula(P, ['p', 'q'], depth=4, binders=2, seed=seed)
    model = random_model(P, ['p', 'q'], 3, seed=seed)
    assert accepts(compile_formula(f, P).automaton, model) == satisfies(f, model)


@given(seed=st.integers(0, 2**31 - 1))
@settings(max_examples=25, deadline=None)
def test_game_acceptance_matches_fixpoint_semantics_on_bags(seed):
    caps = default_caps(multiplicity=2)
    f = random_formula(Bag(), ['p'], depth=3, binders=1, seed=seed)
    model = random_model(Bag(), ['p'], 2, seed=seed, caps=caps)
    assert accepts(compile_formula(f, Bag(), caps=caps).automaton, model, caps) == satisfies(f, model)


def test_alternating_formula_on_small_models():
    f = parse('nu y. mu x. (p & <>y) | <>x')
    aut = compile_formula(f, P).automaton
    for seed in range(30):
        model = random_model(P, ['p'], 3, seed=seed)
        assert accepts(aut, model) == satisfies(f, model)


def test_model_files(tmp_path, chain3):
    path = tmp_path / 'chain.json'
    save_model(chain3, path)
    loaded = load_model(path)
    assert loaded.carrier == ('0', '1', '2')
    assert loaded.point == '0'
    assert satisfies(parse('mu x. p | <>x'), loaded)
    assert not satisfies(parse('<>p'), loaded)


def test_bag_model_file():
    text = json.dumps({
        'functor': 'bag',
        'states': ['s', 't'],
        'transitions': {'s': {'t': 2}, 't': {}},
        'valuation': {'p': ['t']},
        'point': 's'
    })
    model = loads_model(text)
    assert satisfies(parse('<2>p'), model)
    assert not satisfies(parse('<3>p'), model)
    assert loads_model(dumps_model(model)).structure == model.structure


@pytest.mark.parametrize('blob', [
    {'functor': 'powerset', 'states': ['s'], 'transitions': {'s': []}, 'point': 'z'},
    {'functor': 'tree', 'states': ['s'], 'transitions': {'s': []}, 'point': 's'},
    {'functor': 'powerset', 'states': ['s'], 'transitions': {}, 'point': 's'},
    {'functor': 'powerset', 'states': ['s'], 'transitions': {'s': ['u']}, 'point': 's'},
])
def test_invalid_model_files(blob):
    with pytest.raises(FormulaError):
        loads_model(json.dumps(blob))


def test_model_schema():
    schema = model_schema()
    assert set(schema['required']) >= {'functor', 'states', 'transitions', 'point'}
    assert ModelFile.model_fields['valuation'].description
