from hypothesis import given, settings
from hypothesis import strategies as st

from mucoal.bases.core import merge_pairs, realize, realize_name
from mucoal.functors import Powerset
from mucoal.semantics import OneStepModel, eval_one_step, substituted_marking
from mucoal.substitution import Substitution, tagging, type_substitution
from mucoal.syntax import Pair, TOP, Var, modal, var
from mucoal.transforms import one_step_lyndon, positive_in

a, b = var('a'), var('b')
P = Powerset()
CARRIER = (0, 1, 2)
SETS = [frozenset(), frozenset(['a']), frozenset(['a', 'b'])]

_points = st.frozensets(st.sampled_from(CARRIER))
_markings = st.fixed_dictionaries({s: st.frozensets(st.sampled_from(['a', 'b'])) for s in CARRIER})


def test_tagging():
    sub = tagging('q', ['b', 'c'])
    assert sub['b'] == Var(('q', 'b'))
    assert sub.domain == frozenset(['b', 'c'])
    assert sub(modal('<>', b) & var('d')) == modal('<>', Var(('q', 'b'))) & var('d')
    assert len(str(sub).splitlines()) == 2


def test_realize_meets_and_pairs():
    assert realize(Var(frozenset())) == TOP
    assert realize(Var(frozenset(['a', 'b']))) == a & b
    assert realize(Var(Pair('a', 'b'))) == a & b
    assert merge_pairs(Var(Pair(frozenset(['a']), frozenset(['b'])))) == Var(frozenset(['a', 'b']))


def test_type_substitution():
    full = type_substitution(['a', 'b'])
    assert len(full.domain) == 4
    assert full[frozenset(['a'])] == a & ~b
    assert full[frozenset()] == ~a & ~b
    positive = type_substitution(['a', 'b'], positive_in='a')
    assert positive[frozenset()] == ~b
    assert positive[frozenset(['a', 'b'])] == a & b


def test_lyndon_output_is_positive():
    alpha = modal('<>', ~a | a) & modal('<>', a)
    result = one_step_lyndon(alpha, 'a', P)
    assert positive_in(result.formula, 'a')
    assert result.verified


@given(element=_points, marking=_markings)
@settings(max_examples=60, deadline=None)
def test_substitution_agrees_with_remapped_marking(element, marking):
    sub = Substitution({s: realize_name(s) for s in SETS})
    alpha = modal('<>', Var(frozenset(['a', 'b']))) & modal('[]', Var(frozenset(['a'])) | Var(frozenset()))
    model = OneStepModel(CARRIER, element, marking)
    remapped = OneStepModel(CARRIER, element, substituted_marking(sub.mapping, marking, CARRIER))
    assert eval_one_step(sub(alpha), model, P) == eval_one_step(alpha, remapped, P)
