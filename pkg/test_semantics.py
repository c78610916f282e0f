import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mucoal.functors import Bag, Powerset, make_bag
from mucoal.semantics import (OneStepModel, eval_one_step, eval_zero_step, minimal_markings, one_step_entails,
                              one_step_equivalent, one_step_monotone, one_step_morphism_check)
from mucoal.syntax import Counting, modal, nabla, var

a, b = var('a'), var('b')
P = Powerset()
B = Bag()
CARRIER = (0, 1, 2)


def test_zero_step_reads_marking():
    marking = {0: frozenset(['a']), 1: frozenset(['a', 'b']), 2: frozenset()}
    assert eval_zero_step(a & b, marking, [0, 1, 2]) == frozenset([1])
    assert eval_zero_step(~a, marking, [0, 1, 2]) == frozenset([2])


def test_diamond_distributes_over_disjunction():
    verdict = one_step_equivalent(modal('<>', a | b), modal('<>', a) | modal('<>', b), P)
    assert verdict.equivalent
    assert not verdict.bounded


def test_diamond_does_not_distribute_over_conjunction():
    verdict = one_step_equivalent(modal('<>', a & b), modal('<>', a) & modal('<>', b), P)
    assert not verdict.equivalent
    model = verdict.counterexample
    assert not eval_one_step(modal('<>', a & b), model, P)
    assert eval_one_step(modal('<>', a) & modal('<>', b), model, P)


def test_graded_modalities_differ():
    verdict = one_step_equivalent(modal('<2>', a), modal('<1>', a), B)
    assert not verdict.equivalent
    assert one_step_entails(modal('<2>', a), modal('<1>', a), B)


def test_one_step_monotonicity():
    assert one_step_monotone(modal('<>', a), 'a', P).monotone
    result = one_step_monotone(modal('<>', ~a), 'a', P)
    assert not result.monotone
    before, after = result.counterexample
    assert eval_one_step(modal('<>', ~a), before, P)
    assert not eval_one_step(modal('<>', ~a), after, P)


def test_minimal_markings_of_diamond_and_box():
    element = frozenset([0, 1])
    diamond = minimal_markings(modal('<>', a), P, element)
    assert set(diamond) == {frozenset([(0, 'a')]), frozenset([(1, 'a')])}
    box = minimal_markings(modal('[]', a), P, element)
    assert box == [frozenset([(0, 'a'), (1, 'a')])]


def test_morphism_check():
    source = OneStepModel((0, 1), frozenset([0, 1]), {0: frozenset(['a']), 1: frozenset(['a'])})
    target = OneStepModel(('x', ), frozenset(['x']), {'x': frozenset(['a'])})
    check = one_step_morphism_check({0: 'x', 1: 'x'}, source, target, P)
    assert check.frame and check.marking
    target.marking = {'x': frozenset()}
    check = one_step_morphism_check({0: 'x', 1: 'x'}, source, target, P)
    assert check.frame and not check.marking


def test_graded_reading_on_bags():
    model = OneStepModel((0, 1), make_bag({0: 1, 1: 1}), {0: frozenset(['a']), 1: frozenset(['a'])})
    assert eval_one_step(modal('<2>', a), model, B)
    model.marking = {0: frozenset(['a']), 1: frozenset()}
    assert not eval_one_step(modal('<2>', a), model, B)
    assert eval_one_step(modal('[2]', a), model, B)


def test_counting_needs_distinct_witnesses():
    marking = {0: frozenset(['a', 'b'])}
    both = Counting((a, b), ())
    assert eval_one_step(both, OneStepModel((0, ), make_bag({0: 2}), marking), B)
    assert not eval_one_step(both, OneStepModel((0, ), make_bag({0: 1}), marking), B)
    # a third copy is neither a witness nor covered by the rest
    assert not eval_one_step(both, OneStepModel((0, ), make_bag({0: 3}), marking), B)


@given(element=st.frozensets(st.sampled_from(CARRIER)))
@settings(max_examples=40, deadline=None)
def test_cover_markings_agree_with_expansion(element):
    cover = nabla([a, b, a & b])
    direct = minimal_markings(cover, P, element)
    assert set(direct) == set(minimal_markings(cover.expand(), P, element))
    assert len(direct) == len(set(direct))


_maps = st.fixed_dictionaries({s: st.sampled_from(['x', 'y']) for s in CARRIER})
_target_markings = st.fixed_dictionaries({t: st.frozensets(st.sampled_from(['a', 'b'])) for t in ('x', 'y')})


def _pullback_agrees(alpha, functor, element, f, marking):
    source = OneStepModel(CARRIER, element, {s: marking[f[s]] for s in CARRIER})
    target = OneStepModel(('x', 'y'), functor.map(f, element), marking)
    return eval_one_step(alpha, source, functor) == eval_one_step(alpha, target, functor)


@pytest.mark.parametrize('alpha', [modal('<>', a & b), modal('[]', a | ~b), modal('<>', a) & modal('[]', b)])
@given(element=st.frozensets(st.sampled_from(CARRIER)), f=_maps, marking=_target_markings)
@settings(max_examples=40, deadline=None)
def test_powerset_truth_is_invariant_under_morphisms(alpha, element, f, marking):
    assert _pullback_agrees(alpha, P, element, f, marking)


@pytest.mark.parametrize('alpha', [modal('<2>', a), modal('[1]', b), Counting((a, b), ())])
@given(counts=st.dictionaries(st.sampled_from(CARRIER), st.integers(1, 2)), f=_maps, marking=_target_markings)
@settings(max_examples=40, deadline=None)
def test_bag_truth_is_invariant_under_morphisms(alpha, counts, f, marking):
    assert _pullback_agrees(alpha, B, make_bag(counts), f, marking)
