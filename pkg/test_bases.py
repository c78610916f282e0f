import pytest

from mucoal.bases import (BagBasis, IdentityBasis, PowersetBasis, basis_for, divisible, hall_translate, is_disjunctive,
                          moss_formula, realize, selftest)
from mucoal.errors import FormulaError, UnsupportedFunctorError
from mucoal.functors import Bag, Identity, MonotoneNeighbourhood, Powerset, parse_functor
from mucoal.semantics import eval_one_step, one_step_equivalent
from mucoal.syntax import Counting, conj, modal, nabla, var

a, b = var('a'), var('b')
P = Powerset()
B = Bag()


def test_basis_dispatch():
    assert isinstance(basis_for(P), PowersetBasis)
    assert isinstance(basis_for(B), BagBasis)
    assert basis_for(parse_functor('sum(powerset,identity)')).functor.spec() == 'sum(powerset,identity)'
    with pytest.raises(UnsupportedFunctorError):
        basis_for(MonotoneNeighbourhood())


@pytest.mark.parametrize('alpha', [
    modal('<>', a) & modal('[]', b),
    modal('<>', a | b) & modal('<>', a),
    modal('[]', a & b) | modal('<>', b),
])
def test_powerset_normal_form_is_equivalent(alpha):
    delta = PowersetBasis().normal_form(alpha)
    assert one_step_equivalent(alpha, realize(delta), P).equivalent


def test_bag_normal_form_is_equivalent():
    alpha = modal('<2>', a) | modal('[1]', b)
    delta = BagBasis().normal_form(alpha)
    assert one_step_equivalent(alpha, realize(delta), B).equivalent


def test_normal_form_needs_positive_input():
    with pytest.raises(FormulaError):
        PowersetBasis().normal_form(modal('<>', ~a))


def test_cover_modality_is_disjunctive():
    result = is_disjunctive(nabla([a, b]), P)
    assert result.status == 'disjunctive'
    assert not result.bounded


def test_box_and_diamond_has_no_dividing_cover():
    result = is_disjunctive(modal('[]', a) & modal('<>', b), P)
    assert result.status == 'counterexample'
    assert result.disjunctive is False
    model = result.counterexample
    both = frozenset(['a', 'b'])
    assert model.element == frozenset([both])
    assert model.marking[both] == both


def test_next_step_is_disjunctive():
    assert is_disjunctive(modal('X', a), Identity()).disjunctive


def test_powerset_selftest_passes():
    records = selftest(PowersetBasis())
    assert records
    assert all(r.ok for r in records)


def test_identity_selftest_passes():
    assert all(r.ok for r in selftest(IdentityBasis()))


def test_counting_matches_graded_translation():
    formula = Counting((a, b), ())
    assert one_step_equivalent(formula, hall_translate(formula), B).equivalent


def test_divisibility():
    assert divisible(nabla([a, b]), P).divisible
    result = divisible(modal('[]', a) & modal('<>', b), P)
    assert not result.divisible
    assert result.witness is not None


def test_moss_formula():
    assert moss_formula([['a']]) == conj(modal('[]', a), modal('<>', a))


def test_neighbourhood_cover_formula_is_not_disjunctive():
    functor = MonotoneNeighbourhood()
    alpha = moss_formula([['a', 'b'], ['c']])
    result = is_disjunctive(alpha, functor)
    assert result.status == 'counterexample'
    assert result.bounded
    assert eval_one_step(alpha, result.counterexample, functor)
