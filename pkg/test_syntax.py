"""Tests for the formula trees, normal forms and rendering."""
import pytest

from mucoal.errors import FormulaError, UnmappedVariableError
from mucoal.functors import parse_functor
from mucoal.syntax import (BOT, TOP, And, Modal, Mu, Not, Nu, Or, conj, counting, disj, dnf, dual_formula, entails,
                           free_vars, max_grade, min_sat, modal, nabla, neg, nnf, render, substitute, var)

p, q, r = var('p'), var('q'), var('r')
a, b = var('a'), var('b')
P = parse_functor('powerset')


def test_smart_constructors_flatten_and_absorb():
    assert conj(TOP, p) == p
    assert conj(p, BOT) == BOT
    assert disj(p, TOP) == TOP
    assert disj(p, p) == p
    assert conj(conj(p, q), r) == And((p, q, r))
    assert conj(q, p) == conj(p, q)


def test_operator_overloads():
    assert (p & q) == conj(p, q)
    assert (p | q) == disj(p, q)
    assert ~p == Not(p)
    assert neg(neg(p)) == p
    assert neg(TOP) == BOT


def test_free_vars_skip_bound_names():
    f = Mu('x', conj(modal('<>', var('x')), p))
    assert free_vars(f) == frozenset(['p'])


def test_nnf_pushes_negation_through_liftings():
    assert nnf(~modal('<>', p), P) == modal('[]', Not(p))


def test_nnf_swaps_fixpoints():
    f = ~Mu('x', modal('<>', var('x')))
    assert nnf(f, P, P) == Nu('x', modal('[]', var('x')))


def test_nnf_rejects_negative_bound_variable():
    with pytest.raises(FormulaError):
        nnf(Mu('x', ~var('x')), P, P)


def test_dnf_and_min_sat():
    clauses = dnf(conj(disj(p, q), r))
    assert set(clauses) == {frozenset([p, r]), frozenset([q, r])}
    assert min_sat(disj(p, conj(p, q))) == [frozenset(['p'])]
    assert entails(frozenset(['p', 'q']), p & q)
    assert not entails(frozenset(['p']), p & q)


def test_substitute_strict_and_lenient():
    with pytest.raises(UnmappedVariableError):
        substitute(p & q, {'p': r})
    assert substitute(p & q, {'p': r}, strict=False) == conj(q, r)


def test_substitute_respects_binders():
    f = Mu('x', disj(modal('<>', var('x')), p))
    assert substitute(f, {'x': TOP, 'p': q}) == Mu('x', disj(modal('<>', var('x')), q))


def test_dual_formula_swaps_liftings():
    f = modal('<>', a) & modal('[]', b)
    assert dual_formula(f, P) == disj(modal('[]', a), modal('<>', b))


def test_max_grade():
    assert max_grade(modal('<2>', p)) == 2
    assert max_grade(counting([p, q], [r])) == 3
    assert max_grade(modal('<>', p)) == 0


def test_nabla_expansion():
    f = nabla([a, b])
    assert f.expand() == conj(modal('<>', a), modal('<>', b), modal('[]', a | b))


def test_render():
    f = Mu('x', disj(p, modal('<>', var('x'))))
    assert render(f) == 'mu x. p | <>x'
    assert render(modal('<2>', p & q)) == '<2>(p & q)'
    assert render(conj(p, Nu('y', modal('[]', var('y'))))) == 'p & (nu y. []y)'
    assert render(Modal('!a')) == '!a'
    assert render(counting([p], [q])) == 'count(p; q)'
    assert isinstance(disj(p, q), Or)
