import pytest

from mucoal.config import default_caps
from mucoal.errors import ArityError, ResourceError, UnknownLiftingError, UnsupportedFunctorError
from mucoal.functors import Bag, MonotoneNeighbourhood, Powerset, make_bag, parse_functor
from mucoal.semantics import holds, marking_denote
from mucoal.syntax import modal, var
from mucoal.utils import subsets


@pytest.mark.parametrize('text', [
    'powerset', 'bag', 'identity', 'mono', 'labeled:a,b', 'sum(powerset,labeled:a,b)', 'prod(bag,identity)',
    'comp(powerset,sum(identity,identity))'
])
def test_functor_spec_round_trip(text):
    assert parse_functor(text).spec() == text


def test_unknown_functor_and_lifting():
    with pytest.raises(UnsupportedFunctorError):
        parse_functor('tree')
    with pytest.raises(UnsupportedFunctorError):
        parse_functor('sum(powerset')
    with pytest.raises(UnknownLiftingError):
        Powerset().lifting('<3>')
    with pytest.raises(ArityError):
        Powerset().eval_lifting('<>', [], frozenset())


def test_duals():
    assert Powerset().dual('<>') == '[]'
    assert Bag().dual('<2>') == '[2]'
    assert parse_functor('sum(powerset,identity)').dual('1:<>') == '1~:[]'
    assert parse_functor('labeled:a').dual('!a') == '!~a'


def test_bag_map_adds_multiplicities():
    assert Bag().map({0: 'x', 1: 'x'}, make_bag({0: 1, 1: 2})) == make_bag({'x': 3})


def test_element_enumeration_respects_caps():
    assert len(list(Bag().elements([0, 1]))) == (default_caps.multiplicity + 1)**2
    assert len(list(parse_functor('prod(powerset,identity)').elements([0, 1]))) == 8
    with pytest.raises(ResourceError):
        list(Powerset().elements([0, 1, 2], default_caps(elements=4)))


def test_sum_liftings_follow_tags():
    functor = parse_functor('sum(powerset,identity)')
    assert functor.eval_lifting('1:<>', [frozenset([0])], (1, frozenset([0])))
    assert not functor.eval_lifting('1:<>', [frozenset([0])], (2, 0))
    assert functor.eval_lifting('1~:[]', [frozenset()], (2, 0))


def test_labels():
    functor = parse_functor('labeled:a,b')
    assert functor.eval_lifting('!a', [], ('a', 0))
    assert functor.eval_lifting('!~a', [], ('b', 0))
    assert functor.eval_lifting('X', [frozenset([0])], ('b', 0))
    with pytest.raises(UnknownLiftingError):
        functor.lifting('!c')


def test_neighbourhoods():
    functor = MonotoneNeighbourhood()
    element = frozenset([frozenset([0])])
    assert functor.eval_lifting('[]', [frozenset([0, 1])], element)
    assert not functor.eval_lifting('<>', [frozenset([1])], element)
    assert functor.map({0: 'x', 1: 'x'}, frozenset([frozenset([0]), frozenset([1])])) == frozenset([frozenset(['x'])])


def test_composite_reads_inner_layer():
    functor = parse_functor('comp(powerset,identity)')
    denote = marking_denote({0: frozenset(['a'])}, [0, 1])
    f = modal('<>', modal('X', var('a')))
    assert holds(f, functor, frozenset([0, 1]), denote)
    assert not holds(f, functor, frozenset([1]), denote)


def test_barr_lifting():
    relation = {(0, 'a'), (1, 'b')}
    assert Powerset().barr_lift(relation, frozenset([0, 1]), frozenset(['a', 'b']))
    assert not Powerset().barr_lift(relation, frozenset([0, 1]), frozenset(['a']))
    to_a = {(0, 'a'), (1, 'a')}
    assert Bag().barr_lift(to_a, make_bag({0: 1, 1: 1}), make_bag({'a': 2}))
    assert not Bag().barr_lift(to_a, make_bag({0: 1, 1: 1}), make_bag({'a': 1}))
    with pytest.raises(UnsupportedFunctorError):
        MonotoneNeighbourhood().barr_lift(relation, frozenset(), frozenset())


def test_neighbourhood_enumeration_is_capped():
    functor = MonotoneNeighbourhood()
    assert list(functor.elements([0, 1, 2, 3]))
    with pytest.raises(ResourceError) as raised:
        list(functor.elements(list(range(5))))
    assert raised.value.cap == 'mono_carrier'
    with pytest.raises(ResourceError):
        list(functor.elements([0, 1, 2, 3], default_caps(mono_carrier=3)))


@pytest.mark.parametrize('text', [
    'powerset', 'bag', 'identity', 'labeled:a,b', 'mono', 'sum(powerset,identity)', 'prod(bag,identity)',
    'comp(powerset,identity)'
])
def test_map_preserves_identity_and_composition(text):
    functor = parse_functor(text)
    f = {0: 'x', 1: 'x', 2: 'y'}
    g = {'x': 'z', 'y': 'w'}
    for element in functor.elements([0, 1, 2]):
        assert functor.map(lambda x: x, element) == element
        assert functor.map(lambda x: g[f[x]], element) == functor.map(g, functor.map(f, element))


@pytest.mark.parametrize('text', [
    'powerset', 'bag', 'identity', 'labeled:a,b', 'sum(powerset,identity)', 'prod(bag,identity)'
])
def test_barr_lifting_of_the_diagonal(text):
    functor = parse_functor(text)
    diagonal = {(x, x) for x in (0, 1)}
    for element in functor.elements([0, 1]):
        assert functor.barr_lift(diagonal, element, element)
    assert not Powerset().barr_lift(diagonal, frozenset([0]), frozenset([1]))


@pytest.mark.parametrize('text,op', [
    ('powerset', '<>'), ('powerset', '[]'), ('bag', '<2>'), ('bag', '[1]'), ('mono', '<>'), ('mono', '[]'),
    ('identity', 'X'), ('labeled:a,b', 'X'), ('sum(powerset,identity)', '1:<>'), ('sum(powerset,identity)', '1~:[]')
])
def test_liftings_are_monotone(text, op):
    functor = parse_functor(text)
    carrier = (0, 1, 2)
    pairs = [(small, large) for small in subsets(carrier) for large in subsets(carrier) if small <= large]
    for element in functor.elements(carrier):
        for small, large in pairs:
            if functor.eval_lifting(op, [small], element):
                assert functor.eval_lifting(op, [large], element)
