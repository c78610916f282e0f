"""Small models for disjunctive automata, and language comparison of automata.

For a disjunctive automaton the satisfiability game lets Exists answer a
state with a colour and a one-step model in which every point carries at most
one state; unmarked points collapse into one spare point. A winning strategy
folds into a model whose carrier is a set of states.
"""
import logging
from typing import Dict, Optional, Tuple

from ..bases import basis_for
from ..bases.core import disjuncts
from ..config import Caps, default_caps
from ..errors import FormulaError, ResourceError, UnsupportedFunctorError
from ..functors import Powerset
from ..games import ParityGame, Player, solve
from ..semantics import STAR, OneStepModel, eval_one_step
from ..syntax import free_vars, var_key
from ..utils import Report
from .acceptance import accepts
from .automaton import LambdaAutomaton, TModel, complement, conjunction, enumerate_models
from .simulation import simulate

logger = logging.getLogger(__name__)


class SynthesisResult(Report):
    excluded_attr = ('model', )

    def __init__(self, status: str, model: Optional[TModel] = None, bounded: bool = False):
        self.status = status
        self.model = model
        self.bounded = bounded

    def __bool__(self):
        return self.model is not None


def satisfiability_game(aut: LambdaAutomaton, caps: Optional[Caps] = None) -> Tuple[ParityGame, Dict]:
    """Positions ('a', state) for Exists and ('x', state, colour, element) for Forall.

    Elements live over the variables of one disjunct of Θ(a, c) plus the spare
    point; each variable marks only itself. Collapsing every other variable
    onto the spare point keeps the disjunct true and only removes challenges,
    so the smaller carriers lose no winning moves.
    """
    caps = caps or default_caps
    functor = aut.functor
    game = ParityGame()
    for a in aut.states:
        game.add_position(('a', a), Player.EXISTS, aut.priority[a])
    options = {}
    for a in aut.states:
        for c in aut.colors():
            for beta in disjuncts(aut.theta(a, c)):
                names = sorted(free_vars(beta), key=var_key)
                carrier = names + [STAR]
                if len(carrier) > caps.carrier:
                    raise ResourceError('carrier', caps.carrier, 'enumerating one-step models of `{}`'.format(a))
                marking = {b: frozenset([b]) for b in names}
                for element in functor.elements(carrier, caps):
                    node = ('x', a, c, element)
                    if node in game or not eval_one_step(beta, OneStepModel(tuple(carrier), element, marking), functor):
                        continue
                    game.add_position(node, Player.FORALL, 0)
                    game.add_move(('a', a), node)
                    for b in sorted(functor.support(element) - {STAR}, key=var_key):
                        game.add_move(node, ('a', b))
                    options[node] = element
    logger.debug('satisfiability game with %d positions', len(game))
    return game, options


def synthesize_model(aut: LambdaAutomaton, caps: Optional[Caps] = None) -> SynthesisResult:
    """A pointed model with carrier ⊆ states accepted by `aut`, or status `empty`.

    Exact for functors whose elements are listed exhaustively; bounded by the
    multiplicity cap otherwise. Raises when the folded model is rejected,
    which only happens for automata that are not disjunctive.
    """
    caps = caps or default_caps
    functor = aut.functor
    bounded = functor.capped_elements
    game, _ = satisfiability_game(aut, caps)
    result = solve(game)
    start = ('a', aut.initial)
    if result.winner(start) != Player.EXISTS:
        return SynthesisResult('empty', None, bounded)
    strategy = result.strategies[Player.EXISTS]
    chosen = {}
    stack = [aut.initial]
    while stack:
        a = stack.pop()
        if a in chosen:
            continue
        chosen[a] = strategy[('a', a)]
        stack.extend(w[1] for w in game.successors(chosen[a]))
    carrier = [a for a in aut.states if a in chosen]
    structure = {}
    valuation: Dict[str, list] = {p: [] for p in aut.props}
    for a in carrier:
        _, _, color, element = chosen[a]
        structure[a] = functor.map(lambda x, a=a: a if x == STAR else x, element)
        for p in color:
            valuation[p].append(a)
    model = TModel(functor, carrier, structure, valuation, aut.initial)
    if not accepts(aut, model, caps):
        raise FormulaError('the synthesized model is rejected; the automaton is not disjunctive')
    logger.info('synthesized a model with %d points from %d states', len(carrier), len(aut))
    return SynthesisResult('model', model, bounded)


def search_models(aut: LambdaAutomaton, bound: int, caps: Optional[Caps] = None) -> Optional[TModel]:
    """First enumerated pointed model of size ≤ bound accepted by `aut`."""
    for model in enumerate_models(aut.functor, aut.props, bound, caps):
        if accepts(aut, model, caps):
            return model
    return None


class LanguageVerdict(Report):
    excluded_attr = ('counterexample', )

    def __init__(self, holds: bool, mode: str, counterexample: Optional[TModel] = None, bounded: bool = True,
                 checked: int = 0):
        self.holds = holds
        self.mode = mode
        self.counterexample = counterexample
        self.bounded = bounded
        self.checked = checked

    def __bool__(self):
        return self.holds


def _enum_compare(left: LambdaAutomaton, right: LambdaAutomaton, bound: int, caps: Optional[Caps],
                  both_ways: bool) -> LanguageVerdict:
    props = sorted(set(left.props) | set(right.props))
    checked = 0
    for model in enumerate_models(left.functor, props, bound, caps):
        checked += 1
        a = accepts(left, model, caps)
        b = accepts(right, model, caps)
        if (a and not b) or (both_ways and b and not a):
            return LanguageVerdict(False, 'enum', model, True, checked)
    return LanguageVerdict(True, 'enum', None, True, checked)


def _empty_implies(left: LambdaAutomaton, right: LambdaAutomaton, caps: Optional[Caps]) -> Optional[TModel]:
    product = conjunction(left, complement(right))
    found = synthesize_model(simulate(product, basis_for(product.functor), caps), caps)
    return found.model


def _check_mode(left: LambdaAutomaton, right: LambdaAutomaton, mode: str):
    if left.functor != right.functor:
        raise FormulaError('automata over different functors')
    if mode not in ('enum', 'empty'):
        raise NotImplementedError("`mode` must belong to {'enum', 'empty'}!")
    if mode == 'empty' and not isinstance(left.functor, Powerset):
        raise UnsupportedFunctorError('emptiness checking needs exhaustive carrier enumeration, '
                                      'which `{}` does not offer'.format(left.functor.spec()))


def implies(left: LambdaAutomaton, right: LambdaAutomaton, mode: str = 'enum', bound: int = 2,
            caps: Optional[Caps] = None) -> LanguageVerdict:
    """Whether every model accepted by `left` is accepted by `right`."""
    _check_mode(left, right, mode)
    if mode == 'enum':
        return _enum_compare(left, right, bound, caps, both_ways=False)
    witness = _empty_implies(left, right, caps)
    return LanguageVerdict(witness is None, 'empty', witness, False)


def equivalent(left: LambdaAutomaton, right: LambdaAutomaton, mode: str = 'enum', bound: int = 2,
               caps: Optional[Caps] = None) -> LanguageVerdict:
    _check_mode(left, right, mode)
    if mode == 'enum':
        return _enum_compare(left, right, bound, caps, both_ways=True)
    for a, b in ((left, right), (right, left)):
        witness = _empty_implies(a, b, caps)
        if witness is not None:
            return LanguageVerdict(False, 'empty', witness, False)
    return LanguageVerdict(True, 'empty', None, False)
