"""Acceptance games of automata on models, strong acceptance and pre-image covers."""
import itertools
import logging
from typing import Dict, FrozenSet, Hashable, List, Mapping, Optional, Tuple

from ..bases.core import find_dividing_cover
from ..config import Caps, default_caps
from ..errors import CoverSearchError, ResourceError
from ..games import ParityGame, Player, SolveResult, solve
from ..semantics import OneStepModel, minimal_markings
from ..syntax import var_key
from ..utils import Report
from .automaton import LambdaAutomaton, TModel

logger = logging.getLogger(__name__)

Marking = FrozenSet[Tuple[Hashable, str]]


def _markings(aut: LambdaAutomaton, model: TModel, state: str, point: Hashable, caps: Caps,
              memo: Optional[Dict] = None) -> List[Marking]:
    alpha = aut.theta(state, model.color(point))
    return minimal_markings(alpha, model.functor, model.structure[point], cap=caps.markings, memo=memo)


def acceptance_game(aut: LambdaAutomaton, model: TModel, caps: Optional[Caps] = None,
                    allowed: Optional[Mapping[Hashable, Optional[str]]] = None) -> ParityGame:
    """Positions ('q', a, s) for Exists with priority Ω(a) and ('m', marking) for Forall with priority 0.

    Exists moves to the inclusion-minimal markings satisfying Θ(a, colour of s)
    at σ(s); Forall picks a marked pair. With `allowed`, only positions
    ('q', allowed[s], s) exist and markings must agree with `allowed`.
    """
    caps = caps or default_caps
    game = ParityGame()
    pairs = [(a, s) for s in model.carrier for a in aut.states if allowed is None or allowed.get(s) == a]
    if len(aut.states) > caps.automaton_states:
        raise ResourceError('automaton_states', caps.automaton_states, 'building an acceptance game')
    # markings of shared subformulas are computed once per point
    memos = {s: {} for s in model.carrier}
    for a, s in pairs:
        game.add_position(('q', a, s), Player.EXISTS, aut.priority[a])
    for a, s in pairs:
        for marking in _markings(aut, model, a, s, caps, memos[s]):
            if allowed is not None and any(allowed.get(t) != b for t, b in marking):
                continue
            node = ('m', marking)
            if node not in game:
                game.add_position(node, Player.FORALL, 0)
                for t, b in sorted(marking, key=var_key):
                    game.add_move(node, ('q', b, t))
            game.add_move(('q', a, s), node)
    logger.debug('acceptance game with %d positions', len(game))
    return game


def solve_acceptance(aut: LambdaAutomaton, model: TModel, caps: Optional[Caps] = None) -> SolveResult:
    return solve(acceptance_game(aut, model, caps))


def accepts(aut: LambdaAutomaton, model: TModel, caps: Optional[Caps] = None) -> bool:
    result = solve_acceptance(aut, model, caps)
    return result.winner(('q', aut.initial, model.point)) == Player.EXISTS


def winning_states(aut: LambdaAutomaton, model: TModel, caps: Optional[Caps] = None) -> Dict[Hashable, FrozenSet]:
    """For every point, the states from which the automaton accepts there."""
    result = solve_acceptance(aut, model, caps)
    return {s: frozenset(a for a in aut.states if result.winner(('q', a, s)) == Player.EXISTS) for s in model.carrier}


def _reachable_points(model: TModel) -> List[Hashable]:
    seen = [model.point]
    stack = [model.point]
    while stack:
        s = stack.pop()
        for t in sorted(model.functor.support(model.structure[s]), key=var_key):
            if t not in seen:
                seen.append(t)
                stack.append(t)
    return seen


def strongly_accepts(aut: LambdaAutomaton, model: TModel, assignment: Optional[Mapping[Hashable, Optional[str]]] = None,
                     caps: Optional[Caps] = None) -> bool:
    """Acceptance through a dividing strategy: at most one state ever visits each point.

    Positional strategies of this kind are exactly the winning strategies of an
    acceptance game restricted to one state per point, so the search runs over
    such assignments (or checks the given one).
    """
    caps = caps or default_caps
    if assignment is not None:
        game = acceptance_game(aut, model, caps, allowed=assignment)
        start = ('q', aut.initial, model.point)
        return start in game and solve(game).winner(start) == Player.EXISTS
    points = _reachable_points(model)
    others = points[1:]
    choices = list(aut.states) + [None]
    if len(choices)**len(others) > caps.elements:
        raise ResourceError('elements', caps.elements, 'searching state assignments')
    for values in itertools.product(choices, repeat=len(others)):
        assignment = dict(zip(others, values))
        assignment[model.point] = aut.initial
        if strongly_accepts(aut, model, assignment, caps):
            logger.debug('dividing strategy found with assignment %s', assignment)
            return True
    return False


class PreimageCover(Report):
    excluded_attr = ('model', 'morphism')

    def __init__(self, model: TModel, morphism: Dict, assignment: Dict, branches: Dict, depth: int):
        self.model = model
        self.morphism = morphism
        self.assignment = assignment
        self.branches = branches
        self.depth = depth

    def is_morphism(self, target: TModel) -> bool:
        """Check the coalgebra morphism and valuation conditions against `target`."""
        functor = target.functor
        for node in self.model.carrier:
            image = self.morphism[node]
            if functor.map(self.morphism, self.model.structure[node]) != target.structure[image]:
                return False
            if self.model.color(node) != target.color(image):
                return False
        return True


def preimage_cover(aut: LambdaAutomaton, model: TModel, depth: int, caps: Optional[Caps] = None,
                   result: Optional[SolveResult] = None) -> PreimageCover:
    """Unravel `model` along a positional winning strategy, dividing every step.

    Nodes are (state or None, point, level) with levels capped at `depth`, so
    the first `depth` layers form an unravelling and the last layer folds back
    onto itself. Every node carries at most one state.
    """
    caps = caps or default_caps
    if depth < 0:
        raise ValueError('`depth` must be non-negative!')
    result = result or solve_acceptance(aut, model, caps)
    root = (aut.initial, model.point, 0)
    if result.winner(('q', aut.initial, model.point)) != Player.EXISTS:
        raise CoverSearchError(root, 'the automaton does not accept the model')
    choice = result.strategies[Player.EXISTS]
    functor = model.functor
    covers = {}
    branches = {}
    structure = {}
    queue = [root]
    seen = {root}
    while queue:
        node = queue.pop(0)
        state, point, level = node
        below = min(level + 1, depth)
        if state is None:
            element = functor.map(lambda u, below=below: (None, u, below), model.structure[point])
        else:
            if (state, point) not in covers:
                marking_node = choice.get(('q', state, point))
                if marking_node is None:
                    raise CoverSearchError(node, 'no winning move')
                marking = {}
                for t, b in marking_node[1]:
                    marking.setdefault(t, set()).add(b)
                one_step = OneStepModel(tuple(model.carrier), model.structure[point],
                                        {t: frozenset(v) for t, v in marking.items()})
                cover = find_dividing_cover(aut.theta(state, model.color(point)), one_step, functor, caps)
                if cover is None:
                    raise CoverSearchError(node)
                covers[(state, point)] = cover
                branches[(state, point)] = cover.branch
            cover = covers[(state, point)]
            element = functor.map(lambda p, below=below: (p[1], p[0], below), cover.element)
        structure[node] = element
        for child in sorted(functor.support(element), key=var_key):
            if child not in seen:
                seen.add(child)
                queue.append(child)
        if len(seen) > caps.automaton_states:
            raise ResourceError('automaton_states', caps.automaton_states, 'unravelling a pre-image cover')
    carrier = sorted(structure, key=var_key)
    valuation = {p: [n for n in carrier if n[1] in ext] for p, ext in model.valuation.items()}
    cover_model = TModel(functor, carrier, structure, valuation, root)
    morphism = {n: n[1] for n in carrier}
    assignment = {n: n[0] for n in carrier}
    logger.info('pre-image cover with %d nodes at depth %d', len(carrier), depth)
    return PreimageCover(cover_model, morphism, assignment, branches, depth)
