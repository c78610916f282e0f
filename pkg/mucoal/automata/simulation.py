"""Turning an arbitrary automaton into an equivalent disjunctive one.

The pre-simulation runs on binary relations R over the states: R relates
every current state to the state it came from, and its transitions are the
basis normal forms of the conjoined, tagged transitions of Ran R. The
product with a deterministic automaton for the no-bad-trace condition then
fixes the acceptance condition.
"""
import logging
import threading
from collections import deque
from typing import Dict, FrozenSet, List, Optional, Tuple

from ..bases.core import DisjunctiveBasis, realize
from ..config import Caps, default_caps
from ..errors import ResourceError
from ..semantics import EquivalenceResult, one_step_equivalent
from ..substitution import Substitution, tagging
from ..syntax import Formula, conj, free_vars, var, var_key
from .automaton import Color, LambdaAutomaton, colors
from .words import StreamParityAutomaton, determinize_nbt

logger = logging.getLogger(__name__)

Relation = FrozenSet[Tuple[str, str]]


def relation_text(relation: Relation) -> str:
    return '{' + ','.join('{}>{}'.format(a, b) for a, b in sorted(relation, key=var_key)) + '}'


class PresimAutomaton:
    """States are relations over the input states, explored lazily from {(a_I, a_I)}.

    Rewrites are memoized; lookups are lock-free and insertion happens under
    a lock, so several threads may share one instance.
    """

    def __init__(self, aut: LambdaAutomaton, basis: DisjunctiveBasis, caps: Optional[Caps] = None):
        if basis.functor != aut.functor:
            raise ValueError('basis for {} used on an automaton over {}'.format(basis.functor.spec(),
                                                                              aut.functor.spec()))
        self.aut = aut
        self.basis = basis
        self.caps = caps or default_caps
        self.initial: Relation = frozenset([(aut.initial, aut.initial)])
        self._memo: Dict[Tuple[Relation, Color], Formula] = {}
        self._lock = threading.Lock()

    @staticmethod
    def range_of(relation: Relation) -> List[str]:
        return sorted({b for _, b in relation}, key=var_key)

    def theta_star(self, state: str, color: Color) -> Formula:
        """Θ(a, c) with every state b renamed to the pair (a, b)."""
        return tagging(state, self.aut.states)(self.aut.theta(state, color))

    def target(self, relation: Relation, color: Color) -> Formula:
        """∧ of Θ*(a, c) over a ∈ Ran R, the formula Θ̂(R, c) is equivalent to."""
        return conj(*(self.theta_star(a, color) for a in self.range_of(relation)))

    def theta_hat(self, relation: Relation, color: Color) -> Formula:
        key = (relation, frozenset(color) & frozenset(self.aut.props))
        found = self._memo.get(key)
        if found is not None:
            return found
        delta = self.basis.normal_form(self.target(relation, key[1]))
        with self._lock:
            return self._memo.setdefault(key, delta)

    def successors(self, relation: Relation) -> FrozenSet:
        out = frozenset()
        for c in colors(self.aut.props):
            out |= free_vars(self.theta_hat(relation, c))
        return out

    def reachable(self) -> List[Relation]:
        seen = [self.initial]
        known = {self.initial}
        queue = deque([self.initial])
        while queue:
            relation = queue.popleft()
            for nxt in sorted(self.successors(relation), key=var_key):
                if nxt not in known:
                    known.add(nxt)
                    seen.append(nxt)
                    queue.append(nxt)
                    if len(seen) > self.caps.automaton_states:
                        raise ResourceError('automaton_states', self.caps.automaton_states, 'exploring pre-simulation')
        return seen

    def check_entry(self, relation: Relation, color: Color) -> EquivalenceResult:
        """Oracle check of Θ̂(R, c)[∧] ≡¹ ∧_{a ∈ Ran R} Θ*(a, c)."""
        return one_step_equivalent(realize(self.theta_hat(relation, color)), self.target(relation, color),
                                   self.aut.functor, caps=self.caps)


def presimulate(aut: LambdaAutomaton, basis: DisjunctiveBasis, caps: Optional[Caps] = None) -> PresimAutomaton:
    return PresimAutomaton(aut, basis, caps)


def simulate(aut: LambdaAutomaton, basis: DisjunctiveBasis, caps: Optional[Caps] = None,
             prefix: str = 's') -> LambdaAutomaton:
    """Equivalent disjunctive automaton on the reachable pairs (R, z) of pre-simulation and NBT states."""
    caps = caps or default_caps
    pre = presimulate(aut, basis, caps)
    nbt: StreamParityAutomaton = determinize_nbt(aut.states, aut.priority, aut.initial, caps)
    names: Dict[Tuple[Relation, int], str] = {}
    order: List[Tuple[Relation, int]] = []

    def name(pair) -> str:
        if pair not in names:
            if len(names) >= caps.automaton_states:
                raise ResourceError('automaton_states', caps.automaton_states, 'building the simulation product')
            names[pair] = '{}{}'.format(prefix, len(names))
            order.append(pair)
        return names[pair]

    transitions = {}
    priority = {}
    notes = {}
    name((pre.initial, nbt.initial))
    i = 0
    while i < len(order):
        relation, z = order[i]
        i += 1
        here = names[(relation, z)]
        after = nbt.step(z, relation)
        for c in colors(aut.props):
            delta = pre.theta_hat(relation, c)
            mapping = {q: var(name((q, after))) for q in sorted(free_vars(delta), key=var_key)}
            transitions[(here, c)] = Substitution(mapping)(delta)
        priority[here] = nbt.priority(z)
        notes[here] = '{} @ {}'.format(relation_text(relation), z)
    logger.info('simulation: %d states from %d (%d trees)', len(order), len(aut), len(nbt))
    states = [names[p] for p in order]
    return LambdaAutomaton(aut.functor, states, transitions, priority, states[0], aut.props, notes)
