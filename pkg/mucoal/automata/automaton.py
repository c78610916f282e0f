"""Λ-automata, pointed T-models and the automaton text format."""
import itertools
import logging
from typing import Dict, FrozenSet, Hashable, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from ..config import Caps, default_caps
from ..errors import FormulaError, FormulaSyntaxError, ResourceError
from ..functors import Functor, parse_functor
from ..syntax import (BOT, TOP, Formula, conj, disj, dual_formula, free_vars, is_positive, render, substitute,
                      var, var_key)
from ..utils import subsets

logger = logging.getLogger(__name__)

Color = FrozenSet[str]


def colors(props: Iterable[str]) -> List[Color]:
    """Every subset of `props`, smallest first."""
    return list(subsets(sorted(props)))


def color_text(color: Iterable[str]) -> str:
    return '{' + ','.join(sorted(color)) + '}'


class LambdaAutomaton:
    """States, a transition Θ: A × P(Prop) → ML¹⁺(A), a priority map and an initial state.

    Transitions are stored per state and colour; colours are read modulo the
    automaton's own letters, so Θ(a, c) only depends on c ∩ props.
    """

    def __init__(self,
                 functor: Functor,
                 states: Sequence[str],
                 transitions: Mapping[Tuple[str, Color], Formula],
                 priority: Mapping[str, int],
                 initial: str,
                 props: Iterable[str] = (),
                 notes: Optional[Mapping[str, str]] = None):
        self.functor = functor
        self.states = list(states)
        self.props = tuple(sorted(set(props)))
        self.transitions = {(a, frozenset(c)): f for (a, c), f in transitions.items()}
        self.priority = dict(priority)
        self.initial = initial
        self.notes = dict(notes or {})

    def __repr__(self):
        return 'LambdaAutomaton({} states over {}, props={})'.format(len(self.states), self.functor.spec(),
                                                                    list(self.props))

    def __len__(self):
        return len(self.states)

    def theta(self, state: str, color: Iterable[str]) -> Formula:
        return self.transitions[(state, frozenset(color) & frozenset(self.props))]

    def colors(self) -> List[Color]:
        return colors(self.props)

    def successors(self, state: str) -> FrozenSet:
        out = frozenset()
        for c in self.colors():
            out |= free_vars(self.theta(state, c))
        return out

    def validate(self) -> 'LambdaAutomaton':
        """Check totality, positivity and that transitions only mention states."""
        known = set(self.states)
        if self.initial not in known:
            raise FormulaError('initial state `{}` is not a state'.format(self.initial))
        for a in self.states:
            if a not in self.priority or self.priority[a] < 0:
                raise FormulaError('state `{}` has no valid priority'.format(a))
            for c in self.colors():
                if (a, c) not in self.transitions:
                    raise FormulaError('no transition for state `{}` on {}'.format(a, color_text(c)))
                f = self.transitions[(a, c)]
                if not is_positive(f):
                    raise FormulaError('transition of `{}` on {} is not positive'.format(a, color_text(c)))
                stray = free_vars(f) - known
                if stray:
                    raise FormulaError('transition of `{}` mentions unknown states {}'.format(a, sorted(map(str, stray))))
        return self

    def reachable(self) -> 'LambdaAutomaton':
        """Restriction to the states reachable from the initial one."""
        seen = {self.initial}
        stack = [self.initial]
        while stack:
            a = stack.pop()
            for b in self.successors(a):
                if b not in seen:
                    seen.add(b)
                    stack.append(b)
        states = [a for a in self.states if a in seen]
        return LambdaAutomaton(self.functor, states, {k: f for k, f in self.transitions.items() if k[0] in seen},
                               {a: self.priority[a] for a in states}, self.initial, self.props,
                               {a: n for a, n in self.notes.items() if a in seen})

    def relabel(self, names: Mapping[str, str]) -> 'LambdaAutomaton':
        """Rename states through `names` (states missing from it keep their name)."""
        rename = lambda a: names.get(a, a)
        mapping = {a: var(rename(a)) for a in self.states}
        transitions = {(rename(a), c): substitute(f, mapping) for (a, c), f in self.transitions.items()}
        return LambdaAutomaton(self.functor, [rename(a) for a in self.states], transitions,
                               {rename(a): p for a, p in self.priority.items()}, rename(self.initial), self.props,
                               {rename(a): n for a, n in self.notes.items()})

    def with_props(self, props: Iterable[str]) -> 'LambdaAutomaton':
        """The same automaton read over a larger alphabet."""
        props = tuple(sorted(set(props) | set(self.props)))
        transitions = {(a, c): self.theta(a, c) for a in self.states for c in colors(props)}
        return LambdaAutomaton(self.functor, self.states, transitions, self.priority, self.initial, props, self.notes)


def complement(aut: LambdaAutomaton) -> LambdaAutomaton:
    """Boolean dual of every transition with all priorities shifted by one."""
    transitions = {k: dual_formula(f, aut.functor) for k, f in aut.transitions.items()}
    priority = {a: p + 1 for a, p in aut.priority.items()}
    return LambdaAutomaton(aut.functor, aut.states, transitions, priority, aut.initial, aut.props, aut.notes)


def _tagged(aut: LambdaAutomaton, tag: str) -> LambdaAutomaton:
    return aut.relabel({a: '{}_{}'.format(tag, a) for a in aut.states})


def conjunction(left: LambdaAutomaton, right: LambdaAutomaton, initial: str = 'init') -> LambdaAutomaton:
    """An automaton accepting where both inputs accept, through a fresh initial state."""
    if left.functor != right.functor:
        raise FormulaError('cannot conjoin automata over {} and {}'.format(left.functor.spec(), right.functor.spec()))
    props = set(left.props) | set(right.props)
    a, b = _tagged(left, 'l'), _tagged(right, 'r')
    transitions = {}
    for aut in (a, b):
        for s in aut.states:
            for c in colors(props):
                transitions[(s, c)] = aut.theta(s, c)
    for c in colors(props):
        transitions[(initial, c)] = conj(a.theta(a.initial, c), b.theta(b.initial, c))
    priority = dict(a.priority)
    priority.update(b.priority)
    priority[initial] = 0
    notes = dict(a.notes)
    notes.update(b.notes)
    return LambdaAutomaton(left.functor, [initial] + a.states + b.states, transitions, priority, initial, props, notes)


def disjunction(left: LambdaAutomaton, right: LambdaAutomaton, initial: str = 'init') -> LambdaAutomaton:
    both = conjunction(left, right, initial)
    for c in both.colors():
        both.transitions[(initial, c)] = disj(both.theta('l_' + left.initial, c), both.theta('r_' + right.initial, c))
    return both


def constant(functor: Functor, value: bool, props: Iterable[str] = ()) -> LambdaAutomaton:
    """One-state automaton with Θ ≡ ⊤ (or ⊥) and even priority."""
    props = tuple(sorted(props))
    f = TOP if value else BOT
    return LambdaAutomaton(functor, ['q0'], {('q0', c): f for c in colors(props)}, {'q0': 0}, 'q0', props)


def to_equations(aut: LambdaAutomaton) -> str:
    """The automaton as a system of equations, one per state, for reading rather than parsing."""
    lines = []
    for a in aut.states:
        cases = []
        for c in aut.colors():
            f = aut.theta(a, c)
            if f == BOT:
                continue
            literals = ['{}{}'.format('' if p in c else '~', p) for p in aut.props]
            guard = ' & '.join(literals) if literals else 'true'
            cases.append('({}) & ({})'.format(guard, render(f)))
        kind = 'nu' if aut.priority[a] % 2 == 0 else 'mu'
        lines.append('{} =[{} {}] {}'.format(a, kind, aut.priority[a], ' | '.join(cases) if cases else 'false'))
    return '\n'.join(lines)


# ---------------------------------------------------------------------------
# text format


def dumps(aut: LambdaAutomaton) -> str:
    lines = ['functor {}'.format(aut.functor.spec()),
             'props {}'.format(' '.join(aut.props)).rstrip(),
             'initial {}'.format(aut.initial)]
    for a in aut.states:
        lines.append('state {} {}'.format(a, aut.priority[a]))
    for a in aut.states:
        for c in aut.colors():
            lines.append('{} {} : {}'.format(a, color_text(c), render(aut.theta(a, c))))
    return '\n'.join(lines) + '\n'


def loads(text: str) -> LambdaAutomaton:
    from ..frontend.parser import parse

    functor, props, initial = None, (), None
    states, priority, transitions = [], {}, {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        head, _, rest = line.partition(' ')
        if head == 'functor':
            functor = parse_functor(rest)
        elif head == 'props':
            props = tuple(rest.split())
        elif head == 'initial':
            initial = rest.strip()
        elif head == 'state':
            name, _, prio = rest.partition(' ')
            states.append(name)
            priority[name] = int(prio)
        else:
            left, sep, formula = line.partition(':')
            if not sep or '{' not in left:
                raise FormulaSyntaxError('unrecognized automaton line', lineno, 1)
            state, _, color = left.strip().partition(' ')
            letters = color.strip()[1:-1]
            c = frozenset(x.strip() for x in letters.split(',') if x.strip())
            transitions[(state, c)] = parse(formula.strip())
    if functor is None or initial is None:
        raise FormulaSyntaxError('automaton text needs `functor` and `initial` lines', 1, 1)
    return LambdaAutomaton(functor, states, transitions, priority, initial, props).validate()


# ---------------------------------------------------------------------------
# models


class TModel:
    """A finite T-coalgebra with a valuation and a designated point."""

    def __init__(self,
                 functor: Functor,
                 carrier: Sequence[Hashable],
                 structure: Mapping[Hashable, object],
                 valuation: Mapping[str, Iterable[Hashable]],
                 point: Hashable):
        self.functor = functor
        self.carrier = tuple(carrier)
        self.structure = dict(structure)
        self.valuation = {p: frozenset(v) for p, v in valuation.items()}
        self.point = point

    def __repr__(self):
        return 'TModel(carrier={}, point={!r})'.format(list(self.carrier), self.point)

    def __str__(self):
        lines = ['point = {!r}'.format(self.point)]
        for s in self.carrier:
            lines.append('{!r} -> {} {}'.format(s, sorted(self.functor.support(self.structure[s]), key=var_key),
                                                 color_text(self.color(s))))
        return '\n'.join(lines)

    def color(self, s: Hashable) -> Color:
        return frozenset(p for p, ext in self.valuation.items() if s in ext)

    def at(self, point: Hashable) -> 'TModel':
        return TModel(self.functor, self.carrier, self.structure, self.valuation, point)

    def restrict(self, props: Iterable[str]) -> 'TModel':
        props = set(props)
        return TModel(self.functor, self.carrier, self.structure,
                      {p: v for p, v in self.valuation.items() if p in props}, self.point)

    def validate(self) -> 'TModel':
        points = set(self.carrier)
        if self.point not in points:
            raise FormulaError('point {!r} is not in the carrier'.format(self.point))
        for s in self.carrier:
            if s not in self.structure:
                raise FormulaError('no structure at {!r}'.format(s))
            if not self.functor.support(self.structure[s]) <= points:
                raise FormulaError('structure at {!r} leaves the carrier'.format(s))
        for p, ext in self.valuation.items():
            if not ext <= points:
                raise FormulaError('valuation of `{}` leaves the carrier'.format(p))
        return self


def enumerate_models(functor: Functor, props: Sequence[str], bound: int,
                     caps: Optional[Caps] = None, min_size: int = 1) -> Iterator[TModel]:
    """Pointed models over carriers {0..n-1}, n ≤ bound, pointed at 0."""
    caps = caps or default_caps
    props = sorted(props)
    for n in range(min_size, bound + 1):
        if n > caps.carrier:
            raise ResourceError('carrier', caps.carrier, 'enumerating models')
        carrier = list(range(n))
        elements = list(functor.elements(carrier, caps))
        if len(elements)**n > caps.elements:
            raise ResourceError('elements', caps.elements, 'enumerating models of size {}'.format(n))
        valuations = list(itertools.product(list(subsets(carrier)), repeat=len(props)))
        for structure in itertools.product(elements, repeat=n):
            for val in valuations:
                yield TModel(functor, carrier, dict(zip(carrier, structure)), dict(zip(props, val)), 0)
