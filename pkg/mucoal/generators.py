"""Seeded random formulas, automata and models for the harnesses and tests."""
import logging
import random
from typing import Dict, List, Optional, Sequence

from .automata.automaton import LambdaAutomaton, TModel, colors
from .config import Caps, default_caps
from .errors import UnsupportedFunctorError
from .functors import Bag, Compose, Functor, Identity, Labeled, MonotoneNeighbourhood, Powerset, Product, Sum
from .games import random_game
from .syntax import BOT, TOP, Formula, Modal, Mu, Nu, conj, disj, neg, var

logger = logging.getLogger(__name__)


def unary_ops(functor: Functor) -> List[str]:
    """Unary modalities of a base functor, in dual pairs."""
    if isinstance(functor, (Powerset, MonotoneNeighbourhood)):
        return ['<>', '[]']
    if isinstance(functor, Bag):
        return ['<1>', '[1]', '<2>', '[2]']
    if isinstance(functor, (Identity, Labeled)):
        return ['X']
    raise UnsupportedFunctorError('no unary modalities listed for `{}`'.format(functor.spec()))


def modal_step(functor: Functor, rng: random.Random, arg: Formula) -> Formula:
    """Wrap `arg` in one randomly chosen modal layer of `functor`."""
    if isinstance(functor, (Sum, Product)):
        tag = rng.randint(1, 2)
        inner = modal_step(functor.parts[tag - 1], rng, arg)
        co = '~' if isinstance(functor, Sum) and rng.random() < 0.3 else ''
        return Modal('{}{}:{}'.format(tag, co, inner.op), inner.args)
    if isinstance(functor, Compose):
        outer = modal_step(functor.parts[0], rng, modal_step(functor.parts[1], rng, arg))
        return outer
    return Modal(rng.choice(unary_ops(functor)), (arg, ))


def random_formula(functor: Functor, letters: Sequence[str], depth: int = 4, binders: int = 2,
                   seed: Optional[int] = None, rng: Optional[random.Random] = None) -> Formula:
    """A guarded formula in negation normal form with at most `binders` fixpoints.

    Bound variables occur positively and only under a modality of their binder.
    """
    rng = rng or random.Random(seed)
    letters = list(letters)
    counter = [0]

    def literal(available: List[str]) -> Formula:
        roll = rng.random()
        if available and roll < 0.45:
            return var(rng.choice(available))
        if letters and roll < 0.9:
            p = var(rng.choice(letters))
            return neg(p) if rng.random() < 0.25 else p
        return rng.choice([TOP, BOT])

    def gen(d: int, pending: List[str], available: List[str]) -> Formula:
        if d <= 0:
            return literal(available)
        roll = rng.random()
        if roll < 0.2 and counter[0] < binders:
            counter[0] += 1
            name = 'x{}'.format(counter[0])
            binder = Mu if rng.random() < 0.5 else Nu
            return binder(name, gen(d - 1, pending + [name], available))
        if roll < 0.5:
            return modal_step(functor, rng, gen(d - 1, [], available + pending))
        if roll < 0.75:
            return conj(gen(d - 1, pending, available), gen(d - 1, pending, available))
        if roll < 0.95:
            return disj(gen(d - 1, pending, available), gen(d - 1, pending, available))
        return literal(available)

    return gen(depth, [], [])


def random_one_step(functor: Functor, names: Sequence[str], rng: random.Random, depth: int = 2) -> Formula:
    """A positive one-step formula over `names`."""
    if depth <= 0 or rng.random() < 0.2:
        if rng.random() < 0.15:
            return rng.choice([TOP, BOT])
        body = var(rng.choice(list(names)))
        if len(names) > 1 and rng.random() < 0.3:
            other = var(rng.choice(list(names)))
            body = conj(body, other) if rng.random() < 0.5 else disj(body, other)
        return modal_step(functor, rng, body)
    left = random_one_step(functor, names, rng, depth - 1)
    right = random_one_step(functor, names, rng, depth - 1)
    return conj(left, right) if rng.random() < 0.5 else disj(left, right)


def random_automaton(functor: Functor, props: Sequence[str], states: int = 3, max_priority: int = 2,
                     seed: Optional[int] = None) -> LambdaAutomaton:
    rng = random.Random(seed)
    names = ['a{}'.format(i) for i in range(states)]
    transitions = {}
    for a in names:
        for c in colors(props):
            transitions[(a, c)] = random_one_step(functor, names, rng)
    priority = {a: rng.randint(0, max_priority) for a in names}
    return LambdaAutomaton(functor, names, transitions, priority, names[0], props).validate()


def random_model(functor: Functor, props: Sequence[str], size: int, seed: Optional[int] = None,
                 caps: Optional[Caps] = None) -> TModel:
    """A pointed model on {0..size-1}, pointed at 0."""
    caps = caps or default_caps
    rng = random.Random(seed)
    carrier = list(range(size))
    elements = list(functor.elements(carrier, caps))
    structure = {s: rng.choice(elements) for s in carrier}
    valuation = {p: [s for s in carrier if rng.random() < 0.5] for p in props}
    return TModel(functor, carrier, structure, valuation, 0).validate()


def chain(size: int, props_at_end: Sequence[str] = ('p', )) -> TModel:
    """Kripke chain 0 → 1 → … → size-1 with the given letters true at the last point."""
    carrier = list(range(size))
    structure: Dict[int, frozenset] = {s: frozenset([s + 1]) if s + 1 < size else frozenset() for s in carrier}
    return TModel(Powerset(), carrier, structure, {p: [size - 1] for p in props_at_end}, 0).validate()


__all__ = [
    'unary_ops', 'modal_step', 'random_formula', 'random_one_step', 'random_automaton', 'random_model', 'chain',
    'random_game'
]
