"""Zero-step and one-step semantics.

A one-step model is a carrier, one functor element over it and a marking of
the carrier by variable sets. Boolean formulas are read pointwise on the
marking; one-step formulas are read on the element through the functor's
predicate liftings. All checks here are exact or say that they are not.
"""
import itertools
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, Hashable, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from .config import Caps, default_caps
from .errors import FormulaError, ResourceError, UnknownLiftingError
from .syntax import (And, Bot, Counting, Formula, Modal, Mu, Nabla, Not, Nu, Or, Top, Var, free_vars, max_grade,
                     min_sat, render, var_key)
from .utils import Report, minimal_sets, subsets

logger = logging.getLogger(__name__)

Marking = Mapping[Hashable, FrozenSet]
Denote = Callable[[Formula], FrozenSet]
Sat = Callable[[Formula, Hashable], List[FrozenSet]]


@dataclass
class OneStepModel:
    carrier: Tuple
    element: object
    marking: Dict[Hashable, FrozenSet] = field(default_factory=dict)

    def __str__(self):
        marks = ', '.join('{}:{{{}}}'.format(s, ','.join(sorted(map(str, self.marking.get(s, ())))))
                          for s in self.carrier)
        return 'carrier = {}; element = {}; marking = {}'.format(list(self.carrier), self.element, marks)


def eval_zero_step(pi: Formula, marking: Marking, carrier: Iterable[Hashable]) -> FrozenSet:
    """Points of `carrier` where the boolean formula `pi` holds under `marking`."""
    carrier = frozenset(carrier)
    if isinstance(pi, Var):
        return frozenset(s for s in carrier if pi.name in marking.get(s, ()))
    if isinstance(pi, Top):
        return carrier
    if isinstance(pi, Bot):
        return frozenset()
    if isinstance(pi, Not):
        return carrier - eval_zero_step(pi.child, marking, carrier)
    if isinstance(pi, And):
        out = carrier
        for c in pi.children:
            out &= eval_zero_step(c, marking, carrier)
        return out
    if isinstance(pi, Or):
        out = frozenset()
        for c in pi.children:
            out |= eval_zero_step(c, marking, carrier)
        return out
    raise FormulaError('not a boolean formula: {}'.format(render(pi)))


def holds(f: Formula, functor, element, denote: Denote) -> bool:
    """Truth of a layer formula at `element`; `denote` interprets modal arguments as point sets."""
    if isinstance(f, Top):
        return True
    if isinstance(f, Bot):
        return False
    if isinstance(f, Not):
        return not holds(f.child, functor, element, denote)
    if isinstance(f, And):
        return all(holds(c, functor, element, denote) for c in f.children)
    if isinstance(f, Or):
        return any(holds(c, functor, element, denote) for c in f.children)
    if isinstance(f, Modal):
        return functor.eval_modal(f.op, f.args, element, denote)
    if isinstance(f, Counting):
        return functor.eval_counting(f, element, denote)
    if isinstance(f, Nabla):
        return holds(f.expand(), functor, element, denote)
    if isinstance(f, Var):
        raise FormulaError('variable `{}` outside of a modality'.format(f.name))
    raise FormulaError('not a one-step formula: {}'.format(render(f)))


def marking_denote(marking: Marking, carrier: Iterable[Hashable]) -> Denote:
    carrier = frozenset(carrier)
    return lambda pi: eval_zero_step(pi, marking, carrier)


def eval_one_step(alpha: Formula, model: OneStepModel, functor) -> bool:
    return holds(alpha, functor, model.element, marking_denote(model.marking, model.carrier))


def substituted_marking(sub: Mapping[Hashable, Formula], marking: Marking, carrier: Iterable[Hashable]) -> Dict:
    """m_σ(s) = {b : s ∈ ⟦σ(b)⟧⁰_m}, so that α[σ] under m agrees with α under m_σ."""
    carrier = list(carrier)
    extents = {b: eval_zero_step(pi, marking, carrier) for b, pi in sub.items()}
    return {s: frozenset(b for b, ext in extents.items() if s in ext) for s in carrier}


# ---------------------------------------------------------------------------
# minimal markings


def boolean_sat(pi: Formula, point: Hashable) -> List[FrozenSet]:
    """Minimal markings of `point` (as sets of (point, var)) satisfying a positive boolean formula."""
    return [frozenset((point, v) for v in clause) for clause in min_sat(pi)]


def minimal_markings(f: Formula, functor, element, sat: Sat = boolean_sat, cap: Optional[int] = None,
                     memo: Optional[Dict[Formula, List[FrozenSet]]] = None) -> List[FrozenSet]:
    """Inclusion-minimal markings under which the positive formula `f` holds at `element`.

    A marking is a set of (point, variable) pairs; `sat(arg, point)` lists the
    minimal markings making `point` satisfy the modal argument `arg`. `memo`
    caches subformulas at this element across calls.
    """
    if memo is None:
        memo = {}
    if f not in memo:
        memo[f] = _minimal_markings(f, functor, element, sat, cap, memo)
    return memo[f]


def _minimal_markings(f: Formula, functor, element, sat: Sat, cap: Optional[int], memo: Dict) -> List[FrozenSet]:
    if isinstance(f, Top):
        return [frozenset()]
    if isinstance(f, Bot):
        return []
    if isinstance(f, Or):
        out = []
        for c in f.children:
            out.extend(minimal_markings(c, functor, element, sat, cap, memo))
        return _capped(minimal_sets(out), cap)
    if isinstance(f, And):
        acc = [frozenset()]
        for c in f.children:
            parts = minimal_markings(c, functor, element, sat, cap, memo)
            acc = _capped(minimal_sets(a | b for a in acc for b in parts), cap)
            if not acc:
                return []
        return acc
    if isinstance(f, Modal):
        return _capped(functor.modal_markings(f.op, f.args, element, sat, cap), cap)
    if isinstance(f, Nabla):
        direct = functor.nabla_markings(f, element, sat, cap)
        if direct is not None:
            return _capped(direct, cap)
        return minimal_markings(f.expand(), functor, element, sat, cap, memo)
    if isinstance(f, Counting):
        return minimal_markings(f.expand(), functor, element, sat, cap, memo)
    raise FormulaError('minimal markings need a positive one-step formula, got {}'.format(render(f)))


def _capped(markings: List[FrozenSet], cap: Optional[int]) -> List[FrozenSet]:
    if cap is not None and len(markings) > cap:
        raise ResourceError('markings', cap, 'enumerating minimal markings')
    return markings


def combine_markings(options: Iterable[List[FrozenSet]], cap: Optional[int] = None) -> List[FrozenSet]:
    """Minimal unions picking one marking from every option list."""
    acc = [frozenset()]
    for choices in options:
        acc = _capped(minimal_sets(a | b for a in acc for b in choices), cap)
        if not acc:
            return []
    return acc


# ---------------------------------------------------------------------------
# one-step equivalence and friends


class EquivalenceResult(Report):

    def __init__(self, equivalent: bool, counterexample: Optional[OneStepModel] = None, bounded: bool = False):
        self.equivalent = equivalent
        self.counterexample = counterexample
        self.bounded = bounded

    def __bool__(self):
        return self.equivalent


def variables_of(*formulas: Formula) -> List[Hashable]:
    names = set()
    for f in formulas:
        names |= free_vars(f)
    return sorted(names, key=var_key)


def grade_caps(caps: Optional[Caps], *formulas: Formula) -> Caps:
    caps = caps or default_caps
    grade = max([max_grade(f) for f in formulas] + [1])
    return caps(multiplicity=grade)


def image_carrier(names: Sequence[Hashable]) -> List[FrozenSet]:
    return list(subsets(names))


def image_models(names: Sequence[Hashable], functor, caps: Caps) -> Iterator[OneStepModel]:
    """Every one-step model (P(A), Γ, id); each one-step model maps onto one of these."""
    carrier = image_carrier(names)
    identity = {b: b for b in carrier}
    for element in functor.elements(carrier, caps):
        yield OneStepModel(tuple(carrier), element, identity)


def small_models(names: Sequence[Hashable], functor, bound: int, caps: Caps) -> Iterator[OneStepModel]:
    """All one-step models with carriers {0..n-1}, n ≤ bound."""
    types = image_carrier(names)
    for n in range(bound + 1):
        carrier = tuple(range(n))
        elements = list(functor.elements(carrier, caps))
        for labels in itertools.product(types, repeat=n):
            marking = dict(zip(carrier, labels))
            for element in elements:
                yield OneStepModel(carrier, element, marking)


def one_step_equivalent(alpha: Formula, beta: Formula, functor, bound: int = 2, caps: Optional[Caps] = None) -> EquivalenceResult:
    """Decide α ≡¹ β.

    Truth of a one-step formula only depends on the image of the model under
    its marking, so running through T(P(A)) is exact. When T(P(A)) exceeds the
    caps, models up to `bound` points are enumerated instead and the result is
    flagged bounded.
    """
    caps = grade_caps(caps, alpha, beta)
    names = variables_of(alpha, beta)
    try:
        models = list(image_models(names, functor, caps))
        bounded = False
    except ResourceError as err:
        logger.info('image enumeration gave up (%s); falling back to carriers <= %d', err, bound)
        models = small_models(names, functor, bound, caps)
        bounded = True
    for model in models:
        if eval_one_step(alpha, model, functor) != eval_one_step(beta, model, functor):
            return EquivalenceResult(False, model, bounded)
    return EquivalenceResult(True, None, bounded)


def one_step_entails(alpha: Formula, beta: Formula, functor, caps: Optional[Caps] = None) -> bool:
    caps = grade_caps(caps, alpha, beta)
    names = variables_of(alpha, beta)
    return all(eval_one_step(beta, m, functor) for m in image_models(names, functor, caps) if eval_one_step(alpha, m, functor))


class MorphismCheck(Report):

    def __init__(self, frame: bool, marking: bool):
        self.frame = frame
        self.marking = marking

    def __bool__(self):
        return self.frame and self.marking


def one_step_morphism_check(f: Mapping, source: OneStepModel, target: OneStepModel, functor) -> MorphismCheck:
    """Whether `f` is a frame morphism (T f(σ') = σ) and whether it also preserves markings."""
    frame = functor.map(f, source.element) == target.element
    marking = all(
        frozenset(source.marking.get(s, ())) == frozenset(target.marking.get(f[s], ())) for s in source.carrier)
    return MorphismCheck(frame, marking)


class MonotonicityResult(Report):

    def __init__(self, monotone: bool, counterexample: Optional[Tuple[OneStepModel, OneStepModel]] = None):
        self.monotone = monotone
        self.counterexample = counterexample

    def __bool__(self):
        return self.monotone


STAR = '*'


def one_step_monotone(alpha: Formula, name: Hashable, functor, caps: Optional[Caps] = None) -> MonotonicityResult:
    """Exact check that enlarging the extent of `name` never falsifies α.

    Counterexamples map onto a model over P(A) plus one distinguished point
    whose type gains `name`.
    """
    caps = grade_caps(caps, alpha)
    names = sorted(set(variables_of(alpha)) | {name}, key=var_key)
    types = image_carrier(names)
    carrier = tuple(types) + (STAR, )
    elements = list(functor.elements(carrier, caps))
    for base in types:
        if name in base:
            continue
        smaller = {b: b for b in types}
        smaller[STAR] = base
        larger = dict(smaller)
        larger[STAR] = base | {name}
        for element in elements:
            before = OneStepModel(carrier, element, smaller)
            after = OneStepModel(carrier, element, larger)
            if eval_one_step(alpha, before, functor) and not eval_one_step(alpha, after, functor):
                return MonotonicityResult(False, (before, after))
    return MonotonicityResult(True)
