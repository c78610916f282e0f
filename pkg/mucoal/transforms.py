"""Monotonicity, positive normal forms, bisimulation quantifiers and uniform interpolants.

The automaton-level transformations assume disjunctive input: the Lyndon
transformation lets a state also read its colour with p removed, and the
projection ∃̃p lets it read its colour with p either way. Both keep
transitions inside the basis because bases are closed under ∨.
"""
import logging
from dataclasses import dataclass, field
from typing import FrozenSet, Hashable, Iterable, List, Optional, Sequence, Tuple, Union

from .automata import (LambdaAutomaton, LanguageVerdict, TModel, accepts, colors, enumerate_models, equivalent,
                       implies, simulate, to_equations)
from .bases import DisjunctiveBasis, basis_for
from .config import Caps, default_caps
from .errors import FormulaError, NonMonotoneError
from .frontend.compiler import compile_formula, letters
from .frontend.fixpoint import eval_fixpoint
from .functors import Functor
from .semantics import eval_zero_step, one_step_equivalent, one_step_monotone, variables_of
from .substitution import Substitution, type_substitution
from .syntax import (BOT, TOP, Bot, Counting, Formula, Modal, Nabla, Not, Pair, Top, children_of, disj, free_vars, join, nnf,
                     rebuild, render, var_key)
from .utils import Report, subsets

logger = logging.getLogger(__name__)

Target = Union[Formula, LambdaAutomaton]


# ---------------------------------------------------------------------------
# one-step Lyndon


class LyndonResult(Report):
    excluded_attr = ('intermediate', )

    def __init__(self, formula: Formula, intermediate: Formula, verified: bool, bounded: bool):
        self.formula = formula
        self.intermediate = intermediate
        self.verified = verified
        self.bounded = bounded


def _type_token(base: FrozenSet) -> Tuple:
    return ('t', ) + tuple(sorted(base, key=var_key))


def _typed(f: Formula, universe: Sequence[Hashable], functor: Optional[Functor]) -> Formula:
    """Modal arguments rewritten as disjunctions of the types B ⊆ A satisfying them."""
    if isinstance(f, (Top, Bot)):
        return f
    if isinstance(f, (Modal, Nabla, Counting)):
        op = f.op if isinstance(f, Modal) else f.prefix + ('<>' if isinstance(f, Nabla) else '<1>')
        layer = functor.arg_functor(op)
        if layer is not None:
            args = [_typed(a, universe, layer) for a in children_of(f)]
        else:
            args = [_type_disjunction(a, universe) for a in children_of(f)]
        return rebuild(f, args)
    return rebuild(f, [_typed(c, universe, functor) for c in children_of(f)])


def _type_disjunction(pi: Formula, universe: Sequence[Hashable]) -> Formula:
    names = []
    for base in subsets(universe):
        if eval_zero_step(pi, {0: base}, [0]):
            names.append(_type_token(base))
    return join(names)


def _leaves(name) -> FrozenSet:
    if isinstance(name, frozenset):
        out = frozenset()
        for x in name:
            out |= _leaves(x)
        return out
    if isinstance(name, Pair):
        return _leaves(name.left) | _leaves(name.right)
    return frozenset([name])


def _positive_type(name, positive: Substitution) -> Formula:
    tokens = _leaves(name)
    if not tokens:
        return TOP
    if len(tokens) > 1:
        return BOT
    (token, ) = tokens
    return positive[frozenset(token[1:])]


def one_step_lyndon(alpha: Formula, name: Hashable, functor: Functor, basis: Optional[DisjunctiveBasis] = None,
                    caps: Optional[Caps] = None) -> LyndonResult:
    """A one-step formula positive in `name` and equivalent to α, for α monotone in `name`.

    α is rewritten over propositional types, brought into basis normal form,
    and every type variable is replaced by its `name`-positive weakening.
    """
    verdict = one_step_monotone(alpha, name, functor, caps)
    if not verdict:
        raise NonMonotoneError(name, *verdict.counterexample)
    basis = basis or basis_for(functor)
    universe = sorted(set(variables_of(alpha)) | {name}, key=var_key)
    typed = _typed(nnf(alpha, functor), universe, functor)
    delta = basis.normal_form(typed)
    positive = type_substitution(universe, positive_in=name)
    out = Substitution({n: _positive_type(n, positive) for n in free_vars(delta)})(delta)
    check = one_step_equivalent(out, alpha, functor, caps=caps)
    if not check:
        logger.warning('one-step Lyndon output %s differs from %s', render(out), render(alpha))
    return LyndonResult(out, delta, check.equivalent, check.bounded)


def positive_in(f: Formula, name: Hashable) -> bool:
    """No occurrence of `name` below a negation."""
    if isinstance(f, Not):
        return name not in free_vars(f.child)
    return all(positive_in(c, name) for c in children_of(f))


# ---------------------------------------------------------------------------
# automaton transformations


def lyndon_automaton(aut: LambdaAutomaton, p: str) -> LambdaAutomaton:
    """Θ(a, c) ∨ Θ(a, c ∖ {p}) whenever p ∈ c; states and priorities unchanged."""
    transitions = {}
    for a in aut.states:
        for c in aut.colors():
            f = aut.theta(a, c)
            transitions[(a, c)] = disj(f, aut.theta(a, c - {p})) if p in c else f
    return LambdaAutomaton(aut.functor, aut.states, transitions, aut.priority, aut.initial, aut.props, aut.notes)


def exists_p(aut: LambdaAutomaton, p: str) -> LambdaAutomaton:
    """Θ(a, c) ∨ Θ(a, c ∪ {p}) over the alphabet without p."""
    props = tuple(x for x in aut.props if x != p)
    transitions = {}
    for a in aut.states:
        for c in colors(props):
            transitions[(a, c)] = disj(aut.theta(a, c), aut.theta(a, c | {p}))
    return LambdaAutomaton(aut.functor, aut.states, transitions, aut.priority, aut.initial, props, aut.notes)


def depends_only_on(aut: LambdaAutomaton, keep: Iterable[str]) -> bool:
    keep = frozenset(keep)
    return all(aut.theta(a, c) == aut.theta(a, c & keep) for a in aut.states for c in aut.colors())


def _as_automaton(target: Target, functor: Optional[Functor], caps: Caps) -> LambdaAutomaton:
    if isinstance(target, LambdaAutomaton):
        return target
    if functor is None:
        raise FormulaError('a functor is needed to compile `{}`'.format(render(target)))
    return compile_formula(target, functor, caps=caps).automaton


def _disjunctive(target: Target, functor: Optional[Functor], caps: Caps, disjunctive: bool) -> LambdaAutomaton:
    aut = _as_automaton(target, functor, caps)
    if disjunctive:
        return aut
    return simulate(aut, basis_for(aut.functor), caps)


# ---------------------------------------------------------------------------
# monotonicity


class MonotonicityVerdict(Report):
    excluded_attr = ('counterexample', )

    def __init__(self, monotone: bool, mode: str, counterexample: Optional[Tuple[TModel, TModel]] = None,
                 bounded: bool = True, checked: int = 0):
        self.monotone = monotone
        self.mode = mode
        self.counterexample = counterexample
        self.bounded = bounded
        self.checked = checked

    def __bool__(self):
        return self.monotone


def _enlarged(model: TModel, p: str, point: Hashable) -> TModel:
    valuation = dict(model.valuation)
    valuation[p] = valuation.get(p, frozenset()) | {point}
    return TModel(model.functor, model.carrier, model.structure, valuation, model.point)


def _holds(target: Target, model: TModel, caps: Caps) -> bool:
    if isinstance(target, LambdaAutomaton):
        return accepts(target, model, caps)
    return model.point in eval_fixpoint(target, model)


def _target_letters(target: Target) -> List[str]:
    if isinstance(target, LambdaAutomaton):
        return list(target.props)
    return sorted(letters(target))


def enlargement_witness(target: Target, p: str, functor: Functor, bound: int,
                        caps: Optional[Caps] = None) -> Tuple[Optional[Tuple[TModel, TModel]], int]:
    """A model satisfying `target` that stops satisfying it once p grows at one point."""
    caps = caps or default_caps
    props = sorted(set(_target_letters(target)) | {p})
    checked = 0
    for model in enumerate_models(functor, props, bound, caps):
        checked += 1
        if not _holds(target, model, caps):
            continue
        for s in model.carrier:
            if s in model.valuation[p]:
                continue
            larger = _enlarged(model, p, s)
            if not _holds(target, larger, caps):
                return (model, larger), checked
    return None, checked


def is_monotone(target: Target, p: str, mode: str = 'enum', functor: Optional[Functor] = None, bound: int = 3,
                caps: Optional[Caps] = None, disjunctive: bool = False) -> MonotonicityVerdict:
    """Monotonicity of a formula or automaton in the letter p.

    `enum` and `empty` compare the disjunctive automaton with its Lyndon
    transform (by model enumeration, or exactly through emptiness for the
    powerset functor); `oracle` enlarges p pointwise on enumerated models.
    """
    caps = caps or default_caps
    if mode not in ('enum', 'empty', 'oracle'):
        raise NotImplementedError("`mode` must belong to {'enum', 'empty', 'oracle'}!")
    functor = functor or (target.functor if isinstance(target, LambdaAutomaton) else None)
    if functor is None:
        raise FormulaError('a functor is needed to decide monotonicity of a formula')
    if mode == 'oracle':
        witness, checked = enlargement_witness(target, p, functor, bound, caps)
        return MonotonicityVerdict(witness is None, mode, witness, True, checked)
    aut = _disjunctive(target, functor, caps, disjunctive)
    if p not in aut.props:
        aut = aut.with_props(set(aut.props) | {p})
    verdict: LanguageVerdict = equivalent(aut, lyndon_automaton(aut, p), mode, bound, caps)
    if verdict.holds:
        return MonotonicityVerdict(True, mode, None, verdict.bounded, verdict.checked)
    witness, _ = enlargement_witness(aut, p, functor, bound, caps)
    if witness is None:
        witness = (verdict.counterexample, None)
    logger.info('not monotone in %s', p)
    return MonotonicityVerdict(False, mode, witness, verdict.bounded, verdict.checked)


# ---------------------------------------------------------------------------
# uniform interpolation


@dataclass
class InterpolationRequest:
    target: Target
    keep: FrozenSet[str]
    eliminate: Optional[List[str]] = None
    functor: Optional[Functor] = None
    consequences: List[Formula] = field(default_factory=list)
    bound: int = 3

    def __post_init__(self):
        self.keep = frozenset(self.keep)
        present = set(_target_letters(self.target))
        if not self.keep <= present:
            raise FormulaError('letters {} to keep do not occur in the input'.format(sorted(self.keep - present)))
        if self.eliminate is None:
            self.eliminate = [p for p in sorted(present) if p not in self.keep]
        elif set(self.eliminate) != present - self.keep:
            raise FormulaError('the elimination order must list exactly the letters outside `keep`')


class Certificate(Report):

    def __init__(self, claim: str, holds: Optional[bool], bounded: bool, checked: int = 0):
        self.claim = claim
        self.holds = holds
        self.bounded = bounded
        self.checked = checked


class InterpolationResult(Report):
    excluded_attr = ('automaton', 'source')

    def __init__(self, automaton: LambdaAutomaton, source: LambdaAutomaton, equations: str,
                 certificates: List[Certificate]):
        self.automaton = automaton
        self.source = source
        self.equations = equations
        self.certificates = certificates
        self.keep = list(automaton.props)
        self.states = len(automaton)

    @property
    def certified(self) -> bool:
        return all(c.holds is not False for c in self.certificates)


def uniform_interpolant(req: InterpolationRequest, caps: Optional[Caps] = None,
                        disjunctive: bool = False) -> InterpolationResult:
    """The strongest consequence of the input over the kept letters, as a disjunctive automaton.

    Certificates: the input implies the interpolant, and the interpolant
    implies every registered consequence that the input implies and whose
    shared letters are kept. Both are checked by model enumeration.
    """
    caps = caps or default_caps
    functor = req.functor or (req.target.functor if isinstance(req.target, LambdaAutomaton) else None)
    source = _as_automaton(req.target, functor, caps)
    aut = source if disjunctive else simulate(source, basis_for(source.functor), caps)
    for p in req.eliminate:
        aut = exists_p(aut, p)
        logger.debug('eliminated %s', p)
    if not depends_only_on(aut, req.keep):
        raise FormulaError('interpolant still reads eliminated letters')
    logger.info('interpolant over %s with %d states', sorted(req.keep), len(aut))

    certificates = []
    verdict = implies(source, aut, 'enum', req.bound, caps)
    certificates.append(Certificate('input implies interpolant', verdict.holds, verdict.bounded, verdict.checked))
    input_letters = set(source.props)
    for psi in req.consequences:
        claim = 'interpolant implies {}'.format(render(psi))
        if not (letters(psi) & input_letters) <= req.keep:
            certificates.append(Certificate(claim + ' (skipped: shares eliminated letters)', None, True))
            continue
        target = compile_formula(psi, source.functor, caps=caps).automaton
        if not implies(source, target, 'enum', req.bound, caps):
            certificates.append(Certificate(claim + ' (skipped: not implied by the input)', None, True))
            continue
        verdict = implies(aut, target, 'enum', req.bound, caps)
        certificates.append(Certificate(claim, verdict.holds, verdict.bounded, verdict.checked))
    return InterpolationResult(aut, source, to_equations(aut), certificates)


__all__ = [
    'LyndonResult', 'one_step_lyndon', 'positive_in', 'lyndon_automaton', 'exists_p', 'depends_only_on',
    'MonotonicityVerdict', 'enlargement_witness', 'is_monotone', 'InterpolationRequest', 'Certificate',
    'InterpolationResult', 'uniform_interpolant'
]
