import itertools
import logging
from abc import ABC, abstractmethod
from typing import Dict, Hashable, Iterable, Iterator, List, Optional, Sequence

from ..config import Caps, default_caps
from ..errors import FormulaError, ResourceError
from ..functors import Functor
from ..semantics import (OneStepModel, eval_one_step, grade_caps, image_models, one_step_equivalent, small_models,
                         variables_of)
from ..substitution import Substitution
from ..syntax import (BOT, TOP, And, Bot, Counting, Formula, Modal, Nabla, Or, Pair, Top, Var, conj, disj, dnf,
                      free_vars, is_positive, max_grade, render, var_key)
from ..utils import Report

logger = logging.getLogger(__name__)


def disjuncts(delta: Formula) -> List[Formula]:
    if isinstance(delta, Bot):
        return []
    if isinstance(delta, Or):
        return list(delta.children)
    return [delta]


def realize_name(name) -> Formula:
    """The boolean formula a basis variable stands for: sets are meets, pairs are conjunctions."""
    if isinstance(name, frozenset):
        return conj(*(realize_name(x) for x in name))
    if isinstance(name, Pair):
        return conj(realize_name(name.left), realize_name(name.right))
    return Var(name)


def realize(delta: Formula) -> Formula:
    """δ[∧_A] (and θ on paired variables): back to a formula over the plain letters."""
    return Substitution({n: realize_name(n) for n in free_vars(delta)})(delta)


def merge_name(name) -> Hashable:
    """Pair(B₁, B₂) ↦ B₁ ∪ B₂ on set-named variables."""
    if isinstance(name, Pair):
        left, right = merge_name(name.left), merge_name(name.right)
        return frozenset(left) | frozenset(right)
    return name


def merge_pairs(delta: Formula) -> Formula:
    return Substitution({n: Var(merge_name(n)) for n in free_vars(delta)})(delta)


def conj_atom_names(f: Formula) -> Optional[frozenset]:
    """Variable names of `f` when it is ⊤, a variable or a conjunction of variables."""
    if isinstance(f, Top):
        return frozenset()
    if isinstance(f, Var):
        return frozenset([f.name])
    if isinstance(f, And) and all(isinstance(c, Var) for c in f.children):
        return frozenset(c.name for c in f.children)
    return None


class DisjunctiveBasis(ABC):
    """A family of disjunctive formulas closed under ⊤ and ∨, with its two distributive laws.

    Basis formulas over A are ⊤ or disjunctions of basic formulas whose
    variables name elements of A; `normal_form` works over A = P(letters),
    variables being frozensets read as meets.
    """

    def __init__(self, functor: Functor):
        self.functor = functor

    def __repr__(self):
        return '{}({})'.format(type(self).__name__, self.functor.spec())

    @abstractmethod
    def distribute(self, atom: Modal) -> Formula:
        """δ ∈ D(P(A)) with atom ≡¹ δ[∧_A]."""

    @abstractmethod
    def binary(self, left: Formula, right: Formula) -> Formula:
        """γ ∈ D(A ⊎̃ B) with left ∧ right ≡¹ γ[θ], for basic non-⊤ formulas."""

    @abstractmethod
    def top_witness(self) -> Formula:
        """A basis formula that holds on every element."""

    @abstractmethod
    def generators(self, names: Sequence[Hashable]) -> List[Formula]:
        """Basic formulas over `names` used by self-tests."""

    def atoms(self, names: Sequence[Hashable]) -> List[Modal]:
        """Modal atoms over `names` used by self-tests."""
        return []

    def rename_basic(self, atom: Formula) -> Optional[Formula]:
        """`atom` as a basis formula over P(A), when it already is one up to naming."""
        return None

    def conjoin(self, left: Formula, right: Formula) -> Formula:
        """Binary law lifted to disjunctions, without merging paired names."""
        out = []
        for b in disjuncts(left):
            for c in disjuncts(right):
                if isinstance(b, Top):
                    out.append(c)
                elif isinstance(c, Top):
                    out.append(b)
                else:
                    out.append(self.binary(b, c))
        return disj(*out)

    def atom_normal_form(self, atom: Formula) -> Formula:
        renamed = self.rename_basic(atom)
        if renamed is not None:
            return renamed
        if isinstance(atom, (Nabla, Counting)):
            return self.normal_form(atom.expand())
        if isinstance(atom, Modal):
            return self.distribute(atom)
        raise FormulaError('unexpected atom {} in a one-step formula'.format(render(atom)))

    def normal_form(self, alpha: Formula) -> Formula:
        """δ ∈ D(P(A)) with α ≡¹ δ[∧_A] for a positive one-step formula α."""
        if not is_positive(alpha):
            raise FormulaError('normal forms need a positive formula, got {}'.format(render(alpha)))
        out = []
        cache: Dict[Formula, Formula] = {}
        for clause in dnf(alpha):
            acc = TOP
            for atom in sorted(clause, key=lambda a: render(a)):
                if atom not in cache:
                    cache[atom] = self.atom_normal_form(atom)
                acc = merge_pairs(self.conjoin(acc, cache[atom]))
                if isinstance(acc, Bot):
                    break
            out.append(acc)
        return disj(*out)


class DisjunctivityResult(Report):
    excluded_attr = ('cover', )

    def __init__(self, status: str, counterexample: Optional[OneStepModel] = None, bounded: bool = False,
                 checked: int = 0):
        self.status = status
        self.counterexample = counterexample
        self.bounded = bounded
        self.checked = checked

    @property
    def disjunctive(self) -> Optional[bool]:
        if self.status == 'inconclusive':
            return None
        return self.status == 'disjunctive'

    def __bool__(self):
        return self.status == 'disjunctive'


class DividingCover(Report):

    def __init__(self, carrier, element, marking, cover_map, branch):
        self.carrier = carrier
        self.element = element
        self.marking = marking
        self.cover_map = cover_map
        self.branch = branch

    def as_model(self) -> OneStepModel:
        return OneStepModel(tuple(self.carrier), self.element, dict(self.marking))


def split_fibers(model: OneStepModel, functor: Functor) -> Dict[Hashable, List]:
    """Every supported point s becomes (s, a) for a ∈ m(s) plus an unmarked (s, None)."""
    fibers = {}
    for s in functor.support(model.element):
        marks = sorted(model.marking.get(s, ()), key=var_key)
        fibers[s] = [(s, a) for a in marks] + [(s, None)]
    return fibers


def find_dividing_cover(alpha: Formula, model: OneStepModel, functor: Functor,
                        caps: Optional[Caps] = None) -> Optional[DividingCover]:
    """A one-step cover of `model` satisfying α where every point carries at most one variable.

    Any dividing cover maps onto one over the split carrier, so searching the
    preimages of the element there is complete whenever the functor lists all
    preimages.
    """
    caps = caps or default_caps
    fibers = split_fibers(model, functor)
    marking = {p: (frozenset() if p[1] is None else frozenset([p[1]])) for fiber in fibers.values() for p in fiber}
    carrier = tuple(p for s in sorted(fibers, key=var_key) for p in fibers[s])
    tried = 0
    for rho in functor.preimages(model.element, fibers, caps):
        tried += 1
        if tried > caps.cover_candidates:
            raise ResourceError('cover_candidates', caps.cover_candidates, 'searching dividing covers')
        if eval_one_step(alpha, OneStepModel(carrier, rho, marking), functor):
            used = functor.support(rho)
            kept = tuple(p for p in carrier if p in used)
            branch = 'singleton' if all(p[1] is not None for p in kept) else 'at-most-one'
            return DividingCover(kept, rho, {p: marking[p] for p in kept}, {p: p[0] for p in kept}, branch)
    return None


def is_disjunctive(alpha: Formula, functor: Functor, caps: Optional[Caps] = None, bound: int = 2,
                   models: Optional[Iterable[OneStepModel]] = None) -> DisjunctivityResult:
    """Check that every model of α has a dividing cover.

    For weak-pullback-preserving functors covers lift along morphisms, so the
    models over P(A) suffice; other functors fall back to carriers up to
    `bound` and report a bounded verdict.
    """
    if not is_positive(alpha):
        raise FormulaError('disjunctivity is defined for positive formulas only')
    caps = grade_caps(caps, alpha)
    bounded = not functor.exact_preimages or max_grade(alpha) > 0
    if models is None:
        names = variables_of(alpha)
        if functor.wpp:
            try:
                models = list(image_models(names, functor, caps))
            except ResourceError:
                models = small_models(names, functor, bound, caps)
                bounded = True
        else:
            models = small_models(names, functor, bound, caps)
            bounded = True
    else:
        bounded = True
    checked = 0
    for model in models:
        if not eval_one_step(alpha, model, functor):
            continue
        checked += 1
        try:
            cover = find_dividing_cover(alpha, model, functor, caps)
        except ResourceError:
            logger.info('cover search exhausted on %s', model)
            return DisjunctivityResult('inconclusive', model, bounded, checked)
        if cover is None:
            return DisjunctivityResult('counterexample', model, bounded, checked)
    return DisjunctivityResult('disjunctive', None, bounded, checked)


class SelfTestRecord(Report):

    def __init__(self, law: str, formula: str, ok: bool, bounded: bool):
        self.law = law
        self.formula = formula
        self.ok = ok
        self.bounded = bounded


def selftest(basis: DisjunctiveBasis, names: Sequence[Hashable] = ('a', 'b'), caps: Optional[Caps] = None,
             max_pairs: int = 12) -> List[SelfTestRecord]:
    """Re-verify generator disjunctivity and both distributive laws on small inputs."""
    functor = basis.functor
    records = []
    gens = basis.generators(names)
    for g in gens:
        verdict = is_disjunctive(g, functor, caps)
        records.append(SelfTestRecord('disjunctive', render(g), verdict.status == 'disjunctive', verdict.bounded))
    for atom in basis.atoms(names):
        delta = basis.distribute(atom)
        result = one_step_equivalent(atom, realize(delta), functor, caps=caps)
        records.append(SelfTestRecord('distribute', render(atom), result.equivalent, result.bounded))
    basic = [g for g in gens if not isinstance(g, Top)]
    for left, right in itertools.islice(itertools.product(basic, basic), max_pairs):
        gamma = basis.binary(left, right)
        result = one_step_equivalent(conj(realize(left), realize(right)), realize(gamma), functor, caps=caps)
        records.append(SelfTestRecord('binary', '{} & {}'.format(render(left), render(right)), result.equivalent,
                                      result.bounded))
    return records
