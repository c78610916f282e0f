"""Abstract syntax shared by boolean, one-step and fixpoint formulas.

One tree type serves every level: a boolean formula over A is a tree whose
leaves are `Var`s, a one-step formula puts `Modal` nodes on top of boolean
formulas, and a fixpoint formula additionally uses `Mu`/`Nu` binders and
nests modalities. Trees are immutable and compared structurally; the smart
constructors `conj`, `disj` and `neg` keep them flat and canonically sorted.
"""
import logging
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, Hashable, Iterable, List, Mapping, Optional, Tuple

from .errors import FormulaError, UnmappedVariableError
from .utils import minimal_sets

logger = logging.getLogger(__name__)

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")
_GRADED = re.compile(r"(?:\d+~?:)*[<\[](\d+)[>\]]\Z")


@dataclass(frozen=True)
class Pair:
    """Variable `(a, b)` of A ⊎̃ B standing for `a ∧ b`."""
    left: Hashable
    right: Hashable


@dataclass(frozen=True)
class Slot:
    """Abstraction letter used while distributing through a composed functor."""
    side: str
    index: int


def var_key(name) -> tuple:
    """Total order over every kind of variable name the library produces."""
    if name is None:
        return (-1, )
    if isinstance(name, bool):
        return (1, int(name))
    if isinstance(name, str):
        return (0, name)
    if isinstance(name, int):
        return (1, name)
    if isinstance(name, tuple):
        return (2, tuple(var_key(x) for x in name))
    if isinstance(name, frozenset):
        return (3, tuple(sorted(var_key(x) for x in name)))
    if isinstance(name, Pair):
        return (4, var_key(name.left), var_key(name.right))
    if isinstance(name, Slot):
        return (5, name.side, name.index)
    return (9, repr(name))


class Formula:

    def __and__(self, other: 'Formula') -> 'Formula':
        return conj(self, other)

    def __or__(self, other: 'Formula') -> 'Formula':
        return disj(self, other)

    def __invert__(self) -> 'Formula':
        return neg(self)

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True, repr=False)
class Var(Formula):
    name: Hashable

    def __repr__(self):
        return 'Var({!r})'.format(self.name)


@dataclass(frozen=True, repr=False)
class Top(Formula):

    def __repr__(self):
        return 'TOP'


@dataclass(frozen=True, repr=False)
class Bot(Formula):

    def __repr__(self):
        return 'BOT'


@dataclass(frozen=True)
class And(Formula):
    children: Tuple[Formula, ...]


@dataclass(frozen=True)
class Or(Formula):
    children: Tuple[Formula, ...]


@dataclass(frozen=True)
class Not(Formula):
    child: Formula


@dataclass(frozen=True)
class Modal(Formula):
    op: str
    args: Tuple[Formula, ...] = ()


@dataclass(frozen=True)
class Mu(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Nu(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Nabla(Formula):
    """Cover modality: every argument is possible and their disjunction is necessary."""
    args: Tuple[Formula, ...]
    prefix: str = ''

    def expand(self) -> Formula:
        diamonds = [Modal(self.prefix + '<>', (b, )) for b in self.args]
        return conj(*diamonds, Modal(self.prefix + '[]', (disj(*self.args), )))


@dataclass(frozen=True)
class Counting(Formula):
    """Bag basis formula: distinct witnesses for `seq`, every witness satisfies some of `seq` or `rest`."""
    seq: Tuple[Formula, ...]
    rest: Tuple[Formula, ...]
    prefix: str = ''

    def expand(self) -> Formula:
        from .bases.bag import hall_translate
        return hall_translate(self)


TOP = Top()
BOT = Bot()

_RANK = {Bot: 0, Top: 1, Var: 2, Not: 3, Modal: 4, Nabla: 5, Counting: 6, And: 7, Or: 8, Mu: 9, Nu: 10}


@lru_cache(maxsize=None)
def formula_key(f: Formula) -> tuple:
    rank = _RANK[type(f)]
    if isinstance(f, Var):
        return (rank, var_key(f.name))
    if isinstance(f, (Top, Bot)):
        return (rank, )
    if isinstance(f, (And, Or)):
        return (rank, len(f.children), tuple(formula_key(c) for c in f.children))
    if isinstance(f, Not):
        return (rank, formula_key(f.child))
    if isinstance(f, Modal):
        return (rank, f.op, tuple(formula_key(a) for a in f.args))
    if isinstance(f, (Mu, Nu)):
        return (rank, f.var, formula_key(f.body))
    if isinstance(f, Nabla):
        return (rank, f.prefix, len(f.args), tuple(formula_key(a) for a in f.args))
    return (rank, f.prefix, len(f.seq), tuple(formula_key(a) for a in f.seq), tuple(formula_key(a) for a in f.rest))


def _canonical(children: Iterable[Formula]) -> Tuple[Formula, ...]:
    return tuple(sorted(set(children), key=formula_key))


def var(name: Hashable) -> Var:
    return Var(name)


def conj(*fs: Formula) -> Formula:
    flat = []
    for f in fs:
        if isinstance(f, Bot):
            return BOT
        if isinstance(f, Top):
            continue
        if isinstance(f, And):
            flat.extend(f.children)
        else:
            flat.append(f)
    children = _canonical(flat)
    if not children:
        return TOP
    if len(children) == 1:
        return children[0]
    return And(children)


def disj(*fs: Formula) -> Formula:
    flat = []
    for f in fs:
        if isinstance(f, Top):
            return TOP
        if isinstance(f, Bot):
            continue
        if isinstance(f, Or):
            flat.extend(f.children)
        else:
            flat.append(f)
    children = _canonical(flat)
    if not children:
        return BOT
    if len(children) == 1:
        return children[0]
    return Or(children)


def neg(f: Formula) -> Formula:
    if isinstance(f, Top):
        return BOT
    if isinstance(f, Bot):
        return TOP
    if isinstance(f, Not):
        return f.child
    return Not(f)


def modal(op: str, *args: Formula) -> Modal:
    return Modal(op, tuple(args))


def nabla(args: Iterable[Formula], prefix: str = '') -> Nabla:
    return Nabla(_canonical(args), prefix)


def counting(seq: Iterable[Formula], rest: Iterable[Formula], prefix: str = '') -> Counting:
    return Counting(tuple(sorted(seq, key=formula_key)), _canonical(rest), prefix)


def big_and(fs: Iterable[Formula]) -> Formula:
    return conj(*fs)


def big_or(fs: Iterable[Formula]) -> Formula:
    return disj(*fs)


def meet(names: Iterable[Hashable]) -> Formula:
    """∧B for a set B of variable names."""
    return conj(*(Var(n) for n in names))


def join(names: Iterable[Hashable]) -> Formula:
    """∨B for a set B of variable names."""
    return disj(*(Var(n) for n in names))


# ---------------------------------------------------------------------------
# traversal


def free_vars(f: Formula) -> frozenset:
    """Names of the variables occurring free in `f`, modal arguments included."""
    if isinstance(f, Var):
        return frozenset([f.name])
    if isinstance(f, (Top, Bot)):
        return frozenset()
    if isinstance(f, Not):
        return free_vars(f.child)
    if isinstance(f, (Mu, Nu)):
        return free_vars(f.body) - {f.var}
    out = frozenset()
    for c in children_of(f):
        out |= free_vars(c)
    return out


def children_of(f: Formula) -> Tuple[Formula, ...]:
    if isinstance(f, (And, Or)):
        return f.children
    if isinstance(f, Not):
        return (f.child, )
    if isinstance(f, Modal):
        return f.args
    if isinstance(f, (Mu, Nu)):
        return (f.body, )
    if isinstance(f, Nabla):
        return f.args
    if isinstance(f, Counting):
        return f.seq + f.rest
    return ()


def size(f: Formula) -> int:
    return 1 + sum(size(c) for c in children_of(f))


def is_positive(f: Formula) -> bool:
    if isinstance(f, Not):
        return False
    return all(is_positive(c) for c in children_of(f))


def is_modal_atom(f: Formula) -> bool:
    return isinstance(f, (Modal, Nabla, Counting))


def modal_ops(f: Formula) -> frozenset:
    out = set()
    if isinstance(f, Modal):
        out.add(f.op)
    for c in children_of(f):
        out |= modal_ops(c)
    return frozenset(out)


def max_grade(f: Formula) -> int:
    """Largest counting grade occurring in `f` (0 when there is none)."""
    grade = 0
    if isinstance(f, Modal):
        match = _GRADED.match(f.op)
        if match:
            grade = int(match.group(1))
    elif isinstance(f, Counting):
        grade = len(f.seq) + 1
    for c in children_of(f):
        grade = max(grade, max_grade(c))
    return grade


def rebuild(f: Formula, children: List[Formula]) -> Formula:
    """Same node as `f` over new children, through the smart constructors."""
    if isinstance(f, And):
        return conj(*children)
    if isinstance(f, Or):
        return disj(*children)
    if isinstance(f, Not):
        return neg(children[0])
    if isinstance(f, Modal):
        return Modal(f.op, tuple(children))
    if isinstance(f, Mu):
        return Mu(f.var, children[0])
    if isinstance(f, Nu):
        return Nu(f.var, children[0])
    if isinstance(f, Nabla):
        return nabla(children, f.prefix)
    if isinstance(f, Counting):
        return counting(children[:len(f.seq)], children[len(f.seq):], f.prefix)
    return f


def substitute(f: Formula, mapping: Mapping[Hashable, Formula], strict: bool = True) -> Formula:
    """Replace free variables by formulas.

    With `strict`, a free variable outside the mapping raises
    `UnmappedVariableError`; otherwise it is left in place.
    """
    return _substitute(f, mapping, strict, frozenset())


def _substitute(f: Formula, mapping, strict: bool, bound: frozenset) -> Formula:
    if isinstance(f, Var):
        if f.name in bound:
            return f
        if f.name in mapping:
            return mapping[f.name]
        if strict:
            raise UnmappedVariableError(f.name)
        return f
    if isinstance(f, (Top, Bot)):
        return f
    if isinstance(f, (Mu, Nu)):
        return rebuild(f, [_substitute(f.body, mapping, strict, bound | {f.var})])
    return rebuild(f, [_substitute(c, mapping, strict, bound) for c in children_of(f)])


def rename(f: Formula, fn: Callable[[Hashable], Hashable]) -> Formula:
    return substitute(f, {n: Var(fn(n)) for n in free_vars(f)})


# ---------------------------------------------------------------------------
# normal forms


def dnf(f: Formula) -> List[frozenset]:
    """Disjunctive normal form of a negation-free boolean combination of atoms.

    Atoms are variables, negated variables and modal atoms. Clauses are
    returned as frozensets of atoms with subsumed clauses removed.
    """
    if isinstance(f, Top):
        return [frozenset()]
    if isinstance(f, Bot):
        return []
    if isinstance(f, Or):
        out = []
        for c in f.children:
            out.extend(dnf(c))
        return minimal_sets(out)
    if isinstance(f, And):
        acc = [frozenset()]
        for c in f.children:
            parts = dnf(c)
            acc = minimal_sets(a | b for a in acc for b in parts)
            if not acc:
                return []
        return acc
    if isinstance(f, Not) and not isinstance(f.child, Var):
        raise FormulaError('dnf expects negations on variables only, got {}'.format(render(f)))
    if isinstance(f, (Mu, Nu)):
        raise FormulaError('dnf is undefined on fixpoint formulas')
    return [frozenset([f])]


def from_dnf(clauses: Iterable[Iterable[Formula]]) -> Formula:
    return disj(*(conj(*clause) for clause in clauses))


def min_sat(pi: Formula) -> List[frozenset]:
    """Minimal sets B of variables with ∧B ⊨ π, for a positive boolean π."""
    out = []
    for clause in dnf(pi):
        names = []
        for atom in clause:
            if not isinstance(atom, Var):
                raise FormulaError('expected a positive boolean formula, got {}'.format(render(pi)))
            names.append(atom.name)
        out.append(frozenset(names))
    return minimal_sets(out)


def entails(names: frozenset, pi: Formula) -> bool:
    """Whether ∧names ⊨ π for a positive boolean π."""
    return any(clause <= names for clause in min_sat(pi))


def _dual_op(functor, op: str) -> str:
    if functor is None:
        raise FormulaError('modality `{}` at the boolean level'.format(op))
    return functor.dual(op)


def _arg_layer(functor, op: str, top):
    inner = functor.arg_functor(op)
    return inner if inner is not None else top


def nnf(f: Formula, functor=None, top=None) -> Formula:
    """Negation normal form using the lifting duals of `functor`.

    `functor` interprets modal operators at the current layer; `top` is the
    layer that plain modal arguments live in (the root functor for fixpoint
    formulas, ``None`` for one-step formulas whose arguments are boolean).
    Negations end up on free variables only.
    """
    return _nnf(f, False, {}, functor, top)


def _nnf(f: Formula, negated: bool, bound: Dict[str, bool], functor, top) -> Formula:
    if isinstance(f, Var):
        if f.name in bound:
            flipped = negated ^ bound[f.name]
            if flipped:
                raise FormulaError('bound variable `{}` occurs negatively'.format(f.name))
            return f
        return Not(f) if negated else f
    if isinstance(f, Top):
        return BOT if negated else TOP
    if isinstance(f, Bot):
        return TOP if negated else BOT
    if isinstance(f, Not):
        return _nnf(f.child, not negated, bound, functor, top)
    if isinstance(f, And):
        parts = [_nnf(c, negated, bound, functor, top) for c in f.children]
        return disj(*parts) if negated else conj(*parts)
    if isinstance(f, Or):
        parts = [_nnf(c, negated, bound, functor, top) for c in f.children]
        return conj(*parts) if negated else disj(*parts)
    if isinstance(f, Modal):
        if functor is None:
            raise FormulaError('modality `{}` at the boolean level'.format(f.op))
        layer = _arg_layer(functor, f.op, top)
        args = tuple(_nnf(a, negated, bound, layer, top) for a in f.args)
        return Modal(_dual_op(functor, f.op) if negated else f.op, args)
    if isinstance(f, (Mu, Nu)):
        inner = dict(bound)
        inner[f.var] = negated
        body = _nnf(f.body, negated, inner, functor, top)
        flip = isinstance(f, Mu) ^ negated
        return Mu(f.var, body) if flip else Nu(f.var, body)
    if isinstance(f, (Nabla, Counting)):
        if negated:
            return _nnf(f.expand(), True, bound, functor, top)
        layer = _arg_layer(functor, f.prefix + '<>' if isinstance(f, Nabla) else f.prefix + '<1>', top)
        return rebuild(f, [_nnf(c, False, bound, layer, top) for c in children_of(f)])
    raise FormulaError('unknown formula node {!r}'.format(f))


def dual_formula(f: Formula, functor=None) -> Formula:
    """The boolean dual ¬f[¬x/x]: swaps ∧/∨, ⊤/⊥ and every lifting with its dual."""
    if isinstance(f, (Var, Not)):
        return f
    if isinstance(f, Top):
        return BOT
    if isinstance(f, Bot):
        return TOP
    if isinstance(f, And):
        return disj(*(dual_formula(c, functor) for c in f.children))
    if isinstance(f, Or):
        return conj(*(dual_formula(c, functor) for c in f.children))
    if isinstance(f, Modal):
        layer = functor.arg_functor(f.op)
        return Modal(_dual_op(functor, f.op), tuple(dual_formula(a, layer) for a in f.args))
    if isinstance(f, (Nabla, Counting)):
        return dual_formula(f.expand(), functor)
    raise FormulaError('cannot dualize {}'.format(render(f)))


def expand_atoms(f: Formula) -> Formula:
    """Replace every `Nabla` and `Counting` node by its plain modal definition."""
    if isinstance(f, (Nabla, Counting)):
        return expand_atoms(f.expand())
    if isinstance(f, (Var, Top, Bot)):
        return f
    return rebuild(f, [expand_atoms(c) for c in children_of(f)])


# ---------------------------------------------------------------------------
# rendering


def name_text(name) -> str:
    if isinstance(name, str):
        return name
    if isinstance(name, frozenset):
        return '{' + ','.join(name_text(x) for x in sorted(name, key=var_key)) + '}'
    if isinstance(name, tuple):
        return '(' + ','.join(name_text(x) for x in name) + ')'
    if isinstance(name, Pair):
        return '{}*{}'.format(name_text(name.left), name_text(name.right))
    if isinstance(name, Slot):
        return '${}{}'.format(name.side, name.index)
    return repr(name)


def is_identifier(name) -> bool:
    return isinstance(name, str) and _IDENT.match(name) is not None


_BINDER, _OR, _AND, _UNARY = 0, 1, 2, 3


def render(f: Formula) -> str:
    """Concrete syntax accepted by `mucoal.frontend.parser.parse`."""
    return _render(f, _BINDER)


def _wrap(text: str, prec: int, needed: int) -> str:
    return '(' + text + ')' if prec < needed else text


def _render(f: Formula, needed: int) -> str:
    if isinstance(f, Var):
        return name_text(f.name)
    if isinstance(f, Top):
        return 'true'
    if isinstance(f, Bot):
        return 'false'
    if isinstance(f, Not):
        return '~' + _render(f.child, _UNARY)
    if isinstance(f, And):
        return _wrap(' & '.join(_render(c, _UNARY) for c in f.children), _AND, needed)
    if isinstance(f, Or):
        return _wrap(' | '.join(_render(c, _AND) for c in f.children), _OR, needed)
    if isinstance(f, Modal):
        if not f.args:
            return f.op
        if len(f.args) > 1:
            return f.op + '(' + ', '.join(_render(a, _BINDER) for a in f.args) + ')'
        gap = ' ' if f.op[-1].isalnum() else ''
        return f.op + gap + _render(f.args[0], _UNARY)
    if isinstance(f, (Mu, Nu)):
        word = 'mu' if isinstance(f, Mu) else 'nu'
        return _wrap('{} {}. {}'.format(word, f.var, _render(f.body, _BINDER)), _BINDER, needed)
    if isinstance(f, Nabla):
        return f.prefix + 'nabla{' + ', '.join(_render(a, _BINDER) for a in f.args) + '}'
    if isinstance(f, Counting):
        seq = ', '.join(_render(a, _BINDER) for a in f.seq)
        rest = ', '.join(_render(a, _BINDER) for a in f.rest)
        return f.prefix + 'count(' + seq + '; ' + rest + ')'
    raise FormulaError('unknown formula node {!r}'.format(f))
