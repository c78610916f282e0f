"""Bases for sums, products and compositions of functors with bases."""
import itertools
import re
from typing import Dict, List, Optional, Tuple

from ..errors import UnsupportedFunctorError
from ..functors import Compose, Functor, Product, Sum
from ..syntax import (BOT, TOP, And, Bot, Counting, Formula, Modal, Nabla, Or, Pair, Slot, Top, Var, conj, disj,
                      free_vars, rebuild, substitute)
from .core import DisjunctiveBasis, disjuncts

_TAG = re.compile(r'([12])(~?):(.*)\Z', re.S)


def split_tag(op: str) -> Tuple[int, bool, str]:
    match = _TAG.match(op)
    if match is None:
        raise UnsupportedFunctorError('operator `{}` carries no component tag'.format(op))
    return int(match.group(1)), bool(match.group(2)), match.group(3)


def retag(f: Formula, tag: int, top: Optional[Formula] = None) -> Formula:
    """Prefix every top-layer operator of `f` with `tag:`; ⊤ becomes `top` when given."""
    if isinstance(f, Top):
        return TOP if top is None else retag(top, tag)
    if isinstance(f, Bot):
        return BOT
    if isinstance(f, (And, Or)):
        return rebuild(f, [retag(c, tag, top) for c in f.children])
    if isinstance(f, Modal):
        return Modal('{}:{}'.format(tag, f.op), f.args)
    if isinstance(f, Nabla):
        return Nabla(f.args, '{}:{}'.format(tag, f.prefix))
    if isinstance(f, Counting):
        return Counting(f.seq, f.rest, '{}:{}'.format(tag, f.prefix))
    raise UnsupportedFunctorError('cannot tag {}'.format(f))


def top_tag(f: Formula) -> int:
    """Component tag of the first operator of a tagged basic formula."""
    if isinstance(f, (And, Or)):
        return top_tag(f.children[0])
    if isinstance(f, Modal):
        return split_tag(f.op)[0]
    return split_tag(f.prefix + 'x')[0]


def strip(f: Formula) -> Formula:
    """Drop the outermost component tag from every top-layer operator."""
    if isinstance(f, (Top, Bot)):
        return f
    if isinstance(f, (And, Or)):
        return rebuild(f, [strip(c) for c in f.children])
    if isinstance(f, Modal):
        return Modal(split_tag(f.op)[2], f.args)
    if isinstance(f, Nabla):
        return Nabla(f.args, split_tag(f.prefix + 'x')[2][:-1])
    return Counting(f.seq, f.rest, split_tag(f.prefix + 'x')[2][:-1])


def split_components(f: Formula) -> Tuple[Formula, Formula]:
    """A product basic formula as its (left, right) component formulas, untagged."""
    parts: Dict[int, List[Formula]] = {1: [], 2: []}
    for piece in (f.children if isinstance(f, And) else (f, )):
        if isinstance(piece, Top):
            continue
        parts[top_tag(piece)].append(strip(piece))
    return conj(*parts[1]), conj(*parts[2])


class SumBasis(DisjunctiveBasis):

    def __init__(self, left: DisjunctiveBasis, right: DisjunctiveBasis, functor: Functor = None):
        super().__init__(functor or Sum(left.functor, right.functor))
        self.parts = (left, right)

    def _tagged(self, f: Formula, tag: int) -> Formula:
        return retag(f, tag, self.parts[tag - 1].top_witness())

    def distribute(self, atom):
        tag, co, inner = split_tag(atom.op)
        delta = self._tagged(self.parts[tag - 1].distribute(Modal(inner, atom.args)), tag)
        if co:
            other = 3 - tag
            return disj(self._tagged(self.parts[other - 1].top_witness(), other), delta)
        return delta

    def binary(self, left, right):
        tag = top_tag(left)
        if top_tag(right) != tag:
            return BOT
        return self._tagged(self.parts[tag - 1].binary(strip(left), strip(right)), tag)

    def top_witness(self):
        return disj(self._tagged(self.parts[0].top_witness(), 1), self._tagged(self.parts[1].top_witness(), 2))

    def generators(self, names):
        out = [TOP]
        for tag, part in ((1, self.parts[0]), (2, self.parts[1])):
            out.extend(self._tagged(g, tag) for g in part.generators(names) if not isinstance(g, Top))
        return out

    def atoms(self, names):
        out = []
        for tag, part in ((1, self.parts[0]), (2, self.parts[1])):
            for atom in part.atoms(names)[:6]:
                out.append(Modal('{}:{}'.format(tag, atom.op), atom.args))
                out.append(Modal('{}~:{}'.format(tag, atom.op), atom.args))
        return out

    def rename_basic(self, atom):
        if not isinstance(atom, (Nabla, Counting)) or not atom.prefix:
            return None
        tag, co, _ = split_tag(atom.prefix + 'x')
        if co:
            return None
        renamed = self.parts[tag - 1].rename_basic(strip(atom))
        return None if renamed is None else self._tagged(renamed, tag)


class ProductBasis(DisjunctiveBasis):

    def __init__(self, left: DisjunctiveBasis, right: DisjunctiveBasis, functor: Functor = None):
        super().__init__(functor or Product(left.functor, right.functor))
        self.parts = (left, right)

    @staticmethod
    def _pair_up(first: Formula, second: Formula) -> Formula:
        return disj(*(conj(retag(d1, 1), retag(d2, 2)) for d1 in disjuncts(first) for d2 in disjuncts(second)))

    def distribute(self, atom):
        tag, _, inner = split_tag(atom.op)
        return retag(self.parts[tag - 1].distribute(Modal(inner, atom.args)), tag)

    def binary(self, left, right):
        l1, l2 = split_components(left)
        r1, r2 = split_components(right)
        return self._pair_up(self.parts[0].conjoin(l1, r1), self.parts[1].conjoin(l2, r2))

    def top_witness(self):
        return retag(self.parts[0].top_witness(), 1)

    def generators(self, names):
        firsts = self.parts[0].generators(names)[:4]
        seconds = self.parts[1].generators(names)[:4]
        return [conj(retag(g1, 1), retag(g2, 2)) for g1, g2 in itertools.product(firsts, seconds)]

    def atoms(self, names):
        out = []
        for tag, part in ((1, self.parts[0]), (2, self.parts[1])):
            out.extend(Modal('{}:{}'.format(tag, atom.op), atom.args) for atom in part.atoms(names)[:6])
        return out

    def rename_basic(self, atom):
        if not isinstance(atom, (Nabla, Counting)) or not atom.prefix:
            return None
        tag = top_tag(atom)
        renamed = self.parts[tag - 1].rename_basic(strip(atom))
        return None if renamed is None else retag(renamed, tag)


def _abstract(f: Formula, side: str, table: Dict[Formula, Var]) -> Formula:
    """Replace the arguments of every top-layer operator by slot letters."""
    if isinstance(f, (Top, Bot)):
        return f
    if isinstance(f, (And, Or)):
        return rebuild(f, [_abstract(c, side, table) for c in f.children])

    def slot(arg: Formula) -> Var:
        if arg not in table:
            table[arg] = Var(Slot(side, len(table)))
        return table[arg]

    if isinstance(f, Modal):
        return Modal(f.op, tuple(slot(a) for a in f.args))
    if isinstance(f, Nabla):
        return Nabla(tuple(slot(a) for a in f.args), f.prefix)
    return Counting(tuple(slot(a) for a in f.seq), tuple(slot(a) for a in f.rest), f.prefix)


class ComposeBasis(DisjunctiveBasis):
    """Outer basis formulas whose arguments are inner basis formulas."""

    def __init__(self, outer: DisjunctiveBasis, inner: DisjunctiveBasis, functor: Functor = None):
        super().__init__(functor or Compose(outer.functor, inner.functor))
        self.parts = (outer, inner)

    def distribute(self, atom):
        outer, inner = self.parts
        slots = tuple(Var(Slot('L', j)) for j in range(len(atom.args)))
        delta = outer.distribute(Modal(atom.op, slots))
        mapping = {}
        for name in free_vars(delta):
            chosen = [atom.args[s.index] for s in name]
            mapping[name] = inner.normal_form(conj(*chosen))
        return substitute(delta, mapping)

    def binary(self, left, right):
        outer, inner = self.parts
        left_table: Dict[Formula, Var] = {}
        right_table: Dict[Formula, Var] = {}
        abstract_left = _abstract(left, 'L', left_table)
        abstract_right = _abstract(right, 'R', right_table)
        gamma = outer.binary(abstract_left, abstract_right)
        values = {v.name: f for f, v in left_table.items()}
        values.update({v.name: f for f, v in right_table.items()})
        mapping = {}
        for name in free_vars(gamma):
            if isinstance(name, Pair):
                mapping[name] = inner.conjoin(values[name.left], values[name.right])
            else:
                mapping[name] = values[name]
        return substitute(gamma, mapping)

    def top_witness(self):
        outer_top = self.parts[0].top_witness()
        return substitute(outer_top, {name: TOP for name in free_vars(outer_top)})

    def generators(self, names):
        outer, inner = self.parts
        fillers = [g for g in inner.generators(names) if not isinstance(g, Top)][:3]
        out = [TOP]
        for g in outer.generators(['u'])[1:]:
            for filler in fillers:
                out.append(substitute(g, {'u': filler}))
        return out

    def atoms(self, names):
        outer, inner = self.parts
        out = []
        for atom in outer.atoms(['u'])[:4]:
            if 'u' not in free_vars(atom):
                continue
            for filler in inner.atoms(names)[:4]:
                out.append(substitute(atom, {'u': filler}))
        return out
