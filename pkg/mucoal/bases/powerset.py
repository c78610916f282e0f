"""Cover-modality basis for the powerset functor."""
import itertools
from typing import Hashable, List, Sequence

from ..functors import Functor, Powerset
from ..syntax import (BOT, TOP, Formula, Modal, Nabla, Pair, Var, disj, min_sat, modal, nabla, var_key)
from ..utils import subsets
from .core import DisjunctiveBasis, conj_atom_names

EMPTY = Var(frozenset())


def full_relations(left: Sequence, right: Sequence):
    """Relations Z ⊆ left × right whose projections are onto both sides."""
    cells = [(x, y) for x in left for y in right]
    if not left and not right:
        yield frozenset()
        return
    for chosen in subsets(cells, min_size=max(len(left), len(right))):
        if {x for x, _ in chosen} == set(left) and {y for _, y in chosen} == set(right):
            yield chosen


class PowersetBasis(DisjunctiveBasis):

    def __init__(self, functor: Functor = None):
        super().__init__(functor or Powerset())

    def distribute(self, atom):
        clauses = min_sat(atom.args[0])
        if atom.op == '<>':
            return disj(*(nabla([Var(b), EMPTY]) for b in clauses))
        return disj(*(nabla([Var(b) for b in family]) for family in subsets(clauses)))

    def binary(self, left, right):
        xs = [a.name for a in left.args]
        ys = [b.name for b in right.args]
        return disj(*(nabla([Var(Pair(x, y)) for x, y in rel]) for rel in full_relations(xs, ys)))

    def top_witness(self):
        return disj(nabla([]), nabla([EMPTY]))

    def generators(self, names):
        return [TOP] + [nabla([Var(n) for n in sorted(group, key=var_key)]) for group in subsets(names)]

    def atoms(self, names):
        args = _sample_arguments(names)
        return [modal(op, pi) for op in ('<>', '[]') for pi in args]

    def rename_basic(self, atom):
        if not isinstance(atom, Nabla) or atom.prefix:
            return None
        renamed = []
        for arg in atom.args:
            found = conj_atom_names(arg)
            if found is None:
                return None
            renamed.append(Var(found))
        return nabla(renamed)


def _sample_arguments(names: Sequence[Hashable]) -> List[Formula]:
    letters = [Var(n) for n in names]
    out = [TOP, BOT] + letters
    for a, b in itertools.combinations(letters, 2):
        out.extend([a & b, a | b])
    return out
