from typing import List, Optional, Tuple

from ..errors import UnsupportedFunctorError
from ..functors import Functor, Identity, Labeled
from ..syntax import (BOT, TOP, And, Formula, Modal, Pair, Var, conj, disj, min_sat, modal, var_key)
from .core import DisjunctiveBasis
from .powerset import EMPTY, _sample_arguments


def _next_parts(f: Formula) -> Tuple[Optional[str], Optional[Formula]]:
    """Split a basic formula of the next-step bases into its label test and its `X` atom."""
    label, step = None, None
    for part in (f.children if isinstance(f, And) else (f, )):
        if isinstance(part, Modal) and part.op == 'X':
            step = part.args[0]
        elif isinstance(part, Modal) and part.op.startswith('!'):
            label = part.op[1:]
        else:
            raise UnsupportedFunctorError('not a basic next-step formula: {}'.format(part))
    return label, step


class IdentityBasis(DisjunctiveBasis):
    """`X π` distributes into one `X B` per minimal clause of π."""

    def __init__(self, functor: Functor = None):
        super().__init__(functor or Identity())

    def distribute(self, atom):
        return disj(*(modal('X', Var(b)) for b in min_sat(atom.args[0])))

    def binary(self, left, right):
        return modal('X', Var(Pair(left.args[0].name, right.args[0].name)))

    def top_witness(self):
        return modal('X', EMPTY)

    def generators(self, names):
        return [TOP] + [modal('X', Var(n)) for n in sorted(names, key=var_key)]

    def atoms(self, names):
        return [modal('X', pi) for pi in _sample_arguments(names)]


class LabeledBasis(DisjunctiveBasis):
    """Basic formulas are a label test, a next step, or both."""

    def __init__(self, functor: Labeled):
        super().__init__(functor)
        self.labels = functor.labels

    def distribute(self, atom):
        if atom.op == 'X':
            return disj(*(modal('X', Var(b)) for b in min_sat(atom.args[0])))
        if atom.op.startswith('!~'):
            return disj(*(modal('!' + l) for l in self.labels if l != atom.op[2:]))
        return atom

    def binary(self, left, right):
        l1, x1 = _next_parts(left)
        l2, x2 = _next_parts(right)
        if l1 is not None and l2 is not None and l1 != l2:
            return BOT
        parts = []
        label = l1 if l1 is not None else l2
        if label is not None:
            parts.append(modal('!' + label))
        if x1 is not None and x2 is not None:
            parts.append(modal('X', Var(Pair(x1.name, x2.name))))
        elif x1 is not None or x2 is not None:
            parts.append(modal('X', x1 if x1 is not None else x2))
        return conj(*parts)

    def top_witness(self):
        return modal('X', EMPTY)

    def generators(self, names):
        out: List[Formula] = [TOP]
        letters = [Var(n) for n in sorted(names, key=var_key)]
        for label in self.labels:
            out.append(modal('!' + label))
        for v in letters:
            out.append(modal('X', v))
            for label in self.labels:
                out.append(conj(modal('!' + label), modal('X', v)))
        return out

    def atoms(self, names):
        out = [modal('X', pi) for pi in _sample_arguments(names)]
        for label in self.labels:
            out.extend([modal('!' + label), modal('!~' + label)])
        return out
