"""Graded basis for the bag functor.

Basic formulas are counting formulas ⟨a₁,…,aₙ; B⟩: there are n distinct
copies, the i-th satisfying aᵢ, and every other copy satisfies some b ∈ B.
"""
import itertools
from typing import Hashable, Iterator, List, Sequence, Tuple

from ..functors import Bag, Functor
from ..syntax import (BOT, TOP, Counting, Formula, Modal, Pair, Var, conj, counting, disj, min_sat, modal, var_key)
from ..utils import subsets
from .core import DisjunctiveBasis, conj_atom_names
from .powerset import EMPTY, _sample_arguments


def hall_translate(formula: Counting) -> Formula:
    """⟨ā; B⟩ as a conjunction of graded modalities, one clause per subset J of the slots.

    Clause J asks for |J| copies satisfying some a_j (j ∈ J) and at most
    n − |J| copies satisfying neither those nor ∨B.
    """
    prefix = formula.prefix
    n = len(formula.seq)
    rest = disj(*formula.rest)
    clauses = []
    for size in range(n + 1):
        for group in itertools.combinations(range(n), size):
            chosen = disj(*(formula.seq[i] for i in group))
            part = modal('{}[{}]'.format(prefix, n + 1 - size), disj(chosen, rest))
            if size:
                part = conj(modal('{}<{}>'.format(prefix, size), chosen), part)
            clauses.append(part)
    return conj(*clauses)


class CaseDescription:
    """Overlap record between two counting formulas.

    `overlap` matches slots of the left sequence with slots of the right one;
    `left_rest` gives every unmatched left slot a letter of the right rest set,
    `right_rest` does the same for unmatched right slots.
    """

    def __init__(self, overlap: Tuple[Tuple[int, int], ...], left_rest: Tuple[Tuple[int, Hashable], ...],
                 right_rest: Tuple[Tuple[int, Hashable], ...]):
        self.overlap = overlap
        self.left_rest = left_rest
        self.right_rest = right_rest

    def __repr__(self):
        return 'CaseDescription(O={}, c1={}, c2={})'.format(self.overlap, self.left_rest, self.right_rest)


def partial_matchings(k: int, l: int) -> Iterator[Tuple[Tuple[int, int], ...]]:
    """Graphs of bijections between a subset of range(k) and a subset of range(l)."""
    for size in range(min(k, l) + 1):
        for lefts in itertools.combinations(range(k), size):
            for rights in itertools.permutations(range(l), size):
                yield tuple(zip(lefts, rights))


def case_descriptions(k: int, l: int, left_rest: Sequence[Hashable], right_rest: Sequence[Hashable]) -> Iterator[CaseDescription]:
    for overlap in partial_matchings(k, l):
        free_left = [i for i in range(k) if i not in {i for i, _ in overlap}]
        free_right = [j for j in range(l) if j not in {j for _, j in overlap}]
        for c1 in itertools.product(right_rest, repeat=len(free_left)):
            for c2 in itertools.product(left_rest, repeat=len(free_right)):
                yield CaseDescription(overlap, tuple(zip(free_left, c1)), tuple(zip(free_right, c2)))


class BagBasis(DisjunctiveBasis):

    def __init__(self, functor: Functor = None):
        super().__init__(functor or Bag())

    def distribute(self, atom):
        at_least, k = Bag.grade(atom.op)
        clauses = min_sat(atom.args[0])
        if at_least:
            return disj(*(counting([Var(b) for b in combo], [EMPTY])
                          for combo in itertools.combinations_with_replacement(clauses, k)))
        return disj(*(counting([EMPTY] * m, [Var(b) for b in clauses]) for m in range(k)))

    def binary(self, left, right):
        a = [x.name for x in left.seq]
        b = [y.name for y in right.seq]
        a_rest = [x.name for x in left.rest]
        b_rest = [y.name for y in right.rest]
        rest = [Var(Pair(x, y)) for x in a_rest for y in b_rest]
        out = []
        for case in case_descriptions(len(a), len(b), a_rest, b_rest):
            seq = [Var(Pair(a[i], b[j])) for i, j in case.overlap]
            seq += [Var(Pair(a[i], c)) for i, c in case.left_rest]
            seq += [Var(Pair(c, b[j])) for j, c in case.right_rest]
            out.append(counting(seq, rest))
        return disj(*out)

    def top_witness(self):
        return counting([], [EMPTY])

    def generators(self, names):
        letters = [Var(n) for n in sorted(names, key=var_key)]
        out = [TOP]
        for length in range(3):
            for seq in itertools.combinations_with_replacement(letters, length):
                for group in subsets(letters):
                    out.append(counting(seq, group))
        return out

    def atoms(self, names):
        args = _sample_arguments(names)
        return [modal('{}{}{}'.format(l, k, r), pi) for k in (0, 1, 2) for l, r in (('<', '>'), ('[', ']')) for pi in args]

    def rename_basic(self, atom):
        if not isinstance(atom, Counting) or atom.prefix:
            return None
        seq, rest = [], []
        for arg in atom.seq:
            found = conj_atom_names(arg)
            if found is None:
                return None
            seq.append(Var(found))
        for arg in atom.rest:
            found = conj_atom_names(arg)
            if found is None:
                return None
            rest.append(Var(found))
        return counting(seq, rest)
