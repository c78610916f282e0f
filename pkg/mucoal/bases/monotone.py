from typing import Hashable, Iterable, List

from ..syntax import Formula, Var, conj, join, modal, var_key
from ..utils import minimal_sets, subsets


def transversals(family: List[frozenset]) -> List[frozenset]:
    """Minimal sets meeting every member of `family`."""
    points = sorted(frozenset().union(*family), key=var_key) if family else []
    return minimal_sets(f for f in subsets(points) if all(f & w for w in family))


def moss_formula(family: Iterable[Iterable[Hashable]], prefix: str = '') -> Formula:
    """Cover formula for monotone neighbourhoods.

    It holds exactly when the neighbourhood, read through the marking, is
    the upward closure of `family`: each member is necessary as a
    disjunction and every transversal is possible.
    """
    family = [frozenset(w) for w in family]
    parts = [modal(prefix + '[]', join(w)) for w in family]
    parts += [modal(prefix + '<>', join(f)) for f in transversals(family)]
    return conj(*parts)
