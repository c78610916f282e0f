"""Yoneda representation of one-step formulas and the divisibility test."""
import logging
from typing import List, Optional

from ..config import Caps
from ..functors import Functor
from ..semantics import OneStepModel, eval_one_step, grade_caps, image_carrier, variables_of
from ..syntax import Formula, var_key
from ..utils import Report

logger = logging.getLogger(__name__)


class YonedaResult(Report):
    excluded_attr = ('representation', )

    def __init__(self, divisible: bool, representation: List, witness=None):
        self.divisible = divisible
        self.representation = representation
        self.size = len(representation)
        self.witness = witness

    def __bool__(self):
        return self.divisible


def yoneda_representation(alpha: Formula, functor: Functor, caps: Optional[Caps] = None) -> List:
    """All Γ ∈ T(P(A)) at which α holds under the identity marking."""
    caps = grade_caps(caps, alpha)
    carrier = image_carrier(variables_of(alpha))
    identity = {b: b for b in carrier}
    return [g for g in functor.elements(carrier, caps)
            if eval_one_step(alpha, OneStepModel(tuple(carrier), g, identity), functor)]


def _eta(x) -> frozenset:
    return frozenset() if x is None else frozenset([x])


def divisible(alpha: Formula, functor: Functor, caps: Optional[Caps] = None) -> YonedaResult:
    """Whether every Γ in the representation is matched by some β over A ∪ {⊤} with T η(β) again in it.

    β ranges over the left projections of elements of T(ε_A), where a ε_A B
    iff a ∈ B and ⊤ (written ``None``) is related to every B.
    """
    caps = grade_caps(caps, alpha)
    names = variables_of(alpha)
    carrier = image_carrier(names)
    identity = {b: b for b in carrier}
    representation = yoneda_representation(alpha, functor, caps)
    first = lambda pair: pair[0]
    for gamma in representation:
        fibers = {b: [(x, b) for x in names if x in b] + [(None, b)] for b in functor.support(gamma)}
        found = False
        for rho in functor.preimages(gamma, fibers, caps):
            beta = functor.map(first, rho)
            image = functor.map(_eta, beta)
            if eval_one_step(alpha, OneStepModel(tuple(carrier), image, identity), functor):
                found = True
                break
        if not found:
            logger.debug('no division for %s', gamma)
            return YonedaResult(False, representation, gamma)
    return YonedaResult(True, representation)
