from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Optional

from .syntax import Formula, Var, conj, neg, substitute, var_key
from .utils import subsets


class Substitution:
    """A finite map from variable names to formulas, applied with `sub(formula)`."""

    def __init__(self, mapping: Mapping[Hashable, Formula]):
        self.mapping = dict(mapping)

    @property
    def domain(self) -> frozenset:
        return frozenset(self.mapping)

    def __call__(self, f: Formula) -> Formula:
        return substitute(f, self.mapping)

    def __getitem__(self, name) -> Formula:
        return self.mapping[name]

    def __str__(self):
        return '\n'.join('{} -> {}'.format(key, self.mapping[key]) for key in sorted(self.mapping, key=var_key))


def tagging(tag: Hashable, names: Iterable[Hashable]) -> Substitution:
    """θ_a : b ↦ (a, b)."""
    return Substitution({b: Var((tag, b)) for b in names})


@dataclass(frozen=True)
class PropType:
    """Propositional A-type τ_B, or τ_B^{a+} when `positive_in` is set."""
    base: frozenset
    universe: frozenset
    positive_in: Optional[Hashable] = None

    def formula(self) -> Formula:
        literals = [Var(a) for a in self.base]
        for a in self.universe - self.base:
            if a != self.positive_in:
                literals.append(neg(Var(a)))
        return conj(*literals)


def type_substitution(universe: Iterable[Hashable], positive_in: Optional[Hashable] = None) -> Substitution:
    """τ (or τ^{a+}) on P(A): B ↦ τ_B."""
    universe = frozenset(universe)
    return Substitution({
        b: PropType(b, universe, positive_in).formula()
        for b in subsets(sorted(universe, key=var_key))
    })
