from ..errors import UnsupportedFunctorError
from ..functors import Bag, Compose, Functor, Identity, Labeled, Powerset, Product, Sum
from .bag import BagBasis, CaseDescription, case_descriptions, hall_translate
from .combinators import ComposeBasis, ProductBasis, SumBasis
from .core import (DisjunctiveBasis, DisjunctivityResult, DividingCover, SelfTestRecord, disjuncts,
                   find_dividing_cover, is_disjunctive, realize, selftest)
from .monotone import moss_formula, transversals
from .powerset import PowersetBasis
from .simple import IdentityBasis, LabeledBasis
from .yoneda import YonedaResult, divisible, yoneda_representation


def powerset_basis() -> PowersetBasis:
    return PowersetBasis()


def bag_basis() -> BagBasis:
    return BagBasis()


def basis_sum(left: DisjunctiveBasis, right: DisjunctiveBasis) -> SumBasis:
    return SumBasis(left, right)


def basis_product(left: DisjunctiveBasis, right: DisjunctiveBasis) -> ProductBasis:
    return ProductBasis(left, right)


def basis_compose(outer: DisjunctiveBasis, inner: DisjunctiveBasis) -> ComposeBasis:
    return ComposeBasis(outer, inner)


def basis_for(functor: Functor) -> DisjunctiveBasis:
    """The disjunctive basis the library knows for `functor`."""
    if isinstance(functor, Powerset):
        return PowersetBasis(functor)
    if isinstance(functor, Bag):
        return BagBasis(functor)
    if isinstance(functor, Identity):
        return IdentityBasis(functor)
    if isinstance(functor, Labeled):
        return LabeledBasis(functor)
    if isinstance(functor, Sum):
        return SumBasis(basis_for(functor.parts[0]), basis_for(functor.parts[1]), functor)
    if isinstance(functor, Product):
        return ProductBasis(basis_for(functor.parts[0]), basis_for(functor.parts[1]), functor)
    if isinstance(functor, Compose):
        return ComposeBasis(basis_for(functor.parts[0]), basis_for(functor.parts[1]), functor)
    raise UnsupportedFunctorError('no disjunctive basis is known for `{}`'.format(functor.spec()))


def normal_form(alpha, basis: DisjunctiveBasis):
    return basis.normal_form(alpha)


__all__ = [
    'DisjunctiveBasis', 'DisjunctivityResult', 'DividingCover', 'SelfTestRecord', 'CaseDescription', 'PowersetBasis',
    'BagBasis', 'IdentityBasis', 'LabeledBasis', 'SumBasis', 'ProductBasis', 'ComposeBasis', 'YonedaResult',
    'basis_for', 'powerset_basis', 'bag_basis', 'basis_sum', 'basis_product', 'basis_compose', 'normal_form',
    'is_disjunctive', 'find_dividing_cover', 'hall_translate', 'case_descriptions', 'moss_formula', 'transversals',
    'yoneda_representation', 'divisible', 'disjuncts', 'realize', 'selftest'
]
