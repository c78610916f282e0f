"""Finitary set functors over finite carriers.

Every functor knows its predicate liftings (operator strings with arity and
boolean dual), maps functions over its elements, enumerates its elements
over a finite carrier and lists the preimages of an element along a
surjection. Elements are plain hashable values:

    powerset   frozenset of points
    bag        frozenset of (point, multiplicity) with multiplicity >= 1
    identity   the point itself
    labeled    (label, point)
    mono       frozenset of minimal frozensets (an antichain)
    sum        (tag, element of component tag), tag in {1, 2}
    product    (left element, right element)
    compose    outer element over inner elements
"""
import itertools
import logging
import re
from abc import ABC, abstractmethod
from typing import Callable, Dict, FrozenSet, Hashable, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import networkx as nx

from .config import Caps, default_caps
from .errors import ArityError, ResourceError, UnknownLiftingError, UnsupportedFunctorError
from .semantics import Denote, Sat, combine_markings, holds, minimal_markings
from .syntax import Counting, Nabla, var_key
from .utils import compositions, minimal_sets, subsets

logger = logging.getLogger(__name__)

PointMap = Union[Callable[[Hashable], Hashable], Mapping[Hashable, Hashable]]

_GRADED_OP = re.compile(r'([<\[])(\d+)([>\]])\Z')
_TAGGED_OP = re.compile(r'([12])(~?):(.+)\Z')


def _call(f: PointMap) -> Callable[[Hashable], Hashable]:
    if callable(f):
        return f
    return f.__getitem__


def _sorted(points: Iterable[Hashable]) -> List[Hashable]:
    return sorted(points, key=var_key)


class Functor(ABC):
    name: str = ''
    # weak pullback preservation, declared rather than proved
    wpp: bool = True
    # whether `preimages` lists every preimage
    exact_preimages: bool = True
    # whether `elements` only lists elements up to a multiplicity cap
    capped_elements: bool = False

    def __repr__(self):
        return self.spec()

    def __eq__(self, other):
        return isinstance(other, Functor) and self.spec() == other.spec()

    def __hash__(self):
        return hash(self.spec())

    @abstractmethod
    def spec(self) -> str:
        """Functor expression as accepted by `parse_functor`."""

    @abstractmethod
    def lifting(self, op: str) -> Tuple[int, str]:
        """Arity and dual of the lifting named `op`."""

    def dual(self, op: str) -> str:
        return self.lifting(op)[1]

    def arity(self, op: str) -> int:
        return self.lifting(op)[0]

    def arg_functor(self, op: str) -> Optional['Functor']:
        """Functor interpreting the arguments of `op`; ``None`` when they are read on the carrier."""
        self.lifting(op)
        return None

    def check(self, op: str, n_args: int) -> None:
        expected = self.arity(op)
        if expected != n_args:
            raise ArityError(op, expected, n_args)

    @abstractmethod
    def map(self, f: PointMap, element):
        pass

    @abstractmethod
    def support(self, element) -> FrozenSet:
        pass

    @abstractmethod
    def elements(self, carrier: Sequence[Hashable], caps: Optional[Caps] = None) -> Iterator:
        pass

    @abstractmethod
    def eval_lifting(self, op: str, sets: Sequence[FrozenSet], element) -> bool:
        pass

    @abstractmethod
    def preimages(self, element, fibers: Mapping[Hashable, Sequence[Hashable]], caps: Optional[Caps] = None) -> Iterator:
        """Elements ρ over the union of `fibers` with T f(ρ) = element, f sending each fiber to its key."""

    @abstractmethod
    def encode(self, element, point: Callable[[Hashable], object]):
        pass

    @abstractmethod
    def decode(self, data, point: Callable[[object], Hashable]):
        pass

    def eval_modal(self, op: str, args, element, denote: Denote) -> bool:
        self.check(op, len(args))
        return self.eval_lifting(op, [denote(a) for a in args], element)

    def eval_counting(self, formula: Counting, element, denote: Denote) -> bool:
        return holds(formula.expand(), self, element, denote)

    def witness_sets(self, op: str, element) -> List[Tuple[FrozenSet, ...]]:
        """Minimal argument tuples, over the support, on which `op` holds at `element`."""
        arity = self.arity(op)
        points = _sorted(self.support(element))
        if arity == 0:
            return [()] if self.eval_lifting(op, [], element) else []
        candidates = sorted(itertools.product(list(subsets(points)), repeat=arity), key=lambda t: sum(map(len, t)))
        kept: List[Tuple[FrozenSet, ...]] = []
        for tup in candidates:
            if any(all(k <= z for k, z in zip(old, tup)) for old in kept):
                continue
            if self.eval_lifting(op, list(tup), element):
                kept.append(tup)
        return kept

    def modal_markings(self, op: str, args, element, sat: Sat, cap: Optional[int] = None) -> List[FrozenSet]:
        self.check(op, len(args))
        out = []
        for tup in self.witness_sets(op, element):
            out.extend(combine_markings((sat(arg, point) for z, arg in zip(tup, args) for point in _sorted(z)), cap))
        return minimal_sets(out)

    def nabla_markings(self, formula: Nabla, element, sat: Sat, cap: Optional[int] = None) -> Optional[List[FrozenSet]]:
        """Minimal markings of a cover formula computed without expanding it; ``None`` to expand instead."""
        return None

    def barr_lift(self, relation: Iterable[Tuple[Hashable, Hashable]], left, right, caps: Optional[Caps] = None) -> bool:
        """Whether (left, right) belongs to the Barr extension of `relation`."""
        if not self.wpp:
            raise UnsupportedFunctorError('Barr lifting is only supported for weak-pullback-preserving functors, '
                                          'not `{}`'.format(self.spec()))
        relation = frozenset(relation)
        fibers = {x: [(x, a) for (y, a) in _sorted(relation) if y == x] for x in self.support(left)}
        second = lambda pair: pair[1]
        for rho in self.preimages(left, fibers, caps):
            if self.map(second, rho) == right:
                return True
        return False


class Powerset(Functor):
    name = 'powerset'

    def spec(self):
        return 'powerset'

    def lifting(self, op):
        if op == '<>':
            return 1, '[]'
        if op == '[]':
            return 1, '<>'
        raise UnknownLiftingError(op, self.spec())

    def map(self, f, element):
        f = _call(f)
        return frozenset(f(x) for x in element)

    def support(self, element):
        return frozenset(element)

    def elements(self, carrier, caps=None):
        caps = caps or default_caps
        if 2**len(carrier) > caps.elements:
            raise ResourceError('elements', caps.elements, 'enumerating powerset elements')
        yield from subsets(carrier)

    def eval_lifting(self, op, sets, element):
        self.check(op, len(sets))
        if op == '<>':
            return bool(element & sets[0])
        return element <= sets[0]

    def witness_sets(self, op, element):
        if op == '<>':
            return [(frozenset([x]), ) for x in _sorted(element)]
        return [(frozenset(element), )]

    def nabla_markings(self, formula, element, sat, cap=None):
        """Each point picks the arguments it satisfies; together the points cover every argument."""
        if formula.prefix:
            return None
        args = formula.args
        points = _sorted(element)
        if not args or not points:
            return [frozenset()] if not args and not points else []
        everything = frozenset(range(len(args)))
        per_point = []
        size = 1
        for t in points:
            options = [sat(arg, t) for arg in args]
            usable = [i for i, o in enumerate(options) if o]
            if cap is not None and 2**len(usable) > cap:
                return None
            choices = []
            for chosen in subsets(usable, min_size=1):
                for marking in combine_markings((options[i] for i in sorted(chosen)), cap):
                    choices.append((chosen, marking))
            # a choice covering more arguments with a smaller marking makes another redundant
            choices = [(c, m) for (c, m) in choices
                       if not any(c <= c2 and m2 <= m and (c, m) != (c2, m2) for (c2, m2) in choices)]
            if not choices:
                return []
            per_point.append(choices)
            size *= len(choices)
            if cap is not None and size > cap * cap:
                raise ResourceError('markings', cap, 'combining cover choices at {} points'.format(len(points)))
        out = []
        for combo in itertools.product(*per_point):
            if frozenset().union(*(c for c, _ in combo)) == everything:
                out.append(frozenset().union(*(m for _, m in combo)))
        return minimal_sets(out)

    def preimages(self, element, fibers, caps=None):
        choices = [list(subsets(fibers[x], min_size=1)) for x in _sorted(element)]
        for combo in itertools.product(*choices):
            yield frozenset().union(*combo)

    def barr_lift(self, relation, left, right, caps=None):
        relation = frozenset(relation)
        return (all(any((x, a) in relation for a in right) for x in left)
                and all(any((x, a) in relation for x in left) for a in right))

    def encode(self, element, point):
        return [point(x) for x in _sorted(element)]

    def decode(self, data, point):
        return frozenset(point(x) for x in data)


def make_bag(counts: Mapping[Hashable, int]) -> FrozenSet:
    return frozenset((x, k) for x, k in counts.items() if k > 0)


class Bag(Functor):
    name = 'bag'
    capped_elements = True

    def spec(self):
        return 'bag'

    def lifting(self, op):
        match = _GRADED_OP.match(op)
        if match is None or (match.group(1) == '<') != (match.group(3) == '>'):
            raise UnknownLiftingError(op, self.spec())
        k = match.group(2)
        return 1, ('[{}]'.format(k) if match.group(1) == '<' else '<{}>'.format(k))

    @staticmethod
    def grade(op: str) -> Tuple[bool, int]:
        match = _GRADED_OP.match(op)
        return match.group(1) == '<', int(match.group(2))

    def map(self, f, element):
        f = _call(f)
        counts: Dict[Hashable, int] = {}
        for x, k in element:
            counts[f(x)] = counts.get(f(x), 0) + k
        return make_bag(counts)

    def support(self, element):
        return frozenset(x for x, _ in element)

    def elements(self, carrier, caps=None):
        caps = caps or default_caps
        if (caps.multiplicity + 1)**len(carrier) > caps.elements:
            raise ResourceError('elements', caps.elements, 'enumerating bags')
        for counts in itertools.product(range(caps.multiplicity + 1), repeat=len(carrier)):
            yield make_bag(dict(zip(carrier, counts)))

    def eval_lifting(self, op, sets, element):
        self.check(op, len(sets))
        at_least, k = self.grade(op)
        if at_least:
            return sum(n for x, n in element if x in sets[0]) >= k
        return sum(n for x, n in element if x not in sets[0]) < k

    def eval_counting(self, formula, element, denote):
        """Direct reading of ⟨ā; B⟩ on the copies of every point.

        Distinct copies must witness the slots of ā and every copy outside
        ∨B must be one of them; both matchings are checked separately, which
        suffices in a bipartite graph.
        """
        seq = [denote(a) for a in formula.seq]
        rest = frozenset().union(*[denote(b) for b in formula.rest])
        copies = [(x, i) for x, n in element for i in range(n)]
        bad = [c for c in copies if c[0] not in rest]
        if len(seq) > len(copies) or len(bad) > len(seq):
            return False
        graph = nx.Graph()
        slots = [('slot', i) for i in range(len(seq))]
        graph.add_nodes_from(slots)
        graph.add_nodes_from(('copy', c) for c in copies)
        for i, extent in enumerate(seq):
            for c in copies:
                if c[0] in extent:
                    graph.add_edge(('slot', i), ('copy', c))
        if slots:
            matching = nx.bipartite.hopcroft_karp_matching(graph, top_nodes=slots)
            if any(s not in matching for s in slots):
                return False
        if bad:
            bad_nodes = [('copy', c) for c in bad]
            sub = graph.subgraph(bad_nodes + slots)
            matching = nx.bipartite.hopcroft_karp_matching(sub, top_nodes=bad_nodes)
            if any(b not in matching for b in bad_nodes):
                return False
        return True

    def preimages(self, element, fibers, caps=None):
        choices = []
        for x, k in sorted(element, key=lambda p: var_key(p[0])):
            fiber = list(fibers[x])
            choices.append([make_bag(dict(zip(fiber, parts))) for parts in compositions(k, len(fiber))])
        for combo in itertools.product(*choices):
            yield frozenset().union(*combo)

    def encode(self, element, point):
        return {str(point(x)): k for x, k in sorted(element, key=lambda p: var_key(p[0]))}

    def decode(self, data, point):
        return make_bag({point(x): int(k) for x, k in data.items()})


class Identity(Functor):
    name = 'identity'

    def spec(self):
        return 'identity'

    def lifting(self, op):
        if op == 'X':
            return 1, 'X'
        raise UnknownLiftingError(op, self.spec())

    def map(self, f, element):
        return _call(f)(element)

    def support(self, element):
        return frozenset([element])

    def elements(self, carrier, caps=None):
        yield from carrier

    def eval_lifting(self, op, sets, element):
        self.check(op, len(sets))
        return element in sets[0]

    def preimages(self, element, fibers, caps=None):
        yield from fibers[element]

    def encode(self, element, point):
        return point(element)

    def decode(self, data, point):
        return point(data)


class Labeled(Functor):
    """Σ × Id for a finite label set Σ."""
    name = 'labeled'

    def __init__(self, labels: Iterable[str]):
        self.labels = tuple(sorted(set(labels)))
        if not self.labels:
            raise UnsupportedFunctorError('a labeled functor needs at least one label')

    def spec(self):
        return 'labeled:' + ','.join(self.labels)

    def lifting(self, op):
        if op == 'X':
            return 1, 'X'
        if op.startswith('!~') and op[2:] in self.labels:
            return 0, '!' + op[2:]
        if op.startswith('!') and op[1:] in self.labels:
            return 0, '!~' + op[1:]
        raise UnknownLiftingError(op, self.spec())

    def map(self, f, element):
        return (element[0], _call(f)(element[1]))

    def support(self, element):
        return frozenset([element[1]])

    def elements(self, carrier, caps=None):
        for label in self.labels:
            for x in carrier:
                yield (label, x)

    def eval_lifting(self, op, sets, element):
        self.check(op, len(sets))
        if op == 'X':
            return element[1] in sets[0]
        if op.startswith('!~'):
            return element[0] != op[2:]
        return element[0] == op[1:]

    def preimages(self, element, fibers, caps=None):
        for y in fibers[element[1]]:
            yield (element[0], y)

    def encode(self, element, point):
        return {'label': element[0], 'next': point(element[1])}

    def decode(self, data, point):
        return (data['label'], point(data['next']))


def antichains(points: Sequence[Hashable]) -> Iterator[FrozenSet]:
    """All antichains of subsets of `points` (the monotone neighbourhoods, by their minimal sets)."""
    family = list(subsets(points))

    def grow(start: int, chosen: Tuple[FrozenSet, ...]):
        yield frozenset(chosen)
        for i in range(start, len(family)):
            candidate = family[i]
            if all(not (c <= candidate or candidate <= c) for c in chosen):
                yield from grow(i + 1, chosen + (candidate, ))

    yield from grow(0, ())


class MonotoneNeighbourhood(Functor):
    """Upward-closed neighbourhood families, stored by their minimal members."""
    name = 'mono'
    wpp = False
    exact_preimages = False

    def spec(self):
        return 'mono'

    def lifting(self, op):
        if op == '[]':
            return 1, '<>'
        if op == '<>':
            return 1, '[]'
        raise UnknownLiftingError(op, self.spec())

    def map(self, f, element):
        f = _call(f)
        return frozenset(minimal_sets(frozenset(f(x) for x in v) for v in element))

    def support(self, element):
        return frozenset().union(*element) if element else frozenset()

    def elements(self, carrier, caps=None):
        caps = caps or default_caps
        if len(carrier) > caps.mono_carrier:
            raise ResourceError('mono_carrier', caps.mono_carrier, 'enumerating neighbourhood antichains')
        yield from antichains(list(carrier))

    def eval_lifting(self, op, sets, element):
        self.check(op, len(sets))
        if op == '[]':
            return any(v <= sets[0] for v in element)
        return all(v & sets[0] for v in element)

    def preimages(self, element, fibers, caps=None):
        """Lifts choosing up to `caps.mono_lifts` sections per minimal set; not exhaustive."""
        caps = caps or default_caps
        per_set = []
        for v in sorted(element, key=lambda s: tuple(_sorted(s))):
            sections = [frozenset(choice) for choice in itertools.product(*(fibers[x] for x in _sorted(v)))]
            per_set.append(list(subsets(sections, min_size=1, max_size=caps.mono_lifts)))
        project = {y: x for x, fiber in fibers.items() for y in fiber}
        seen = set()
        for combo in itertools.product(*per_set):
            lifted = frozenset(minimal_sets(w for group in combo for w in group))
            if lifted in seen:
                continue
            seen.add(lifted)
            if self.map(project, lifted) == element:
                yield lifted

    def encode(self, element, point):
        return sorted(([point(x) for x in _sorted(v)] for v in element), key=lambda v: (len(v), [str(x) for x in v]))

    def decode(self, data, point):
        return frozenset(minimal_sets(frozenset(point(x) for x in v) for v in data))


def _split_tag(op: str) -> Tuple[int, bool, str]:
    match = _TAGGED_OP.match(op)
    if match is None:
        return 0, False, op
    return int(match.group(1)), bool(match.group(2)), match.group(3)


class Sum(Functor):
    """F₁ + F₂; `i:op` holds on tag i elements, `i~:op` on every element not refuting it at tag i."""
    name = 'sum'

    def __init__(self, left: Functor, right: Functor):
        self.parts = (left, right)
        self.wpp = left.wpp and right.wpp
        self.exact_preimages = left.exact_preimages and right.exact_preimages
        self.capped_elements = left.capped_elements or right.capped_elements

    def spec(self):
        return 'sum({},{})'.format(self.parts[0].spec(), self.parts[1].spec())

    def _route(self, op: str) -> Tuple[int, bool, str]:
        tag, co, inner = _split_tag(op)
        if tag == 0:
            raise UnknownLiftingError(op, self.spec())
        return tag, co, inner

    def lifting(self, op):
        tag, co, inner = self._route(op)
        arity, dual = self.parts[tag - 1].lifting(inner)
        return arity, '{}{}:{}'.format(tag, '' if co else '~', dual)

    def arg_functor(self, op):
        tag, _, inner = self._route(op)
        return self.parts[tag - 1].arg_functor(inner)

    def map(self, f, element):
        tag, value = element
        return (tag, self.parts[tag - 1].map(f, value))

    def support(self, element):
        tag, value = element
        return self.parts[tag - 1].support(value)

    def elements(self, carrier, caps=None):
        for tag, part in ((1, self.parts[0]), (2, self.parts[1])):
            for value in part.elements(carrier, caps):
                yield (tag, value)

    def eval_lifting(self, op, sets, element):
        tag, co, inner = self._route(op)
        if element[0] != tag:
            return co
        return self.parts[tag - 1].eval_lifting(inner, sets, element[1])

    def eval_modal(self, op, args, element, denote):
        tag, co, inner = self._route(op)
        if element[0] != tag:
            return co
        return self.parts[tag - 1].eval_modal(inner, args, element[1], denote)

    def modal_markings(self, op, args, element, sat, cap=None):
        tag, co, inner = self._route(op)
        if element[0] != tag:
            return [frozenset()] if co else []
        return self.parts[tag - 1].modal_markings(inner, args, element[1], sat, cap)

    def eval_counting(self, formula, element, denote):
        tag, co, inner = self._route(formula.prefix + '<1>')
        if element[0] != tag:
            return co
        stripped = Counting(formula.seq, formula.rest, inner[:-3])
        return self.parts[tag - 1].eval_counting(stripped, element[1], denote)

    def preimages(self, element, fibers, caps=None):
        tag, value = element
        for lifted in self.parts[tag - 1].preimages(value, fibers, caps):
            yield (tag, lifted)

    def encode(self, element, point):
        return {'tag': element[0], 'value': self.parts[element[0] - 1].encode(element[1], point)}

    def decode(self, data, point):
        tag = int(data['tag'])
        return (tag, self.parts[tag - 1].decode(data['value'], point))


class Product(Functor):
    """F₁ × F₂; `i:op` reads component i."""
    name = 'prod'

    def __init__(self, left: Functor, right: Functor):
        self.parts = (left, right)
        self.wpp = left.wpp and right.wpp
        self.exact_preimages = left.exact_preimages and right.exact_preimages
        self.capped_elements = left.capped_elements or right.capped_elements

    def spec(self):
        return 'prod({},{})'.format(self.parts[0].spec(), self.parts[1].spec())

    def _route(self, op: str) -> Tuple[int, str]:
        tag, co, inner = _split_tag(op)
        if tag == 0 or co:
            raise UnknownLiftingError(op, self.spec())
        return tag, inner

    def lifting(self, op):
        tag, inner = self._route(op)
        arity, dual = self.parts[tag - 1].lifting(inner)
        return arity, '{}:{}'.format(tag, dual)

    def arg_functor(self, op):
        tag, inner = self._route(op)
        return self.parts[tag - 1].arg_functor(inner)

    def map(self, f, element):
        return tuple(part.map(f, value) for part, value in zip(self.parts, element))

    def support(self, element):
        return self.parts[0].support(element[0]) | self.parts[1].support(element[1])

    def elements(self, carrier, caps=None):
        caps = caps or default_caps
        lefts = list(self.parts[0].elements(carrier, caps))
        rights = list(self.parts[1].elements(carrier, caps))
        if len(lefts) * len(rights) > caps.elements:
            raise ResourceError('elements', caps.elements, 'enumerating product elements')
        for pair in itertools.product(lefts, rights):
            yield pair

    def eval_lifting(self, op, sets, element):
        tag, inner = self._route(op)
        return self.parts[tag - 1].eval_lifting(inner, sets, element[tag - 1])

    def eval_modal(self, op, args, element, denote):
        tag, inner = self._route(op)
        return self.parts[tag - 1].eval_modal(inner, args, element[tag - 1], denote)

    def modal_markings(self, op, args, element, sat, cap=None):
        tag, inner = self._route(op)
        return self.parts[tag - 1].modal_markings(inner, args, element[tag - 1], sat, cap)

    def eval_counting(self, formula, element, denote):
        tag, inner = self._route(formula.prefix + '<1>')
        stripped = Counting(formula.seq, formula.rest, inner[:-3])
        return self.parts[tag - 1].eval_counting(stripped, element[tag - 1], denote)

    def preimages(self, element, fibers, caps=None):
        lefts = self.parts[0].preimages(element[0], fibers, caps)
        rights = list(self.parts[1].preimages(element[1], fibers, caps))
        for left in lefts:
            for right in rights:
                yield (left, right)

    def encode(self, element, point):
        return [part.encode(value, point) for part, value in zip(self.parts, element)]

    def decode(self, data, point):
        return tuple(part.decode(value, point) for part, value in zip(self.parts, data))


class Compose(Functor):
    """F₁ ∘ F₂; outer liftings take one-step formulas of F₂ as arguments."""
    name = 'comp'

    def __init__(self, outer: Functor, inner: Functor):
        self.parts = (outer, inner)
        self.wpp = outer.wpp and inner.wpp
        self.exact_preimages = outer.exact_preimages and inner.exact_preimages
        self.capped_elements = outer.capped_elements or inner.capped_elements

    def spec(self):
        return 'comp({},{})'.format(self.parts[0].spec(), self.parts[1].spec())

    def lifting(self, op):
        return self.parts[0].lifting(op)

    def arg_functor(self, op):
        nested = self.parts[0].arg_functor(op)
        return self.parts[1] if nested is None else Compose(nested, self.parts[1])

    def map(self, f, element):
        inner = self.parts[1]
        return self.parts[0].map(lambda tau: inner.map(f, tau), element)

    def support(self, element):
        inner = self.parts[1]
        out = frozenset()
        for tau in self.parts[0].support(element):
            out |= inner.support(tau)
        return out

    def inner_elements(self, carrier, caps: Optional[Caps] = None) -> List:
        caps = caps or default_caps
        inner = []
        for tau in self.parts[1].elements(carrier, caps):
            inner.append(tau)
            if len(inner) > caps.compose_inner:
                raise ResourceError('compose_inner', caps.compose_inner, 'materializing inner elements')
        return inner

    def elements(self, carrier, caps=None):
        yield from self.parts[0].elements(self.inner_elements(carrier, caps), caps)

    def eval_lifting(self, op, sets, element):
        return self.parts[0].eval_lifting(op, sets, element)

    def _lift_denote(self, element, denote: Denote) -> Denote:
        outer, inner = self.parts
        points = outer.support(element)
        return lambda phi: frozenset(tau for tau in points if holds(phi, inner, tau, denote))

    def eval_modal(self, op, args, element, denote):
        return self.parts[0].eval_modal(op, args, element, self._lift_denote(element, denote))

    def modal_markings(self, op, args, element, sat, cap=None):
        inner = self.parts[1]
        lifted = lambda phi, tau: minimal_markings(phi, inner, tau, sat, cap)
        return self.parts[0].modal_markings(op, args, element, lifted, cap)

    def eval_counting(self, formula, element, denote):
        return self.parts[0].eval_counting(formula, element, self._lift_denote(element, denote))

    def preimages(self, element, fibers, caps=None):
        outer, inner = self.parts
        lifted = {tau: list(inner.preimages(tau, fibers, caps)) for tau in outer.support(element)}
        yield from outer.preimages(element, lifted, caps)

    def encode(self, element, point):
        inner = self.parts[1]
        return self.parts[0].encode(element, lambda tau: inner.encode(tau, point))

    def decode(self, data, point):
        inner = self.parts[1]
        return self.parts[0].decode(data, lambda blob: inner.decode(blob, point))


_KEYWORDS = ('powerset', 'bag', 'identity', 'labeled', 'mono', 'sum', 'prod', 'comp')


def parse_functor(text: str) -> Functor:
    """Read a functor expression such as `sum(powerset,labeled:a,b)`."""
    tokens = re.findall(r'[A-Za-z_][A-Za-z0-9_]*|[(),:]', text)
    functor, pos = _parse_functor(tokens, 0, text)
    if pos != len(tokens):
        raise UnsupportedFunctorError('trailing input in functor spec `{}`'.format(text))
    return functor


def _expect(tokens, pos, token, text):
    if pos >= len(tokens) or tokens[pos] != token:
        raise UnsupportedFunctorError('expected `{}` in functor spec `{}`'.format(token, text))
    return pos + 1


def _parse_functor(tokens: List[str], pos: int, text: str) -> Tuple[Functor, int]:
    if pos >= len(tokens):
        raise UnsupportedFunctorError('incomplete functor spec `{}`'.format(text))
    head = tokens[pos]
    pos += 1
    simple = {'powerset': Powerset, 'bag': Bag, 'identity': Identity, 'mono': MonotoneNeighbourhood}
    if head in simple:
        return simple[head](), pos
    if head == 'labeled':
        pos = _expect(tokens, pos, ':', text)
        labels = []
        while pos < len(tokens) and tokens[pos] not in _KEYWORDS and tokens[pos] not in '(),:':
            labels.append(tokens[pos])
            pos += 1
            if pos < len(tokens) and tokens[pos] == ',' and pos + 1 < len(tokens) and tokens[pos + 1] not in _KEYWORDS:
                pos += 1
            else:
                break
        return Labeled(labels), pos
    combinators = {'sum': Sum, 'prod': Product, 'comp': Compose}
    if head in combinators:
        pos = _expect(tokens, pos, '(', text)
        left, pos = _parse_functor(tokens, pos, text)
        pos = _expect(tokens, pos, ',', text)
        right, pos = _parse_functor(tokens, pos, text)
        pos = _expect(tokens, pos, ')', text)
        return combinators[head](left, right), pos
    raise UnsupportedFunctorError('unknown functor `{}`'.format(head))


def map_action(functor: Functor, f: PointMap, element):
    return functor.map(f, element)


def enumerate_elements(functor: Functor, carrier: Sequence[Hashable], caps: Optional[Caps] = None) -> Iterator:
    caps = caps or default_caps
    if len(carrier) > caps.carrier:
        raise ResourceError('carrier', caps.carrier, 'enumerating functor elements')
    return functor.elements(list(carrier), caps)


def eval_lifting(functor: Functor, op: str, sets: Sequence[FrozenSet], element) -> bool:
    return functor.eval_lifting(op, [frozenset(s) for s in sets], element)


def barr_lift(functor: Functor, relation, left, right, caps: Optional[Caps] = None) -> bool:
    return functor.barr_lift(relation, left, right, caps)
