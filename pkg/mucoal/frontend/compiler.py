"""Fixpoint formulas to Λ-automata.

The formula is put in negation normal form, its binders are renamed apart and
unguarded occurrences of bound variables are rewritten away. States are the
modal arguments of the formula paired with the largest priority met on the
way to them; Θ(q, c) unfolds the argument under the colour c down to modal
atoms, passing through bound variables.
"""
import logging
from collections import deque
from typing import Dict, Iterable, Optional, Set, Tuple

from ..automata.automaton import LambdaAutomaton, colors
from ..config import Caps, default_caps
from ..errors import FormulaError, ResourceError, UnguardedFormulaError
from ..functors import Functor
from ..syntax import (BOT, TOP, And, Bot, Counting, Formula, Modal, Mu, Nabla, Not, Nu, Or, Top, Var, children_of,
                      conj, counting, disj, free_vars, nabla, nnf, rebuild, render, substitute, var)
from ..utils import Report

logger = logging.getLogger(__name__)


class CompiledAutomaton(Report):
    excluded_attr = ('automaton', 'source', 'normalized', 'subformulas')

    def __init__(self, automaton: LambdaAutomaton, source: Formula, normalized: Formula,
                 subformulas: Dict[str, Formula], rewritten: bool):
        self.automaton = automaton
        self.source = source
        self.normalized = normalized
        self.subformulas = subformulas
        self.rewritten = rewritten
        self.states = len(automaton)
        self.props = list(automaton.props)


def rename_apart(f: Formula) -> Formula:
    """Give every binder its own variable, distinct from the free letters."""
    used = set(free_vars(f))

    def fresh(name: str) -> str:
        candidate, i = name, 0
        while candidate in used:
            i += 1
            candidate = '{}_{}'.format(name, i)
        used.add(candidate)
        return candidate

    def walk(g: Formula, env: Dict[str, str]) -> Formula:
        if isinstance(g, Var):
            return Var(env[g.name]) if g.name in env else g
        if isinstance(g, (Top, Bot)):
            return g
        if isinstance(g, (Mu, Nu)):
            new = fresh(g.var)
            return type(g)(new, walk(g.body, dict(env, **{g.var: new})))
        return rebuild(g, [walk(c, env) for c in children_of(g)])

    return walk(f, {})


def unguarded(f: Formula) -> frozenset:
    """Variables with an occurrence not below any modality."""
    if isinstance(f, Var):
        return frozenset([f.name])
    if isinstance(f, (Modal, Nabla, Counting, Top, Bot)):
        return frozenset()
    if isinstance(f, (Mu, Nu)):
        return unguarded(f.body) - {f.var}
    out = frozenset()
    for c in children_of(f):
        out |= unguarded(c)
    return out


def _eliminate(f: Formula, name: str, value: Formula) -> Formula:
    if isinstance(f, Var):
        return value if f.name == name else f
    if isinstance(f, (And, Or)):
        return rebuild(f, [_eliminate(c, name, value) for c in f.children])
    if isinstance(f, (Mu, Nu)) and name in unguarded(f.body):
        unfolded = substitute(f.body, {f.var: f}, strict=False)
        return _eliminate(unfolded, name, value)
    return f


def guard(f: Formula, rewrite: bool = True) -> Tuple[Formula, bool]:
    """Remove unguarded occurrences of bound variables, innermost binder first.

    μx.ψ ≡ μx.ψ[⊥/x] and νx.ψ ≡ νx.ψ[⊤/x] for the unguarded occurrences;
    inner binders hiding an unguarded x are unfolded once. Returns the
    rewritten formula and whether anything changed.
    """
    changed = []

    def walk(g: Formula) -> Formula:
        if isinstance(g, (Var, Top, Bot)):
            return g
        if isinstance(g, (Mu, Nu)):
            body = walk(g.body)
            if g.var in unguarded(body):
                if not rewrite:
                    raise UnguardedFormulaError(g.var)
                changed.append(g.var)
                body = _eliminate(body, g.var, BOT if isinstance(g, Mu) else TOP)
            return type(g)(g.var, body)
        return rebuild(g, [walk(c) for c in children_of(g)])

    out = walk(f)
    if changed:
        logger.info('rewrote unguarded occurrences of %s', ', '.join(changed))
    return out, bool(changed)


def normalize(f: Formula, functor: Functor, rewrite: bool = True) -> Tuple[Formula, bool]:
    """Negation normal form, renamed apart and guarded."""
    g = rename_apart(nnf(f, functor, functor))
    g, changed = guard(g, rewrite)
    if changed:
        g = rename_apart(g)
    return g, changed


def binder_priorities(f: Formula) -> Tuple[Dict[str, int], Dict[str, Formula]]:
    """Alternation-depth priorities: ν even, μ odd, outer binders never below inner ones."""
    priority: Dict[str, int] = {}
    body: Dict[str, Formula] = {}

    def walk(g: Formula) -> int:
        inner = max((walk(c) for c in children_of(g)), default=-1)
        if isinstance(g, (Mu, Nu)):
            parity = 1 if isinstance(g, Mu) else 0
            p = max(inner, 0)
            if p % 2 != parity:
                p += 1
            priority[g.var] = p
            body[g.var] = g.body
            return p
        return inner

    walk(f)
    return priority, body


class _Builder:

    def __init__(self, functor: Functor, props: Iterable[str], priority: Dict[str, int], body: Dict[str, Formula],
                 caps: Caps):
        self.functor = functor
        self.props = frozenset(props)
        self.priority = priority
        self.body = body
        self.caps = caps
        self.names: Dict[Tuple[Formula, int], str] = {}
        self.queue = deque()

    def state(self, chi: Formula, m: int) -> str:
        key = (chi, m)
        if key not in self.names:
            if len(self.names) >= self.caps.automaton_states:
                raise ResourceError('automaton_states', self.caps.automaton_states, 'compiling a formula')
            self.names[key] = 'q{}'.format(len(self.names))
            self.queue.append(key)
        return self.names[key]

    def argument(self, f: Formula, m: int, layer: Optional[Functor]) -> Formula:
        if layer is None:
            if isinstance(f, (Top, Bot)):
                return f
            return var(self.state(f, m))
        if isinstance(f, (Top, Bot)):
            return f
        if isinstance(f, (And, Or)):
            return rebuild(f, [self.argument(c, m, layer) for c in f.children])
        if isinstance(f, Modal):
            inner = layer.arg_functor(f.op)
            return Modal(f.op, tuple(self.argument(a, m, inner) for a in f.args))
        if isinstance(f, Nabla):
            inner = layer.arg_functor(f.prefix + '<>')
            return nabla([self.argument(a, m, inner) for a in f.args], f.prefix)
        if isinstance(f, Counting):
            inner = layer.arg_functor(f.prefix + '<1>')
            return counting([self.argument(a, m, inner) for a in f.seq],
                            [self.argument(a, m, inner) for a in f.rest], f.prefix)
        raise FormulaError('`{}` cannot appear inside the {} layer'.format(render(f), layer.spec()))

    def unfold(self, f: Formula, color: frozenset, m: int) -> Formula:
        if isinstance(f, (Top, Bot)):
            return f
        if isinstance(f, Var):
            if f.name in self.body:
                return self.unfold(self.body[f.name], color, max(m, self.priority[f.name]))
            return TOP if f.name in color else BOT
        if isinstance(f, Not):
            if not isinstance(f.child, Var) or f.child.name in self.body:
                raise FormulaError('negation of `{}` survived normalization'.format(render(f.child)))
            return BOT if f.child.name in color else TOP
        if isinstance(f, And):
            return conj(*(self.unfold(c, color, m) for c in f.children))
        if isinstance(f, Or):
            return disj(*(self.unfold(c, color, m) for c in f.children))
        if isinstance(f, (Mu, Nu)):
            return self.unfold(f.body, color, m)
        if isinstance(f, Modal):
            layer = self.functor.arg_functor(f.op)
            return Modal(f.op, tuple(self.argument(a, m, layer) for a in f.args))
        if isinstance(f, Nabla):
            layer = self.functor.arg_functor(f.prefix + '<>')
            return nabla([self.argument(a, m, layer) for a in f.args], f.prefix)
        if isinstance(f, Counting):
            layer = self.functor.arg_functor(f.prefix + '<1>')
            return counting([self.argument(a, m, layer) for a in f.seq],
                            [self.argument(a, m, layer) for a in f.rest], f.prefix)
        raise FormulaError('unknown formula node {!r}'.format(f))


def letters(f: Formula) -> frozenset:
    """Free proposition letters of a fixpoint formula."""
    return frozenset(n for n in free_vars(f) if isinstance(n, str))


def compile_formula(f: Formula, functor: Functor, props: Optional[Iterable[str]] = None, rewrite: bool = True,
                    caps: Optional[Caps] = None) -> CompiledAutomaton:
    """An equivalent Λ-automaton over `props` (the free letters of `f` by default)."""
    caps = caps or default_caps
    normalized, rewritten = normalize(f, functor, rewrite)
    free = letters(normalized)
    props = set(free if props is None else props)
    if not free <= props:
        raise FormulaError('letters {} are missing from the alphabet'.format(sorted(free - props)))
    priority, body = binder_priorities(normalized)
    builder = _Builder(functor, props, priority, body, caps)
    builder.state(normalized, 0)
    transitions = {}
    state_priority = {}
    subformulas = {}
    notes = {}
    seen: Set[Tuple[Formula, int]] = set()
    order = []
    while builder.queue:
        key = builder.queue.popleft()
        if key in seen:
            continue
        seen.add(key)
        chi, m = key
        name = builder.names[key]
        order.append(name)
        state_priority[name] = m
        subformulas[name] = chi
        notes[name] = '{} @ {}'.format(render(chi), m)
        for c in colors(props):
            transitions[(name, c)] = builder.unfold(chi, c, 0)
    aut = LambdaAutomaton(functor, order, transitions, state_priority, order[0], props, notes).validate()
    logger.info('compiled a formula of %d binders into %d states', len(priority), len(aut))
    return CompiledAutomaton(aut, f, normalized, subformulas, rewritten)
