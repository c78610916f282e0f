"""Direct denotational model checking, independent of automata and games."""
import logging
from typing import Dict, FrozenSet, Hashable, Optional

from ..automata.automaton import TModel
from ..errors import FormulaError, UnboundPropositionError
from ..semantics import holds
from ..syntax import And, Bot, Counting, Formula, Modal, Mu, Nabla, Not, Nu, Or, Top, Var, free_vars, nnf, render

logger = logging.getLogger(__name__)

Extent = FrozenSet[Hashable]


def eval_fixpoint(f: Formula, model: TModel, env: Optional[Dict[str, Extent]] = None) -> Extent:
    """The set of points satisfying `f`; fixpoints are computed by iteration from ∅ and S."""
    nnf(f, model.functor, model.functor)
    env = dict(env or {})
    for name in sorted(free_vars(f) - set(env)):
        if name not in model.valuation:
            raise UnboundPropositionError(name)
    carrier = frozenset(model.carrier)
    rounds = [0]

    def ev(g: Formula, env: Dict[str, Extent]) -> Extent:
        if isinstance(g, Var):
            if g.name in env:
                return env[g.name]
            return model.valuation[g.name] & carrier
        if isinstance(g, Top):
            return carrier
        if isinstance(g, Bot):
            return frozenset()
        if isinstance(g, Not):
            return carrier - ev(g.child, env)
        if isinstance(g, And):
            out = carrier
            for c in g.children:
                out &= ev(c, env)
            return out
        if isinstance(g, Or):
            out = frozenset()
            for c in g.children:
                out |= ev(c, env)
            return out
        if isinstance(g, (Modal, Nabla, Counting)):
            cache: Dict[Formula, Extent] = {}

            def denote(arg: Formula) -> Extent:
                if arg not in cache:
                    cache[arg] = ev(arg, env)
                return cache[arg]

            return frozenset(s for s in model.carrier if holds(g, model.functor, model.structure[s], denote))
        if isinstance(g, (Mu, Nu)):
            current = frozenset() if isinstance(g, Mu) else carrier
            while True:
                rounds[0] += 1
                nxt = ev(g.body, dict(env, **{g.var: current}))
                if nxt == current:
                    return current
                current = nxt
        raise FormulaError('unknown formula node {}'.format(render(g)))

    out = ev(f, env)
    logger.debug('fixpoint evaluation took %d iterations', rounds[0])
    return out


def satisfies(f: Formula, model: TModel) -> bool:
    return model.point in eval_fixpoint(f, model)
