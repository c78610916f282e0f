import os
import random
import time
from typing import Callable, Optional

import numpy as np
import pandas as pd
from tqdm import tqdm

from mucoal.automata import accepts, enumerate_models, search_models, simulate, synthesize_model
from mucoal.bases import basis_for
from mucoal.config import Caps, Settings, default_caps, default_settings
from mucoal.errors import ResourceError
from mucoal.frontend import compile_formula, letters, satisfies
from mucoal.functors import parse_functor
from mucoal.games import Player, brute_force_regions, random_game, solve, verify_strategy
from mucoal.generators import random_automaton, random_formula, random_model
from mucoal.syntax import render
from mucoal.transforms import InterpolationRequest, is_monotone, uniform_interpolant
from mucoal.utils import check_dir, set_seed

summary_columns = [
    'experiment', 'functor', 'n_cases', 'n_failures', 'n_inconclusive', 'total_time_cost', 'ave_time_cost',
    'max_time_cost', 'time_std', 'ave_size', 'max_size'
]


class Summary:

    def __init__(self, experiment: str, functor: str) -> None:
        self.times = []
        self.sizes = []
        self.failures = []
        self.output = {
            'experiment': experiment,
            'functor': functor,
            'n_cases': 0,
            'n_failures': 0,
            'n_inconclusive': 0,
        }

    def __str__(self) -> str:
        self.process()
        return '\n'.join('{} = {}'.format(x, self.output[x]) for x in self.output)

    def add_case(self, ok: Optional[bool], time_cost: float, size: int = 0, note: str = '') -> None:
        self.output['n_cases'] += 1
        self.times.append(time_cost)
        self.sizes.append(size)
        if ok is None:
            self.output['n_inconclusive'] += 1
        elif not ok:
            self.output['n_failures'] += 1
            self.failures.append(note)

    def process(self) -> None:
        times = np.array(self.times or [0.0])
        sizes = np.array(self.sizes or [0])
        self.output['total_time_cost'] = float(times.sum())
        self.output['ave_time_cost'] = float(times.mean())
        self.output['max_time_cost'] = float(times.max())
        self.output['time_std'] = float(times.std())
        self.output['ave_size'] = float(sizes.mean())
        self.output['max_size'] = int(sizes.max())

    def gather(self) -> pd.DataFrame:
        self.process()
        return pd.DataFrame([self.output[c] for c in summary_columns], index=summary_columns).T


def _timed(fn: Callable, *args):
    start = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - start


def oracle_agreement(functor_spec: str, n_examples: int = 200, model_size: int = 4, caps: Caps = default_caps,
                     seed: int = 0) -> Summary:
    """Game acceptance of compiled formulas against the fixpoint evaluator."""
    functor = parse_functor(functor_spec)
    caps = caps(multiplicity=3) if functor_spec == 'bag' else caps
    rng = random.Random(seed)
    summary = Summary('oracle_agreement', functor_spec)
    for i in tqdm(range(n_examples), ncols=70, desc='oracle {}'.format(functor_spec)):
        formula = random_formula(functor, ['p', 'q'], depth=4, binders=2, rng=rng)
        model = random_model(functor, ['p', 'q'], rng.randint(1, model_size), seed=rng.randrange(2**31), caps=caps)

        def run():
            compiled = compile_formula(formula, functor, caps=caps)
            return compiled, accepts(compiled.automaton, model, caps) == satisfies(formula, model)

        try:
            (compiled, ok), cost = _timed(run)
        except ResourceError:
            summary.add_case(None, 0.0)
            continue
        summary.add_case(ok, cost, len(compiled.automaton), render(formula))
    return summary


def simulation_agreement(n_examples: int = 50, bound: int = 2, caps: Caps = default_caps, seed: int = 0) -> Summary:
    """accepts(A, M) = accepts(sim(A), M) on every small pointed Kripke model."""
    functor = parse_functor('powerset')
    summary = Summary('simulation', 'powerset')
    for i in tqdm(range(n_examples), ncols=70, desc='simulation'):
        aut = random_automaton(functor, ['p'], states=random.Random(seed + i).randint(1, 3), seed=seed + i)

        def run():
            sim = simulate(aut, basis_for(functor), caps)
            ok = all(accepts(aut, m, caps) == accepts(sim, m, caps) for m in enumerate_models(functor, ['p'], bound, caps))
            return sim, ok

        try:
            (sim, ok), cost = _timed(run)
        except ResourceError:
            summary.add_case(None, 0.0)
            continue
        summary.add_case(ok, cost, len(sim), 'seed {}'.format(seed + i))
    return summary


def game_agreement(n_examples: int = 500, max_positions: int = 8, seed: int = 0) -> Summary:
    """Zielonka regions against positional brute force, with strategy certification."""
    summary = Summary('games', '-')
    rng = random.Random(seed)
    for i in tqdm(range(n_examples), ncols=70, desc='games'):
        game = random_game(rng.randint(1, max_positions), max_priority=4, seed=rng.randrange(2**31))

        def run():
            result = solve(game)
            oracle = brute_force_regions(game)
            ok = all(result.winner(v) == oracle[v] for v in game)
            for player in Player:
                ok = ok and verify_strategy(game, player, result.strategies[player], result.region(player))
            return ok

        ok, cost = _timed(run)
        summary.add_case(ok, cost, len(game), 'game {}'.format(i))
    return summary


def synthesis_sizes(n_examples: int = 30, caps: Caps = default_caps, seed: int = 0) -> Summary:
    """Synthesized models never exceed the state count; `empty` is cross-checked by enumeration."""
    functor = parse_functor('powerset')
    summary = Summary('synthesis', 'powerset')
    for i in tqdm(range(n_examples), ncols=70, desc='synthesis'):
        aut = simulate(random_automaton(functor, ['p'], states=2, seed=seed + i), basis_for(functor), caps)

        def run():
            result = synthesize_model(aut, caps)
            if result.model is not None:
                return len(result.model.carrier) <= len(aut)
            return search_models(aut, min(len(aut), 2), caps) is None

        try:
            ok, cost = _timed(run)
        except ResourceError:
            summary.add_case(None, 0.0)
            continue
        summary.add_case(ok, cost, len(aut), 'seed {}'.format(seed + i))
    return summary


def lyndon_agreement(n_examples: int = 40, bound: int = 2, caps: Caps = default_caps, seed: int = 0) -> Summary:
    """is_monotone through the Lyndon transform against pointwise enlargement of p."""
    functor = parse_functor('powerset')
    summary = Summary('lyndon', 'powerset')
    rng = random.Random(seed)
    for i in tqdm(range(n_examples), ncols=70, desc='lyndon'):
        formula = random_formula(functor, ['p'], depth=3, binders=1, rng=rng)

        def run():
            aut = compile_formula(formula, functor, props=['p'], caps=caps).automaton
            by_transform = is_monotone(aut, 'p', 'enum', bound=bound, caps=caps)
            by_oracle = is_monotone(aut, 'p', 'oracle', bound=bound, caps=caps)
            return by_transform.monotone == by_oracle.monotone

        try:
            ok, cost = _timed(run)
        except ResourceError:
            summary.add_case(None, 0.0)
            continue
        summary.add_case(ok, cost, 0, render(formula))
    return summary


def interpolation_certificates(n_examples: int = 20, bound: int = 2, caps: Caps = default_caps,
                               seed: int = 0) -> Summary:
    functor = parse_functor('powerset')
    summary = Summary('interpolation', 'powerset')
    rng = random.Random(seed)
    for i in tqdm(range(n_examples), ncols=70, desc='interpolation'):
        formula = random_formula(functor, ['p', 'q'], depth=3, binders=1, rng=rng)
        consequence = random_formula(functor, ['q'], depth=2, binders=0, rng=rng)

        def run():
            req = InterpolationRequest(formula, frozenset(['q']) & letters(formula), functor=functor,
                                       consequences=[consequence], bound=bound)
            result = uniform_interpolant(req, caps)
            return result, result.certified

        try:
            (result, ok), cost = _timed(run)
        except ResourceError:
            summary.add_case(None, 0.0)
            continue
        summary.add_case(ok, cost, len(result.automaton), render(formula))
    return summary


def get_statistics(settings: Settings = default_settings, scale: float = 1.0) -> pd.DataFrame:
    n = lambda base: max(1, int(base * scale))
    summaries = [
        oracle_agreement('powerset', n(200), seed=settings.seed),
        oracle_agreement('bag', n(200), model_size=3, seed=settings.seed),
        simulation_agreement(n(50), seed=settings.seed),
        game_agreement(n(500), seed=settings.seed),
        synthesis_sizes(n(30), seed=settings.seed),
        lyndon_agreement(n(40), bound=settings.bound, seed=settings.seed),
        interpolation_certificates(n(20), bound=settings.bound, seed=settings.seed),
    ]
    df = pd.DataFrame(columns=summary_columns)
    for summary in summaries:
        print(summary)
        for note in summary.failures:
            print('  failure: {}'.format(note))
        print()
        df = pd.concat([df, summary.gather()], ignore_index=True)
    return df


if __name__ == '__main__':
    time_stamp = time.strftime("%m%d_%H%M", time.localtime())
    set_seed(default_settings.seed)
    df = get_statistics(default_settings)
    save_table_dir = os.path.join('results', 'oracles')
    check_dir(save_table_dir)
    df.to_csv(os.path.join(save_table_dir, 'summary_{}.csv'.format(time_stamp)), index=False)
