"""Coalgebraic modal fixpoint logic with disjunctive bases."""
from .automata import (LambdaAutomaton, TModel, accepts, complement, equivalent, implies, simulate, strongly_accepts,
                       synthesize_model)
from .bases import basis_for, is_disjunctive
from .config import Caps, Settings, default_caps, default_settings
from .errors import MucoalError
from .frontend import compile_formula, eval_fixpoint, load_model, parse, satisfies
from .functors import parse_functor
from .games import ParityGame, Player, solve
from .syntax import render
from .transforms import InterpolationRequest, is_monotone, lyndon_automaton, one_step_lyndon, uniform_interpolant

__version__ = '0.1.0'

__all__ = [
    'LambdaAutomaton', 'TModel', 'accepts', 'complement', 'equivalent', 'implies', 'simulate', 'strongly_accepts',
    'synthesize_model', 'basis_for', 'is_disjunctive', 'Caps', 'Settings', 'default_caps', 'default_settings',
    'MucoalError', 'compile_formula', 'eval_fixpoint', 'load_model', 'parse', 'satisfies', 'parse_functor',
    'ParityGame', 'Player', 'solve', 'render', 'InterpolationRequest', 'is_monotone', 'lyndon_automaton',
    'one_step_lyndon', 'uniform_interpolant', '__version__'
]
