from .acceptance import (PreimageCover, acceptance_game, accepts, preimage_cover, solve_acceptance,
                         strongly_accepts, winning_states)
from .automaton import (Color, LambdaAutomaton, TModel, color_text, colors, complement, conjunction, constant,
                        disjunction, dumps, enumerate_models, loads, to_equations)
from .simulation import PresimAutomaton, presimulate, relation_text, simulate
from .synthesis import (LanguageVerdict, SynthesisResult, equivalent, implies, satisfiability_game, search_models,
                        synthesize_model)
from .words import (BuchiAutomaton, ParityWordAutomaton, SafraTree, StreamParityAutomaton, bad_trace_nba,
                    determinize_nbt, has_bad_trace)
