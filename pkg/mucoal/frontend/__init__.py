from .compiler import CompiledAutomaton, binder_priorities, compile_formula, guard, letters, normalize, rename_apart
from .fixpoint import eval_fixpoint, satisfies
from .modelfile import ModelFile, dumps_model, load_model, loads_model, model_schema, save_model
from .parser import parse, tokenize
