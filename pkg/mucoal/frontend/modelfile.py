"""JSON model files.

    {
      "functor": "powerset",
      "states": ["s", "t"],
      "transitions": {"s": ["t"], "t": []},
      "valuation": {"p": ["t"]},
      "point": "s"
    }

`transitions` holds one encoded functor element per state: successor lists
for powerset, {state: multiplicity} tables for bags, a state for identity,
{"label", "next"} for labeled, lists of minimal sets for mono, {"tag",
"value"} for sums, two-item lists for products and outer encodings of inner
encodings for compositions.
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from ..automata.automaton import TModel
from ..errors import FormulaError, MucoalError
from ..functors import parse_functor
from ..syntax import var_key
from ..utils import name_of

logger = logging.getLogger(__name__)


class ModelFile(BaseModel):
    model_config = ConfigDict(extra='forbid')

    functor: str = Field(..., description="Functor expression, e.g. `powerset` or `sum(powerset,identity)`.")
    states: List[str] = Field(..., min_length=1, description="Carrier of the model.")
    transitions: Dict[str, Any] = Field(..., description="Encoded functor element for every state.")
    valuation: Dict[str, List[str]] = Field(default_factory=dict, description="Letter to the states where it holds.")
    point: str = Field(..., description="Designated state.")

    @field_validator('functor')
    @classmethod
    def _known_functor(cls, value: str) -> str:
        try:
            return parse_functor(value).spec()
        except MucoalError as exc:
            raise ValueError(str(exc)) from exc

    @model_validator(mode='after')
    def _references(self) -> 'ModelFile':
        declared = set(self.states)
        if len(declared) != len(self.states):
            raise ValueError('duplicate states')
        if self.point not in declared:
            raise ValueError('point `{}` is not a declared state'.format(self.point))
        if set(self.transitions) != declared:
            raise ValueError('transitions must be given for exactly the declared states')
        for letter, extent in self.valuation.items():
            stray = set(extent) - declared
            if stray:
                raise ValueError('valuation of `{}` mentions undeclared states {}'.format(letter, sorted(stray)))
        return self

    def to_model(self) -> TModel:
        functor = parse_functor(self.functor)
        structure = {}
        for s in self.states:
            try:
                structure[s] = functor.decode(self.transitions[s], str)
            except (KeyError, TypeError, ValueError, IndexError) as exc:
                raise FormulaError('cannot read the {} element of state `{}`: {}'.format(self.functor, s, exc)) from exc
        return TModel(functor, self.states, structure, self.valuation, self.point).validate()

    @classmethod
    def from_model(cls, model: TModel) -> 'ModelFile':
        functor = model.functor
        return cls(functor=functor.spec(),
                   states=[name_of(s) for s in model.carrier],
                   transitions={name_of(s): functor.encode(model.structure[s], name_of) for s in model.carrier},
                   valuation={p: [name_of(s) for s in sorted(ext, key=var_key)]
                              for p, ext in sorted(model.valuation.items())},
                   point=name_of(model.point))


def loads_model(text: str) -> TModel:
    try:
        spec = ModelFile.model_validate_json(text)
    except ValidationError as exc:
        raise FormulaError('invalid model file:\n{}'.format(exc)) from exc
    model = spec.to_model()
    logger.debug('read a %s model with %d states', spec.functor, len(spec.states))
    return model


def dumps_model(model: TModel) -> str:
    return json.dumps(ModelFile.from_model(model).model_dump(), indent=2) + '\n'


def load_model(path: Union[str, Path]) -> TModel:
    return loads_model(Path(path).read_text())


def save_model(model: TModel, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps_model(model))


def model_schema() -> dict:
    return ModelFile.model_json_schema()
