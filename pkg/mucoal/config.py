import os
from typing import Optional

import importlib_resources
import toml

_ENV_PREFIX = 'MUCOAL_'


def load_defaults(cfg_path=None) -> dict:
    """Read the packaged `config.toml` (or `cfg_path`) into a plain dict."""
    cfg_ref = (importlib_resources.files("mucoal").joinpath("config.toml") if cfg_path is None else cfg_path)
    with cfg_ref.open() as file:
        return toml.load(file)


def _env(section: dict, key: str, cast):
    raw = os.getenv(_ENV_PREFIX + key.upper())
    if raw is None:
        return section[key]
    return cast(raw)


class Caps:
    """Hard resource bounds for every exhaustive search in the library."""

    def __init__(self,
                 multiplicity: int = 2,
                 compose_inner: int = 64,
                 carrier: int = 8,
                 markings: int = 4096,
                 cover_candidates: int = 200000,
                 dpa_states: int = 4000,
                 automaton_states: int = 2000,
                 elements: int = 200000,
                 mono_lifts: int = 2,
                 mono_carrier: int = 4):
        if multiplicity < 1:
            raise ValueError('`multiplicity` must be positive!')
        self.multiplicity = multiplicity

        for key, value in (('compose_inner', compose_inner), ('carrier', carrier), ('markings', markings),
                           ('cover_candidates', cover_candidates), ('dpa_states', dpa_states),
                           ('automaton_states', automaton_states), ('elements', elements),
                           ('mono_lifts', mono_lifts), ('mono_carrier', mono_carrier)):
            if value <= 0:
                raise ValueError('`{}` must be positive!'.format(key))
        self.compose_inner = compose_inner
        self.carrier = carrier
        self.markings = markings
        self.cover_candidates = cover_candidates
        self.dpa_states = dpa_states
        self.automaton_states = automaton_states
        self.elements = elements
        self.mono_lifts = mono_lifts
        self.mono_carrier = mono_carrier

    def __call__(self, **changes) -> 'Caps':
        values = dict(self.__dict__)
        values.update(changes)
        return Caps(**values)

    def __str__(self):
        return '\n'.join('{} = {}'.format(key, value) for (key, value) in self.__dict__.items())

    @classmethod
    def from_config(cls, cfg: Optional[dict] = None) -> 'Caps':
        section = (cfg or load_defaults())['caps']
        return cls(**{key: _env(section, key, int) for key in section})


class Settings:

    def __init__(self,
                 functor: str = 'powerset',
                 mode: str = 'enum',
                 bound: int = 3,
                 depth: int = 6,
                 workers: int = 1,
                 seed: int = 0):
        self.functor = functor

        if mode not in ['enum', 'empty', 'oracle']:
            raise NotImplementedError("`Settings.mode` must belong to {'enum', 'empty', 'oracle'}!")
        self.mode = mode

        if bound is None:
            bound = 3
        elif bound <= 0:
            raise ValueError('`bound` must be positive!')
        self.bound = bound

        if depth < 0:
            raise ValueError('`depth` must be non-negative!')
        self.depth = depth

        if workers <= 0:
            raise ValueError('`workers` must be positive!')
        self.workers = workers
        self.seed = seed

    def __call__(self):
        return self.functor, self.mode, self.bound, self.depth

    def __str__(self):
        return '\n'.join('{} = {}'.format(key, value) for (key, value) in self.__dict__.items())

    @classmethod
    def from_config(cls, cfg: Optional[dict] = None) -> 'Settings':
        section = (cfg or load_defaults())['settings']
        casts = {'functor': str, 'mode': str, 'bound': int, 'depth': int, 'workers': int, 'seed': int}
        return cls(**{key: _env(section, key, casts[key]) for key in section})


default_caps = Caps.from_config()
default_settings = Settings.from_config()
