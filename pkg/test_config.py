import pytest

from mucoal.config import Caps, Settings, default_caps, load_defaults


def test_packaged_defaults():
    cfg = load_defaults()
    assert cfg['caps']['multiplicity'] == default_caps.multiplicity
    assert cfg['settings']['functor'] == 'powerset'


def test_caps_are_validated_and_callable():
    with pytest.raises(ValueError):
        Caps(multiplicity=0)
    with pytest.raises(ValueError):
        Caps(carrier=-1)
    with pytest.raises(ValueError):
        Caps(mono_carrier=0)
    smaller = default_caps(carrier=2)
    assert smaller.carrier == 2
    assert smaller.markings == default_caps.markings
    assert smaller is not default_caps


def test_settings_modes():
    with pytest.raises(NotImplementedError):
        Settings(mode='guess')
    with pytest.raises(ValueError):
        Settings(workers=0)
    assert Settings(bound=None).bound == 3


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv('MUCOAL_CARRIER', '5')
    monkeypatch.setenv('MUCOAL_MODE', 'oracle')
    assert Caps.from_config().carrier == 5
    assert Settings.from_config().mode == 'oracle'
