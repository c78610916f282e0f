import pytest
from fastapi.testclient import TestClient

import api_server
from mucoal.frontend import ModelFile


@pytest.fixture
def client():
    return TestClient(api_server.app)


@pytest.fixture
def chain_blob(chain3):
    return ModelFile.from_model(chain3).model_dump()


def test_health(client):
    response = client.get('/health')
    assert response.status_code == 200
    body = response.json()
    assert body['status'] == 'ok'
    assert body['caps']['multiplicity'] >= 1


def test_check(client, chain_blob):
    response = client.post('/check', json={'formula': 'mu x. p | <>x', 'model': chain_blob})
    assert response.status_code == 200
    body = response.json()
    assert body['game'] and body['fixpoint'] and body['agree']
    assert not body['rewritten']
    response = client.post('/check', json={'formula': 'mu x. x | p', 'model': chain_blob})
    assert response.json()['rewritten']


def test_simulate(client):
    response = client.post('/simulate', json={'formula': 'nu y. mu x. (p & <>y) | <>x'})
    assert response.status_code == 200
    body = response.json()
    assert body['automaton'].startswith('functor powerset')
    assert body['states_after'] >= 1


def test_monotone(client):
    response = client.post('/monotone', json={'formula': '~p', 'var': 'p', 'bound': 2})
    assert response.status_code == 200
    body = response.json()
    assert body['monotone'] is False
    assert body['mode'] == 'enum'
    assert len(body['counterexample']) == 2
    assert body['counterexample'][1] is not None


def test_errors(client, chain_blob):
    assert client.post('/check', json={'formula': 'p &', 'model': chain_blob}).status_code == 400
    assert client.post('/monotone', json={'formula': 'p', 'var': 'p', 'mode': 'guess'}).status_code == 422
    response = client.post('/simulate', json={'formula': '<>p', 'caps': {'automaton_states': 1}})
    assert response.status_code == 507


def test_api_key(client, monkeypatch):
    monkeypatch.setattr(api_server, 'API_KEY', 'secret')
    assert client.get('/health').status_code == 401
    assert client.get('/health', headers={'X-API-Key': 'secret'}).status_code == 200
