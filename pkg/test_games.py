"""Tests for the parity game solver."""
from hypothesis import given, settings
from hypothesis import strategies as st

from mucoal.games import (ParityGame, Player, attractor, brute_force_regions, dumps, random_game, solve,
                          verify_strategy)


def single(owner, priority, loop=True):
    game = ParityGame()
    game.add_position('v', owner, priority)
    if loop:
        game.add_move('v', 'v')
    return game


def test_even_self_loop_is_won_by_exists():
    game = single(Player.EXISTS, 0)
    result = solve(game)
    assert result.winner('v') == Player.EXISTS
    assert verify_strategy(game, Player.EXISTS, result.strategies[Player.EXISTS], {'v'})


def test_stuck_exists_loses():
    game = single(Player.EXISTS, 0, loop=False)
    assert solve(game).winner('v') == Player.FORALL
    assert not verify_strategy(game, Player.EXISTS, {}, {'v'})


def test_stuck_forall_loses():
    game = single(Player.FORALL, 1, loop=False)
    assert solve(game).winner('v') == Player.EXISTS


def test_strategy_into_own_dead_end_fails():
    game = ParityGame()
    game.add_position('a', Player.EXISTS, 2)
    game.add_position('b', Player.EXISTS, 2)
    game.add_move('a', 'b')
    assert not verify_strategy(game, Player.EXISTS, {'a': 'b'}, {'a', 'b'})


def test_strategy_leaving_region_fails():
    game = ParityGame()
    game.add_position('a', Player.EXISTS, 0)
    game.add_position('b', Player.EXISTS, 0)
    game.add_move('a', 'b')
    game.add_move('b', 'b')
    assert not verify_strategy(game, Player.EXISTS, {'a': 'b'}, {'a'})
    assert verify_strategy(game, Player.EXISTS, {'a': 'b', 'b': 'b'}, {'a', 'b'})


def test_tulip_example():
    game = ParityGame()
    game.add_position('p0', Player.EXISTS, 1)
    game.add_position('p1', Player.FORALL, 0)
    game.add_position('p2', Player.FORALL, 1)
    for u, v in (('p0', 'p1'), ('p1', 'p0'), ('p0', 'p2'), ('p2', 'p2')):
        game.add_move(u, v)
    result = solve(game)
    assert result.region(Player.FORALL) == {'p0', 'p1', 'p2'}


def test_attractor_pulls_forced_positions():
    game = ParityGame()
    game.add_position('t', Player.EXISTS, 0)
    game.add_position('f', Player.FORALL, 0)
    game.add_position('e', Player.EXISTS, 0)
    game.add_move('f', 't')
    game.add_move('e', 'f')
    game.add_move('e', 'e')
    attr, strategy = attractor(game, set(game.positions), {'t'}, Player.EXISTS)
    assert attr == {'t', 'f', 'e'}
    assert strategy == {'e': 'f'}


def test_regions_match_brute_force_on_random_games():
    for seed in range(150):
        game = random_game(1 + seed % 6, max_priority=4, seed=seed)
        result = solve(game)
        assert result.winning_regions == brute_force_regions(game), dumps(game)
        for player in Player:
            assert verify_strategy(game, player, result.strategies[player], result.region(player))


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=1, max_value=8), st.integers(min_value=0, max_value=10**6))
def test_solutions_are_total_and_certified(n, seed):
    game = random_game(n, max_priority=4, edge_prob=0.3, seed=seed)
    result = solve(game)
    assert set(result.winning_regions) == set(game.positions)
    for player in Player:
        assert verify_strategy(game, player, result.strategies[player], result.region(player))


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=7), st.integers(min_value=0, max_value=10**6))
def test_priority_shifts(n, seed):
    game = random_game(n, seed=seed)
    regions = solve(game).winning_regions
    assert solve(game.shifted(2)).winning_regions == regions
    assert solve(game.compressed()).winning_regions == regions
    swapped = solve(game.shifted(1, swap_owners=True)).winning_regions
    assert swapped == {v: w.opponent for v, w in regions.items()}


def test_dump_lists_every_position():
    game = random_game(4, seed=3)
    assert len(dumps(game).splitlines()) == 4
