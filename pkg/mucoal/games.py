"""Finite parity games and their positional solution.

Plays are won by Exists when the largest priority seen infinitely often is
even. A player who has to move from a position without successors loses.
"""
import enum
import itertools
import logging
import random
from collections import deque
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Set, Tuple

import networkx as nx

from .utils import Report

logger = logging.getLogger(__name__)

Strategy = Dict[Hashable, Hashable]


class Player(enum.IntEnum):
    EXISTS = 0
    FORALL = 1

    @property
    def opponent(self) -> 'Player':
        return Player(1 - self)

    @classmethod
    def of_priority(cls, priority: int) -> 'Player':
        """The player favoured by `priority`."""
        return cls(priority % 2)


class ParityGame:
    """Positions with an owner and a priority, moves as the edges of a `nx.DiGraph`."""

    def __init__(self):
        self.graph = nx.DiGraph()

    def __len__(self):
        return self.graph.number_of_nodes()

    def __contains__(self, position):
        return position in self.graph

    def __iter__(self):
        return iter(self.graph.nodes)

    def add_position(self, position: Hashable, owner: Player, priority: int):
        if priority < 0:
            raise ValueError('priorities must be non-negative, got {}'.format(priority))
        self.graph.add_node(position, owner=Player(owner), priority=priority)

    def add_move(self, source: Hashable, target: Hashable):
        if source not in self.graph or target not in self.graph:
            raise KeyError('move {!r} -> {!r} between undeclared positions'.format(source, target))
        self.graph.add_edge(source, target)

    def owner(self, position) -> Player:
        return self.graph.nodes[position]['owner']

    def priority(self, position) -> int:
        return self.graph.nodes[position]['priority']

    def successors(self, position) -> List:
        return list(self.graph.successors(position))

    def predecessors(self, position) -> List:
        return list(self.graph.predecessors(position))

    @property
    def positions(self) -> List:
        return list(self.graph.nodes)

    @property
    def max_priority(self) -> int:
        return max((self.priority(v) for v in self), default=0)

    def dead_ends(self) -> Set:
        return {v for v in self if self.graph.out_degree(v) == 0}

    def shifted(self, delta: int, swap_owners: bool = False) -> 'ParityGame':
        """Copy with every priority raised by `delta`, owners swapped on request."""
        game = ParityGame()
        for v in self:
            owner = self.owner(v).opponent if swap_owners else self.owner(v)
            game.add_position(v, owner, self.priority(v) + delta)
        game.graph.add_edges_from(self.graph.edges)
        return game

    def compressed(self) -> 'ParityGame':
        """Copy with priorities renumbered densely, parity and order kept."""
        ranks = {}
        rank = None
        for p in sorted({self.priority(v) for v in self}):
            if rank is None:
                rank = p % 2
            elif rank % 2 != p % 2:
                rank += 1
            ranks[p] = rank
        game = ParityGame()
        for v in self:
            game.add_position(v, self.owner(v), ranks[self.priority(v)])
        game.graph.add_edges_from(self.graph.edges)
        return game


class SolveResult(Report):
    excluded_attr = ('strategies', )

    def __init__(self, winning_regions: Dict[Hashable, Player], strategies: Dict[Player, Strategy]):
        self.winning_regions = winning_regions
        self.strategies = strategies

    def winner(self, position) -> Player:
        return self.winning_regions[position]

    def region(self, player: Player) -> Set:
        return {v for v, w in self.winning_regions.items() if w == player}


def attractor(game: ParityGame, nodes: Set, target: Iterable, player: Player) -> Tuple[Set, Strategy]:
    """Positions of the subgame `nodes` from which `player` can force a visit to `target`.

    Positions of the opponent all of whose moves stay in the attractor join it,
    so opponent dead ends are attracted vacuously.
    """
    attr = {v for v in target if v in nodes}
    strategy: Strategy = {}
    remaining = {v: sum(1 for w in game.graph.successors(v) if w in nodes) for v in nodes}
    queue = deque(attr)
    for v in nodes:
        if v not in attr and game.owner(v) != player and remaining[v] == 0:
            attr.add(v)
            queue.append(v)
    while queue:
        w = queue.popleft()
        for v in game.graph.predecessors(w):
            if v not in nodes or v in attr:
                continue
            if game.owner(v) == player:
                attr.add(v)
                strategy[v] = w
                queue.append(v)
            else:
                remaining[v] -= 1
                if remaining[v] == 0:
                    attr.add(v)
                    queue.append(v)
    return attr, strategy


def _zielonka(game: ParityGame, nodes: Set) -> Tuple[List[Set], Strategy]:
    regions = [set(), set()]
    if not nodes:
        return regions, {}

    for player in Player:
        stuck = {v for v in nodes if game.owner(v) == player and not any(w in nodes for w in game.graph.successors(v))}
        if stuck:
            winner = player.opponent
            attr, strategy = attractor(game, nodes, stuck, winner)
            sub_regions, sub_strategy = _zielonka(game, nodes - attr)
            sub_regions[winner] |= attr
            sub_strategy.update(strategy)
            return sub_regions, sub_strategy

    top = max(game.priority(v) for v in nodes)
    sigma = Player.of_priority(top)
    target = {v for v in nodes if game.priority(v) == top}
    attr, attr_strategy = attractor(game, nodes, target, sigma)
    sub_regions, sub_strategy = _zielonka(game, nodes - attr)

    if not sub_regions[sigma.opponent]:
        strategy = dict(sub_strategy)
        strategy.update(attr_strategy)
        for v in target:
            if game.owner(v) == sigma:
                strategy[v] = next(w for w in game.graph.successors(v) if w in nodes)
        regions[sigma] = set(nodes)
        return regions, strategy

    lost = sub_regions[sigma.opponent]
    back, back_strategy = attractor(game, nodes, lost, sigma.opponent)
    rest_regions, strategy = _zielonka(game, nodes - back)
    strategy.update({v: w for v, w in sub_strategy.items() if v in lost})
    strategy.update(back_strategy)
    rest_regions[sigma.opponent] |= back
    return rest_regions, strategy


def solve(game: ParityGame) -> SolveResult:
    """Winning regions and positional winning strategies of both players (Zielonka's recursion)."""
    regions, strategy = _zielonka(game, set(game.positions))
    winning = {}
    strategies: Dict[Player, Strategy] = {Player.EXISTS: {}, Player.FORALL: {}}
    for player in Player:
        for v in regions[player]:
            winning[v] = player
            if v in strategy and game.owner(v) == player:
                strategies[player][v] = strategy[v]
    logger.debug('solved game with %d positions: %d won by Exists', len(game), len(regions[Player.EXISTS]))
    return SolveResult(winning, strategies)


def verify_strategy(game: ParityGame, player: Player, strategy: Mapping, region: Iterable) -> bool:
    """Check that `strategy` wins every play from `region` for `player`.

    The positions reachable under the strategy must never leave `region` on a
    move of `player`, never leave `player` stuck, and contain no cycle whose
    largest priority favours the opponent.
    """
    region = set(region)
    reach = nx.DiGraph()
    queue = deque(region)
    seen = set(region)
    while queue:
        v = queue.popleft()
        reach.add_node(v)
        if game.owner(v) == player:
            if v not in strategy:
                logger.info('strategy undefined at %r', v)
                return False
            nexts = [strategy[v]]
            if nexts[0] not in region:
                logger.info('strategy leaves the region at %r -> %r', v, nexts[0])
                return False
            if not game.graph.has_edge(v, nexts[0]):
                logger.info('strategy plays an illegal move %r -> %r', v, nexts[0])
                return False
        else:
            nexts = game.successors(v)
        for w in nexts:
            reach.add_edge(v, w)
            if w not in seen:
                seen.add(w)
                queue.append(w)

    bad = [p for p in {game.priority(v) for v in reach} if Player.of_priority(p) != player]
    for p in bad:
        sub = reach.subgraph([v for v in reach if game.priority(v) <= p])
        for component in nx.strongly_connected_components(sub):
            if not any(game.priority(v) == p for v in component):
                continue
            if len(component) > 1 or any(sub.has_edge(v, v) for v in component):
                logger.info('reachable cycle with priority %d wins for the opponent', p)
                return False
    return True


def _play_winner(game: ParityGame, start, choice: Mapping) -> Player:
    """Winner of the unique play from `start` when every position's move is fixed by `choice`."""
    order = {}
    path = []
    v = start
    while v not in order:
        order[v] = len(path)
        path.append(v)
        if v not in choice:
            return game.owner(v).opponent
        v = choice[v]
    cycle = path[order[v]:]
    return Player.of_priority(max(game.priority(u) for u in cycle))


def brute_force_regions(game: ParityGame) -> Dict[Hashable, Player]:
    """Winners by enumerating all pairs of positional strategies; for small games only."""
    mine = {p: [v for v in game if game.owner(v) == p and game.graph.out_degree(v) > 0] for p in Player}
    options = {p: [[(v, w) for w in game.successors(v)] for v in mine[p]] for p in Player}
    exists_choices = [dict(c) for c in itertools.product(*options[Player.EXISTS])]
    forall_choices = [dict(c) for c in itertools.product(*options[Player.FORALL])]
    out = {}
    for v in game:
        won = False
        for sigma in exists_choices:
            if all(_play_winner(game, v, {**sigma, **tau}) == Player.EXISTS for tau in forall_choices):
                won = True
                break
        out[v] = Player.EXISTS if won else Player.FORALL
    return out


def random_game(n: int, max_priority: int = 4, edge_prob: float = 0.35, seed: Optional[int] = None) -> ParityGame:
    rng = random.Random(seed)
    game = ParityGame()
    for v in range(n):
        game.add_position(v, Player(rng.randrange(2)), rng.randint(0, max_priority))
    for v in range(n):
        for w in range(n):
            if rng.random() < edge_prob:
                game.add_move(v, w)
    return game


def dumps(game: ParityGame) -> str:
    """One position per line: id, owner, priority, successors."""
    lines = []
    for v in sorted(game, key=repr):
        succ = ','.join(repr(w) for w in sorted(game.successors(v), key=repr))
        lines.append('{!r} {} {} [{}]'.format(v, game.owner(v).name, game.priority(v), succ))
    return '\n'.join(lines)
