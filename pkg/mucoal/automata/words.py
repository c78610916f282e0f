"""Word automata over streams of relations: bad traces and their deterministic complement.

A stream R₀R₁… of binary relations over automaton states carries a trace
a₀a₁… when every Rᵢ relates aᵢ to aᵢ₊₁. A trace is bad when the largest
priority it visits infinitely often is odd. The no-bad-trace streams are
recognized by determinizing the bad-trace automaton with compact Safra trees
and flipping the parity of the result.
"""
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Hashable, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

import networkx as nx

from ..config import Caps, default_caps
from ..errors import ResourceError
from ..syntax import var_key

logger = logging.getLogger(__name__)

Letter = FrozenSet[Tuple[Hashable, Hashable]]


class ParityWordAutomaton:
    """Nondeterministic trace guesser: reads R and moves a → b when (a, b) ∈ R.

    A run is accepting when the largest priority seen infinitely often is odd.
    """

    def __init__(self, states: Sequence[Hashable], priority: Mapping[Hashable, int], initial: Hashable):
        self.states = list(states)
        self.priority = dict(priority)
        self.initial = initial

    def step(self, state: Hashable, letter: Letter) -> Set:
        return {b for a, b in letter if a == state}

    def to_buchi(self) -> 'BuchiAutomaton':
        """Guess the odd bound k of the trace and a point after which nothing exceeds it."""
        odd = sorted({p for p in self.priority.values() if p % 2 == 1})
        states = [('free', a) for a in self.states]
        states += [('odd', a, k) for k in odd for a in self.states if self.priority[a] <= k]
        accepting = {q for q in states if q[0] == 'odd' and self.priority[q[1]] == q[2]}
        initial = {q for q in states if q[1] == self.initial}
        return BuchiAutomaton(states, initial, accepting, self)


def bad_trace_nba(states: Sequence[Hashable], priority: Mapping[Hashable, int], initial: Hashable) -> ParityWordAutomaton:
    return ParityWordAutomaton(states, priority, initial)


class BuchiAutomaton:

    def __init__(self, states: Sequence[Tuple], initial: Iterable[Tuple], accepting: Iterable[Tuple],
                 traces: ParityWordAutomaton):
        self.states = list(states)
        self.initial = frozenset(initial)
        self.accepting = frozenset(accepting)
        self.traces = traces

    def __len__(self):
        return len(self.states)

    def step(self, state: Tuple, letter: Letter) -> Set:
        prio = self.traces.priority
        out = set()
        for b in self.traces.step(state[1], letter):
            if state[0] == 'free':
                out.add(('free', b))
                out.update(q for q in self.states if q[0] == 'odd' and q[1] == b)
            elif prio[b] <= state[2]:
                out.add(('odd', b, state[2]))
        return out

    def post(self, label: Iterable[Tuple], letter: Letter) -> FrozenSet:
        out = set()
        for q in label:
            out |= self.step(q, letter)
        return frozenset(out)


@dataclass(frozen=True)
class SafraNode:
    name: int
    parent: int
    label: FrozenSet


@dataclass(frozen=True)
class SafraTree:
    """A compact Safra tree: node names are exactly 1..size, siblings ordered by name (oldest first)."""
    nodes: Tuple[SafraNode, ...]

    @classmethod
    def new(cls, label: Iterable) -> 'SafraTree':
        label = frozenset(label)
        return cls((SafraNode(1, 0, label), ) if label else ())

    def __len__(self):
        return len(self.nodes)

    def __str__(self):
        return ' '.join('{}<{}:{}'.format(n.name, n.parent, sorted(n.label, key=var_key)) for n in self.nodes)

    def step(self, nba: BuchiAutomaton, letter: Letter) -> Tuple['SafraTree', int]:
        """Successor tree and the min-parity priority of the transition.

        Odd priority 2e−1 when e is the least name of a removed older node and
        no smaller name was marked; even 2f when f is the least marked name;
        2n+1 when nothing happened, n being the number of Büchi states.
        """
        n = len(nba)
        parent = {v.name: v.parent for v in self.nodes}
        labels = {v.name: set(v.label) for v in self.nodes}
        old = set(labels)
        fresh = n + 1
        for v in sorted(old):
            accepting = labels[v] & nba.accepting
            if accepting:
                parent[fresh] = v
                labels[fresh] = set(accepting)
                fresh += 1
        for v in labels:
            labels[v] = set(nba.post(labels[v], letter))

        children: Dict[int, List[int]] = {}
        for v in sorted(labels):
            children.setdefault(parent[v], []).append(v)

        def merge(v: int, allowed: Set):
            labels[v] &= allowed
            used = set()
            for c in children.get(v, []):
                merge(c, labels[v] - used)
                used |= labels[c]

        if 1 in labels:
            merge(1, set(labels[1]))

        removed = set()
        marked = set()

        def prune(v: int):
            removed.add(v)
            for c in children.get(v, []):
                prune(c)

        def sweep(v: int):
            if not labels[v]:
                prune(v)
                return
            kids = [c for c in children.get(v, []) if labels[c]]
            for c in children.get(v, []):
                if not labels[c]:
                    prune(c)
            if kids and set().union(*(labels[c] for c in kids)) == labels[v]:
                for c in kids:
                    prune(c)
                marked.add(v)
                return
            for c in kids:
                sweep(c)

        if 1 in labels:
            sweep(1)

        kept = sorted(v for v in labels if v not in removed)
        rank = {v: i + 1 for i, v in enumerate(kept)}
        rank[0] = 0
        tree = SafraTree(tuple(SafraNode(rank[v], rank[parent[v]], frozenset(labels[v])) for v in kept))

        e = min((v for v in removed if v in old), default=None)
        f = min(marked, default=None)
        if e is not None and (f is None or e < f):
            priority = 2 * e - 1
        elif f is not None:
            priority = 2 * f
        else:
            priority = 2 * n + 1
        return tree, priority


class StreamParityAutomaton:
    """Deterministic automaton for streams without bad traces, built lazily.

    States pair a Safra tree with the priority of the step that reached it;
    state priorities follow the max-parity convention, even meaning accept.
    """

    def __init__(self, traces: ParityWordAutomaton, caps: Optional[Caps] = None):
        self.caps = caps or default_caps
        self.traces = traces
        self.nba = traces.to_buchi()
        self.top = 2 * len(self.nba) + 2
        self._states: List[Tuple[SafraTree, Optional[int]]] = []
        self._index: Dict[Tuple[SafraTree, Optional[int]], int] = {}
        self._delta: Dict[Tuple[int, Letter], int] = {}
        self.initial = self._intern((SafraTree.new(self.nba.initial), None))

    def __len__(self):
        return len(self._states)

    def _intern(self, key) -> int:
        if key not in self._index:
            if len(self._states) >= self.caps.dpa_states:
                raise ResourceError('dpa_states', self.caps.dpa_states, 'determinizing the no-bad-trace automaton')
            self._index[key] = len(self._states)
            self._states.append(key)
        return self._index[key]

    def tree(self, z: int) -> SafraTree:
        return self._states[z][0]

    def priority(self, z: int) -> int:
        step = self._states[z][1]
        if step is None:
            return 0
        return self.top - (step + 1)

    def step(self, z: int, letter: Iterable) -> int:
        letter = frozenset(letter)
        key = (z, letter)
        if key not in self._delta:
            tree, prio = self.tree(z).step(self.nba, letter)
            self._delta[key] = self._intern((tree, prio))
        return self._delta[key]

    def run(self, word: Iterable[Iterable], start: Optional[int] = None) -> List[int]:
        z = self.initial if start is None else start
        out = []
        for letter in word:
            z = self.step(z, letter)
            out.append(z)
        return out

    def accepts_lasso(self, prefix: Sequence[Iterable], loop: Sequence[Iterable]) -> bool:
        """Verdict on prefix · loop^ω."""
        if not loop:
            raise ValueError('the loop of a lasso must be non-empty')
        z = self.run(prefix)[-1] if prefix else self.initial
        starts = {}
        visits: List[List[int]] = []
        while z not in starts:
            starts[z] = len(visits)
            visited = self.run(loop, z)
            visits.append(visited)
            z = visited[-1]
        cycle = [q for block in visits[starts[z]:] for q in block]
        return max(self.priority(q) for q in cycle) % 2 == 0


def determinize_nbt(states: Sequence[Hashable], priority: Mapping[Hashable, int], initial: Hashable,
                    caps: Optional[Caps] = None) -> StreamParityAutomaton:
    return StreamParityAutomaton(bad_trace_nba(states, priority, initial), caps)


def has_bad_trace(priority: Mapping[Hashable, int], initial: Hashable, prefix: Sequence[Iterable],
                  loop: Sequence[Iterable]) -> bool:
    """Lasso oracle: search the trace graph of prefix · loop^ω for a cycle with odd maximum."""
    word = [frozenset(r) for r in prefix] + [frozenset(r) for r in loop]
    back = len(prefix)
    graph = nx.DiGraph()
    start = (0, initial)
    graph.add_node(start)
    stack = [start]
    while stack:
        i, a = stack.pop()
        j = i + 1 if i + 1 < len(word) else back
        for x, b in word[i]:
            if x != a:
                continue
            target = (j, b)
            if target not in graph:
                graph.add_node(target)
                stack.append(target)
            graph.add_edge((i, a), target)
    for k in sorted({p for p in priority.values() if p % 2 == 1}):
        sub = graph.subgraph([v for v in graph if priority[v[1]] <= k])
        for component in nx.strongly_connected_components(sub):
            if not any(priority[v[1]] == k for v in component):
                continue
            if len(component) > 1 or any(sub.has_edge(v, v) for v in component):
                return True
    return False
