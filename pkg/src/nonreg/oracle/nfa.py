"""Nondeterministic finite automata: the target of every bounded-budget construction.

States may be any hashable values.  Epsilon moves use the empty string as label.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Optional

EPS = ""

State = Hashable


@dataclass(frozen=True, eq=False)
class Nfa:
    states: frozenset
    alphabet: frozenset[str]
    transitions: Mapping[tuple[State, str], frozenset] = field(repr=False)
    initial: frozenset
    accepting: frozenset

    @classmethod
    def build(cls, alphabet: Iterable[str], edges: Iterable[tuple[State, str, State]],
              initial: Iterable[State], accepting: Iterable[State],
              states: Iterable[State] = ()) -> "Nfa":
        trans: dict[tuple[State, str], set] = {}
        sts = set(states) | set(initial) | set(accepting)
        for p, a, q in edges:
            trans.setdefault((p, a), set()).add(q)
            sts.add(p)
            sts.add(q)
        return cls(
            frozenset(sts),
            frozenset(alphabet),
            {k: frozenset(v) for k, v in trans.items()},
            frozenset(initial),
            frozenset(accepting),
        )

    def edges(self):
        for (p, a), qs in self.transitions.items():
            for q in qs:
                yield p, a, q

    def has_epsilon(self) -> bool:
        return any(a == EPS for (_, a) in self.transitions)

    def closure(self, states: Iterable[State]) -> frozenset:
        seen = set(states)
        stack = list(seen)
        while stack:
            p = stack.pop()
            for q in self.transitions.get((p, EPS), ()):
                if q not in seen:
                    seen.add(q)
                    stack.append(q)
        return frozenset(seen)

    def step(self, states: Iterable[State], letter: str) -> frozenset:
        out = set()
        for p in states:
            out |= self.transitions.get((p, letter), frozenset())
        return self.closure(out)

    def accepts(self, word: str) -> bool:
        cur = self.closure(self.initial)
        for a in word:
            cur = self.step(cur, a)
            if not cur:
                return False
        return bool(cur & self.accepting)

    def is_deterministic(self) -> bool:
        if len(self.initial) != 1 or self.has_epsilon():
            return False
        return all(len(qs) <= 1 for qs in self.transitions.values())

    def is_complete(self) -> bool:
        return all(
            self.transitions.get((p, a)) for p in self.states for a in self.alphabet
        )

    def determinize(self, alphabet: Optional[Iterable[str]] = None) -> "Nfa":
        """Subset construction; states are renumbered 0..k-1 in discovery order, 0 initial."""
        letters = sorted(self.alphabet if alphabet is None else alphabet)
        start = self.closure(self.initial)
        index = {start: 0}
        queue = deque([start])
        edges = []
        while queue:
            cur = queue.popleft()
            for a in letters:
                nxt = self.step(cur, a)
                if nxt not in index:
                    index[nxt] = len(index)
                    queue.append(nxt)
                edges.append((index[cur], a, index[nxt]))
        accepting = [i for s, i in index.items() if s & self.accepting]
        return Nfa.build(letters, edges, [0], accepting, states=index.values())

    def complement(self, alphabet: Optional[Iterable[str]] = None) -> "Nfa":
        """Complement of a deterministic machine (completed over ``alphabet`` first)."""
        if not self.is_deterministic():
            raise ValueError("complement needs a deterministic automaton; determinize first")
        letters = frozenset(self.alphabet if alphabet is None else alphabet) | self.alphabet
        dfa = self.complete(letters)
        return Nfa(dfa.states, dfa.alphabet, dfa.transitions, dfa.initial,
                   dfa.states - dfa.accepting)

    def complete(self, alphabet: Optional[Iterable[str]] = None) -> "Nfa":
        letters = frozenset(self.alphabet if alphabet is None else alphabet) | self.alphabet
        sink = ("sink",)
        while sink in self.states:
            sink = sink + ("sink",)
        trans = dict(self.transitions)
        used_sink = False
        for p in self.states:
            for a in letters:
                if not trans.get((p, a)):
                    trans[(p, a)] = frozenset([sink])
                    used_sink = True
        states = set(self.states)
        if used_sink:
            states.add(sink)
            for a in letters:
                trans[(sink, a)] = frozenset([sink])
        return Nfa(frozenset(states), letters, trans, self.initial, self.accepting)

    def remove_epsilon(self) -> "Nfa":
        if not self.has_epsilon():
            return self
        edges = []
        accepting = set()
        for p in self.states:
            cl = self.closure([p])
            if cl & self.accepting:
                accepting.add(p)
            for a in self.alphabet:
                for q in cl:
                    for r in self.transitions.get((q, a), ()):
                        edges.append((p, a, r))
        return Nfa.build(self.alphabet, edges, self.initial, accepting, states=self.states)

    def trim(self) -> "Nfa":
        """Keep only states both reachable from an initial state and co-reachable to acceptance."""
        fwd = self._reach(self.initial, forward=True)
        bwd = self._reach(self.accepting, forward=False)
        keep = fwd & bwd
        edges = [(p, a, q) for p, a, q in self.edges() if p in keep and q in keep]
        return Nfa.build(self.alphabet, edges, self.initial & keep, self.accepting & keep,
                         states=keep)

    def _reach(self, seeds: Iterable[State], forward: bool) -> frozenset:
        adj: dict[State, set] = {}
        for p, _, q in self.edges():
            if forward:
                adj.setdefault(p, set()).add(q)
            else:
                adj.setdefault(q, set()).add(p)
        seen = set(seeds)
        stack = list(seen)
        while stack:
            p = stack.pop()
            for q in adj.get(p, ()):
                if q not in seen:
                    seen.add(q)
                    stack.append(q)
        return frozenset(seen)

    def is_empty(self) -> bool:
        return not (self._reach(self.initial, forward=True) & self.accepting)

    def slice(self, max_len: int) -> frozenset[str]:
        """Every accepted word of length <= max_len, generated by pruned subset search."""
        trimmed = self.trim()
        if not trimmed.initial:
            return frozenset()
        dist = _distance_to_accept(trimmed)
        letters = sorted(self.alphabet)
        out = set()

        def walk(cur: frozenset, word: str):
            if cur & trimmed.accepting:
                out.add(word)
            room = max_len - len(word)
            if room == 0:
                return
            for a in letters:
                nxt = trimmed.step(cur, a)
                if nxt and min(dist[q] for q in nxt) <= room - 1:
                    walk(nxt, word + a)

        walk(trimmed.closure(trimmed.initial), "")
        return frozenset(out)


def _distance_to_accept(n: Nfa) -> dict:
    """Fewest letters needed to reach acceptance from each state."""
    rev: dict = {}
    for p, a, q in n.edges():
        rev.setdefault(q, []).append((p, 0 if a == EPS else 1))
    dist = {q: 0 for q in n.accepting}
    queue = deque(n.accepting)
    # 0-1 BFS over reversed edges
    while queue:
        q = queue.popleft()
        for p, w in rev.get(q, ()):
            d = dist[q] + w
            if d < dist.get(p, float("inf")):
                dist[p] = d
                if w == 0:
                    queue.appendleft(p)
                else:
                    queue.append(p)
    return dist


def product_intersect(n1: Nfa, n2: Nfa) -> Nfa:
    a1 = n1.remove_epsilon()
    a2 = n2.remove_epsilon()
    letters = a1.alphabet & a2.alphabet
    start = [(p, q) for p in a1.initial for q in a2.initial]
    seen = set(start)
    queue = deque(start)
    edges = []
    while queue:
        p, q = queue.popleft()
        for a in letters:
            for p2 in a1.transitions.get((p, a), ()):
                for q2 in a2.transitions.get((q, a), ()):
                    edges.append(((p, q), a, (p2, q2)))
                    if (p2, q2) not in seen:
                        seen.add((p2, q2))
                        queue.append((p2, q2))
    accepting = [s for s in seen if s[0] in a1.accepting and s[1] in a2.accepting]
    return Nfa.build(a1.alphabet | a2.alphabet, edges, start, accepting, states=seen)


def union(n1: Nfa, n2: Nfa) -> Nfa:
    edges = [((0, p), a, (0, q)) for p, a, q in n1.edges()]
    edges += [((1, p), a, (1, q)) for p, a, q in n2.edges()]
    states = [(0, p) for p in n1.states] + [(1, p) for p in n2.states]
    return Nfa.build(
        n1.alphabet | n2.alphabet,
        edges,
        [(0, p) for p in n1.initial] + [(1, p) for p in n2.initial],
        [(0, p) for p in n1.accepting] + [(1, p) for p in n2.accepting],
        states=states,
    )


def determinize(n: Nfa, alphabet: Optional[Iterable[str]] = None) -> Nfa:
    return n.determinize(alphabet)


def complement(n: Nfa, alphabet: Optional[Iterable[str]] = None) -> Nfa:
    if not n.is_deterministic():
        n = n.determinize(alphabet)
    return n.complement(alphabet)


def emptiness(n: Nfa) -> bool:
    return n.is_empty()


def equivalent_up_to(n1: Nfa, n2: Nfa, max_len: int) -> bool:
    return n1.slice(max_len) == n2.slice(max_len)


def included(n1: Nfa, n2: Nfa) -> bool:
    """Exact inclusion L(n1) ⊆ L(n2) via emptiness of n1 ∩ complement(n2)."""
    letters = n1.alphabet | n2.alphabet
    return product_intersect(n1, complement(n2.determinize(letters), letters)).is_empty()


def equivalent(n1: Nfa, n2: Nfa) -> bool:
    return included(n1, n2) and included(n2, n1)


def universal(alphabet: Iterable[str]) -> Nfa:
    letters = list(alphabet)
    return Nfa.build(letters, [(0, a, 0) for a in letters], [0], [0], states=[0])
