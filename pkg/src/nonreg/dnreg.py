"""Degree of non-regularity: per-word minimum over derivations, profiles, and the
bounded-budget regular machinery built on quasi (Chomsky) normal form.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional, Union

from .common import (DEFAULT_ENUMERATION_CAP, Bounded, Profile, check_word,
                     enumerated_profile)
from .grammar import (Grammar, GrammarError, Rule, is_nonterminal, is_proper,
                      is_quasi_chomsky, is_quasi_normal_form, is_regular,
                      is_terminal, max_rhs_length, to_quasi_normal_form)
from .oracle.cfg import NonEmpty, cfg_emptiness, intersect_grammar_nfa
from .oracle.nfa import EPS, Nfa


@dataclass(frozen=True)
class Derivation:
    """A leftmost derivation: (rule index, position of the rewritten nonterminal) per step."""

    steps: tuple[tuple[int, int], ...]
    word: str

    def replay(self, g: Grammar) -> tuple[str, ...]:
        form: tuple[str, ...] = (g.start,)
        for rule_index, pos in self.steps:
            rule = g.rules[rule_index]
            if form[pos] != rule.lhs:
                raise ValueError(f"step rewrites {form[pos]!r} with {rule}")
            if any(is_nonterminal(s) for s in form[:pos]):
                raise ValueError("derivation is not leftmost")
            form = form[:pos] + rule.rhs + form[pos + 1:]
        return form

    def non_regular_steps(self, g: Grammar) -> int:
        return sum(not is_regular(g.rules[i]) for i, _ in self.steps)


@dataclass(frozen=True)
class Unbounded:
    witness: str


def _require_proper(g: Grammar) -> None:
    if not is_proper(g):
        raise GrammarError("grammar must be proper (no λ- or chain-rules); run make_proper first")


def best_derivation(g: Grammar, w: str) -> Optional[Derivation]:
    """A leftmost derivation of ``w`` using the fewest non-regular rules, or None.

    0-1 breadth-first search over states (matched prefix length, pending suffix of
    the sentential form), where the suffix always starts with a nonterminal.
    Proper grammars never shrink a sentential form, so forms longer than the
    unmatched part of ``w`` are pruned.
    """
    _require_proper(g)
    check_word(w, g.terminals)
    n = len(w)
    by_lhs: dict[str, list[tuple[int, Rule, int]]] = {}
    for i, r in enumerate(g.rules):
        by_lhs.setdefault(r.lhs, []).append((i, r, 0 if is_regular(r) else 1))

    start = (0, (g.start,))
    dist = {start: 0}
    parent: dict = {start: None}
    queue = deque([start])
    done = set()
    while queue:
        state = queue.popleft()
        if state in done:
            continue
        done.add(state)
        pos, form = state
        if not form:
            if pos == n:
                return _rebuild(parent, state, w)
            continue
        head, rest = form[0], form[1:]
        for index, rule, cost in by_lhs.get(head, ()):
            new = rule.rhs + rest
            p = pos
            k = 0
            while k < len(new) and is_terminal(new[k]):
                if p >= n or w[p] != new[k]:
                    break
                p += 1
                k += 1
            else:
                new = new[k:]
                if p + len(new) > n:
                    continue
                nxt = (p, new)
                d = dist[state] + cost
                if d < dist.get(nxt, d + 1):
                    dist[nxt] = d
                    parent[nxt] = (state, index, pos)
                    if cost:
                        queue.append(nxt)
                    else:
                        queue.appendleft(nxt)
                continue
    return None


def _rebuild(parent, state, w: str) -> Derivation:
    steps = []
    while parent[state] is not None:
        prev, index, pos = parent[state]
        steps.append((index, pos))
        state = prev
    return Derivation(tuple(reversed(steps)), w)


def dnreg_word(g: Grammar, w: str) -> Optional[int]:
    """Fewest non-regular rule applications in a derivation of ``w``; None if w ∉ L(g)."""
    d = best_derivation(g, w)
    return None if d is None else d.non_regular_steps(g)


def dnreg_profile(g: Grammar, n_max: int, cap: int = DEFAULT_ENUMERATION_CAP) -> Profile:
    _require_proper(g)
    return enumerated_profile(lambda w: dnreg_word(g, w), g.terminals, n_max, cap)


# --- bounded budget ----------------------------------------------------------


def _qnf_tables(g: Grammar):
    if not is_quasi_normal_form(g):
        raise GrammarError("grammar must be in quasi normal form")
    reads: dict[str, list[tuple[str, tuple[str, ...]]]] = {}
    expands: dict[str, list[tuple[str, ...]]] = {}
    for r in g.rules:
        if is_terminal(r.rhs[0]):
            reads.setdefault(r.lhs, []).append((r.rhs[0], r.rhs[1:]))
        else:
            expands.setdefault(r.lhs, []).append(r.rhs)
    return reads, expands


def build_bounded_nfa(g: Grammar, c: int) -> Nfa:
    """NFA for L(g, <= c) on a grammar in quasi normal form.

    States are (pending nonterminals, remaining budget).  Letters apply A -> a and
    A -> a B to the head; epsilon moves apply a non-regular A -> B1..Bk to the
    head and spend one unit of budget.  For quasi Chomsky normal form the pending
    sequence never exceeds c + 1 symbols.
    """
    if c < 0:
        raise ValueError("budget must be non-negative")
    reads, expands = _qnf_tables(g)
    max_depth = 1 + c * max(1, max_rhs_length(g) - 1)
    start = ((g.start,), c)
    seen = {start}
    queue = deque([start])
    edges = []
    while queue:
        state = queue.popleft()
        sigma, b = state
        if not sigma:
            continue
        head, rest = sigma[0], sigma[1:]
        succ = []
        for a, tail in reads.get(head, ()):
            succ.append((a, (tail + rest, b)))
        if b > 0:
            for body in expands.get(head, ()):
                new = body + rest
                if len(new) <= max_depth:
                    succ.append((EPS, (new, b - 1)))
        for label, nxt in succ:
            edges.append((state, label, nxt))
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    accepting = [s for s in seen if not s[0]]
    return Nfa.build(g.terminals, edges, [start], accepting, states=seen)


def state_bound(p: int, c: int) -> int:
    """Upper bound on the bounded NFA's states for a quasi-CNF grammar with p nonterminals."""
    stacks = c + 2 if p == 1 else (p ** (c + 2) - 1) // (p - 1)
    return stacks * (c + 1)


def decide_dnreg_bounded(g: Grammar, c: int) -> Union[Bounded, Unbounded]:
    """Exact decision of L(g) ⊆ L(g, <= c).

    The grammar is brought to quasi normal form (which keeps every word's dnreg),
    intersected with the complement of the bounded NFA, and tested for emptiness.
    The witness is the shortlex-least word of L(g) whose dnreg exceeds c.
    """
    _require_proper(g)
    qnf = to_quasi_normal_form(g)
    letters = qnf.terminals
    bounded = build_bounded_nfa(qnf, c)
    outside = bounded.determinize(letters).complement(letters)
    result = cfg_emptiness(intersect_grammar_nfa(qnf, outside))
    if isinstance(result, NonEmpty):
        return Unbounded(result.witness)
    return Bounded()


# --- on-the-fly recognizer ---------------------------------------------------


def recognizer_bound(n: int, d: int, p: int) -> int:
    """The asymptotic bound (n+1)(d+1)p^(d+1) on visited triples."""
    return (n + 1) * (d + 1) * p ** (d + 1)


def recognizer_space(n: int, d: int, p: int) -> int:
    """Exact count of (position, pending, budget) triples with at most d+1 pending symbols.

    Exceeds recognizer_bound only through the shorter pending sequences, which
    matters for tiny p (p = 1 in particular).
    """
    return (n + 1) * (d + 1) * sum(p ** i for i in range(d + 2))


def bounded_recognizer_run(g: Grammar, w: str, d: int) -> tuple[bool, int]:
    """Simulate the bounded NFA on ``w`` without building it.

    Returns (accepted, number of distinct (position, pending, budget) triples
    visited).  Pending sequences longer than the unread suffix are dropped since
    every nonterminal of a proper grammar yields at least one letter.
    """
    if not is_quasi_chomsky(g):
        raise GrammarError("bounded_recognizer needs a grammar in quasi Chomsky normal form")
    check_word(w, g.terminals)
    reads, expands = _qnf_tables(g)
    n = len(w)
    visited = 0
    current = {((g.start,), d)}
    for pos in range(n + 1):
        room = n - pos
        seen = set()
        stack = [s for s in current if len(s[0]) <= room]
        while stack:
            state = stack.pop()
            if state in seen:
                continue
            seen.add(state)
            sigma, b = state
            if b > 0 and sigma:
                for body in expands.get(sigma[0], ()):
                    new = (body + sigma[1:], b - 1)
                    if len(new[0]) <= room and new not in seen:
                        stack.append(new)
        visited += len(seen)
        if pos == n:
            accepted = any(not sigma for sigma, _ in seen)
            break
        a = w[pos]
        current = set()
        for sigma, b in seen:
            if not sigma:
                continue
            for letter, tail in reads.get(sigma[0], ()):
                if letter == a:
                    current.add((tail + sigma[1:], b))
        if not current:
            accepted = False
            break
    p = len(g.nonterminals)
    assert visited <= recognizer_space(n, d, p), (visited, recognizer_space(n, d, p))
    return accepted, visited


def bounded_recognizer(g: Grammar, w: str, d: int) -> bool:
    return bounded_recognizer_run(g, w, d)[0]
