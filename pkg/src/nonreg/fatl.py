"""Finite automata with translucent letters (FATL) and their jumping complexity (jc).

In state s a letter b is translucent when delta(s, b) is undefined.  Each step
reads the leftmost unread letter that is not translucent in the current state;
the step is a jump when unread letters precede it.  jc counts jumps, minimized
over accepting computations.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Union

from .common import (DEFAULT_ENUMERATION_CAP, Bounded, Counterexample, Profile,
                     Unknown, check_word, enumerated_profile, words_up_to)
from .oracle.nfa import EPS, Nfa


class FatlFormatError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Fatl:
    states: frozenset
    alphabet: frozenset
    delta: Mapping[tuple[str, str], frozenset] = field(repr=False)
    start: str
    finals: frozenset

    def __post_init__(self):
        if self.start not in self.states:
            raise ValueError(f"start state {self.start!r} not declared")
        for (q, a), targets in self.delta.items():
            if not targets:
                raise ValueError(f"empty transition set for ({q}, {a})")
            if a not in self.alphabet:
                raise ValueError(f"letter {a!r} not in alphabet")

    @classmethod
    def build(cls, start: str, finals: Iterable[str], edges: Iterable[tuple[str, str, str]],
              alphabet: Iterable[str] = ()) -> "Fatl":
        delta: dict[tuple[str, str], set] = {}
        states = {start} | set(finals)
        letters = set(alphabet)
        for q, a, p in edges:
            delta.setdefault((q, a), set()).add(p)
            states |= {q, p}
            letters.add(a)
        return cls(frozenset(states), frozenset(letters),
                   {k: frozenset(v) for k, v in delta.items()}, start, frozenset(finals))

    def translucent(self, state: str, letter: str) -> bool:
        return (state, letter) not in self.delta

    def is_deterministic(self) -> bool:
        return all(len(v) == 1 for v in self.delta.values())

    def edges(self):
        for (q, a), targets in sorted(self.delta.items()):
            for p in sorted(targets):
                yield q, a, p


def parse_fatl(text: str) -> Fatl:
    start = None
    finals: list[str] = []
    alphabet: list[str] = []
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, rest = line.partition(":")
        if sep and key.strip() in ("start", "final", "alphabet"):
            key = key.strip()
            if key == "start":
                start = rest.strip()
            elif key == "final":
                finals = rest.split()
            else:
                alphabet = rest.split()
            continue
        parts = line.split()
        if len(parts) != 3 or len(parts[1]) != 1:
            raise FatlFormatError(f"line {lineno}: expected 'q a p', got {line!r}")
        edges.append(tuple(parts))
    if start is None:
        raise FatlFormatError("FATL file needs a 'start:' line")
    return Fatl.build(start, finals, edges, alphabet)


def render_fatl(m: Fatl) -> str:
    lines = [f"start: {m.start}", "final: " + " ".join(sorted(m.finals))]
    if set(m.alphabet) - {a for (_, a) in m.delta}:
        lines.append("alphabet: " + " ".join(sorted(m.alphabet)))
    lines += [f"{q} {a} {p}" for q, a, p in m.edges()]
    return "\n".join(lines) + "\n"


# --- semantics ---------------------------------------------------------------


def _next_read(m: Fatl, q: str, w: str, unread: int) -> tuple[int, bool]:
    """Position of the letter read next from state q, and whether it is a jump.

    ``unread`` is a bitmask of unread positions.  Returns (-1, False) when every
    unread letter is translucent.
    """
    jumped = False
    i = 0
    mask = unread
    while mask:
        if mask & 1:
            if (q, w[i]) in m.delta:
                return i, jumped
            jumped = True
        mask >>= 1
        i += 1
    return -1, False


def jc_word(m: Fatl, w: str) -> Optional[int]:
    """Fewest jumps over accepting computations; None if w ∉ L(m).

    0-1 BFS over (state, set of unread positions).  Only the target state of a
    step is nondeterministic; the position read is forced.
    """
    check_word(w, m.alphabet)
    full = (1 << len(w)) - 1
    start = (m.start, full)
    dist = {start: 0}
    queue = deque([start])
    done = set()
    while queue:
        cfg = queue.popleft()
        if cfg in done:
            continue
        done.add(cfg)
        q, unread = cfg
        if not unread:
            if q in m.finals:
                return dist[cfg]
            continue
        i, jumped = _next_read(m, q, w, unread)
        if i < 0:
            continue
        rest = unread & ~(1 << i)
        for p in m.delta[(q, w[i])]:
            nxt = (p, rest)
            d = dist[cfg] + jumped
            if d < dist.get(nxt, d + 1):
                dist[nxt] = d
                (queue.append if jumped else queue.appendleft)(nxt)
    return None


def accepts(m: Fatl, w: str) -> bool:
    return jc_word(m, w) is not None


def jc_profile(m: Fatl, n_max: int, cap: int = DEFAULT_ENUMERATION_CAP) -> Profile:
    return enumerated_profile(lambda w: jc_word(m, w), m.alphabet, n_max, cap)


# --- bounded budget ----------------------------------------------------------


def build_bounded_nfa(m: Fatl, c: int) -> Nfa:
    """NFA for L(m, <= c), scanning the input left to right.

    A state is (q, pending, budget).  q follows the computation in time order.
    A jump is an epsilon move that reads a letter further right in advance and
    records it in ``pending`` (ordered by position) as (letter, state it was
    read in, gap flag).  Obligations checked during the scan:

    * a letter read later in time at an earlier position must be translucent in
      the state of every pending entry to its right;
    * a jump needs at least one unread letter before its position, so an entry
      keeps its gap flag until some head read happens;
    * scanning the position of the first pending entry discharges it.
    """
    if c < 0:
        raise ValueError("budget must be non-negative")
    start = (m.start, (), c)
    seen = {start}
    queue = deque([start])
    edges = []
    letters = sorted(m.alphabet)
    while queue:
        state = queue.popleft()
        q, pending, b = state
        succ = []
        for x in letters:
            if (q, x) in m.delta and all(m.translucent(s, x) for _, s, _ in pending):
                cleared = tuple((y, s, False) for y, s, _ in pending)
                for p in m.delta[(q, x)]:
                    succ.append((x, (p, cleared, b)))
        if pending and not pending[0][2]:
            succ.append((pending[0][0], (q, pending[1:], b)))
        if b > 0:
            for x in letters:
                if (q, x) not in m.delta:
                    continue
                for i in range(len(pending) + 1):
                    if not all(m.translucent(s, x) for _, s, _ in pending[i:]):
                        continue
                    new = pending[:i] + ((x, q, True),) + pending[i:]
                    for p in m.delta[(q, x)]:
                        succ.append((EPS, (p, new, b - 1)))
        for label, nxt in succ:
            edges.append((state, label, nxt))
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    accepting = [s for s in seen if not s[1] and s[0] in m.finals]
    return Nfa.build(m.alphabet, edges, [start], accepting, states=seen)


def zero_jump_language(m: Fatl) -> Nfa:
    """delta read as an ordinary NFA: the words accepted without any jump."""
    return Nfa.build(m.alphabet, list(m.edges()), [m.start], m.finals, states=m.states)


def requires_jump(m: Fatl, w: str) -> bool:
    """For deterministic m: w ∈ L(m) but its unique computation jumps."""
    if not m.is_deterministic():
        raise ValueError("requires_jump is defined for deterministic machines")
    return accepts(m, w) and not zero_jump_language(m).accepts(w)


def decide_jc_bounded(m: Fatl, c: int, search_bound: int,
                      max_words: int = 2_000_000) -> Union[Bounded, Counterexample, Unknown]:
    """Look for w ∈ L(m) with jc(w) > c among words of length <= search_bound.

    Words accepted by build_bounded_nfa(m, c) are skipped without a search.
    A machine with no translucent letter never jumps, which settles the
    question for every length.
    """
    if all((q, a) in m.delta for q in m.states for a in m.alphabet):
        return Bounded()
    bounded = build_bounded_nfa(m, c).determinize(sorted(m.alphabet))
    delta = {(p, x): next(iter(qs)) for (p, x), qs in bounded.transitions.items()}
    (d0,) = bounded.initial
    letters = sorted(m.alphabet)
    frontier = [("", d0)]
    checked = 0
    for _ in range(search_bound + 1):
        nxt = []
        for w, d in frontier:
            checked += 1
            if checked > max_words:
                return Unknown(f"word budget {max_words} exhausted at length {len(w)}")
            if d not in bounded.accepting and accepts(m, w):
                return Counterexample(w)
            nxt.extend((w + x, delta[(d, x)]) for x in letters)
        frontier = nxt
    return Bounded(search_bound)


# --- example machines --------------------------------------------------------


def build_paper_example() -> Fatl:
    return Fatl.build("q0", ["q3"], [
        ("q0", "b", "q1"),
        ("q1", "b", "q1"),
        ("q1", "c", "q2"),
        ("q2", "a", "q3"),
    ], alphabet="abc")


def paper_example_predicate(w: str) -> bool:
    """The language stated for the example: b^n a b^m c (n+m >= 1) or b^n c a (n >= 1)."""
    import re
    return bool(re.fullmatch(r"b*ab*c", w) and w.count("b") >= 1
                or re.fullmatch(r"b+ca", w))


def build_equal_ab() -> Fatl:
    """Two-state deterministic machine for {w : |w|_a = |w|_b}."""
    return Fatl.build("p", ["p"], [("p", "a", "q"), ("q", "b", "p")])
