"""Pushdown automata in empty-stack and final-state mode, with push complexity.

A move is a push when it writes at least two stack symbols, a pop when it
writes none and neutral otherwise.  The push complexity of a word is the fewest
push moves over its accepting computations.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Optional

from .common import DEFAULT_ENUMERATION_CAP, Profile, check_word, enumerated_profile

MAX_STACK_WORD = 8


class PdaFormatError(ValueError):
    pass


class Mode(Enum):
    EMPTY_STACK = "empty-stack"
    FINAL_STATE = "final-state"


class MoveKind(Enum):
    PUSH = "push"
    POP = "pop"
    NEUTRAL = "neutral"


def classify_move(stack_word: tuple) -> MoveKind:
    if len(stack_word) >= 2:
        return MoveKind.PUSH
    return MoveKind.NEUTRAL if stack_word else MoveKind.POP


@dataclass(frozen=True, eq=False)
class Pda:
    """Transitions map (state, letter or "", stack top) to a set of (state, stack word).

    Stack words are tuples with the new top first.
    """

    states: frozenset
    alphabet: frozenset
    stack_alphabet: frozenset
    transitions: Mapping[tuple, frozenset] = field(repr=False)
    start: str
    stack_start: str
    finals: frozenset
    mode: Mode

    def __post_init__(self):
        if self.stack_start not in self.stack_alphabet:
            raise ValueError("initial stack symbol missing from the stack alphabet")
        for (q, a, z), targets in self.transitions.items():
            if a and a not in self.alphabet:
                raise ValueError(f"letter {a!r} not in alphabet")
            for p, word in targets:
                if any(s not in self.stack_alphabet for s in word):
                    raise ValueError(f"stack word {word} leaves the stack alphabet")

    @classmethod
    def build(cls, start: str, stack_start: str, edges: Iterable[tuple], mode: Mode,
              finals: Iterable[str] = (), alphabet: Iterable[str] = ()) -> "Pda":
        """``edges`` holds (q, letter or "", top, p, stack word) tuples."""
        trans: dict[tuple, set] = {}
        states = {start} | set(finals)
        letters = set(alphabet)
        stack = {stack_start}
        for q, a, z, p, word in edges:
            word = tuple(word)
            trans.setdefault((q, a, z), set()).add((p, word))
            states |= {q, p}
            if a:
                letters.add(a)
            stack.add(z)
            stack.update(word)
        return cls(frozenset(states), frozenset(letters), frozenset(stack),
                   {k: frozenset(v) for k, v in trans.items()}, start, stack_start,
                   frozenset(finals), mode)

    def edges(self):
        for (q, a, z), targets in sorted(self.transitions.items()):
            for p, word in sorted(targets):
                yield q, a, z, p, word

    def max_push_length(self) -> int:
        return max((len(w) for *_, w in self.edges()), default=1)


def parse_pda(text: str) -> Pda:
    header: dict[str, str] = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "->" not in line:
            key, sep, rest = line.partition(":")
            if not sep or key.strip() not in ("mode", "start", "stack-start", "final", "alphabet"):
                raise PdaFormatError(f"line {lineno}: unrecognized line {line!r}")
            header[key.strip()] = rest.strip()
            continue
        lhs, rhs = line.split("->", 1)
        left, right = lhs.split(), rhs.split()
        if len(left) != 3 or not right:
            raise PdaFormatError(f"line {lineno}: expected 'q a Z -> p W', got {line!r}")
        q, a, z = left
        p, word = right[0], right[1:]
        if a == "_":
            a = ""
        elif len(a) != 1:
            raise PdaFormatError(f"line {lineno}: input letter {a!r} must be one character")
        if word == ["_"]:
            word = []
        if "_" in word:
            raise PdaFormatError(f"line {lineno}: '_' must stand alone for the empty stack word")
        if len(word) > MAX_STACK_WORD:
            raise PdaFormatError(f"line {lineno}: stack words are limited to {MAX_STACK_WORD} symbols")
        edges.append((q, a, z, p, tuple(word)))
    for key in ("mode", "start", "stack-start"):
        if key not in header:
            raise PdaFormatError(f"PDA file needs a '{key}:' line")
    try:
        mode = Mode(header["mode"])
    except ValueError:
        raise PdaFormatError(f"unknown mode {header['mode']!r}") from None
    return Pda.build(header["start"], header["stack-start"], edges, mode,
                     header.get("final", "").split(), header.get("alphabet", "").split())


def render_pda(p: Pda) -> str:
    lines = [f"mode: {p.mode.value}", f"start: {p.start}", f"stack-start: {p.stack_start}"]
    if p.finals:
        lines.append("final: " + " ".join(sorted(p.finals)))
    if set(p.alphabet) - {a for (_, a, _) in p.transitions}:
        lines.append("alphabet: " + " ".join(sorted(p.alphabet)))
    for q, a, z, r, word in p.edges():
        lines.append(f"{q} {a or '_'} {z} -> {r} {' '.join(word) or '_'}")
    return "\n".join(lines) + "\n"


# --- search ------------------------------------------------------------------


@dataclass(frozen=True)
class PushResult:
    pushes: Optional[int]
    exceeded: bool  # some computation was cut by the push cap


def default_push_cap(n: int) -> int:
    return 4 * n + 16


def _accepting(p: Pda, q: str, stack: tuple) -> bool:
    if p.mode is Mode.EMPTY_STACK:
        return not stack
    return q in p.finals


def push_search(p: Pda, w: str, cap: Optional[int] = None) -> PushResult:
    """0-1 BFS over (state, position, stack) with cost = push moves.

    With at most ``cap`` pushes the stack height is bounded, and zero-cost moves
    never grow the stack, so the search space is finite.  A rejection is exact
    unless ``exceeded`` is set.
    """
    check_word(w, p.alphabet)
    cap = default_push_cap(len(w)) if cap is None else cap
    n = len(w)
    start = (p.start, 0, (p.stack_start,))
    dist = {start: 0}
    queue = deque([start])
    done = set()
    exceeded = False
    while queue:
        cfg = queue.popleft()
        if cfg in done:
            continue
        done.add(cfg)
        q, pos, stack = cfg
        if pos == n and _accepting(p, q, stack):
            return PushResult(dist[cfg], exceeded)
        if not stack:
            continue
        top, rest = stack[0], stack[1:]
        moves = [("", 0)] + ([(w[pos], 1)] if pos < n else [])
        for letter, adv in moves:
            for r, word in p.transitions.get((q, letter, top), ()):
                push = len(word) >= 2
                d = dist[cfg] + push
                if d > cap:
                    exceeded = True
                    continue
                nxt = (r, pos + adv, word + rest)
                if d < dist.get(nxt, d + 1):
                    dist[nxt] = d
                    (queue.append if push else queue.appendleft)(nxt)
    return PushResult(None, exceeded)


def push_word(p: Pda, w: str, cap: Optional[int] = None) -> Optional[int]:
    return push_search(p, w, cap).pushes


def accepts(p: Pda, w: str) -> bool:
    return push_word(p, w) is not None


def push_profile(p: Pda, n_max: int, cap: int = DEFAULT_ENUMERATION_CAP) -> Profile:
    return enumerated_profile(lambda w: push_word(p, w), p.alphabet, n_max, cap)


# --- mode conversion ---------------------------------------------------------


def _fresh(taken: Iterable[str], base: str) -> str:
    taken = set(taken)
    name = base
    k = 0
    while name in taken:
        k += 1
        name = f"{base}{k}"
    return name


def convert_mode(p: Pda, to: Mode) -> Pda:
    """Equivalent machine accepting in mode ``to``.

    A fresh start state pushes the old initial symbol over a fresh bottom
    marker, so every conversion costs exactly one extra push per accepted word.
    Final state to empty stack drains the stack from every old final state;
    empty stack to final state moves to a fresh final state once the marker is
    exposed.  Conversions within one mode only add the marker.
    """
    start = _fresh(p.states, "s0")
    bottom = _fresh(p.stack_alphabet, "X0")
    edges = list(p.edges())
    edges.append((start, "", bottom, p.start, (p.stack_start, bottom)))
    finals: list[str] = []
    symbols = sorted(p.stack_alphabet | {bottom})
    if p.mode is Mode.FINAL_STATE and to is Mode.EMPTY_STACK:
        drain = _fresh(p.states | {start}, "drain")
        for f in sorted(p.finals):
            for z in symbols:
                edges.append((f, "", z, drain, ()))
        for z in symbols:
            edges.append((drain, "", z, drain, ()))
    elif p.mode is Mode.EMPTY_STACK and to is Mode.FINAL_STATE:
        final = _fresh(p.states | {start}, "acc")
        for q in sorted(p.states):
            edges.append((q, "", bottom, final, (bottom,)))
        finals = [final]
    elif to is Mode.EMPTY_STACK:
        for q in sorted(p.states):
            edges.append((q, "", bottom, q, ()))
    else:
        finals = sorted(p.finals)
    return Pda.build(start, bottom, edges, to, finals, p.alphabet)


# --- example machines --------------------------------------------------------


def build_anbn_pda() -> Pda:
    """{a^n b^n | n >= 1} by empty stack, one push per a."""
    return Pda.build("q", "Z", [
        ("q", "a", "Z", "q", ("A", "Z")),
        ("q", "a", "A", "q", ("A", "A")),
        ("q", "b", "A", "p", ()),
        ("p", "b", "A", "p", ()),
        ("p", "", "Z", "p", ()),
    ], Mode.EMPTY_STACK)
