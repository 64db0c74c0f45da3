"""Reference implementations: exhaustive language slices and unoptimized minimum measures.

Everything here follows the definitions literally and trades speed for
obviousness; the optimized searches in the device modules are tested against it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Optional

from ..common import (EnumerationBudgetExceeded, check_word, render_word,
                      parse_word, shortlex_key, words_up_to)
from ..efa import Efa
from ..fatl import Fatl
from ..grammar import (EmptyLanguageError, Grammar, GrammarError, is_proper,
                       is_regular, is_terminal, make_proper, reduce)
from ..pda import Mode, Pda, default_push_cap
from .nfa import Nfa


@dataclass(frozen=True)
class LanguageSlice:
    max_len: int
    words: frozenset

    def sorted(self) -> list[str]:
        return sorted(self.words, key=shortlex_key)

    def to_text(self) -> str:
        return "".join(render_word(w) + "\n" for w in self.sorted())

    @classmethod
    def from_text(cls, text: str, max_len: int) -> "LanguageSlice":
        return cls(max_len, frozenset(parse_word(t) for t in text.split()))


def _alphabet(device) -> frozenset:
    if isinstance(device, Grammar):
        return device.terminals
    return device.alphabet


def enumerate(device, max_len: int, alphabet: Optional[Iterable[str]] = None,
              cap: int = 5_000_000) -> LanguageSlice:
    """Every word of length <= max_len in the language of ``device``.

    ``device`` may be a Grammar, Pda, Efa, Fatl, Nfa or a predicate on words (the
    latter needs ``alphabet``).  EFAs are checked only on the words of their
    underlying automaton, which contains their language.
    """
    if isinstance(device, Nfa):
        return LanguageSlice(max_len, device.slice(max_len))
    if isinstance(device, Grammar) and not is_proper(device):
        # making a grammar proper keeps its (epsilon-free) language
        try:
            device = make_proper(reduce(device))
        except EmptyLanguageError:
            return LanguageSlice(max_len, frozenset())
    if isinstance(device, Efa):
        candidates: Iterable[str] = device.underlying_nfa().slice(max_len)
    else:
        letters = sorted(_alphabet(device) if alphabet is None else alphabet)
        total = sum(len(letters) ** n for n in range(max_len + 1))
        if total > cap:
            raise EnumerationBudgetExceeded(f"{total} words exceed the cap {cap}")
        candidates = words_up_to(letters, max_len)
    member = _membership(device)
    return LanguageSlice(max_len, frozenset(w for w in candidates if member(w)))


def _membership(device) -> Callable[[str], bool]:
    if isinstance(device, (Grammar, Pda, Efa, Fatl)):
        return lambda w: brute_min_measure(device, w) is not None
    if callable(device):
        return device
    raise TypeError(f"cannot enumerate {type(device).__name__}")


def brute_min_measure(device, w: str) -> Optional[int]:
    """Minimum measure of ``w`` over all derivations or computations; None if rejected."""
    if isinstance(device, Grammar):
        return brute_dnreg(device, w)
    if isinstance(device, Pda):
        return brute_push(device, w)
    if isinstance(device, Efa):
        return brute_gmc(device, w)
    if isinstance(device, Fatl):
        return brute_jc(device, w)
    raise TypeError(f"no measure for {type(device).__name__}")


# --- grammars ----------------------------------------------------------------


def brute_dnreg(g: Grammar, w: str) -> Optional[int]:
    """Minimum non-regular count over all leftmost derivations of w.

    For a proper grammar a derivation of w has at most 2|w| - 1 steps and no
    sentential form longer than |w|; both bounds cap the recursion.
    """
    if not is_proper(g):
        raise GrammarError("brute_dnreg needs a proper grammar")
    check_word(w, g.terminals)
    n = len(w)
    max_steps = max(2 * n - 1, 0)

    @lru_cache(maxsize=None)
    def best(pos: int, form: tuple, steps: int) -> Optional[int]:
        # skip the terminal prefix of the form against the input
        k = 0
        while k < len(form) and is_terminal(form[k]):
            if pos + k >= n or w[pos + k] != form[k]:
                return None
            k += 1
        pos, form = pos + k, form[k:]
        if not form:
            return 0 if pos == n else None
        if steps == max_steps or pos + len(form) > n:
            return None
        out = None
        for _, rule in g.rules_for(form[0]):
            sub = best(pos, rule.rhs + form[1:], steps + 1)
            if sub is not None:
                total = sub + (0 if is_regular(rule) else 1)
                out = total if out is None else min(out, total)
        return out

    return best(0, (g.start,), 0)


# --- pushdown automata -------------------------------------------------------


def brute_push(p: Pda, w: str, cap: Optional[int] = None) -> Optional[int]:
    """Minimum pushes over all accepting computations.

    Builds the whole configuration graph under the stack-height bound implied
    by the push cap, then relaxes costs Bellman-Ford style until stable.
    """
    check_word(w, p.alphabet)
    cap = default_push_cap(len(w)) if cap is None else cap
    height = 1 + cap * max(1, p.max_push_length() - 1)
    n = len(w)
    start = (p.start, 0, (p.stack_start,))
    graph: dict = {}
    todo = [start]
    while todo:
        cfg = todo.pop()
        if cfg in graph:
            continue
        q, pos, stack = cfg
        out = []
        if stack:
            for letter, adv in [("", 0)] + ([(w[pos], 1)] if pos < n else []):
                for r, word in p.transitions.get((q, letter, stack[0]), ()):
                    new = word + stack[1:]
                    if len(new) <= height:
                        out.append(((r, pos + adv, new), 1 if len(word) >= 2 else 0))
        graph[cfg] = out
        todo.extend(c for c, _ in out if c not in graph)

    def final(cfg) -> bool:
        q, pos, stack = cfg
        if pos != n:
            return False
        return not stack if p.mode is Mode.EMPTY_STACK else q in p.finals

    INF = float("inf")
    cost = {c: (0 if final(c) else INF) for c in graph}
    changed = True
    while changed:
        changed = False
        for c, out in graph.items():
            for d, wgt in out:
                if cost[d] + wgt < cost[c]:
                    cost[c] = cost[d] + wgt
                    changed = True
    return None if cost[start] == INF else int(cost[start])


# --- EFA ---------------------------------------------------------------------


def efa_computations(a: Efa, w: str):
    """Yield the register sequence m_0 .. m_|w| of every accepting computation."""
    check_word(w, a.alphabet)
    spec = a.group
    one = spec.identity_value()

    def walk(q, i, regs):
        if i == len(w):
            if q in a.finals and regs[-1] == one:
                yield regs
            return
        for p, el in a.transitions.get((q, w[i]), ()):
            yield from walk(p, i + 1, regs + (spec.mul_values(regs[-1], el.value),))

    yield from walk(a.start, 0, (one,))


def brute_gmc(a: Efa, w: str) -> Optional[int]:
    """Minimum over accepting computations of the non-identity count of m_i^-1 m_(i+1)."""
    spec = a.group
    one = spec.identity_value()
    best = None
    for regs in efa_computations(a, w):
        used = sum(spec.mul_values(spec.inv_value(x), y) != one for x, y in zip(regs, regs[1:]))
        best = used if best is None else min(best, used)
    return best


# --- FATL --------------------------------------------------------------------


def fatl_computations(m: Fatl, w: str):
    """Yield the jump count of every accepting computation.

    Each step tries every decomposition x a y of the remaining word with x
    wholly translucent in the current state.
    """
    check_word(w, m.alphabet)

    def walk(s, rest, jumps):
        if not rest:
            if s in m.finals:
                yield jumps
            return
        for i in range(len(rest)):
            if any(not m.translucent(s, x) for x in rest[:i]):
                break
            for p in m.delta.get((s, rest[i]), ()):
                yield from walk(p, rest[:i] + rest[i + 1:], jumps + (i > 0))

    yield from walk(m.start, w, 0)


def brute_jc(m: Fatl, w: str) -> Optional[int]:
    """Minimum jumps over every decomposition sequence, memoized on (state, rest)."""
    check_word(w, m.alphabet)

    @lru_cache(maxsize=None)
    def best(s: str, rest: str) -> Optional[int]:
        if not rest:
            return 0 if s in m.finals else None
        out = None
        for i in range(len(rest)):
            if i and not m.translucent(s, rest[i - 1]):
                break
            for p in m.delta.get((s, rest[i]), ()):
                sub = best(p, rest[:i] + rest[i + 1:])
                if sub is not None:
                    total = sub + (i > 0)
                    out = total if out is None else min(out, total)
        return out

    return best(m.start, w)


def count_computations(m: Fatl, w: str) -> int:
    return sum(1 for _ in fatl_computations(m, w))
