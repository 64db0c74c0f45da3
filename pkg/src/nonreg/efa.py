"""Extended finite automata over groups and their group-memory complexity (gmc).

A computation multiplies the register by the group element of each transition
taken; a word is accepted when some computation ends in a final state with the
register back at the identity.  gmc counts the steps whose element is not the
identity, minimized over accepting computations.
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Union

from .common import (DEFAULT_ENUMERATION_CAP, Bounded, Counterexample,
                     EnumerationBudgetExceeded, Profile, Unknown, check_word,
                     enumerated_profile)
from .groups import (Free, GroupElement, GroupError, Product, Zk, ZMod,
                     parse_element, parse_spec)
from .oracle.nfa import Nfa


class EfaFormatError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Efa:
    states: frozenset
    alphabet: frozenset
    group: object
    transitions: Mapping[tuple[str, str], frozenset] = field(repr=False)
    start: str
    finals: frozenset

    def __post_init__(self):
        if self.start not in self.states:
            raise ValueError(f"start state {self.start!r} not declared")
        for (q, a), targets in self.transitions.items():
            if a not in self.alphabet:
                raise ValueError(f"letter {a!r} not in alphabet")
            for p, el in targets:
                if el.spec != self.group:
                    raise GroupError(f"transition {q} {a} {p} uses {el.spec}, expected {self.group}")

    @classmethod
    def build(cls, group, start: str, finals: Iterable[str],
              edges: Iterable[tuple[str, str, str, GroupElement]],
              alphabet: Iterable[str] = ()) -> "Efa":
        trans: dict[tuple[str, str], set] = {}
        states = {start} | set(finals)
        letters = set(alphabet)
        for q, a, p, el in edges:
            trans.setdefault((q, a), set()).add((p, el))
            states |= {q, p}
            letters.add(a)
        return cls(frozenset(states), frozenset(letters), group,
                   {k: frozenset(v) for k, v in trans.items()}, start, frozenset(finals))

    def edges(self):
        for (q, a), targets in sorted(self.transitions.items()):
            for p, el in sorted(targets, key=lambda t: (t[0], repr(t[1].value))):
                yield q, a, p, el

    def labels(self) -> set:
        return {el.value for targets in self.transitions.values() for _, el in targets}

    def underlying_nfa(self) -> Nfa:
        """The finite automaton obtained by ignoring the register."""
        return Nfa.build(self.alphabet, [(q, a, p) for q, a, p, _ in self.edges()],
                         [self.start], self.finals, states=self.states)


# --- file format -------------------------------------------------------------


def parse_efa(text: str) -> Efa:
    group = start = None
    finals: list[str] = []
    alphabet: list[str] = []
    raw_edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, rest = line.partition(":")
        if _ and key.strip() in ("group", "start", "final", "alphabet"):
            key = key.strip()
            if key == "group":
                group = parse_spec(rest)
            elif key == "start":
                start = rest.strip()
            elif key == "final":
                finals = rest.split()
            else:
                alphabet = rest.split()
            continue
        parts = line.split(None, 3)
        if len(parts) != 4:
            raise EfaFormatError(f"line {lineno}: expected 'q a p <element>', got {line!r}")
        raw_edges.append((lineno, parts))
    if group is None or start is None:
        raise EfaFormatError("EFA file needs 'group:' and 'start:' lines")
    edges = []
    for lineno, (q, a, p, lit) in raw_edges:
        if len(a) != 1:
            raise EfaFormatError(f"line {lineno}: input letter {a!r} must be a single character")
        try:
            edges.append((q, a, p, parse_element(group, lit)))
        except GroupError as exc:
            raise EfaFormatError(f"line {lineno}: {exc}") from None
    return Efa.build(group, start, finals, edges, alphabet)


def render_efa(a: Efa) -> str:
    lines = [f"group: {a.group}", f"start: {a.start}", "final: " + " ".join(sorted(a.finals))]
    used = {x for (_, x) in a.transitions}
    if set(a.alphabet) - used:
        lines.append("alphabet: " + " ".join(sorted(a.alphabet)))
    for q, x, p, el in a.edges():
        lines.append(f"{q} {x} {p} {el}")
    return "\n".join(lines) + "\n"


# --- membership and gmc ------------------------------------------------------


@lru_cache(maxsize=64)
def _indexed(a: Efa):
    """Transition table with raw values and an identity flag, plus a norm bound per step."""
    ident = a.group.identity_value()
    table = {k: [(p, el.value, el.value != ident) for p, el in sorted(v, key=lambda t: (t[0], repr(t[1].value)))]
             for k, v in a.transitions.items()}
    step = max((a.group.norm(v) for v in a.labels()), default=0)
    return table, ident, step


@lru_cache(maxsize=64)
def _live_states(a: Efa) -> frozenset:
    return a.underlying_nfa().trim().states


def gmc_word(a: Efa, w: str) -> Optional[int]:
    """Fewest non-identity steps over accepting computations; None if w ∉ L(a).

    0-1 BFS over (state, position, register).  Registers whose norm cannot be
    cancelled in the remaining steps are pruned.
    """
    check_word(w, a.alphabet)
    table, ident, step = _indexed(a)
    mul = a.group.mul_values
    norm = a.group.norm
    n = len(w)
    start = (a.start, 0, ident)
    dist = {start: 0}
    queue = deque([start])
    done = set()
    while queue:
        cfg = queue.popleft()
        if cfg in done:
            continue
        done.add(cfg)
        q, pos, reg = cfg
        if pos == n:
            if q in a.finals and reg == ident:
                return dist[cfg]
            continue
        room = n - pos - 1
        for p, val, costly in table.get((q, w[pos]), ()):
            new = mul(reg, val)
            if norm(new) > room * step:
                continue
            nxt = (p, pos + 1, new)
            d = dist[cfg] + costly
            if d < dist.get(nxt, d + 1):
                dist[nxt] = d
                (queue.append if costly else queue.appendleft)(nxt)
    return None


def accepts(a: Efa, w: str) -> bool:
    return gmc_word(a, w) is not None


def gmc_profile(a: Efa, n_max: int, cap: int = DEFAULT_ENUMERATION_CAP,
                method: str = "auto", max_classes: int = 2_000_000) -> Profile:
    """Per-length maxima of gmc (non-members count 0).

    ``method="enumerate"`` evaluates every word of every length and is guarded by
    ``cap``.  ``method="classes"`` explores prefixes grouped by their exact
    configuration-to-cost map, which is exact because two prefixes with the same
    map have the same gmc under every continuation.  ``"auto"`` enumerates when
    the cap allows it and falls back to classes otherwise.
    """
    if method == "auto":
        method = "enumerate" if len(a.alphabet) ** n_max <= cap else "classes"
    if method == "enumerate":
        return enumerated_profile(lambda w: gmc_word(a, w), a.alphabet, n_max, cap)
    if method == "classes":
        return _class_profile(a, n_max, max_classes)
    raise ValueError(f"unknown profile method {method!r}")


def _completions(a: Efa, n_max: int, limit: int = 200_000):
    """done[t]: (state, value) pairs from which some path of length <= t reaches
    a final state with product ``value``.  None when the sets grow past ``limit``."""
    table, ident, _ = _indexed(a)
    mul = a.group.mul_values
    preds: dict = {}
    for (q, _x), targets in table.items():
        for p, val, _ in targets:
            preds.setdefault(p, set()).add((q, val))
    layer = {(f, ident) for f in a.finals}
    done = [frozenset(layer)]
    acc = set(layer)
    for _ in range(n_max):
        nxt = set()
        for p, v in layer:
            for q, val in preds.get(p, ()):
                nxt.add((q, mul(val, v)))
        layer = nxt
        acc |= nxt
        if len(acc) > limit:
            return None
        done.append(frozenset(acc))
    return done


def _class_profile(a: Efa, n_max: int, max_classes: int) -> Profile:
    table, ident, step = _indexed(a)
    mul = a.group.mul_values
    inv = a.group.inv_value
    norm = a.group.norm
    live = _live_states(a)
    done = _completions(a, n_max)
    letters = sorted(a.alphabet)

    def viable(p, reg, room):
        if done is not None:
            return (p, inv(reg)) in done[room]
        return p in live and norm(reg) <= room * step

    level = {frozenset({(a.start, ident): 0}.items())} if viable(a.start, ident, n_max) else set()
    entries = {}
    for d in range(1, n_max + 1):
        room = n_max - d
        nxt_level = set()
        best = 0
        for cls in level:
            for x in letters:
                out: dict = {}
                for (q, reg), cost in cls:
                    for p, val, costly in table.get((q, x), ()):
                        new = mul(reg, val)
                        if not viable(p, new, room):
                            continue
                        key = (p, new)
                        c = cost + costly
                        if c < out.get(key, c + 1):
                            out[key] = c
                if not out:
                    continue
                acc = [c for (q, reg), c in out.items() if q in a.finals and reg == ident]
                if acc:
                    best = max(best, min(acc))
                nxt_level.add(frozenset(out.items()))
        if len(nxt_level) > max_classes:
            raise EnumerationBudgetExceeded(f"{len(nxt_level)} prefix classes at length {d}")
        entries[d] = best
        level = nxt_level
    return Profile(entries, n_max)


# --- bounded budget ----------------------------------------------------------


def build_bounded_nfa(a: Efa, c: int) -> Nfa:
    """NFA for L(a, <= c): states (q, register, remaining budget).

    Identity steps keep register and budget; a non-identity step multiplies the
    register and spends one unit.  The register therefore ranges over products of
    at most c transition labels.
    """
    if c < 0:
        raise ValueError("budget must be non-negative")
    table, ident, _ = _indexed(a)
    mul = a.group.mul_values
    start = (a.start, ident, c)
    seen = {start}
    queue = deque([start])
    edges = []
    while queue:
        state = queue.popleft()
        q, reg, b = state
        for (src, x), targets in table.items():
            if src != q:
                continue
            for p, val, costly in targets:
                if costly and b == 0:
                    continue
                nxt = (p, mul(reg, val), b - 1) if costly else (p, reg, b)
                edges.append((state, x, nxt))
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
    accepting = [s for s in seen if s[0] in a.finals and s[1] == ident]
    return Nfa.build(a.alphabet, edges, [start], accepting, states=seen)


def register_bound(g: int, c: int) -> int:
    """Number of products of at most c labels drawn from g non-identity labels."""
    return sum(g ** i for i in range(c + 1))


def check_gmc_bounded(a: Efa, c: int, search_bound: int,
                      max_states: int = 1_000_000) -> Union[Bounded, Counterexample, Unknown]:
    """Search for w ∈ L(a) with gmc(w) > c among words of length <= search_bound.

    Breadth-first exploration of EFA configurations in lockstep with the
    complement DFA of the bounded NFA; the first hit is the shortlex-least
    counterexample.  ``Bounded(None)`` means the product space was exhausted
    before the bound (so no counterexample of any length exists).
    """
    letters = sorted(a.alphabet)
    bounded = build_bounded_nfa(a, c).determinize(letters)
    outside = bounded.complement(letters)
    delta = {(p, x): next(iter(qs)) for (p, x), qs in outside.transitions.items()}
    table, ident, _ = _indexed(a)
    mul = a.group.mul_values
    live = _live_states(a)
    (d0,) = outside.initial
    if a.start not in live:
        return Bounded()
    # a frontier entry is (word, set of EFA configurations, complement-DFA state)
    start_cfgs = frozenset([(a.start, ident)])
    if d0 in outside.accepting and (a.start in a.finals):
        return Counterexample("")
    seen = {(start_cfgs, d0)}
    frontier = [("", start_cfgs, d0)]
    truncated = False
    for depth in range(1, search_bound + 1):
        nxt_frontier = []
        for word, cfgs, d in frontier:
            for x in letters:
                new = set()
                for q, reg in cfgs:
                    for p, val, _ in table.get((q, x), ()):
                        if p in live:
                            new.add((p, mul(reg, val)))
                if not new:
                    continue
                key = (frozenset(new), delta[(d, x)])
                if key in seen:
                    continue
                seen.add(key)
                w2 = word + x
                if key[1] in outside.accepting and any(
                        q in a.finals and reg == ident for q, reg in key[0]):
                    return Counterexample(w2)
                nxt_frontier.append((w2, key[0], key[1]))
                if len(seen) > max_states:
                    return Unknown(f"state budget {max_states} exhausted at length {depth}")
        frontier = nxt_frontier
        if not frontier:
            return Bounded()
        truncated = True
    return Bounded(search_bound) if truncated else Bounded()


def reachable_registers(a: Efa, max_len: int) -> set:
    """Register values reachable on inputs of length <= max_len."""
    table, ident, _ = _indexed(a)
    mul = a.group.mul_values
    cur = {(a.start, ident)}
    regs = {ident}
    for _ in range(max_len):
        nxt = set()
        for q, reg in cur:
            for (src, _x), targets in table.items():
                if src == q:
                    for p, val, _ in targets:
                        nxt.add((p, mul(reg, val)))
        regs |= {r for _, r in nxt}
        cur = nxt
    return regs


# --- example machines --------------------------------------------------------


def build_anbn_efa() -> Efa:
    """{a^n b^n | n >= 1} over the integers: a adds 1, b subtracts 1."""
    z = Zk(1)
    plus, minus = parse_element(z, "[1]"), parse_element(z, "[-1]")
    return Efa.build(z, "p", ["q"], [
        ("p", "a", "p", plus),
        ("p", "b", "q", minus),
        ("q", "b", "q", minus),
    ])


def sqrt_language(w: str) -> bool:
    """Membership in {b a^i1 b ... a^ik b c^m : some j has i_j != j, m as below}.

    m = j - i_j when j > i_j and m = 1 when j < i_j, for at least one such j.
    """
    if not w.startswith("b"):
        return False
    body = w.rstrip("c")
    m = len(w) - len(body)
    if m == 0 or not body.endswith("b") or len(body) < 2:
        return False
    blocks = body[1:-1].split("b")
    if any(not blk or set(blk) != {"a"} for blk in blocks):
        return False
    for j, blk in enumerate(blocks, 1):
        i = len(blk)
        if i < j and m == j - i:
            return True
        if i > j and m == 1:
            return True
    return False


def build_sqrt_efa() -> Efa:
    """EFA over Z x Z2 for the marked Goldstine variant, with gmc in O(sqrt n).

    The machine guesses a witness block j.  Block index and block length are
    compared in the Z component at half rate: b number 1, 3, 5, ... up to the
    witness adds 2, and the letters spent against j (the a's of the witness
    block, plus the trailing c's when j > i_j) subtract 2 on every second letter.
    When j is odd both sides overshoot by one; the Z2 component carries that
    parity from the opening b to the single -4 (or -2) step that settles it.
    Cheapest computations use about j non-identity steps, and the first witness
    of a word of length n satisfies j ~ sqrt(2n).
    """
    g = Product((Zk(1), ZMod(2)))

    def el(x: int, f: int = 0) -> GroupElement:
        return GroupElement(g, ((x,), f))

    ID, P2, P2F = el(0), el(2), el(2, 1)
    M2, M2F, M4F = el(-2), el(-2, 1), el(-4, 1)
    edges = []

    def region(src: str, dst_prefix: str, x: str, r: str):
        # one counted letter inside the witness region
        if r == "W":
            edges.append((src, x, f"{dst_prefix}:P1", ID))   # even j: plain pairs
            edges.append((src, x, f"{dst_prefix}:L0", ID))   # odd j: leftover first
            edges.append((src, x, f"{dst_prefix}:P0", M2F))  # odd j: settle at once
        elif r == "P0":
            edges.append((src, x, f"{dst_prefix}:P1", ID))
        elif r == "P1":
            edges.append((src, x, f"{dst_prefix}:P0", M2))
        elif r == "L0":
            edges.append((src, x, f"{dst_prefix}:L1", ID))
        elif r == "L1":
            edges.append((src, x, f"{dst_prefix}:P0", M4F))

    # before the witness block: N{parity of b count}_{a seen in current block}
    edges.append(("start", "b", "N1_0", P2))
    edges.append(("start", "b", "A1:W", P2F))
    edges.append(("start", "b", "A2:W", P2F))
    for par in (0, 1):
        edges.append((f"N{par}_0", "a", f"N{par}_1", ID))
        edges.append((f"N{par}_1", "a", f"N{par}_1", ID))
        odd = 1 - par
        if odd:
            edges.append((f"N{par}_1", "b", "N1_0", P2))
            edges.append((f"N{par}_1", "b", "A1:W", P2F))
            edges.append((f"N{par}_1", "b", "A2:W", P2F))
        else:
            edges.append((f"N{par}_1", "b", "N0_0", ID))
            edges.append((f"N{par}_1", "b", "A1:W", ID))
            edges.append((f"N{par}_1", "b", "A2:W", ID))

    regions = ("W", "P0", "P1", "L0", "L1")
    after = ("P0", "P1", "L0", "L1")
    # case j > i_j: witness a's and trailing c's are counted
    for r in regions:
        region(f"A1:{r}", "A1", "a", r)
    for r in after:
        edges.append((f"A1:{r}", "b", f"R1:{r}", ID))
        edges.append((f"R1:{r}", "a", f"R1a:{r}", ID))
        edges.append((f"R1a:{r}", "a", f"R1a:{r}", ID))
        edges.append((f"R1a:{r}", "b", f"R1:{r}", ID))
        region(f"R1:{r}", "T1", "c", r)
        region(f"T1:{r}", "T1", "c", r)
    # case j < i_j: exactly j counted a's, then at least one more a, then one c
    for r in regions:
        region(f"A2:{r}", "A2", "a", r)
    edges.append(("A2:P0", "a", "X2", ID))
    edges.append(("X2", "a", "X2", ID))
    edges.append(("X2", "b", "R2", ID))
    edges.append(("R2", "a", "R2a", ID))
    edges.append(("R2a", "a", "R2a", ID))
    edges.append(("R2a", "b", "R2", ID))
    edges.append(("R2", "c", "F2", ID))
    return Efa.build(g, "start", ["T1:P0", "F2"], edges)


def sqrt_witness_cost(j: int) -> int:
    """Cheapest computation of build_sqrt_efa() that settles witness block j."""
    return 2 if j == 1 else j


def sqrt_valid_witnesses(w: str) -> list[int]:
    """Blocks j that make w a member of the marked Goldstine variant."""
    if not sqrt_language(w):
        return []
    body = w.rstrip("c")
    m = len(w) - len(body)
    out = []
    for j, blk in enumerate(body[1:-1].split("b"), 1):
        i = len(blk)
        if (i < j and m == j - i) or (i > j and m == 1):
            out.append(j)
    return out


def sqrt_witness_profile(n_max: int) -> Profile:
    """Exact gmc profile of build_sqrt_efa() from the witness structure of its language.

    Relies on gmc(w) = min of sqrt_witness_cost over the valid witnesses of w
    (checked by brute force in the tests).  For every witness J and tail length
    m, a bitset subset-sum over block lengths collects the word lengths at which
    J is the least valid witness; the profile takes the largest cost per length.
    Prefix classes cannot reach n = 60 here because prefixes must remember the
    whole set of pending differences j - i_j.
    """
    best = {n: 0 for n in range(1, n_max + 1)}
    mask = (1 << (n_max + 1)) - 1
    for m in range(1, n_max):
        for J in range(1, n_max):
            fixed = 1 + J + m  # leading b, one b per block, the c tail
            if fixed + J > n_max:
                break
            sums = 1  # bit s set: the first J-1 blocks can hold s letters
            for l in range(1, J):
                nxt = 0
                for i in range(1, n_max - fixed + 1):
                    bad = (i < l and l - i == m) or (i > l and m == 1)
                    if not bad:
                        nxt |= sums << i
                sums = nxt & mask
                if not sums:
                    break
            if not sums:
                continue
            own = 0
            for i in range(1, n_max - fixed + 1):
                if (i < J and J - i == m) or (i > J and m == 1):
                    own |= sums << i
            own &= mask
            # any number of later blocks, each a b plus at least one a
            total = own
            extra = own << 2
            for _ in range(n_max):
                total |= extra
                extra = (extra << 1) & mask
            total &= mask
            cost = sqrt_witness_cost(J)
            for s in range(n_max + 1):
                if total >> s & 1 and 1 <= s + fixed <= n_max:
                    best[s + fixed] = max(best[s + fixed], cost)
    return Profile(best, n_max)
