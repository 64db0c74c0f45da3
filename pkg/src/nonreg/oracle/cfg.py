"""Grammar/automaton intersection (triple construction) and CFG emptiness with witnesses."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from ..grammar import Grammar, Rule, is_terminal
from .nfa import Nfa


@dataclass(frozen=True)
class Empty:
    pass


@dataclass(frozen=True)
class NonEmpty:
    witness: str


def _triple(nt: str, p: int, q: int) -> str:
    return f"{nt}@{p}@{q}"


def intersect_grammar_nfa(g: Grammar, n: Nfa) -> Grammar:
    """Grammar for L(g) ∩ L(n) over nonterminals ``A@p@q``.

    ``n`` is determinized first unless it is already deterministic; only
    productive triples are materialized.
    """
    dfa = n if n.is_deterministic() else n.determinize(g.terminals | n.alphabet)
    order = sorted(dfa.states, key=repr)
    idx = {s: i for i, s in enumerate(order)}
    delta: dict[tuple[int, str], int] = {}
    for p, a, q in dfa.edges():
        delta[(idx[p], a)] = idx[q]
    (start_state,) = (idx[s] for s in dfa.initial)
    finals = sorted(idx[s] for s in dfa.accepting)
    states = range(len(order))

    # succ[A][p] = set of q with (p, A, q) productive
    succ: dict[str, dict[int, set[int]]] = {nt: {} for nt in g.nonterminals}

    def advance(p: int, rhs: tuple[str, ...]) -> set[int]:
        cur = {p}
        for s in rhs:
            nxt: set[int] = set()
            for r in cur:
                if is_terminal(s):
                    if (r, s) in delta:
                        nxt.add(delta[(r, s)])
                else:
                    nxt |= succ[s].get(r, set())
            cur = nxt
            if not cur:
                break
        return cur

    changed = True
    while changed:
        changed = False
        for rule in g.rules:
            for p in states:
                reach = advance(p, rule.rhs)
                have = succ[rule.lhs].setdefault(p, set())
                if not reach <= have:
                    have |= reach
                    changed = True

    rules: list[Rule] = []
    for rule in g.rules:
        for p in states:
            # expand every consistent state sequence through the right-hand side
            paths: list[tuple[int, tuple[str, ...]]] = [(p, ())]
            for s in rule.rhs:
                nxt_paths = []
                for r, syms in paths:
                    if is_terminal(s):
                        if (r, s) in delta:
                            nxt_paths.append((delta[(r, s)], syms + (s,)))
                    else:
                        for q in sorted(succ[s].get(r, ())):
                            nxt_paths.append((q, syms + (_triple(s, r, q),)))
                paths = nxt_paths
            for q, syms in paths:
                rules.append(Rule(_triple(rule.lhs, p, q), syms))

    start = "S#start"
    for f in finals:
        if f in succ[g.start].get(start_state, set()):
            rules.insert(0, Rule(start, (_triple(g.start, start_state, f),)))
    return Grammar.build(start, dict.fromkeys(rules), terminals=g.terminals)


def shortest_words(g: Grammar) -> dict[str, str]:
    """Shortlex-least terminal word derivable from each generating nonterminal."""
    best: dict[str, str] = {}

    def key(w: str):
        return (len(w), w)

    changed = True
    while changed:
        changed = False
        for r in g.rules:
            parts = []
            for s in r.rhs:
                if is_terminal(s):
                    parts.append(s)
                elif s in best:
                    parts.append(best[s])
                else:
                    break
            else:
                w = "".join(parts)
                if r.lhs not in best or key(w) < key(best[r.lhs]):
                    best[r.lhs] = w
                    changed = True
    return best


def cfg_emptiness(g: Grammar) -> Union[Empty, NonEmpty]:
    best = shortest_words(g)
    if g.start in best:
        return NonEmpty(best[g.start])
    return Empty()


def cfg_witness(g: Grammar) -> Optional[str]:
    res = cfg_emptiness(g)
    return res.witness if isinstance(res, NonEmpty) else None
