"""Context-free grammars, their file format, and the normal forms used by the dnreg measure.

Symbols are plain strings.  A terminal is a single lowercase letter; a
nonterminal is any token starting with an uppercase letter.  Grammars are
immutable and every transformation returns a new grammar whose fresh
nonterminals are named ``X#k`` with ``k`` taken from a counter that walks the
rules in order, so the same input always yields the same output.
"""

from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

EMPTY_TOKEN = "_"
FRESH_PREFIX = "X#"


class GrammarError(ValueError):
    pass


class GrammarSyntaxError(GrammarError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class EmptyLanguageError(GrammarError):
    pass


class EpsilonInLanguageError(GrammarError):
    pass


class UnknownNonterminalError(GrammarError):
    pass


def is_terminal(sym: str) -> bool:
    return len(sym) == 1 and "a" <= sym <= "z"


def is_nonterminal(sym: str) -> bool:
    return bool(sym) and sym[0].isupper()


class RuleKind(enum.Enum):
    REGULAR = "regular"
    NON_REGULAR = "non-regular"


@dataclass(frozen=True)
class Rule:
    lhs: str
    rhs: tuple[str, ...]

    def __str__(self) -> str:
        return f"{self.lhs} -> {' '.join(self.rhs) if self.rhs else EMPTY_TOKEN}"


def classify_rule(rule: Rule) -> RuleKind:
    """Regular iff the right-hand side is terminals optionally followed by one nonterminal."""
    body = rule.rhs[:-1] if rule.rhs and is_nonterminal(rule.rhs[-1]) else rule.rhs
    if all(is_terminal(s) for s in body):
        return RuleKind.REGULAR
    return RuleKind.NON_REGULAR


def is_regular(rule: Rule) -> bool:
    return classify_rule(rule) is RuleKind.REGULAR


@dataclass(frozen=True)
class Grammar:
    nonterminals: frozenset[str]
    terminals: frozenset[str]
    start: str
    rules: tuple[Rule, ...]

    def __post_init__(self):
        if self.start not in self.nonterminals:
            raise GrammarError(f"start symbol {self.start!r} is not a nonterminal")
        for nt in self.nonterminals:
            if not is_nonterminal(nt):
                raise GrammarError(f"bad nonterminal name {nt!r}")
        for t in self.terminals:
            if not is_terminal(t):
                raise GrammarError(f"bad terminal name {t!r}")
        for r in self.rules:
            if r.lhs not in self.nonterminals:
                raise GrammarError(f"undeclared nonterminal {r.lhs!r} in rule {r}")
            for s in r.rhs:
                if s not in self.nonterminals and s not in self.terminals:
                    raise GrammarError(f"undeclared symbol {s!r} in rule {r}")

    @classmethod
    def build(
        cls,
        start: str,
        rules: Iterable[Rule | tuple[str, Sequence[str]]],
        terminals: Iterable[str] = (),
    ) -> "Grammar":
        """Infer the symbol sets from the rules (plus any extra terminals)."""
        rs = tuple(r if isinstance(r, Rule) else Rule(r[0], tuple(r[1])) for r in rules)
        nts = {start}
        ts = set(terminals)
        for r in rs:
            nts.add(r.lhs)
            for s in r.rhs:
                (nts if is_nonterminal(s) else ts).add(s)
        return cls(frozenset(nts), frozenset(ts), start, rs)

    def rules_for(self, nt: str) -> list[tuple[int, Rule]]:
        return [(i, r) for i, r in enumerate(self.rules) if r.lhs == nt]

    def with_rules(self, rules: Iterable[Rule], start: Optional[str] = None) -> "Grammar":
        """Same terminal alphabet, nonterminals recomputed from the new rules."""
        rules = tuple(rules)
        start = self.start if start is None else start
        nts = {start} | {r.lhs for r in rules} | {s for r in rules for s in r.rhs if is_nonterminal(s)}
        return Grammar(frozenset(nts), self.terminals, start, rules)

    def __str__(self) -> str:
        return render_grammar(self)


_TOKEN_NT = re.compile(r"^[A-Z][A-Za-z0-9_'#@]*$")


def parse_grammar(text: str) -> Grammar:
    start: Optional[str] = None
    rules: list[Rule] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("start:"):
            if start is not None:
                raise GrammarSyntaxError("duplicate start line", lineno)
            start = line[len("start:"):].strip()
            if not _TOKEN_NT.match(start):
                raise GrammarSyntaxError(f"start {start!r} is not a nonterminal", lineno)
            continue
        if "->" not in line:
            raise GrammarSyntaxError(f"expected 'A -> ...', got {line!r}", lineno)
        lhs, body = (part.strip() for part in line.split("->", 1))
        if not _TOKEN_NT.match(lhs):
            raise GrammarSyntaxError(f"left-hand side {lhs!r} is not a nonterminal", lineno)
        for alt in body.split("|"):
            tokens = alt.split()
            if not tokens:
                raise GrammarSyntaxError("empty alternative (use '_' for the empty word)", lineno)
            if tokens == [EMPTY_TOKEN]:
                rules.append(Rule(lhs, ()))
                continue
            for tok in tokens:
                if tok == EMPTY_TOKEN:
                    raise GrammarSyntaxError("'_' must stand alone", lineno)
                if not (is_terminal(tok) or _TOKEN_NT.match(tok)):
                    raise GrammarSyntaxError(
                        f"token {tok!r} is neither a single lowercase terminal nor a nonterminal",
                        lineno,
                    )
            rules.append(Rule(lhs, tuple(tokens)))
    if start is None:
        raise GrammarSyntaxError("missing 'start:' line")
    if not any(r.lhs == start for r in rules) and not any(start in r.rhs for r in rules):
        raise GrammarSyntaxError(f"start symbol {start!r} does not occur in any rule")
    return Grammar.build(start, rules)


def render_grammar(g: Grammar) -> str:
    """Render with one line per left-hand side, alternatives joined by '|'."""
    lines = [f"start: {g.start}"]
    order: list[str] = []
    alts: dict[str, list[str]] = {}
    for r in g.rules:
        if r.lhs not in alts:
            order.append(r.lhs)
            alts[r.lhs] = []
        alts[r.lhs].append(" ".join(r.rhs) if r.rhs else EMPTY_TOKEN)
    for nt in order:
        lines.append(f"{nt} -> {' | '.join(alts[nt])}")
    return "\n".join(lines) + "\n"


# --- structural analyses ---------------------------------------------------


def generating(g: Grammar) -> set[str]:
    """Co-accessible nonterminals: those deriving some terminal word."""
    gen: set[str] = set()
    changed = True
    while changed:
        changed = False
        for r in g.rules:
            if r.lhs not in gen and all(is_terminal(s) or s in gen for s in r.rhs):
                gen.add(r.lhs)
                changed = True
    return gen


def accessible(g: Grammar, rules: Optional[Iterable[Rule]] = None) -> set[str]:
    rules = list(g.rules if rules is None else rules)
    seen = {g.start}
    stack = [g.start]
    while stack:
        nt = stack.pop()
        for r in rules:
            if r.lhs == nt:
                for s in r.rhs:
                    if is_nonterminal(s) and s not in seen:
                        seen.add(s)
                        stack.append(s)
    return seen


def nullable(g: Grammar) -> set[str]:
    null: set[str] = set()
    changed = True
    while changed:
        changed = False
        for r in g.rules:
            if r.lhs not in null and all(s in null for s in r.rhs):
                null.add(r.lhs)
                changed = True
    return null


def is_reduced(g: Grammar) -> bool:
    return g.nonterminals <= generating(g) and g.nonterminals <= accessible(g)


def is_proper(g: Grammar) -> bool:
    return all(r.rhs and not (len(r.rhs) == 1 and is_nonterminal(r.rhs[0])) for r in g.rules)


def reduce(g: Grammar) -> Grammar:
    gen = generating(g)
    if g.start not in gen:
        raise EmptyLanguageError(f"start symbol {g.start!r} derives no terminal word")
    productive = [r for r in g.rules if r.lhs in gen and all(is_terminal(s) or s in gen for s in r.rhs)]
    reach = accessible(g, productive)
    kept = [r for r in productive if r.lhs in reach]
    return Grammar(frozenset(reach), g.terminals, g.start, tuple(kept))


def _dedupe(rules: Iterable[Rule]) -> tuple[Rule, ...]:
    return tuple(dict.fromkeys(rules))


def make_proper(g: Grammar) -> Grammar:
    """Remove λ-rules and chain rules; refuses grammars whose language contains ε."""
    null = nullable(g)
    if g.start in null:
        raise EpsilonInLanguageError(f"start symbol {g.start!r} is nullable")
    if is_proper(g):
        return g

    no_lambda: list[Rule] = []
    for r in g.rules:
        slots = [i for i, s in enumerate(r.rhs) if s in null]
        # every subset of nullable occurrences may be dropped
        for keep in itertools.product((True, False), repeat=len(slots)):
            dropped = {i for i, k in zip(slots, keep) if not k}
            rhs = tuple(s for i, s in enumerate(r.rhs) if i not in dropped)
            if rhs:
                no_lambda.append(Rule(r.lhs, rhs))
    no_lambda = list(_dedupe(no_lambda))

    def is_chain(r: Rule) -> bool:
        return len(r.rhs) == 1 and is_nonterminal(r.rhs[0])

    nts = sorted({r.lhs for r in no_lambda} | {g.start}, key=lambda nt: _first_index(no_lambda, nt))
    unit: dict[str, list[str]] = {}
    for a in nts:
        order = [a]
        seen = {a}
        i = 0
        while i < len(order):
            for r in no_lambda:
                if r.lhs == order[i] and is_chain(r) and r.rhs[0] not in seen:
                    seen.add(r.rhs[0])
                    order.append(r.rhs[0])
            i += 1
        unit[a] = order

    proper: list[Rule] = []
    for a in nts:
        for b in unit[a]:
            for r in no_lambda:
                if r.lhs == b and not is_chain(r):
                    proper.append(Rule(a, r.rhs))
    out = g.with_rules(_dedupe(proper))
    return reduce(out)


def _first_index(rules: Sequence[Rule], nt: str) -> int:
    for i, r in enumerate(rules):
        if r.lhs == nt:
            return i
    return len(rules)


# --- normal forms ----------------------------------------------------------


class _Fresh:
    """Deterministic ``X#k`` generator that skips indices already in use."""

    def __init__(self, g: Grammar):
        used = [int(nt[len(FRESH_PREFIX):]) for nt in g.nonterminals
                if nt.startswith(FRESH_PREFIX) and nt[len(FRESH_PREFIX):].isdigit()]
        self.k = max(used, default=0)

    def __call__(self) -> str:
        self.k += 1
        return f"{FRESH_PREFIX}{self.k}"


def is_quasi_normal_form(g: Grammar) -> bool:
    for r in g.rules:
        n = len(r.rhs)
        if n == 1 and is_terminal(r.rhs[0]):
            continue
        if n == 2 and is_terminal(r.rhs[0]) and is_nonterminal(r.rhs[1]):
            continue
        if n >= 2 and all(is_nonterminal(s) for s in r.rhs):
            continue
        return False
    return True


def is_quasi_chomsky(g: Grammar) -> bool:
    return is_quasi_normal_form(g) and all(
        len(r.rhs) <= 2 for r in g.rules
    )


def _terminal_chain(lhs: str, letters: Sequence[str], tail: Optional[str], fresh: _Fresh) -> list[Rule]:
    """lhs -> a1 X1, X1 -> a2 X2, ..., ending in ``ak`` or ``ak tail``."""
    out = []
    cur = lhs
    for i, a in enumerate(letters):
        last = i == len(letters) - 1
        if last:
            out.append(Rule(cur, (a, tail) if tail else (a,)))
        else:
            nxt = fresh()
            out.append(Rule(cur, (a, nxt)))
            cur = nxt
    return out


def to_quasi_normal_form(g: Grammar) -> Grammar:
    """Rules become A -> a, A -> a B, or A -> B1..Bk (k >= 2) with dnreg preserved word by word.

    Regular rules turn into chains of regular rules; a non-regular rule ``A -> w β``
    becomes ``A -> w C`` (regular chain) plus exactly one non-regular ``C -> β'``,
    where ``β'`` has each terminal ``a`` replaced by a fresh ``T`` with ``T -> a``.
    """
    if not is_proper(g):
        raise GrammarError("to_quasi_normal_form needs a proper grammar (run make_proper first)")
    if is_quasi_normal_form(g):
        return g
    fresh = _Fresh(g)
    term_nt: dict[str, str] = {}
    term_rules: list[Rule] = []

    def lift(sym: str) -> str:
        if is_nonterminal(sym):
            return sym
        if sym not in term_nt:
            term_nt[sym] = fresh()
            term_rules.append(Rule(term_nt[sym], (sym,)))
        return term_nt[sym]

    out: list[Rule] = []
    for r in g.rules:
        rhs = r.rhs
        if is_regular(r):
            if is_nonterminal(rhs[-1]):
                out.extend(_terminal_chain(r.lhs, rhs[:-1], rhs[-1], fresh))
            else:
                out.extend(_terminal_chain(r.lhs, rhs, None, fresh))
            continue
        if all(is_nonterminal(s) for s in rhs):
            out.append(r)
            continue
        lead = 0
        while is_terminal(rhs[lead]):
            lead += 1
        body_lhs = r.lhs
        if lead:
            body_lhs = fresh()
            out.extend(_terminal_chain(r.lhs, rhs[:lead], body_lhs, fresh))
        out.append(Rule(body_lhs, tuple(lift(s) for s in rhs[lead:])))
    out.extend(term_rules)
    return g.with_rules(_dedupe(out))


def to_quasi_chomsky(g: Grammar) -> Grammar:
    """Binarize nonterminal-only right-hand sides: C -> X Y Z becomes C -> X C1, C1 -> Y Z."""
    if not is_quasi_normal_form(g):
        raise GrammarError("to_quasi_chomsky needs a grammar in quasi normal form")
    if is_quasi_chomsky(g):
        return g
    fresh = _Fresh(g)
    out: list[Rule] = []
    for r in g.rules:
        if len(r.rhs) <= 2 or not all(is_nonterminal(s) for s in r.rhs):
            out.append(r)
            continue
        cur = r.lhs
        rest = list(r.rhs)
        while len(rest) > 2:
            nxt = fresh()
            out.append(Rule(cur, (rest[0], nxt)))
            cur = nxt
            rest = rest[1:]
        out.append(Rule(cur, tuple(rest)))
    return g.with_rules(out)


def normalize(g: Grammar, chomsky: bool = True) -> Grammar:
    """Reduce, make proper (when needed) and convert to quasi (Chomsky) normal form."""
    g = reduce(g)
    if not is_proper(g):
        g = make_proper(g)
    g = to_quasi_normal_form(g)
    return to_quasi_chomsky(g) if chomsky else g


# --- subgrammars -------------------------------------------------------------


def with_start(g: Grammar, nt: str) -> Grammar:
    if nt not in g.nonterminals:
        raise UnknownNonterminalError(nt)
    return Grammar(g.nonterminals, g.terminals, nt, g.rules)


def regular_part(g: Grammar) -> Grammar:
    return Grammar(g.nonterminals, g.terminals, g.start, tuple(r for r in g.rules if is_regular(r)))


def context_free_part(g: Grammar) -> Grammar:
    # every rule of a context-free grammar is context-free
    return g


def subgrammar(g: Grammar, which: str, nt: Optional[str] = None) -> Grammar:
    if which == "with_start":
        if nt is None:
            raise UnknownNonterminalError("with_start needs a nonterminal")
        return with_start(g, nt)
    if which == "regular_part":
        return regular_part(g)
    if which == "context_free_part":
        return context_free_part(g)
    raise ValueError(f"unknown subgrammar kind {which!r}")


def max_rhs_length(g: Grammar) -> int:
    return max((len(r.rhs) for r in g.rules), default=0)
