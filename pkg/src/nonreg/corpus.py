"""Bundled device files used by the tests, the acceptance suite and the CLI.

Each entry is (kind, file text); ``load`` parses one into a device object.
"""

from __future__ import annotations

from .efa import build_anbn_efa, build_sqrt_efa, parse_efa, render_efa
from .fatl import build_equal_ab, build_paper_example, parse_fatl, render_fatl
from .grammar import parse_grammar
from .pda import build_anbn_pda, parse_pda, render_pda

GRAMMARS = {
    "anbn": "start: S\nS -> a S b | a b\n",
    "right-linear": "# words over {a,b} ending in a\nstart: S\nS -> a S | b S | a\n",
    "palindromes": "start: S\nS -> a S a | b S b | a a | b b | a | b\n",
    "anbn-cover": "# a^n b^n plus the regular a^+ b\nstart: S\nS -> a S b | a b | a C\nC -> a C | b\n",
    "rhs3": "start: S\nS -> A S B | a b\nA -> a\nB -> b\n",
    "dyck": "start: S\nS -> S S | a S b | a b\n",
}

PDAS = {
    "anbn": render_pda(build_anbn_pda()),
    "even-palindromes": """\
# nonempty even palindromes, accepted by final state
mode: final-state
start: q
stack-start: Z
final: f
q a Z -> q A Z
q a A -> q A A
q a B -> q A B
q b Z -> q B Z
q b A -> q B A
q b B -> q B B
q _ A -> r A
q _ B -> r B
r a A -> r _
r b B -> r _
r _ Z -> f Z
""",
    "neutral-only": """\
# a*b+ without ever touching the stack height
mode: final-state
start: q
stack-start: Z
final: p
q a Z -> q Z
q b Z -> p Z
p b Z -> p Z
""",
}

EFAS = {
    "anbn": render_efa(build_anbn_efa()),
    "sqrt": render_efa(build_sqrt_efa()),
    "even-palindromes": """\
# w w^R for nonempty w, cancelling in the free group of rank 2
group: F 2
start: p
final: q
p a p g1
p b p g2
p a q G1
p b q G2
q a q G1
q b q G2
""",
    "mod3": """\
# |w|_a = |w|_b mod 3
group: Zmod 3
start: p
final: p
p a p 1
p b p 2
""",
    "identity-only": """\
group: Z^1
start: p
final: p q
p a p [0]
p b q [0]
q b q [0]
""",
}

FATLS = {
    "paper": render_fatl(build_paper_example()),
    "equal-ab": render_fatl(build_equal_ab()),
    "total-dfa": """\
# even number of a's; every letter is readable everywhere
start: p
final: p
p a q
q a p
p b p
q b q
""",
    "nondeterministic": """\
start: p
final: r
p a p
p a q
q b q
q c r
r a r
""",
}

KINDS = {"cfg": GRAMMARS, "pda": PDAS, "efa": EFAS, "fatl": FATLS}

PARSERS = {"cfg": parse_grammar, "pda": parse_pda, "efa": parse_efa, "fatl": parse_fatl}

# names accepted by ``build-example``: name -> (kind, corpus key)
EXAMPLES = {
    "anbn-cfg": ("cfg", "anbn"),
    "anbn-efa": ("efa", "anbn"),
    "sqrt-efa": ("efa", "sqrt"),
    "paper-fatl": ("fatl", "paper"),
    "equal-ab-fatl": ("fatl", "equal-ab"),
    "anbn-pda": ("pda", "anbn"),
}


def load(kind: str, name: str):
    return PARSERS[kind](KINDS[kind][name])


def example_text(name: str) -> tuple[str, str]:
    kind, key = EXAMPLES[name]
    return kind, KINDS[kind][key]


def all_devices():
    """Yield (kind, name, device) for the whole corpus."""
    for kind, table in KINDS.items():
        for name in table:
            yield kind, name, load(kind, name)
