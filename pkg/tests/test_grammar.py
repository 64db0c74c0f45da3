import pytest
from hypothesis import given, strategies as st

from nonreg.grammar import (EmptyLanguageError, EpsilonInLanguageError, Grammar,
                            GrammarError, GrammarSyntaxError, Rule, RuleKind,
                            accessible, classify_rule, generating, is_proper,
                            is_quasi_chomsky, is_quasi_normal_form, is_reduced,
                            make_proper, max_rhs_length, normalize, nullable,
                            parse_grammar, reduce, regular_part, render_grammar,
                            to_quasi_chomsky, to_quasi_normal_form)
from nonreg.oracle.brute import enumerate as enumerate_slice

MESSY = "start: S\nS -> A B | a\nA -> a | _\nB -> b | C\nC -> c\nD -> d\n"


def test_rule_classification():
    assert classify_rule(Rule("S", ("a", "b", "S"))) is RuleKind.REGULAR
    assert classify_rule(Rule("S", ("a",))) is RuleKind.REGULAR
    assert classify_rule(Rule("S", ())) is RuleKind.REGULAR
    assert classify_rule(Rule("S", ("a", "S", "b"))) is RuleKind.NON_REGULAR
    assert classify_rule(Rule("S", ("S", "a"))) is RuleKind.NON_REGULAR
    assert classify_rule(Rule("S", ("A", "B"))) is RuleKind.NON_REGULAR


def test_parse_render_round_trip():
    text = "start: S\nS -> a S b | a b\nT -> _\n"
    g = parse_grammar(text)
    assert render_grammar(g) == text
    assert parse_grammar(render_grammar(g)) == g


def test_comments_and_alternatives():
    g = parse_grammar("# comment\nstart: S\nS -> a | b\nS -> c\n")
    assert len(g.rules) == 3 and g.terminals == {"a", "b", "c"}


@pytest.mark.parametrize("text, line", [
    ("S -> a\n", None),
    ("start: S\nS -> aa\n", 2),
    ("start: S\nS = a\n", 2),
    ("start: s\ns -> a\n", 1),
    ("start: S\nT -> a\n", None),
    ("start: S\nS -> a _\n", 2),
    ("start: S\nstart: S\nS -> a\n", 2),
])
def test_syntax_errors(text, line):
    with pytest.raises(GrammarSyntaxError) as err:
        parse_grammar(text)
    assert err.value.line == line


def test_analyses():
    g = parse_grammar(MESSY)
    assert nullable(g) == {"A"}
    assert generating(g) == {"S", "A", "B", "C", "D"}
    assert "D" not in accessible(g)
    assert not is_reduced(g) and not is_proper(g)


def test_reduce_and_make_proper():
    g = reduce(parse_grammar(MESSY))
    assert "D" not in g.nonterminals
    p = make_proper(g)
    assert is_proper(p)
    assert enumerate_slice(p, 4).words == {"a", "b", "c", "ab", "ac"}


def test_make_proper_keeps_proper_grammars():
    g = parse_grammar("start: S\nS -> a S b | a b\n")
    assert make_proper(g) is g


def test_errors_for_degenerate_languages():
    with pytest.raises(EpsilonInLanguageError):
        make_proper(parse_grammar("start: S\nS -> a | _\n"))
    with pytest.raises(EmptyLanguageError):
        reduce(parse_grammar("start: S\nS -> a S\n"))


def test_undeclared_symbol_rejected():
    with pytest.raises(GrammarError):
        Grammar(frozenset({"S"}), frozenset({"a"}), "S", (Rule("S", ("T",)),))


def test_quasi_normal_form_shapes():
    g = parse_grammar("start: S\nS -> A S B | a b\nA -> a\nB -> b\n")
    q = to_quasi_normal_form(g)
    assert is_quasi_normal_form(q) and not is_quasi_normal_form(g)
    assert render_grammar(q) == "start: S\nS -> A S B | a X#1\nX#1 -> b\nA -> a\nB -> b\n"
    c = to_quasi_chomsky(q)
    assert is_quasi_chomsky(c) and max_rhs_length(c) == 2
    assert render_grammar(c) == "start: S\nS -> A X#2 | a X#1\nX#2 -> S B\nX#1 -> b\nA -> a\nB -> b\n"


def test_quasi_normal_form_of_mixed_rule():
    q = to_quasi_normal_form(parse_grammar("start: S\nS -> a b S c | a\n"))
    assert is_quasi_normal_form(q)
    assert enumerate_slice(q, 7).words == {"a", "abac", "ababacc"}


def test_generated_names_parse_back():
    q = normalize(parse_grammar("start: S\nS -> a S b | a b\n"))
    assert render_grammar(parse_grammar(render_grammar(q))) == render_grammar(q)


def test_regular_part():
    g = parse_grammar("start: S\nS -> a S b | a b | a C\nC -> a C | b\n")
    assert render_grammar(regular_part(g)) == "start: S\nS -> a b | a C\nC -> a C | b\n"


rhs = st.lists(st.sampled_from(["a", "b", "S", "A"]), min_size=1, max_size=3)


@st.composite
def grammars(draw):
    rules = [Rule("S", ("a",))] + [Rule("S", tuple(r)) for r in draw(st.lists(rhs, max_size=3))]
    rules += [Rule("A", tuple(r)) for r in draw(st.lists(rhs, min_size=1, max_size=3))]
    return Grammar.build("S", rules)


@given(grammars())
def test_normalize_preserves_language(g):
    try:
        base = make_proper(reduce(g))
    except (EmptyLanguageError, EpsilonInLanguageError):
        return
    q = normalize(g)
    assert is_quasi_chomsky(q)
    assert enumerate_slice(q, 6).words == enumerate_slice(base, 6).words
