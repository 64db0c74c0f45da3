import pytest
from hypothesis import given, strategies as st

from nonreg import corpus
from nonreg.common import AlphabetError, Bounded, EnumerationBudgetExceeded, words_up_to
from nonreg.dnreg import (Unbounded, best_derivation, bounded_recognizer,
                          bounded_recognizer_run, build_bounded_nfa,
                          decide_dnreg_bounded, dnreg_profile, dnreg_word,
                          recognizer_bound, recognizer_space, state_bound)
from nonreg.grammar import GrammarError, normalize, parse_grammar, to_quasi_normal_form
from nonreg.oracle.brute import brute_dnreg
from nonreg.oracle.nfa import included

ANBN = parse_grammar("start: S\nS -> a S b | a b\n")
QCNF = normalize(ANBN)
RIGHT = corpus.load("cfg", "right-linear")


def test_examples():
    assert dnreg_word(ANBN, "aabb") == 1
    assert dnreg_word(ANBN, "aab") is None
    assert dnreg_word(ANBN, "ab") == 0
    assert all(dnreg_word(RIGHT, w) in (0, None) for w in words_up_to("ab", 6))


def test_alphabet_violation():
    with pytest.raises(AlphabetError):
        dnreg_word(ANBN, "abc")


def test_needs_proper_grammar():
    with pytest.raises(GrammarError):
        dnreg_word(parse_grammar("start: S\nS -> T\nT -> a\n"), "a")


def test_derivation_replays():
    g = corpus.load("cfg", "dyck")
    d = best_derivation(g, "aabbab")
    assert "".join(d.replay(g)) == "aabbab"
    assert d.non_regular_steps(g) == dnreg_word(g, "aabbab") == brute_dnreg(g, "aabbab") == 2


def test_profile():
    p = dnreg_profile(ANBN, 8)
    assert p.entries == {1: 0, 2: 0, 3: 0, 4: 1, 5: 0, 6: 2, 7: 0, 8: 3}
    assert dnreg_profile(RIGHT, 8).values() == [0] * 8


def test_profile_guard():
    with pytest.raises(EnumerationBudgetExceeded):
        dnreg_profile(ANBN, 30)


def test_regular_cover_lowers_profile():
    cover = parse_grammar("start: S\nS -> a S b | a b | a C | b C | a | b\nC -> a C | b C | a | b\n")
    base, covered = dnreg_profile(ANBN, 8), dnreg_profile(cover, 8)
    assert all(covered[n] <= base[n] for n in range(1, 9))
    assert covered.values() == [0] * 8
    assert decide_dnreg_bounded(cover, 0) == Bounded()


def test_bounded_nfa_c2():
    n = build_bounded_nfa(QCNF, 2)
    assert n.slice(12) == {"ab", "aabb", "aaabbb"}


def test_bounded_nfa_right_linear():
    q = normalize(RIGHT)
    assert build_bounded_nfa(q, 0).slice(8) == {w for w in words_up_to("ab", 8) if w.endswith("a")}


def test_state_bound():
    p = len(QCNF.nonterminals)
    for c in range(5):
        assert len(build_bounded_nfa(QCNF, c).states) <= state_bound(p, c)


def test_bounded_nfa_needs_qnf():
    with pytest.raises(GrammarError):
        build_bounded_nfa(parse_grammar("start: S\nS -> a S b | a b\n"), 1)


@pytest.mark.parametrize("c, witness", [(0, "aabb"), (1, "aaabbb"), (2, "aaaabbbb"), (3, "aaaaabbbbb")])
def test_decide(c, witness):
    assert decide_dnreg_bounded(ANBN, c) == Unbounded(witness)
    assert brute_dnreg(ANBN, witness) == c + 1


def test_decide_right_linear():
    assert decide_dnreg_bounded(RIGHT, 0) == Bounded()


def test_recognizer():
    assert bounded_recognizer(QCNF, "aaabbb", 2)
    assert not bounded_recognizer(QCNF, "aaabbb", 1)
    with pytest.raises(AlphabetError):
        bounded_recognizer(QCNF, "abc", 1)
    with pytest.raises(GrammarError):
        bounded_recognizer(ANBN, "ab", 1)


def test_recognizer_bound_holds():
    p = len(QCNF.nonterminals)
    for n in range(0, 12):
        for d in range(4):
            _, visited = bounded_recognizer_run(QCNF, "a" * (n // 2) + "b" * (n - n // 2), d)
            assert visited <= recognizer_bound(n, d, p) <= recognizer_space(n, d, p)


def test_recognizer_space_for_one_nonterminal():
    q = normalize(RIGHT)
    assert len(q.nonterminals) == 1
    _, visited = bounded_recognizer_run(q, "aa", 0)
    assert recognizer_bound(2, 0, 1) < visited <= recognizer_space(2, 0, 1)


@pytest.mark.parametrize("name", sorted(corpus.GRAMMARS))
def test_three_views_agree(name):
    g = corpus.load("cfg", name)
    q = normalize(g)
    for c in range(3):
        nfa = build_bounded_nfa(q, c)
        for w in words_up_to(g.terminals, 7):
            v = dnreg_word(q, w)
            inside = v is not None and v <= c
            assert nfa.accepts(w) == inside == bounded_recognizer(q, w, c)


def test_budget_monotone():
    q = to_quasi_normal_form(corpus.load("cfg", "dyck"))
    for c in range(3):
        assert included(build_bounded_nfa(q, c), build_bounded_nfa(q, c + 1))


@given(st.text(alphabet="ab", max_size=8))
def test_dnreg_at_most_length(w):
    for name in ("dyck", "palindromes"):
        g = normalize(corpus.load("cfg", name))
        v = dnreg_word(g, w)
        assert v is None or v <= len(w)


def test_anbn_linear_lower_bound():
    p = dnreg_profile(ANBN, 16)
    assert all(p[n] >= n / 4 for n in range(4, 17, 2))
