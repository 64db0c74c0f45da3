import pytest
from hypothesis import given, strategies as st

from nonreg import corpus
from nonreg.common import AlphabetError, Bounded, Counterexample, words_up_to
from nonreg.fatl import (Fatl, FatlFormatError, accepts, build_bounded_nfa,
                         build_equal_ab, build_paper_example, decide_jc_bounded,
                         jc_profile, jc_word, paper_example_predicate,
                         parse_fatl, render_fatl, requires_jump,
                         zero_jump_language)
from nonreg.oracle.brute import brute_jc, count_computations
from nonreg.oracle.nfa import equivalent_up_to, included

PAPER = build_paper_example()
EQUAL = build_equal_ab()
TOTAL = corpus.load("fatl", "total-dfa")


def test_translucency_is_derived():
    assert PAPER.translucent("q0", "a") and not PAPER.translucent("q0", "b")


def test_accepts():
    assert accepts(PAPER, "bca")
    assert accepts(EQUAL, "abba")
    assert accepts(EQUAL, "")
    assert not accepts(EQUAL, "aab")
    with pytest.raises(AlphabetError):
        accepts(PAPER, "d")


def test_jc_values():
    assert jc_word(PAPER, "bca") == 0
    assert jc_word(PAPER, "abbbc") == 4
    assert [jc_word(PAPER, "a" + "b" * n + "c") for n in range(1, 9)] == [n + 1 for n in range(1, 9)]
    assert [jc_word(EQUAL, "b" * n + "a" * n) for n in range(1, 7)] == list(range(1, 7))
    assert jc_word(EQUAL, "abab") == 0


def test_example_machine_extra_words():
    # the machine reads past translucent letters, so these are accepted too
    for w in ("acb", "cab", "cba"):
        assert accepts(PAPER, w) and not paper_example_predicate(w)
    diff = {w for w in words_up_to("abc", 9) if accepts(PAPER, w) != paper_example_predicate(w)}
    assert diff == {"acb", "cab", "cba"}


def test_equal_ab_language():
    assert EQUAL.is_deterministic()
    for w in words_up_to("ab", 10):
        assert accepts(EQUAL, w) == (w.count("a") == w.count("b"))


def test_profiles():
    p = jc_profile(EQUAL, 8)
    assert all(p[n] >= n / 2 for n in range(2, 9, 2))
    assert jc_profile(TOTAL, 8).values() == [0] * 8
    paper = jc_profile(PAPER, 8)
    assert paper.entries == {1: 0, 2: 0, 3: 2, 4: 3, 5: 4, 6: 5, 7: 6, 8: 7}


@pytest.mark.parametrize("name", sorted(corpus.FATLS))
def test_search_matches_brute(name):
    m = corpus.load("fatl", name)
    for w in words_up_to(m.alphabet, 7):
        assert jc_word(m, w) == brute_jc(m, w)


@pytest.mark.parametrize("name", ["paper", "equal-ab", "total-dfa"])
def test_deterministic_machines_have_unique_computations(name):
    m = corpus.load("fatl", name)
    assert m.is_deterministic()
    for w in words_up_to(m.alphabet, 6):
        assert count_computations(m, w) == (1 if accepts(m, w) else 0)


@pytest.mark.parametrize("name", sorted(corpus.FATLS))
def test_bounded_nfa_agrees_with_measure(name):
    m = corpus.load("fatl", name)
    for c in range(3):
        nfa = build_bounded_nfa(m, c)
        for w in words_up_to(m.alphabet, 7):
            v = jc_word(m, w)
            assert nfa.accepts(w) == (v is not None and v <= c)


@pytest.mark.parametrize("name", sorted(corpus.FATLS))
def test_budget_monotone(name):
    m = corpus.load("fatl", name)
    for c in range(3):
        assert included(build_bounded_nfa(m, c), build_bounded_nfa(m, c + 1))


def test_zero_jump_language():
    z = zero_jump_language(PAPER)
    assert z.accepts("bca") and not z.accepts("abc")
    for name in corpus.FATLS:
        m = corpus.load("fatl", name)
        assert equivalent_up_to(zero_jump_language(m), build_bounded_nfa(m, 0), 8)


def test_constant_profile_gives_full_language():
    # the total machine never jumps, so budget 0 already covers its language
    nfa = build_bounded_nfa(TOTAL, 0)
    for w in words_up_to("ab", 8):
        assert nfa.accepts(w) == accepts(TOTAL, w)


def test_requires_jump():
    assert requires_jump(PAPER, "abc") and not requires_jump(PAPER, "bca")
    assert not requires_jump(PAPER, "aaa")
    with pytest.raises(ValueError):
        requires_jump(corpus.load("fatl", "nondeterministic"), "a")


def test_decide():
    assert decide_jc_bounded(PAPER, 3, 12) == Counterexample("abbbc")
    assert decide_jc_bounded(TOTAL, 0, 50) == Bounded()
    assert decide_jc_bounded(EQUAL, 2, 10) == Counterexample("bababa")
    assert decide_jc_bounded(EQUAL, 4, 6) == Bounded(6)


def test_format_round_trip():
    for name in corpus.FATLS:
        m = corpus.load("fatl", name)
        text = render_fatl(m)
        assert render_fatl(parse_fatl(text)) == text
    assert render_fatl(PAPER).count("\n") == 6


@pytest.mark.parametrize("text", ["final: p\np a p\n", "start: p\np a\n", "start: p\np aa p\n"])
def test_format_errors(text):
    with pytest.raises(FatlFormatError):
        parse_fatl(text)


@given(st.text(alphabet="ab", max_size=10))
def test_jc_at_most_length(w):
    v = jc_word(EQUAL, w)
    assert v is None or v <= len(w)
