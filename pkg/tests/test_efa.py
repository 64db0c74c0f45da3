import pytest
from hypothesis import given, strategies as st

from nonreg import corpus
from nonreg.common import AlphabetError, Bounded, Counterexample, Unknown, words_up_to
from nonreg.efa import (Efa, EfaFormatError, build_anbn_efa, build_bounded_nfa,
                        build_sqrt_efa, check_gmc_bounded, gmc_profile, gmc_word,
                        parse_efa, reachable_registers, register_bound,
                        render_efa, sqrt_language, sqrt_valid_witnesses,
                        sqrt_witness_cost, sqrt_witness_profile)
from nonreg.groups import GroupError, Product, Zk, ZMod, parse_element
from nonreg.oracle.brute import brute_gmc

ANBN = build_anbn_efa()
SQRT = build_sqrt_efa()


def test_gmc_examples():
    assert gmc_word(ANBN, "aaabbb") == 6
    assert gmc_word(ANBN, "aab") is None
    assert gmc_word(corpus.load("efa", "identity-only"), "aabb") == 0
    with pytest.raises(AlphabetError):
        gmc_word(ANBN, "c")


def test_anbn_language():
    assert {w for w in words_up_to("ab", 10) if gmc_word(ANBN, w) is not None} == {
        "ab", "aabb", "aaabbb", "aaaabbbb", "aaaaabbbbb"}


def test_profiles():
    p = gmc_profile(ANBN, 10)
    assert p.entries == {n: (n if n % 2 == 0 else 0) for n in range(1, 11)}
    assert gmc_profile(corpus.load("efa", "identity-only"), 8).values() == [0] * 8
    for name in corpus.EFAS:
        prof = gmc_profile(corpus.load("efa", name), 8)
        assert all(prof[n] <= n for n in prof.entries)


def test_class_profile_matches_enumeration():
    for name in corpus.EFAS:
        a = corpus.load("efa", name)
        assert gmc_profile(a, 8, method="classes").entries == gmc_profile(a, 8, method="enumerate").entries


def test_unknown_profile_method():
    with pytest.raises(ValueError):
        gmc_profile(ANBN, 4, method="guess")


@pytest.mark.parametrize("name", sorted(corpus.EFAS))
def test_search_matches_brute(name):
    a = corpus.load("efa", name)
    for w in words_up_to(a.alphabet, 7):
        assert gmc_word(a, w) == brute_gmc(a, w)


def test_bounded_nfa_anbn():
    assert build_bounded_nfa(ANBN, 4).slice(12) == {"ab", "aabb"}


def test_bounded_nfa_budget_zero_uses_identity_steps_only():
    a = corpus.load("efa", "mod3")
    assert build_bounded_nfa(a, 0).slice(5) == {""}


@pytest.mark.parametrize("name", sorted(corpus.EFAS))
def test_bounded_nfa_agrees_with_measure(name):
    a = corpus.load("efa", name)
    for c in range(3):
        nfa = build_bounded_nfa(a, c)
        for w in words_up_to(a.alphabet, 7):
            v = gmc_word(a, w)
            assert nfa.accepts(w) == (v is not None and v <= c)


def test_register_count_bound():
    for name in corpus.EFAS:
        a = corpus.load("efa", name)
        g = len({v for v in a.labels() if v != a.group.identity_value()})
        for c in range(4):
            regs = {s[1] for s in build_bounded_nfa(a, c).states}
            assert len(regs) <= register_bound(g, c)


def test_registers_are_label_products():
    a = corpus.load("efa", "even-palindromes")
    regs = reachable_registers(a, 6)
    assert all(len(r) <= 6 for r in regs)


def test_finite_group_registers_saturate():
    a = corpus.load("efa", "mod3")
    for c in (3, 6, 9):
        nfa = build_bounded_nfa(a, c)
        assert {s[1] for s in nfa.states} == {0, 1, 2}
        assert len(nfa.states) <= len(a.states) * 3 * (c + 1)


def test_check_bounded():
    assert check_gmc_bounded(ANBN, 4, 12) == Counterexample("aaabbb")
    assert check_gmc_bounded(corpus.load("efa", "identity-only"), 0, 10) == Bounded()
    assert isinstance(check_gmc_bounded(SQRT, 3, 20), Counterexample)
    assert check_gmc_bounded(corpus.load("efa", "mod3"), 1, 3) == Counterexample("ab")


def test_check_bounded_reports_limits():
    assert check_gmc_bounded(ANBN, 8, 6) == Bounded(6)
    assert isinstance(check_gmc_bounded(ANBN, 8, 40, max_states=5), Unknown)


def test_sqrt_machine_uses_the_flag():
    flags = {el.value[1] for *_, el in SQRT.edges()}
    assert flags == {0, 1}
    assert SQRT.group == Product((Zk(1), ZMod(2)))


def test_sqrt_language_predicate():
    assert sqrt_language("baabc")
    assert not sqrt_language("babc")  # i_1 = 1 is not a witness
    assert sqrt_language("bbabc") is False  # empty first block
    assert sqrt_language("babaabcc") is False
    assert sqrt_language("babababcc")


def test_sqrt_machine_language():
    for w in words_up_to("abc", 9):
        assert (gmc_word(SQRT, w) is not None) == sqrt_language(w)


def test_sqrt_cost_is_cheapest_witness():
    for w in words_up_to("abc", 10):
        ws = sqrt_valid_witnesses(w)
        expected = min(map(sqrt_witness_cost, ws)) if ws else None
        assert gmc_word(SQRT, w) == expected


def test_sqrt_witness_profile_matches_classes():
    assert sqrt_witness_profile(26).entries == gmc_profile(SQRT, 26, method="classes").entries


def test_sqrt_profile_values():
    p = sqrt_witness_profile(60)
    assert p[5] == 2 and p[12] == 4
    assert all(p[n] == n // 3 for n in range(9, 61))


def test_format_round_trip():
    for name in corpus.EFAS:
        a = corpus.load("efa", name)
        text = render_efa(a)
        assert render_efa(parse_efa(text)) == text


@pytest.mark.parametrize("text", [
    "start: p\np a p [1]\n",
    "group: Z^1\nstart: p\np a p\n",
    "group: Z^1\nstart: p\np a p [1,2]\n",
    "group: Z^1\nstart: p\np ab p [1]\n",
    "group: Zmod 3\nstart: p\np a p x\n",
])
def test_format_errors(text):
    with pytest.raises(EfaFormatError):
        parse_efa(text)


def test_mixed_specs_rejected():
    with pytest.raises(GroupError):
        Efa.build(Zk(1), "p", ["p"], [("p", "a", "p", parse_element(Zk(2), "[1,1]"))])


@given(st.text(alphabet="ab", max_size=10))
def test_gmc_at_most_length(w):
    for name in ("anbn", "even-palindromes", "mod3"):
        v = gmc_word(corpus.load("efa", name), w)
        assert v is None or v <= len(w)
