import pytest
from hypothesis import given, strategies as st

from nonreg.common import (AlphabetError, EnumerationBudgetExceeded, Profile,
                           check_word, enumerated_profile, parse_word,
                           render_word, shortlex_key, words_up_to)


def test_words_up_to_is_shortlex():
    ws = list(words_up_to("ba", 2))
    assert ws == ["", "a", "b", "aa", "ab", "ba", "bb"]
    assert ws == sorted(ws, key=shortlex_key)


def test_empty_word_rendering():
    assert render_word("") == "_"
    assert parse_word("_") == "" and parse_word(" ab ") == "ab"


def test_check_word():
    check_word("abba", "ab")
    with pytest.raises(AlphabetError):
        check_word("abc", "ab")


def test_enumerated_profile_counts_rejections_as_zero():
    p = enumerated_profile(lambda w: len(w) if w.count("a") == 2 else None, "ab", 4)
    assert p.entries == {1: 0, 2: 2, 3: 3, 4: 4}
    assert p.exhaustive_up_to == 4


def test_enumerated_profile_limits():
    with pytest.raises(EnumerationBudgetExceeded):
        enumerated_profile(lambda w: 0, "ab", 30, cap=1000)
    with pytest.raises(ValueError):
        enumerated_profile(lambda w: 0, "ab", 0)


def test_profile_csv():
    p = Profile({1: 0, 2: 3}, 2)
    assert p.to_csv() == "n,value\n1,0\n2,3\n"
    assert Profile.from_csv(p.to_csv()) == p
    with pytest.raises(ValueError):
        Profile.from_csv("x,y\n1,2\n")


@given(st.dictionaries(st.integers(1, 50), st.integers(0, 1000), min_size=1),
       st.integers(0, 5))
def test_profile_round_trip_and_scaling(entries, k):
    p = Profile(entries, max(entries))
    assert Profile.from_csv(p.to_csv()) == p
    assert p.scaled(k).values() == [k * v for v in p.values()]
