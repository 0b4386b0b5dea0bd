import random

from rewbench.matcher import FactorMatcher, naive_occurrences


def test_single_pattern_occurrences():
    m = FactorMatcher("ab", ["ab"])
    assert list(m.occurrences("abab")) == [(0, 0), (2, 0)]
    assert list(m.occurrences("ba")) == []


def test_overlapping_occurrences():
    m = FactorMatcher("a", ["aa"])
    assert list(m.occurrences("aaaa")) == [(0, 0), (1, 0), (2, 0)]


def test_occurrences_ordered_by_end_position():
    m = FactorMatcher("abc", ["ab", "bc", "abc"])
    occ = list(m.occurrences("abc"))
    assert set(occ) == {(0, 0), (1, 1), (0, 2)}
    assert occ[0] == (0, 0)


def test_occurrences_start_offset():
    m = FactorMatcher("ab", ["ab"])
    assert list(m.occurrences("abab", start=1)) == [(2, 0)]


def test_contains_and_first_match():
    m = FactorMatcher("abcd", ["cad", "cbd"])
    assert m.contains("acadb")
    assert not m.contains("abab")
    assert m.first_match("ccbda") == (1, 1)
    assert m.first_match("aaaa") is None


def test_first_match_prefers_longest_then_lowest_index():
    m = FactorMatcher("ab", ["ab", "abb", "a"])
    # all three start at 0; longest wins
    assert m.first_match("abba") == (0, 1)
    m2 = FactorMatcher("ab", ["ab", "ab"])
    assert m2.first_match("ab") == (0, 0)


def test_empty_pattern_set():
    m = FactorMatcher("ab", [])
    assert list(m.occurrences("abab")) == []
    assert not m.contains("a")
    assert m.max_len == 0


def test_max_len():
    assert FactorMatcher("ab", ["a", "abb"]).max_len == 3


def test_matches_naive_on_random_words():
    rng = random.Random(7)
    letters = "abcd"
    patterns = ["ab", "ba", "aa", "cbad", "dc", "d"]
    m = FactorMatcher(letters, patterns)
    for _ in range(300):
        word = "".join(rng.choice(letters)
                       for _ in range(rng.randrange(0, 15)))
        assert sorted(m.occurrences(word)) == sorted(
            naive_occurrences(patterns, word))
