import random

import pytest
from hypothesis import given, settings, strategies as st

from orbitmesy import (
    ArityMismatchError,
    ContentWord,
    IncLabeling,
    InvariantError,
    NotAFenceError,
    WrongPosetError,
    chain,
    contains_pattern,
    content,
    count_inc,
    deflate,
    enumerate_inc,
    enumerate_packed,
    inflate,
    is_balanced,
    is_linear_extension,
    is_packed,
    random_inc,
    reading_word,
    zigzag,
)
from orbitmesy.labeling import parse_word, word_contains_pattern


def brute_count(p, q):
    from itertools import product
    return sum(
        all(t[a] < t[b] for a, b in p.covers) for t in product(range(1, q + 1), repeat=p.n)
    )


class TestLabeling:
    def test_cover_violation_named(self):
        with pytest.raises(InvariantError, match="0⋖1"):
            IncLabeling(chain(3), 3, (1, 1, 2))

    def test_label_out_of_range(self, z4):
        with pytest.raises(InvariantError):
            IncLabeling(z4, 3, (1, 4, 1, 2))

    def test_wrong_length(self, z4):
        with pytest.raises(InvariantError):
            IncLabeling(z4, 3, (1, 2, 1))

    def test_shorthand(self, lab):
        assert str(lab(1, 6, 2, 4, q=6)) == "1,6,2,4@q=6"

    def test_json_round_trip(self, z4):
        for f in enumerate_inc(z4, 4):
            assert IncLabeling.from_json(f.to_json()) == f


class TestEnumeration:
    def test_z4_q6(self, z4):
        assert len(enumerate_inc(z4, 6)) == 190

    def test_z6_q5(self):
        assert len(enumerate_inc(zigzag(6), 5)) == 707

    def test_chain_too_long(self):
        assert enumerate_inc(chain(3), 2) == []

    def test_lexicographic_and_distinct(self, z4):
        labs = [f.labels for f in enumerate_inc(z4, 5)]
        assert labs == sorted(set(labs))

    @pytest.mark.parametrize("p", [zigzag(3), zigzag(4), chain(3), zigzag(5)])
    @pytest.mark.parametrize("q", [1, 2, 3, 4])
    def test_count_matches_brute_force(self, p, q):
        assert count_inc(p, q) == brute_count(p, q)

    def test_ten_element_count(self, big):
        assert count_inc(big, 4) == brute_count(big, 4)

    def test_random_labelings_valid(self, big):
        rng = random.Random(1)
        for _ in range(50):
            f = random_inc(big, rng.randint(3, 12), rng)
            IncLabeling(big, f.q, f.labels)


class TestContent:
    def test_running_example(self, running):
        assert content(running).bits == (1, 1, 1, 1, 0, 1, 0, 1, 1)

    def test_z4_example(self, lab):
        c = content(lab(1, 6, 2, 4, q=6))
        assert c.bits == (1, 1, 0, 1, 0, 1)
        assert c.period == 6 and c.ones_count == 4

    def test_all_ones_period(self, lab):
        assert content(lab(1, 4, 2, 3, q=4)).period == 1

    def test_periods(self):
        assert ContentWord.parse("101010").period == 2
        assert ContentWord.parse("110110").period == 3
        assert ContentWord.parse("100").period == 3

    def test_rotate_is_left_shift(self):
        assert str(ContentWord.parse("1100").rotate()) == "1001"
        assert ContentWord.parse("10110").rotate(5) == ContentWord.parse("10110")

    def test_gap_profile(self):
        assert ContentWord.parse("110101").gap_profile == (0, 0, 1, 1)


class TestDeflation:
    def test_running_example(self, running):
        assert deflate(running).labels == (1, 1, 2, 4, 5, 4, 3, 6, 7, 6)

    def test_z4_example(self, lab):
        assert deflate(lab(1, 6, 2, 4, q=6)).labels == (1, 4, 2, 3)

    def test_idempotent(self, z4):
        for w in enumerate_packed(z4):
            assert deflate(w) == w and is_packed(w)

    def test_inflate_example(self, lab):
        w = lab(1, 4, 2, 3, q=4)
        assert inflate(w, ContentWord.parse("110101")).labels == (1, 6, 2, 4)
        assert inflate(w, ContentWord.parse("1111")) == w

    def test_inflate_arity(self, lab):
        with pytest.raises(ArityMismatchError):
            inflate(lab(1, 3, 1, 2, q=3), ContentWord.parse("1111"))

    def test_inflate_deflate_round_trip(self, z4):
        for f in enumerate_inc(z4, 6):
            assert inflate(deflate(f), content(f)) == f


class TestPacked:
    def test_z4(self, z4):
        packed = enumerate_packed(z4)
        assert len(packed) == 11
        assert [sum(1 for w in packed if w.q == r) for r in (2, 3, 4)] == [1, 5, 5]

    def test_chain(self):
        assert [w.labels for w in enumerate_packed(chain(2))] == [(1, 2)]

    def test_z3(self):
        packed = enumerate_packed(zigzag(3))
        assert [w.labels for w in packed][0] == (1, 2, 1)
        assert len(packed) == 3


class TestPatterns:
    def test_reading_words(self, lab):
        assert reading_word(lab(1, 3, 2, 6, q=6)) == (1, 3, 2, 6)
        assert reading_word(IncLabeling(zigzag(6), 5, (1, 5, 2, 3, 2, 4))) == (1, 5, 2, 3, 2, 4)

    def test_not_a_fence(self, running):
        with pytest.raises(NotAFenceError):
            reading_word(running)

    def test_examples(self, lab):
        f = lab(1, 3, 2, 6, q=6)
        g = IncLabeling(zigzag(6), 5, (1, 5, 2, 3, 2, 4))
        assert not contains_pattern(f, (3, 1, 1, 2))
        assert contains_pattern(g, (3, 1, 1, 2))
        assert contains_pattern(f, (1, 3, 2, 4))

    def test_ties_must_match(self):
        assert not word_contains_pattern((1, 2, 3), (1, 1))
        assert word_contains_pattern((2, 1, 2), (1, 1))

    def test_parse_word(self):
        assert parse_word("1326") == parse_word("1,3,2,6") == (1, 3, 2, 6)

    @given(st.lists(st.integers(1, 5), min_size=0, max_size=7), st.lists(st.integers(1, 3), min_size=1, max_size=3))
    def test_pattern_in_itself_and_subsequence(self, word, pat):
        word = tuple(word)
        assert word_contains_pattern(word, word)
        if word_contains_pattern(word, pat):
            assert len(word) >= len(pat)


class TestBalanceAndExtensions:
    def test_balance_examples(self, lab):
        assert is_balanced(lab(1, 3, 2, 6, q=6))
        assert not is_balanced(lab(1, 4, 2, 6, q=6))
        assert is_balanced(lab(1, 2, 1, 2, q=2))

    def test_balance_needs_z4(self):
        with pytest.raises(WrongPosetError):
            is_balanced(IncLabeling(zigzag(3), 3, (1, 2, 1)))

    def test_linear_extensions(self, lab):
        assert is_linear_extension(lab(1, 4, 2, 3, q=4))
        assert not is_linear_extension(lab(1, 2, 1, 3, q=3))
        assert is_linear_extension(IncLabeling(chain(3), 3, (1, 2, 3)))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_content_deflation_consistency(data):
    p = zigzag(data.draw(st.integers(2, 6)))
    q = data.draw(st.integers(p.longest_chain, 8))
    f = random_inc(p, q, random.Random(data.draw(st.integers(0, 10**6))))
    c = content(f)
    w = deflate(f)
    assert c.ones_count == w.q == len(set(f.labels))
    assert c.rotate(c.period) == c and q % c.period == 0
    assert inflate(w, c) == f
