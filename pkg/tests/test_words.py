import itertools

import pytest
from hypothesis import given, strategies as st

from braid3.oracle import equal_in_group, fingerprint
from braid3.words import (WordError, component_count, compose_perm,
                          cyclic_reduce, exponent_sum, format_word,
                          free_reduce, inverse_word, mirror_word, orbit_key,
                          parse_word, permutation_of, reduce_word, relabel,
                          rotate, to_artin)

from conftest import LETTERS, all_words, random_word

words_st = st.lists(st.sampled_from(LETTERS), max_size=8).map(tuple)


class TestParse:
    def test_unreduced_inverse_pair(self):
        assert parse_word("a1 A1") == (1, -1)

    def test_artin_exponent(self):
        assert parse_word("s1^3") == (1, 1, 1)

    def test_dot_separator_alpha(self):
        assert parse_word("a2.a1") == (2, 1)

    def test_negative_exponent_inverts(self):
        assert parse_word("a2^-2") == (-2, -2)
        assert parse_word("S2^-1") == (2,)

    def test_adjacent_tokens(self):
        assert parse_word("a1a2A3s2") == (1, 2, -3, 2)

    def test_empty(self):
        assert parse_word("") == ()

    @pytest.mark.parametrize("bad", ["a4", "b1", "a1^0", "a1^", "^2", "  .  "])
    def test_errors(self, bad):
        with pytest.raises(WordError):
            parse_word(bad)

    def test_error_carries_position(self):
        with pytest.raises(WordError) as ei:
            parse_word("a1 a2 z9")
        assert ei.value.position == 6


class TestFormat:
    def test_band(self):
        assert format_word((1, -2)) == "a1 A2"

    def test_empty(self):
        assert format_word(()) == ""

    def test_artin_expands_a3(self):
        assert format_word((3,), "artin") == "s2 s1 S2"
        assert format_word((-3,), "artin") == "s2 S1 S2"

    @given(words_st)
    def test_band_roundtrip_exact(self, w):
        assert parse_word(format_word(w)) == w

    @given(words_st)
    def test_artin_roundtrip_in_group(self, w):
        assert equal_in_group(parse_word(format_word(w, "artin")), w)


class TestReduce:
    def test_free_cancel(self):
        assert reduce_word((1, -1)) == ()
        assert reduce_word((2, 1, -1, 3)) == (2, 3)

    def test_cyclic_end_pair(self):
        assert reduce_word((-1, 2, 1), cyclic=True) == (2,)

    def test_free_preserves_element(self):
        for w in all_words(4):
            assert equal_in_group(w, free_reduce(w))

    def test_cyclic_preserves_profile(self):
        from braid3.oracle import conjugacy_profile
        for w in all_words(4):
            assert conjugacy_profile(w) == conjugacy_profile(cyclic_reduce(w))

    @given(words_st)
    def test_reduced_has_no_adjacent_inverses(self, w):
        r = cyclic_reduce(w)
        assert all(r[i] != -r[i + 1] for i in range(len(r) - 1))
        assert len(r) < 2 or r[0] != -r[-1]


class TestPermutation:
    def test_identity(self):
        assert permutation_of(()) == (1, 2, 3)
        assert component_count(()) == 3

    def test_a3_is_the_1_3_transposition(self):
        assert permutation_of((3,)) == (3, 2, 1)
        assert component_count((3,)) == 2

    def test_product_of_all_three(self):
        # (1 2)(2 3)(1 3) fixes 1 and swaps 2 and 3
        assert permutation_of((1, 2, 3)) == (1, 3, 2)
        assert component_count((1, 2, 3)) == 2

    def test_homomorphism_exhaustive(self):
        perms = {w: permutation_of(w) for w in all_words(3)}
        for u, pu in perms.items():
            for v, pv in perms.items():
                assert permutation_of(u + v) == compose_perm(pu, pv)

    @given(words_st, words_st)
    def test_homomorphism(self, u, v):
        assert permutation_of(u + v) == compose_perm(
            permutation_of(u), permutation_of(v))

    @given(words_st)
    def test_component_count_range(self, w):
        assert component_count(w) in (1, 2, 3)


class TestMirror:
    def test_artin_letters_invert(self):
        assert mirror_word((1,)) == (-1,)
        assert equal_in_group(mirror_word((2, 1)), (-2, -1))

    def test_a3_mirror(self):
        # sigma2^-1 sigma1^-1 sigma2 re-read through the Artin alphabet
        assert equal_in_group(mirror_word((3,)), (-2, -1, 2))

    def test_involution_on_random_words(self, rng):
        for _ in range(1000):
            w = random_word(rng, 8)
            assert equal_in_group(mirror_word(mirror_word(w)), w)

    def test_mirror_is_a_homomorphism(self):
        for u in all_words(2):
            for v in all_words(2):
                assert equal_in_group(mirror_word(u + v),
                                      mirror_word(u) + mirror_word(v))


class TestMisc:
    def test_exponent_sum_matches_artin(self):
        for w in all_words(4):
            assert exponent_sum(w) == exponent_sum(to_artin(w))

    def test_relabel_is_conjugation(self):
        alpha = (2, 1)
        for w in all_words(3):
            assert equal_in_group(relabel(w, 1),
                                  inverse_word(alpha) + w + alpha)

    @given(words_st, st.integers(0, 7))
    def test_rotation_conjugate(self, w, r):
        from braid3.oracle import conjugacy_profile
        assert conjugacy_profile(w) == conjugacy_profile(rotate(w, r))

    @given(words_st)
    def test_orbit_key_stable(self, w):
        k = orbit_key(w)
        assert orbit_key(rotate(w, 1)) == k
        assert orbit_key(relabel(w, 1)) == k
