import random

import pytest

from slptext.bits import SlpFormatError
from slptext.grammar import (
    Slp,
    access_oracle,
    decompress,
    expansion_lengths,
    load_slp,
    save_slp,
    start_lengths,
    stats,
    validate,
)
from slptext.repair import repair_build

from conftest import GATTACA_TEXT, gattaca_slp


class TestValidate:
    def test_worked_example_is_valid(self, gattaca):
        assert validate(gattaca) == []

    def test_top_down_rule_order_with_forward_refs_is_valid(self):
        # same grammar, rules listed top-down: references point forward
        DOL, A, C, G, T = range(5)
        Z, Y, X, W, V = range(5, 10)
        slp = Slp(
            alphabet=bytes(sorted(b"$ACGT")),
            rules=[(W, X), (C, V), (T, A), (G, V), (A, T)],
            start=[Z, W, A, Y, DOL, Z, Y, A, W],
            text_length=25,
        )
        assert validate(slp) == []
        assert decompress(slp) == GATTACA_TEXT

    def test_dangling_reference_names_rule(self):
        slp = Slp(alphabet=b"ab", rules=[(0, 99)], start=[2], text_length=2)
        violations = validate(slp)
        assert violations and "rule 0" in violations[0]

    def test_self_reference_is_a_cycle(self):
        slp = Slp(alphabet=b"ab", rules=[(0, 1), (0, 0), (0, 1), (5, 0)],
                  start=[2], text_length=2)
        violations = validate(slp)
        assert any("rule 3" in v and "cycle" in v for v in violations)

    def test_mutual_cycle_detected(self):
        slp = Slp(alphabet=b"a", rules=[(2, 0), (1, 0)], start=[1],
                  text_length=3)
        assert any("cycle" in v for v in validate(slp))

    def test_text_length_mismatch(self):
        slp = Slp(alphabet=b"ab", rules=[(0, 1)], start=[2], text_length=3)
        assert any("text_length" in v for v in validate(slp))

    def test_empty_start_rejected(self):
        slp = Slp(alphabet=b"a", rules=[], start=[], text_length=0)
        assert any("start" in v for v in validate(slp))

    def test_unsorted_alphabet_rejected(self):
        slp = Slp(alphabet=b"ba", rules=[], start=[0, 1], text_length=2)
        assert any("alphabet" in v for v in validate(slp))


class TestExpansion:
    def test_worked_example_lengths(self, gattaca):
        # rules are V, X, W, Y, Z
        assert expansion_lengths(gattaca) == [2, 2, 3, 3, 5]
        assert start_lengths(gattaca) == [5, 3, 1, 3, 1, 5, 3, 1, 3]
        assert sum(start_lengths(gattaca)) == 25

    def test_terminals_only(self):
        slp = Slp(alphabet=b"abc", rules=[], start=[0, 1, 2], text_length=3)
        assert expansion_lengths(slp) == []
        assert start_lengths(slp) == [1, 1, 1]

    def test_substitution_identity_on_random_small_grammars(self):
        # expansion of a rule == expansion(left) ++ expansion(right)
        rng = random.Random(6)
        for _ in range(25):
            text = bytes(rng.choice(b"ab") for _ in range(rng.randrange(2, 60)))
            slp = repair_build(text)
            full = decompress(slp)
            lengths = expansion_lengths(slp)
            sigma = slp.sigma

            def expand(sym):
                if sym < sigma:
                    return bytes([slp.alphabet[sym]])
                left, right = slp.rules[sym - sigma]
                return expand(left) + expand(right)

            for k, (left, right) in enumerate(slp.rules):
                assert expand(sigma + k) == expand(left) + expand(right)
                assert len(expand(sigma + k)) == lengths[k]
            assert full == b"".join(expand(sym) for sym in slp.start)


class TestStats:
    def test_worked_example(self, gattaca):
        st = stats(gattaca)
        assert (st.sigma, st.n, st.s, st.r, st.d) == (5, 25, 9, 5, 3)
        assert st.h == 3  # deepest chain: top rule -> W -> V -> terminal

    def test_zero_rule_grammar(self):
        slp = Slp(alphabet=b"abc", rules=[], start=[0, 1, 2], text_length=3)
        st = stats(slp)
        assert (st.d, st.h, st.r) == (0, 0, 0)

    def test_d_at_most_r_and_h_at_least_one(self):
        rng = random.Random(8)
        for _ in range(20):
            text = bytes(rng.choice(b"abcd") for _ in range(rng.randrange(4, 200)))
            st = stats(repair_build(text))
            assert st.d <= st.r
            if st.r:
                assert st.h >= 1

    def test_line_format(self, gattaca):
        assert stats(gattaca).line() == "sigma=5 n=25 s=9 r=5 d=3 h=3"


class TestDecompress:
    def test_worked_example(self, gattaca):
        assert decompress(gattaca) == GATTACA_TEXT

    def test_single_terminal(self):
        slp = Slp(alphabet=b"x", rules=[], start=[0], text_length=1)
        assert decompress(slp) == b"x"

    def test_repair_round_trip_random(self):
        rng = random.Random(13)
        for _ in range(30):
            base = bytes(rng.choice(b"abcde") for _ in range(rng.randrange(1, 80)))
            text = base * rng.randrange(1, 6)
            assert decompress(repair_build(text)) == text

    def test_deep_chain_does_not_recurse(self):
        # left comb 3000 deep; recursion would blow the interpreter limit
        rules = [(0, 0)]
        for k in range(1, 3000):
            rules.append((k, 0))
        slp = Slp(alphabet=b"a", rules=rules, start=[1 + 2999],
                  text_length=3001)
        assert decompress(slp) == b"a" * 3001


class TestAccessOracle:
    def test_worked_example_positions(self, gattaca):
        assert access_oracle(gattaca, 17) == ord("T")
        assert access_oracle(gattaca, 1) == ord("G")
        assert access_oracle(gattaca, 13) == ord("$")

    def test_matches_decompress_everywhere(self, gattaca):
        text = decompress(gattaca)
        for i in range(1, 26):
            assert access_oracle(gattaca, i) == text[i - 1]

    def test_out_of_range(self, gattaca):
        with pytest.raises(IndexError):
            access_oracle(gattaca, 0)
        with pytest.raises(IndexError):
            access_oracle(gattaca, 26)

    def test_agrees_with_decompress_exhaustively(self):
        # exhaustive where the O(n) oracle keeps n^2 cheap, sampled at 1e4
        rng = random.Random(21)
        small = repair_build(bytes(rng.choice(b"abc") for _ in range(257)))
        text = decompress(small)
        for i in range(1, len(text) + 1):
            assert access_oracle(small, i) == text[i - 1]
        big = repair_build(bytes(rng.choice(b"ab") for _ in range(128)) * 78)
        text = decompress(big)
        assert big.text_length == 9984
        for i in range(1, big.text_length + 1, 97):
            assert access_oracle(big, i) == text[i - 1]


class TestSlpFile:
    def test_round_trip(self, gattaca):
        blob = save_slp(gattaca)
        back = load_slp(blob)
        assert save_slp(back) == blob
        assert decompress(back) == GATTACA_TEXT

    def test_bad_magic(self, gattaca):
        blob = bytearray(save_slp(gattaca))
        blob[:4] = b"NOPE"
        with pytest.raises(SlpFormatError):
            load_slp(bytes(blob))

    def test_truncated(self, gattaca):
        blob = save_slp(gattaca)
        with pytest.raises(SlpFormatError):
            load_slp(blob[:-5])

    def test_invalid_grammar_rejected_on_load(self, gattaca):
        import struct
        blob = bytearray(save_slp(gattaca))
        # point rule 0's left child at an undefined id
        offset = 36 + 5
        blob[offset:offset + 8] = struct.pack("<Q", 99)
        with pytest.raises(SlpFormatError):
            load_slp(bytes(blob))

    def test_refuses_to_save_invalid(self):
        slp = Slp(alphabet=b"ab", rules=[(0, 99)], start=[2], text_length=2)
        with pytest.raises(SlpFormatError):
            save_slp(slp)
