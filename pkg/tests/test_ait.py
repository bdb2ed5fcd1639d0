import math
from fractions import Fraction

import pytest

from concrete_ait.ait import (
    HaltingRecord, OmegaBound, RecordFileError, catalan, catalan_asymptotic,
    complexity_upper_bound, count_trees, enumerate_halting, kraft_prefix_check,
    omega_from_records, omega_lower_bound, read_record_file,
)
from concrete_ait.encodings import SIMPLE_CHAITIN, simple_chaitin_eval
from concrete_ait.keraia import pf_keraia_eval
from concrete_ait.terms import I, K, S


class TestEnumerate:
    def test_three_bits(self):
        recs = enumerate_halting("simple", 3, 10_000)
        assert [r.codeword for r in recs] == ["0", "100"]
        assert recs[1].output_term == "K"

    def test_one_bit(self):
        assert [r.codeword for r in enumerate_halting("simple", 1, 10_000)] == ["0"]

    def test_pf_keraia_four_bits(self):
        codewords = [r.codeword for r in enumerate_halting("pf-keraia", 4, 10_000)]
        assert "1001" in codewords

    @pytest.mark.parametrize("machine", ["simple", "ext", "pf-keraia"])
    def test_explore_matches_brute_force(self, machine):
        a = enumerate_halting(machine, 11, 10_000)
        b = enumerate_halting(machine, 11, 10_000, method="brute")
        assert a == b
        assert a.step_limited == b.step_limited

    def test_step_limited_counts_match(self):
        a = enumerate_halting("ext", 11, 10)
        b = enumerate_halting("ext", 11, 10, method="brute")
        assert a == b and a.step_limited == b.step_limited > 0

    def test_length_lex_order(self):
        recs = enumerate_halting("simple", 12, 10_000)
        keys = [(len(r.codeword), r.codeword) for r in recs]
        assert keys == sorted(keys)

    def test_records_reproduce(self):
        for r in enumerate_halting("simple", 11, 10_000):
            out = simple_chaitin_eval(r.codeword, 10_000)
            assert HaltingRecord.from_outcome(r.codeword, out) == r
        for r in enumerate_halting("pf-keraia", 9, 10_000):
            assert HaltingRecord.from_outcome(r.codeword, pf_keraia_eval(r.codeword)) == r

    def test_machine_object(self):
        assert enumerate_halting(SIMPLE_CHAITIN, 5, 1000) == enumerate_halting("simple", 5, 1000)

    def test_workers_do_not_change_the_result(self):
        assert enumerate_halting("simple", 12, 10_000, workers=2) == enumerate_halting("simple", 12, 10_000)

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            enumerate_halting("iota", 3, 100)
        with pytest.raises(ValueError):
            enumerate_halting("simple", 3, 0)
        with pytest.raises(ValueError):
            enumerate_halting("fixed3", 3, 100, method="explore")


class TestRecordFile:
    def test_resume_is_bit_identical(self, tmp_path):
        path = tmp_path / "simple.tsv"
        full = omega_lower_bound("simple", 12, 10_000, record_file=path)
        text = path.read_text()
        # cut the file inside the last units, then resume
        lines = text.splitlines(keepends=True)
        path.write_text("".join(lines[: len(lines) // 2]) + "10110\t3")
        resumed = omega_lower_bound("simple", 12, 10_000, record_file=path, resume=True)
        assert resumed == full
        assert resumed.records == full.records
        assert path.read_text() == text

    def test_header_mismatch(self, tmp_path):
        path = tmp_path / "r.tsv"
        enumerate_halting("simple", 5, 1000, record_file=path)
        with pytest.raises(RecordFileError):
            enumerate_halting("simple", 5, 2000, record_file=path, resume=True)

    def test_read_back(self, tmp_path):
        path = tmp_path / "r.tsv"
        recs = enumerate_halting("pf-keraia", 7, 1000, record_file=path)
        header, units, back, limited, _ = read_record_file(path)
        assert back == list(recs) and limited == 0
        assert "machine=pf-keraia" in header


class TestOmega:
    def test_three_bits(self):
        bound = omega_lower_bound("simple", 3, 10_000)
        assert bound.lower == Fraction(5, 8)
        assert bound.report() == "5/2^3 = 0.101"

    def test_zero_length(self):
        assert omega_lower_bound("simple", 0, 10_000).lower == 0

    def test_monotone(self):
        grid = [omega_lower_bound("simple", n, s).lower
                for n, s in ((6, 100), (8, 1000), (10, 1000), (12, 10_000))]
        assert grid == sorted(grid)
        assert all(0 <= x <= 1 for x in grid)

    def test_exact_resum(self):
        bound = omega_lower_bound("pf-keraia", 12, 10_000)
        again = omega_from_records([HaltingRecord.from_line(r.to_line()) for r in bound.records], 12, 10_000)
        assert again == bound and again.lower == sum(Fraction(1, 2 ** len(r.codeword)) for r in bound.records)

    def test_binary_expansion(self):
        b = OmegaBound(5, 3, 3, 1)
        assert b.binary_expansion() == "0.101"
        assert b.binary_expansion(5) == "0.10100"
        assert b.binary_expansion(2) == "0.10"
        assert OmegaBound(8, 3, 3, 1).binary_expansion() == "1.000"


class TestComplexity:
    def test_k_on_simple(self):
        assert complexity_upper_bound("simple", K, 3, 10_000) == 3
        assert complexity_upper_bound("simple", "K", 3, 10_000) == 3

    def test_unreachable(self):
        assert complexity_upper_bound("simple", "0110", 3, 10_000) is None
        assert complexity_upper_bound("simple", S, 3, 10_000) is None

    def test_identity_on_pf_keraia(self):
        assert complexity_upper_bound("pf-keraia", I, 4, 10_000) == 4

    def test_bit_targets(self):
        recs = [HaltingRecord("0", 0, "", "S"), HaltingRecord("110", 0, "0", "x"),
                HaltingRecord("111", 0, "0", "y"), HaltingRecord("1", 0, "01", "01")]
        assert complexity_upper_bound("simple", "0", 5, 1, records=recs) == 3
        assert complexity_upper_bound("simple", "01", 5, 1, records=recs) == 1
        assert complexity_upper_bound("simple", "01", 0, 1, records=recs) is None

    def test_empty_bits_need_a_real_list(self):
        recs = [HaltingRecord("0", 0, "", "S"), HaltingRecord("10", 0, "", "`K I")]
        assert complexity_upper_bound("simple", "", 2, 1, records=recs) == 2

    def test_antitone(self):
        bounds = [complexity_upper_bound("simple", S, n, 10_000) for n in (3, 5, 9, 13)]
        assert bounds[0] is None
        assert bounds[1:] == [5, 5, 5]


class TestCounting:
    def test_small(self):
        assert catalan(0) == 1
        assert catalan(3) == 5
        assert count_trees(7) == 5
        assert count_trees(7, method="strings") == 5

    def test_against_catalan(self):
        for n in range(11):
            assert count_trees(2 * n + 1) == catalan(n)
        for n in range(7):
            assert count_trees(2 * n + 1, method="strings") == catalan(n)

    def test_even_lengths(self):
        assert count_trees(0) == 0 and count_trees(8) == 0

    def test_asymptotic(self):
        ratio = catalan(16) / catalan_asymptotic(16)
        assert 0.9 <= ratio <= 1.1
        assert math.isclose(catalan_asymptotic(16), 4 ** 16 / math.sqrt(math.pi * 16 ** 3))

    def test_negative(self):
        with pytest.raises(ValueError):
            catalan(-1)


class TestKraft:
    def test_examples(self):
        assert kraft_prefix_check(["0", "10"])
        assert not kraft_prefix_check(["0", "01"])
        assert kraft_prefix_check([])

    def test_complete_code(self):
        assert kraft_prefix_check(["0", "1"])
        assert kraft_prefix_check(["00", "01", "10", "110", "111"])
        assert not kraft_prefix_check(["00", "0", "1"])

    def test_simple_machine(self):
        assert kraft_prefix_check(enumerate_halting("simple", 12, 10_000))
