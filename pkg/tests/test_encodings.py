import pytest

from concrete_ait.encodings import (
    FOKKER, IOTA, PAIR_COMBINATOR, SIMPLE_ZERO, ZOT_BITS, ZOT_EMPTY,
    blc_eval, blc_parse, extend_universal, extended_eval, extended_machine,
    fokker_combinator, fokker_eval, iota_eval, simple_chaitin_eval, zot_eval, zot_term,
)
from concrete_ait.reduction import combinator_eq, normal_form, reduce
from concrete_ait.runtime import Halted, Reason
from concrete_ait.terms import (
    App, I, K, Lam, R, S, Var, alpha_eq, apply, parse_curried,
)
from concrete_ait.trees import ProgramSyntaxError, iter_trees
from helpers import random_terms


class TestIota:
    def test_identity(self):
        out = iota_eval("100")
        assert out.halted
        assert combinator_eq(out.term, I)
        # extensionally I, literally S K (K K)
        assert out.term == apply(S, K, App(K, K))

    def test_k(self):
        out = iota_eval("1010100")
        assert out.halted and out.term == K

    def test_single_leaf(self):
        assert iota_eval("0").term == IOTA

    def test_trailing_bits_rejected(self):
        assert iota_eval("1001").reason is Reason.SYNTAX_ERROR


class TestFokker:
    def test_closed(self):
        assert fokker_combinator().fv == 0
        assert fokker_combinator() == FOKKER

    def test_fewer_applications_for_s(self):
        def first(leaf, target):
            for n in range(1, 12, 2):
                for prog in iter_trees(n):
                    out = iota_eval(prog, 1000, leaf)
                    if out.halted and combinator_eq(out.term, target):
                        return prog
        fokker_s = first(FOKKER, S)
        iota_s = first(IOTA, S)
        assert fokker_s == "10100"
        assert fokker_s.count("1") < iota_s.count("1")

    def test_two_leaves(self):
        out = fokker_eval("100")
        assert out.halted
        assert out.term == normal_form(App(FOKKER, FOKKER))


class TestSimpleChaitin:
    @pytest.mark.parametrize("bits, expected", [("100", K), ("10100", S), ("1010100", R)])
    def test_table(self, bits, expected):
        out = simple_chaitin_eval(bits)
        assert out.halted and alpha_eq(out.term, expected)

    @pytest.mark.parametrize("bits, reason", [
        ("1", Reason.SYNTAX_ERROR),
        ("00", Reason.OVERFLOW),
        ("110101000", Reason.UNDERFLOW),
    ])
    def test_errors(self, bits, reason):
        assert simple_chaitin_eval(bits).reason is reason

    def test_first_halt_with_input(self):
        out = simple_chaitin_eval("1101010000")
        assert out.halted and out.term == App(K, SIMPLE_ZERO)

    def test_leaf_alone_halts(self):
        # the program "0" is complete and needs no input
        out = simple_chaitin_eval("0")
        assert out.halted and out.term == SIMPLE_ZERO


class TestExtended:
    @pytest.mark.parametrize("bits, expected", [
        ("11001100100", App(S, K)),
        ("110011001100100", K),
        ("1100110011001100100", S),
        ("1011001100100", R),
    ])
    def test_table(self, bits, expected):
        out = extended_eval(bits)
        assert out.halted and alpha_eq(out.term, expected)

    def test_identity_row(self):
        out = extended_eval("1100100")
        assert out.halted and combinator_eq(out.term, I)

    def test_two_leaves_give_universal(self):
        checked = 0
        for u in random_terms(seed=31, count=200, max_size=25):
            nf = reduce(u, 500)
            if not nf.normal:
                continue
            out = extended_machine(u).run("100", 2000)
            assert out.halted and alpha_eq(out.term, nf.term)
            checked += 1
            if checked == 20:
                break
        assert checked == 20

    def test_identity_universal(self):
        out = extended_machine(I).run("100")
        assert out.term == I

    def test_open_universal_rejected(self):
        with pytest.raises(ValueError):
            extend_universal(Var(0))

    def test_pair_selects(self):
        assert normal_form(apply(PAIR_COMBINATOR, S, R, K)) == S


class TestZot:
    def test_empty(self):
        out = zot_eval("")
        assert out.halted and out.term == normal_form(ZOT_EMPTY)

    def test_zero(self):
        out = zot_eval("0")
        assert out.term == normal_form(App(ZOT_EMPTY, ZOT_BITS["0"]))

    def test_left_fold_depth(self):
        t = zot_term("1101")
        depth = 0
        while isinstance(t, App):
            depth += 1
            t = t.fn
        assert depth == 4 and t == ZOT_EMPTY

    def test_never_reads(self):
        for bits in ("", "0", "1", "10", "0110"):
            assert zot_eval(bits, 5000).reason in (None, Reason.STEP_LIMIT)


class TestBlc:
    def test_identity(self):
        assert blc_parse("0010") == (Lam(Var(0)), "")

    def test_second_projection(self):
        assert blc_parse("000010") == (Lam(Lam(Var(0))), "")

    def test_application(self):
        assert blc_parse("01 0010 0010") == (App(Lam(Var(0)), Lam(Var(0))), "")

    def test_rest(self):
        assert blc_parse("00101") == (Lam(Var(0)), "1")

    def test_truncated(self):
        with pytest.raises(ProgramSyntaxError):
            blc_parse("001")
        assert blc_eval("001").reason is Reason.SYNTAX_ERROR

    def test_identity_on_empty_list(self):
        out = blc_eval("0010")
        assert out.halted and out.term == App(K, I)

    def test_identity_on_one_bit(self):
        out = blc_eval("00100")
        assert out.bits == "0"

    def test_open_program(self):
        assert blc_eval("10").reason is Reason.SYNTAX_ERROR

    def test_outputs_are_halted(self):
        assert isinstance(blc_eval("0010111"), Halted)
        assert blc_eval("0010111").bits == "111"
