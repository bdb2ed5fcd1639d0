import random

from concrete_ait.pipe import ENDMARKER, Pipe
from concrete_ait.reduction import (
    Status, combinator_eq, decode_bool_list, normal_form, reduce, redex_count,
    step, trace, try_decode_bool_list,
)
from concrete_ait.terms import (
    NIL, PAIR, App, I, K, Lam, Named, R, S, Stream, Var, apply, bool_list, parse_curried,
)
from helpers import random_terms

V = Named("v")
OMEGA = parse_curried("```^x `x x ``^x `x x")


def naive(term, limit, pipe=None, strategy="outermost"):
    gen = trace(term, limit, pipe, strategy)
    while True:
        try:
            next(gen)
        except StopIteration as stop:
            return stop.value


class TestGolden:
    def test_skk(self):
        r = reduce(apply(S, K, K, V), 100)
        assert r.status is Status.NORMAL_FORM and r.term == V
        assert r.steps == 2

    def test_kill_first_argument(self):
        t = App(parse_curried("``^x ``^y y"), S)
        assert reduce(t, 100).term == Lam(Var(0))

    def test_omega_hits_the_limit(self):
        r = reduce(OMEGA, 1000)
        assert r.status is Status.STEP_LIMIT
        assert r.steps == 1000

    def test_read_zero(self):
        pipe = Pipe("0")
        r = reduce(App(R, V), 1, pipe)
        assert r.term == App(K, V) and pipe.empty()

    def test_read_one_behaves_like_identity(self):
        pipe = Pipe("1")
        r = reduce(apply(R, V, Named("w")), 10, pipe)
        assert r.term == Named("w")

    def test_underflow_before_budget(self):
        r = reduce(App(R, V), 0, Pipe())
        assert r.status is Status.UNDERFLOW

    def test_bare_r_is_inert(self):
        assert reduce(R, 10, Pipe("0")).status is Status.NORMAL_FORM


class TestAgainstNaiveStepper:
    def test_same_normal_forms_and_step_counts(self):
        compared = 0
        for t in random_terms(seed=11, count=400, max_size=30):
            fast = reduce(t, 300)
            slow = naive(t, 300)
            assert fast.status == slow.status
            if fast.normal:
                assert fast.term == slow.term
                assert fast.steps == slow.steps
                compared += 1
        assert compared > 300

    def test_reads_match(self):
        prog = apply(R, App(R, V), Named("w"), App(R, Named("u")))
        for bits in ("00", "01", "10", "11"):
            a = reduce(prog, 100, Pipe(bits))
            b = naive(prog, 100, Pipe(bits))
            assert a.term == b.term and a.steps == b.steps

    def test_resume_from_partial_terms(self):
        for t in random_terms(seed=12, count=200, max_size=30):
            whole = reduce(t, 200)
            cur, used = t, 0
            while True:
                r = reduce(cur, 7)
                used += r.steps
                cur = r.term
                if r.status is not Status.STEP_LIMIT or used >= 200:
                    break
            if whole.normal and used <= 200:
                assert cur == whole.term and used == whole.steps


class TestProperties:
    def test_determinism_500_terms(self):
        for t in random_terms(seed=21, count=500, max_size=40):
            a = reduce(t, 500)
            b = reduce(t, 500)
            assert (a.status, a.term, a.steps) == (b.status, b.term, b.steps)

    def test_step_accounting(self):
        for t in random_terms(seed=22, count=300, max_size=40):
            for limit in (1, 5, 50):
                assert reduce(t, limit).steps <= limit

    def test_skk_is_identity_on_random_terms(self):
        checked = 0
        for t in random_terms(seed=23, count=300, max_size=40):
            r = reduce(t, 500)
            if r.normal:
                assert reduce(apply(S, K, K, t), 510).term == r.term
                checked += 1
        assert checked > 200

    def test_confluence_spot_check(self):
        # outermost-first vs innermost-first
        terms = [t for t in random_terms(seed=24, count=2000, max_size=30) if redex_count(t) >= 2]
        both = 0
        for t in terms[:500]:
            a = _walk(t, "outermost")
            b = _walk(t, "innermost")
            if a is not None and b is not None:
                assert a == b
                both += 1
        assert both >= 400


def _walk(t, strategy, bound=200, max_size=500):
    for _ in range(bound):
        n = step(t, None, strategy)
        if n is None:
            return t
        if n.size > max_size:
            return None
        t = n
    return None


class TestBooleanLists:
    def test_nil(self):
        assert decode_bool_list(NIL) == ""
        assert try_decode_bool_list(NIL) == ""

    def test_single_zero(self):
        nf = normal_form(apply(PAIR, K, NIL))
        assert decode_bool_list(nf) == "0"

    def test_non_list(self):
        assert decode_bool_list(S) == ""
        assert try_decode_bool_list(S) is None

    def test_round_trip(self):
        for bits in ("", "0", "1", "0110", "111000"):
            assert decode_bool_list(bool_list(bits)) == bits


class TestStreams:
    def test_stream_reads_lazily(self):
        pipe = Pipe("01" + ENDMARKER)
        # head of the list: the list applied to K
        r = reduce(App(Stream(0), K), 100, pipe)
        assert r.term == K and pipe.consumed == 1

    def test_stream_underflow_resumes(self):
        pipe = Pipe("")
        r = reduce(App(Stream(0), K), 100, pipe)
        assert r.status is Status.UNDERFLOW
        r2 = reduce(r.term, 100, Pipe("1"))
        assert combinator_eq(r2.term, App(K, I))

    def test_combinator_eq(self):
        assert combinator_eq(apply(S, K, K), I)
        assert not combinator_eq(K, I)
        assert not combinator_eq(OMEGA, OMEGA.fn)
