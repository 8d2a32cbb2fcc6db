import pytest

from irw.encode import build_R, build_S_prime, pickn_trs, tm_to_trs
from irw.machines import load_fixture
from irw.rewrite import (
    NoMatchError, Rule, Trs, TrsError, apply_step, bounded_normalize,
    bounded_reach, canon_key, close_limit, find_redexes, format_trs,
    is_normal_form, limit_approximant, match, parse_trs, render_trace,
    replay_trace, run_strategy, step_reachability, validate_certificate,
)
from irw.terms import (
    Signature, Symbol, app, bisim_equal, parse_term, print_term, var,
)


@pytest.fixture(scope="module")
def pickn():
    return pickn_trs()


@pytest.fixture(scope="module")
def r_right():
    return build_R(load_fixture("nd_right"))


@pytest.fixture(scope="module")
def xi_only():
    sig = Signature([Symbol("xi", 0), Symbol("a", 1), Symbol("b", 1)])
    P = lambda s: parse_term(s, sig)
    return Trs(sig, [Rule("xi.a", P("xi"), P("a(xi)")),
                     Rule("xi.b", P("xi"), P("b(xi)"))])


def T(trs, s):
    return parse_term(s, trs.sig)


class TestMatching:
    def test_linear(self, pickn):
        b = match(T(pickn, "c(ok(x))"), T(pickn, "c(ok(0(end)))"))
        assert b is not None and print_term(b["x"]) == "0(end)"

    def test_nonlinear_needs_bisim(self, r_right):
        lhs = r_right.rule("run.restart").lhs
        subj = T(r_right, "run(bot, bot, xi, rec X . a(X))")
        assert match(lhs, subj) is None
        subj2 = T(r_right, "run(bot, bot, rec X . a(X), a(rec Y . a(Y)))")
        assert match(lhs, subj2) is not None

    def test_rule_validation(self):
        sig = Signature([Symbol("f", 1), Symbol("e", 0)])
        with pytest.raises(TrsError, match="variable"):
            Rule("bad", var("x"), var("x"))
        with pytest.raises(TrsError, match="rhs variables"):
            Rule("bad", app(sig.get("f"), var("x")), var("y"))


class TestRedexes:
    def test_pickn_root_two_rules(self, pickn):
        assert find_redexes(pickn, T(pickn, "pickn"), 0) == \
            [((), "pickn.c"), ((), "pickn.ok")]

    def test_stop_rule_on_equal_args(self, r_right):
        t = T(r_right, "run(xi, xi, rec X . a(X), bot)")
        reds = find_redexes(r_right, t, 0)
        assert ((), "run.stop") in reds
        assert all(r != "run.restart" for _, r in reds)
        # and the restart rule needs the last two arguments bisimilar
        t2 = T(r_right, "run(bot, xi, rec X . a(X), a(rec Y . a(Y)))")
        assert ((), "run.restart") in find_redexes(r_right, t2, 0)

    def test_no_match_in_cycle(self, xi_only):
        t = T(xi_only, "rec X . a(X)")
        assert find_redexes(xi_only, t, 2) == []

    def test_depth_bound_restricts(self, pickn):
        t = T(pickn, "c(c(pickn))")
        assert find_redexes(pickn, t, 1) == []
        assert find_redexes(pickn, t, 2) == [((1, 1), "pickn.c"), ((1, 1), "pickn.ok")]

    def test_lex_order_matches_bruteforce(self, pickn):
        t = T(pickn, "c(ok(S(0(end))))")
        reds = find_redexes(pickn, t, 8)
        # brute force over all positions of the finite term
        brute = []
        def walk(node, pos):
            for r in pickn.rules:
                if match(r.lhs, node) is not None:
                    brute.append((pos, r.rid))
            for i, c in enumerate(node.children, 1):
                walk(c, pos + (i,))
        walk(t, ())
        assert reds == sorted(brute, key=lambda pr: (pr[0], [x.rid for x in pickn.rules].index(pr[1])))


class TestApply:
    def test_swap(self, pickn):
        st = apply_step(pickn, T(pickn, "c(ok(0(end)))"), (), "c.ok")
        assert print_term(st.after) == "ok(S(0(end)))"

    def test_peel(self):
        peb = tm_to_trs(load_fixture("m_acc"))
        from irw.encode import pebble_trs
        sys = pebble_trs(load_fixture("m_acc"))
        st = apply_step(sys, T(sys, "peb(T)"), (), "peb.T")
        assert print_term(st.after) == "T"

    def test_one_sided_move(self):
        from irw.encode import nd_to_srs
        srs = nd_to_srs(load_fixture("nd_right"))
        st = apply_step(srs, T(srs, "q0(rec X . a(X))"), (), "q0.a.R")
        assert print_term(st.after) == "a(q0(rec X . a(X)))"

    def test_no_match_error(self, pickn):
        with pytest.raises(NoMatchError):
            apply_step(pickn, T(pickn, "pickn"), (), "c.ok")


class TestNormalForms:
    def test_bot_is_nf(self, r_right):
        assert is_normal_form(r_right, T(r_right, "bot"))

    def test_rational_word_is_nf(self, r_right):
        assert is_normal_form(r_right, T(r_right, "rec X . a(X)"))

    def test_pickn_not_nf(self, pickn):
        assert not is_normal_form(pickn, T(pickn, "pickn"))

    def test_requires_ground(self, pickn):
        with pytest.raises(TrsError):
            is_normal_form(pickn, var("x"))


class TestStrategies:
    def test_lo_wraps_c(self, pickn):
        run = run_strategy(pickn, T(pickn, "pickn"), fuel=3)
        assert print_term(run.trace.final) == "c(c(c(pickn)))"
        assert run.fuel_exhausted

    def test_extension_root_steps(self):
        base = tm_to_trs(load_fixture("m_ext"))
        run = run_strategy(base, T(base, "q0(end, end)"), fuel=2)
        assert print_term(run.trace.final) == "q0(S(S(end)), end)"
        assert [s.position for s in run.trace.all_steps] == [(), ()]

    def test_normal_form_empty(self, pickn):
        run = run_strategy(pickn, T(pickn, "ok(S(0(end)))"), fuel=100)
        assert run.trace.all_steps == [] and not run.fuel_exhausted

    def test_seeded_random_deterministic(self, pickn):
        a = run_strategy(pickn, T(pickn, "pickn"), strategy="seeded-random",
                         fuel=6, seed=3)
        b = run_strategy(pickn, T(pickn, "pickn"), strategy="seeded-random",
                         fuel=6, seed=3)
        assert [s.rule_id for s in a.trace.all_steps] == \
            [s.rule_id for s in b.trace.all_steps]

    def test_self_loops_skipped(self):
        sys, start = build_S_prime(load_fixture("m_acc"))
        run = run_strategy(sys, start, fuel=5)
        assert all(s.rule_id != "run.loop" for s in run.trace.all_steps)


class TestCloseLimit:
    def test_xi_tower_closes(self, xi_only):
        run = run_strategy(xi_only, T(xi_only, "xi"), fuel=5)
        got = close_limit(run.trace.all_steps)
        assert got.closure is not None
        assert bisim_equal(got.closure.limit, T(xi_only, "rec X . a(X)"))
        prof = got.closure.certificate.min_depth_profile
        assert all(b > a for a, b in zip(prof, prof[1:]))

    def test_root_self_loop_refused(self):
        sig = Signature([Symbol("r", 1), Symbol("e", 0)])
        P = lambda s: parse_term(s, sig)
        loop = Trs(sig, [Rule("l", P("r(x)"), P("r(x)"))])
        steps = []
        cur = P("r(e)")
        for _ in range(6):
            steps.append(apply_step(loop, cur, (), "l"))
            cur = steps[-1].after
        got = close_limit(steps)
        assert got.closure is None
        assert got.diagnostics["min_depth"] == 0

    def test_head_drift_closes_to_tape(self):
        from irw.encode import nd_to_srs, phi
        from irw.omega import parse_word
        srs = nd_to_srs(load_fixture("nd_right"))
        w = parse_word("(a)^w")
        start = app(srs.sig.get("q0"), phi(w, srs.sig))
        run = run_strategy(srs, start, fuel=6)
        got = close_limit(run.trace.all_steps)
        assert got.closure is not None
        assert bisim_equal(got.closure.limit, phi(w, srs.sig))

    def test_certificate_revalidates(self, xi_only):
        run = run_strategy(xi_only, T(xi_only, "xi"), fuel=5)
        got = close_limit(run.trace.all_steps)
        from irw.rewrite import Epoch
        ep = Epoch(tuple(run.trace.all_steps), got.closure)
        assert validate_certificate(ep)


class TestSearch:
    def test_normalize_pickn_one_step(self, pickn):
        res = bounded_normalize(pickn, T(pickn, "pickn"), fuel=10)
        assert res.found and print_term(res.normal_form) == "ok(0(end))"
        assert res.trace.total_steps == 1

    def test_normalize_found_is_nf(self, pickn, r_right):
        for trs, s in [(pickn, "c(c(pickn))"),
                       (r_right, "D1(rec X . a(X))"),
                       (r_right, "q0(q0(xi))")]:
            res = bounded_normalize(trs, T(trs, s), fuel=4000, max_epochs=3)
            assert res.found
            assert is_normal_form(trs, res.normal_form)
            assert replay_trace(trs, res.trace)

    def test_reach_shortest_seven(self, pickn):
        res = bounded_reach(pickn, T(pickn, "pickn"),
                            T(pickn, "ok(S(S(S(0(end)))))"), fuel=100)
        assert res.reached and res.trace.total_steps == 7

    def test_reach_reflexive(self, pickn):
        res = bounded_reach(pickn, T(pickn, "pickn"), T(pickn, "pickn"), fuel=5)
        assert res.reached and res.trace.total_steps == 0

    def test_reach_via_closures(self, xi_only):
        for word, steps in [("rec X . a(X)", 2), ("rec X . b(X)", 2),
                            ("rec X . a(b(X))", 4)]:
            res = bounded_reach(xi_only, T(xi_only, "xi"), T(xi_only, word),
                                fuel=3000, max_epochs=2)
            assert res.reached, word
            assert res.trace.closures == 1
            assert res.trace.total_steps == steps
            assert replay_trace(xi_only, res.trace)

    def test_sprime_infinite_pebble_exhausts_small_fuel(self):
        sys, start = build_S_prime(load_fixture("m_acc"))
        goal = parse_term("rec X . peb(X)", sys.sig)
        res = bounded_reach(sys, start, goal, fuel=60, max_epochs=2)
        assert not res.reached
        assert res.diagnostics["reason"] == "fuel"
        assert "stable_prefix_depth" in res.diagnostics

    def test_designated_term_normalizes(self, r_right):
        t = T(r_right, "run(xi, q0(rec X. a(X)), D1(rec X. a(X)), D2(rec X. a(X)))")
        res = bounded_normalize(r_right, t, fuel=10_000, max_epochs=3)
        assert res.found and print_term(res.normal_form) == "bot"
        assert res.trace.closures == 2
        assert len(res.trace.epochs) == 3
        assert replay_trace(r_right, res.trace)

    def test_bfs_agrees_with_enumeration(self, pickn):
        # Independent oracle: BFS over abstract states.  ("p", k) stands for
        # c^k(pickn); ("ok", k, j) for c^k(ok(S^j(0(end)))).  Depth cap 8
        # keeps both graphs finite and identical in extent.
        from collections import deque
        cap = 8
        dist = {("p", 0): 0}
        q = deque([("p", 0)])
        while q:
            state = q.popleft()
            if state[0] == "p":
                k = state[1]
                # both pickn rules rewrite at depth k, within bounds iff k <= cap
                succ = [("ok", k, 0), ("p", k + 1)] if k <= cap else []
            else:
                _, k, j = state
                succ = [("ok", k - 1, j + 1)] if k > 0 else []
            for nxt in succ:
                if nxt not in dist:
                    dist[nxt] = dist[state] + 1
                    q.append(nxt)

        def realize(state):
            if state[0] == "p":
                return "c(" * state[1] + "pickn" + ")" * state[1]
            _, k, j = state
            core = "ok(" + "S(" * j + "0(end)" + ")" * j + ")"
            return "c(" * k + core + ")" * k

        reach = step_reachability(pickn, T(pickn, "pickn"), fuel=2000,
                                  depth_bound=cap)
        got = {key: d for key, d in reach.dist.items()}
        want = {canon_key(T(pickn, realize(s))): d for s, d in dist.items()}
        assert got == want
        for n in range(4):
            assert want[canon_key(T(pickn, realize(("ok", 0, n))))] == 2 * n + 1


class TestTerminatingAgreement:
    def test_normalize_matches_exhaustive_enumeration(self):
        # halting machine runs: the search and the plain reduction graph
        # agree on the unique normal form
        from irw.encode import encode_config
        from irw.laws import gen_det_config
        from irw.turing import tm_final
        import random
        m = load_fixture("m_acc")
        trs = tm_to_trs(m)
        rng = random.Random(21)
        for _ in range(15):
            c = gen_det_config(rng, m)
            out = tm_final(m, c, 200)
            assert out.kind == "final"
            start = encode_config(m, c)
            res = bounded_normalize(trs, start, fuel=2000, max_epochs=1)
            assert res.found
            reach = step_reachability(trs, start, fuel=2000)
            nfs = [t for t in reach.terms.values() if is_normal_form(trs, t)]
            assert len(nfs) == 1
            assert bisim_equal(res.normal_form, nfs[0])


class TestApproximant:
    def test_stable_prefix(self, xi_only):
        run = run_strategy(xi_only, T(xi_only, "xi"), fuel=5)
        a = limit_approximant(run.trace, 4)
        assert a.stable and print_term(a.prefix) == "a(a(a(a(cut))))"
        b = limit_approximant(run.trace, 5)
        assert not b.stable and b.witness == 4

    def test_root_loop_unstable(self):
        base = tm_to_trs(load_fixture("m_ext"))
        run = run_strategy(base, T(base, "q0(end, end)"), fuel=6)
        a = limit_approximant(run.trace, 1)
        assert not a.stable and a.witness == 5

    def test_empty_trace_stable(self, pickn):
        run = run_strategy(pickn, T(pickn, "ok(0(end))"), fuel=5)
        assert limit_approximant(run.trace, 3).stable


class TestTrsFiles:
    def test_round_trip(self, pickn):
        text = format_trs(pickn, header=["construction: pickn", "rules: 3"])
        back = parse_trs(text)
        assert [r.rid for r in back.rules] == [r.rid for r in pickn.rules]
        for a, b in zip(back.rules, pickn.rules):
            assert bisim_equal(a.lhs, b.lhs) and bisim_equal(a.rhs, b.rhs)
        assert back.construction == "pickn"

    def test_signature_inference(self):
        text = "rule g: pickn -> c(pickn)\nrule z: pickn -> ok(0(end))\n" \
               "rule s: c(ok(x)) -> ok(S(x))\n"
        trs = parse_trs(text)
        names = {s.name for s in trs.sig}
        assert {"pickn", "c", "ok", "S", "0", "end"} <= names
        assert not is_normal_form(trs, parse_term("pickn", trs.sig))

    def test_bad_line(self):
        with pytest.raises(Exception):
            parse_trs("rule broken pickn -> ok\n")

    def test_render_trace_ordinals(self, r_right):
        t = T(r_right, "run(xi, q0(rec X. a(X)), D1(rec X. a(X)), D2(rec X. a(X)))")
        res = bounded_normalize(r_right, t, fuel=10_000, max_epochs=3)
        out = render_trace(res.trace)
        assert "omega-limit:" in out
        assert "w+0" in out or "w*2+0" in out


class TestPumpStress:
    def _extend_and_check(self, trs, steps, closure, extra_cycles=3):
        # A certificate predicts the future of the reduction: repeating the
        # cycle pattern (same rules, positions pushed down by the offset)
        # must stay applicable, and the endpoints must agree with the
        # claimed limit on ever deeper prefixes.
        cert = closure.certificate
        hole, offset, L = cert.hole, cert.offset, cert.cycle_length
        seq = list(steps)
        cur = seq[-1].after
        for _ in range(extra_cycles * L):
            prev = seq[len(seq) - L]
            pos = hole + offset + prev.position[len(hole):]
            st = apply_step(trs, cur, pos, prev.rule_id)
            seq.append(st)
            cur = st.after
        from irw.terms import truncate_prefix
        dmin = min(s.depth for s in seq[-L:])
        assert dmin > min(s.depth for s in steps[-L:])
        assert canon_key(truncate_prefix(cur, dmin)) == \
            canon_key(truncate_prefix(closure.limit, dmin))

    def test_certified_pumps_predict_reduction(self, xi_only):
        from irw.encode import nd_to_srs, phi
        from irw.omega import parse_word
        cases = []
        run = run_strategy(xi_only, parse_term("xi", xi_only.sig), fuel=6)
        cases.append((xi_only, run.trace.all_steps))
        srs = nd_to_srs(load_fixture("nd_right"))
        for word in ["(a)^w", "ab(ba)^w"]:
            w = parse_word(word)
            start = parse_term(f"q0({print_term(phi(w, srs.sig))})", srs.sig)
            run = run_strategy(srs, start, fuel=8)
            cases.append((srs, run.trace.all_steps))
        for trs, steps in cases:
            att = close_limit(steps)
            assert att.closure is not None
            self._extend_and_check(trs, steps, att.closure)

    def test_search_closures_predict_reduction(self, r_right):
        # closures discovered inside the bounded search satisfy the same
        # prediction property
        t = T(r_right, "run(xi, q0(rec X. a(X)), D1(rec X. a(X)), D2(rec X. a(X)))")
        res = bounded_normalize(r_right, t, fuel=10_000, max_epochs=3)
        assert res.found
        checked = 0
        for ep in res.trace.epochs:
            if ep.closure is not None:
                self._extend_and_check(r_right, list(ep.steps), ep.closure)
                checked += 1
        assert checked == 2
