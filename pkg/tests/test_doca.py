import random
from math import log2

import pytest
from hypothesis import given, settings, strategies as st

from slidewin.cost import CostCounters
from slidewin.doca import (
    C_FACT, BlockForest, Doca, DocaWindow, doca_accepts, doca_run, doca_step, effect_compose,
    effect_of_letter, identity_effect,
)
from slidewin.errors import ContractError, InputError
from slidewin.language import LanguageSpec
from slidewin.oracle import StreamGen, check_equivalence, gen_stream, random_doca

START, AS, BS, DONE, DEAD = range(5)


@pytest.fixture
def anbn(lang):
    return lang("anbn.doca").automaton


def test_counter_never_negative():
    with pytest.raises(InputError):
        Doca(1, set(), ("a",), 0, {0}, {(0, "a", 0): (0, -1), (0, "a", 1): (0, 0)}, {}, {})


def test_reset_state_needs_mapping():
    delta = {(0, "a", z): (1, 0) for z in (0, 1)}
    with pytest.raises(InputError):
        Doca(2, {1}, ("a",), 0, {0}, delta, {1: 2}, {(1, 0): 0})


def test_anbn_words(anbn):
    assert doca_accepts(anbn, list("aabb"))
    assert not doca_accepts(anbn, list("aab"))
    assert doca_accepts(anbn, [])
    assert not doca_accepts(anbn, list("ba"))
    for n in range(1, 8):
        assert doca_accepts(anbn, ["a"] * n + ["b"] * n)
        assert not doca_accepts(anbn, ["a"] * n + ["b"] * (n + 1))


def test_letter_effects(anbn):
    ea = effect_of_letter(anbn, "a")
    for m in range(200):
        assert ea.apply(AS, m) == (AS, m + 1)
    eb = effect_of_letter(anbn, "b")
    for q in range(anbn.n_states):
        assert eb.apply(q, 0) == anbn.delta[(q, "b", 0)]


def test_compose_aa(anbn):
    ea = effect_of_letter(anbn, "a")
    eaa, wrote = effect_compose(ea, ea)
    assert eaa.complete and wrote == eaa.size
    for m in range(100):
        assert eaa.apply(AS, m) == (AS, m + 2)
        assert eaa.apply(AS, m) == doca_run(anbn, "aa", AS, m)


def test_identity_effect(anbn):
    e = identity_effect(anbn)
    ea = effect_of_letter(anbn, "a")
    left, _ = effect_compose(e, ea)
    for q in range(anbn.n_states):
        for m in range(10):
            assert left.apply(q, m) == ea.apply(q, m)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 32), st.integers(0, 32))
def test_composed_effects_match_runs(seed, nu, nv):
    rng = random.Random(seed)
    d = random_doca(rng, rng.randint(1, 4), max_period=3)
    u = [rng.choice(d.alphabet) for _ in range(nu)]
    v = [rng.choice(d.alphabet) for _ in range(nv)]

    def effect(word):
        e = identity_effect(d)
        for a in word:
            e, _ = effect_compose(e, effect_of_letter(d, a))
        return e

    eu, ev = effect(u), effect(v)
    # budgeted filling gives the same table as one pass
    out = None
    while out is None or not out.complete:
        out, _ = effect_compose(eu, ev, out, budget=7)
    for q in d.stable:
        for m in range(len(u) + len(v) + 3 * d.p + 1):
            assert out.apply(q, m) == doca_run(d, u + v, q, m)


def test_seven_then_eight_left_pushes(anbn):
    f = BlockForest(anbn)
    for _ in range(7):
        f.push_left("a")
    assert f.levels() == [0, 1, 2]
    f.push_left("a")
    assert f.levels() == [3]


def test_pop_left_splits_leftmost_path(anbn):
    f = BlockForest(anbn)
    for _ in range(8):
        f.push_right("a")
    assert f.levels() == [3]
    f.pop_left()
    assert f.levels() == [0, 1, 2]
    f.check()


@settings(max_examples=60, deadline=None)
@given(st.lists(st.sampled_from("RLrl"), max_size=300))
def test_levels_rise_then_fall(script):
    d = random_doca(random.Random(1), 3)
    f = BlockForest(d)
    ref = []
    for i, kind in enumerate(script):
        a = d.alphabet[i % 2]
        if kind == "R":
            f.push_right(a)
            ref.append(a)
        elif kind == "L":
            f.push_left(a)
            ref.insert(0, a)
        elif ref:
            if kind == "r":
                assert f.pop_right() == ref.pop()
            else:
                assert f.pop_left() == ref.pop(0)
        f.check_shape()
        f.check_trees()
        assert f.contents() == ref


def test_round_trip_depth_six(anbn):
    f = BlockForest(anbn)
    word = list("aababb")
    for a in word:
        f.push_right(a)
    assert f.contents() == word
    for a in reversed(word):
        assert f.pop_right() == a
    assert f.contents() == [] and f.levels() == []


def test_new_blocks_complete_in_time(anbn):
    f = BlockForest(anbn)
    for _ in range(7):
        f.push_right("a")
    f.push_right("a")
    top = f.roots[0]
    assert top.level == 3
    born = f.now
    while top.eff is None:
        f.push_left("b")
        assert f.now - born <= 7
    # leaves carry their effect right away
    f.push_right("b")
    assert f.roots[-1].level == 0 and f.roots[-1].eff is not None


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_factors_cover_window(seed):
    rng = random.Random(seed)
    d = random_doca(rng, rng.randint(1, 4))
    w = DocaWindow(d)
    for op in gen_stream(StreamGen(seed, "2V", d.alphabet, 1500, query_rate=0.05)):
        w.apply(op)
        fs = w.forest.factors()
        assert sum(1 << b.level for b in fs) == len(w)
        assert all(b.eff is not None and b.eff.complete for b in fs)
        assert len(fs) <= w.factor_bound()
        w.forest.check()


def test_window_examples(anbn):
    w = DocaWindow(anbn)
    for a in "aabb":
        w.push_right(a)
    assert w.query() is True
    w = DocaWindow(anbn)
    w.push_left("a")
    w.push_left("b")
    assert w.query() is doca_accepts(anbn, list("ba"))
    with pytest.raises(ContractError):
        DocaWindow(anbn).pop_left()


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 4))
def test_window_matches_oracle(seed, n):
    d = random_doca(random.Random(seed), n)
    spec = LanguageSpec("doca", d, d.alphabet)
    ops = gen_stream(StreamGen(seed, "2V", d.alphabet, 800))
    assert check_equivalence(spec, ops, "2V").ok


def test_work_per_update_is_logarithmic(anbn):
    c = CostCounters()
    w = DocaWindow(anbn, c)
    rng = random.Random(0)
    worst = 0.0
    for _ in range(4000):
        before = c.table_entries + c.node_constructions
        if len(w) and rng.random() < 0.4:
            (w.pop_left if rng.random() < 0.5 else w.pop_right)()
        else:
            (w.push_left if rng.random() < 0.5 else w.push_right)(rng.choice("ab"))
        work = c.table_entries + c.node_constructions - before
        worst = max(worst, work / (log2(len(w) + 2) + 1))
    d = w.doca
    assert worst <= 4 * d.n_states * (d.p + 1) + C_FACT * 2
