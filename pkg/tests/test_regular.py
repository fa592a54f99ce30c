import random

import pytest
from hypothesis import given, settings, strategies as st

from slidewin.automata import dfa_accepts
from slidewin.errors import ContractError, InputError
from slidewin.language import LanguageSpec
from slidewin.oracle import StreamGen, check_equivalence, gen_stream, random_dfa
from slidewin.regular import RegularWindow


def test_ends_b(lang):
    w = lang("ends_b.dfa").window()
    assert w.run([("R", "a"), ("R", "b"), ("Q",)]) == [True]
    assert w.run([("L", "b"), ("PR",), ("Q",)]) == [False]


def test_contents_follow_ops(lang):
    w = lang("mod3.dfa").window()
    w.run([("R", "a"), ("L", "b"), ("R", "a"), ("PL",)])
    assert w.contents() == ["a", "a"]
    assert len(w) == 2


def test_unknown_symbol_and_empty_pop(lang):
    w = lang("ends_b.dfa").window()
    with pytest.raises(InputError):
        w.push_right("z")
    with pytest.raises(ContractError):
        w.pop_left()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 6), st.integers(1, 3), st.sampled_from(["2V", "1V"]))
def test_random_dfas_match_oracle(seed, n, k, model):
    dfa = random_dfa(random.Random(seed), n, "abc"[:k])
    spec = LanguageSpec("dfa", dfa, dfa.alphabet)
    ops = gen_stream(StreamGen(seed, model, dfa.alphabet, 400))
    assert check_equivalence(spec, ops, model).ok


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 20), st.sampled_from(["1F", "2F"]))
def test_fixed_windows_match_oracle(seed, n, model):
    dfa = random_dfa(random.Random(seed), 4, "ab")
    spec = LanguageSpec("dfa", dfa, dfa.alphabet)
    ops = gen_stream(StreamGen(seed, model, dfa.alphabet, 300, n=n))
    assert check_equivalence(spec, ops, model, n=n).ok


def test_queries_cost_at_most_one_composition(lang):
    w = lang("mod3.dfa").window()
    for _ in range(100):
        w.push_right("a")
    c = w.counters
    c.reset_maxima()
    for _ in range(10):
        w.query()
    assert c.max_per_op["compositions"] <= 1


def test_fixed_window_is_sized_once(lang):
    spec = lang("ends_b.dfa")
    w = spec.window(fixed=5)
    assert isinstance(w, RegularWindow)
    for _ in range(5):
        w.push_right("a")
    for a in "abba" * 20:
        w.push_right(a)
        w.pop_left()
        assert w.query() == dfa_accepts(spec.automaton, w.contents())
    assert w.deque.swaps == 0
