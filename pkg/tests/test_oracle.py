import random

import pytest
from hypothesis import given, settings, strategies as st

from slidewin.automata import Dfa
from slidewin.errors import ContractError, InputError, ModelViolation
from slidewin.language import LanguageSpec
from slidewin.oracle import (
    NaiveWindow, StreamGen, check_equivalence, drop_empty_pops, gen_stream, naive_apply,
    random_dfa, validate_stream,
)
from slidewin.window import MODELS


def test_naive_semantics():
    w = NaiveWindow()
    assert naive_apply(w, ("PL",)) == []
    assert naive_apply(w, ("PR",)) == []
    assert naive_apply(w, ("R", "a")) == ["a"]
    w = NaiveWindow("bc")
    assert naive_apply(w, ("L", "a")) == list("abc")
    assert naive_apply(w, ("Q",)) is None
    with pytest.raises(InputError):
        naive_apply(w, ("X",))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(MODELS), st.integers(0, 400), st.integers(0, 6))
def test_generated_streams_are_valid(seed, model, length, n):
    g = StreamGen(seed, model, ("a", "b"), length, n=n)
    ops = gen_stream(g)
    assert len(ops) == length
    assert ops == gen_stream(g)
    validate_stream(ops, model)
    if model[0] == "1":
        assert all(op[0] in ("R", "PL", "Q") for op in ops)
    if model[1] == "V":
        assert drop_empty_pops(ops) == ops


def test_fixed_stream_keeps_length():
    ops = gen_stream(StreamGen(3, "2F", ("a", "b"), 500, n=4))
    w = NaiveWindow("aaaa")
    pending = False
    for op in ops:
        naive_apply(w, op)
        pending = op[0] in ("R", "L")
        if not pending:
            assert len(w) == 4
    assert any(op[0] == "L" for op in ops)


def test_validate_stream_rejections():
    with pytest.raises(ModelViolation) as e:
        validate_stream([("R", "a"), ("L", "a")], "1V")
    assert e.value.index == 1
    with pytest.raises(ModelViolation) as e:
        validate_stream([("R", "a"), ("Q",)], "1F")
    assert e.value.index == 1
    with pytest.raises(ModelViolation):
        validate_stream([("L", "a"), ("PL",)], "2F")
    with pytest.raises(ModelViolation):
        validate_stream([("PL",)], "2F")
    with pytest.raises(ModelViolation) as e:
        validate_stream([("R", "a")], "1F")
    assert e.value.index == 1
    validate_stream([("L", "a"), ("PR",), ("Q",)], "2F")
    with pytest.raises(InputError):
        validate_stream([], "3V")


def test_drop_empty_pops():
    ops = [("PL",), ("R", "a"), ("PR",), ("PR",), ("Q",)]
    assert drop_empty_pops(ops) == [("R", "a"), ("PR",), ("Q",)]
    assert drop_empty_pops([("PL",)], start=1) == [("PL",)]


def test_passing_pair_reports_nothing():
    dfa = random_dfa(random.Random(0), 3, "ab")
    spec = LanguageSpec("dfa", dfa, dfa.alphabet)
    rep = check_equivalence(spec, gen_stream(StreamGen(1, "2V", "ab", 500)))
    assert rep.ok and rep.first is None and rep.queries > 0


def test_flipped_final_state_is_caught():
    ends_b = Dfa(2, ("a", "b"), 0, frozenset({1}), [[0, 1], [0, 1]])
    flipped = Dfa(2, ("a", "b"), 0, frozenset({0}), [[0, 1], [0, 1]])
    spec = LanguageSpec("dfa", ends_b, ends_b.alphabet)
    bad = LanguageSpec("dfa", flipped, flipped.alphabet).window()
    ops = [("R", "a"), ("R", "a"), ("Q",), ("R", "b"), ("Q",)]
    rep = check_equivalence(spec, ops, window=bad)
    # every query distinguishes the two, so the first one is reported
    assert rep.first.index == 2
    assert rep.first.window == ["a", "a"]
    assert rep.first.expected is False and rep.first.got is True


def test_misuse_rejected_before_replay(lang):
    spec = lang("ends_ab.li")
    with pytest.raises(ModelViolation):
        check_equivalence(spec, [("R", "a"), ("L", "b"), ("Q",)], "1V")
    with pytest.raises(ContractError):
        check_equivalence(spec, [("R", "a")], "2V")
