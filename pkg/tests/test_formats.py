import os
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import LANG_DIR
from slidewin.errors import ParseError
from slidewin.formats import (
    dump_dfa, dump_language, dump_ops, load_language, parse_language, parse_ops,
)
from slidewin.language import LanguageSpec
from slidewin.oracle import random_doca, random_dfa, random_vpa


def test_ends_b_has_two_states(lang):
    spec = lang("ends_b.dfa")
    assert spec.kind == "dfa" and spec.automaton.n_states == 2


@pytest.mark.parametrize("name", sorted(os.listdir(LANG_DIR)))
def test_files_round_trip(name):
    spec = load_language(os.path.join(LANG_DIR, name))
    again = parse_language(dump_language(spec), base_dir=LANG_DIR)
    assert again == spec


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(["dfa", "vpa", "doca"]))
def test_random_automata_round_trip(seed, kind):
    rng = random.Random(seed)
    if kind == "dfa":
        a = random_dfa(rng, rng.randint(1, 5), "abc")
    elif kind == "vpa":
        a = random_vpa(rng, rng.randint(1, 4))
    else:
        a = random_doca(rng, rng.randint(1, 4))
    spec = LanguageSpec(kind, a, a.alphabet)
    assert parse_language(dump_language(spec)) == spec


BAD = [
    ("vpa\ncalls a\nreturns a\ninternals\nstates 1\nstack Z\ninitial 0\nfinal 0\n", "a"),
    ("doca\nstable q\nalphabet a\ninitial q\ntrans q a 0 q -1\ntrans q a 1 q 0\n", "negative"),
    ("dfa\nalphabet a\nstates 1\ninitial 0\n", "missing transition"),
    ("dfa\nalphabet a\nstates 1\ninitial 0\ntrans 0 a 1\n", "out of range"),
    ("dfa\nalphabet a\nstates x\n", "integer"),
    ("len N=0\n", "positive"),
    ("len N=2 A=3\n", "outside"),
    ("li\nalphabet a b\nstates 2\ninitial 0\nfinal 1\ntrans 0 a 0\ntrans 0 b 1\ntrans 1 a 0\ntrans 1 b 1\n", "path"),
    ("nfa\n", "unknown"),
    ("", "empty"),
]


@pytest.mark.parametrize("text,needle", BAD)
def test_validation_errors(text, needle):
    with pytest.raises(ParseError) as e:
        parse_language(text)
    assert needle in str(e.value)
    assert e.value.lineno >= 1


def test_error_points_at_line():
    text = "dfa\nalphabet a\nstates 1\ninitial 0\ntrans 0 a 0\nbogus 1\n"
    with pytest.raises(ParseError) as e:
        parse_language(text, source="x.dfa")
    assert e.value.lineno == 6 and str(e.value).startswith("x.dfa:6:")


def test_doca_names_and_numbers(lang):
    spec = lang("anbn.doca")
    assert spec.automaton.n_states == 5 and spec.automaton.initial == 0
    numeric = parse_language(dump_language(spec))
    assert numeric.automaton == spec.automaton


def test_ops_parse_and_dump():
    text = "R a  # push\n\nL b\nPL\nPR\nQ\n"
    ops = parse_ops(text.splitlines())
    assert ops == [("R", "a"), ("L", "b"), ("PL",), ("PR",), ("Q",)]
    assert parse_ops(dump_ops(ops).splitlines()) == ops
    for bad in ("X", "R", "PL x", "Q 1"):
        with pytest.raises(ParseError):
            parse_ops([bad])


def test_len_alphabet_line():
    spec = parse_language("len N=3 A=1,2 B=\nalphabet x y\n")
    assert spec.automaton == (3, frozenset({1, 2}), frozenset())
    assert spec.alphabet == ("x", "y")
    assert parse_language(dump_language(spec)) == spec


def test_li_given_reversal_matches_derived(lang):
    derived = lang("ends_ab.li")
    given = parse_language("li\n" + dump_dfa(derived.automaton))
    assert given.original is None
    for word in ("ab", "aab", "ba", "", "b", "bab"):
        assert given.accepts(list(word)) == derived.accepts(list(word))
