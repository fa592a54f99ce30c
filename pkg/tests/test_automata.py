import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from slidewin.automata import (
    Dfa, TransformMonoid, compose, dfa_accepts, identity_transform, reverse_determinize,
    to_sink_form, final_sink,
)
from slidewin.errors import InputError
from slidewin.oracle import random_dfa

transforms = st.integers(1, 5).flatmap(
    lambda n: st.tuples(*[st.lists(st.integers(0, n - 1), min_size=n, max_size=n).map(tuple)] * 3)
)


def words(alphabet, k):
    for n in range(k + 1):
        yield from itertools.product(alphabet, repeat=n)


def test_compose_reads_left_to_right():
    assert compose((0, 0), (1, 1)) == (1, 1)
    assert compose((1, 0), (0, 0)) == (0, 0)


@given(transforms)
def test_monoid_laws(fgh):
    f, g, h = fgh
    m = TransformMonoid(len(f))
    assert m.mul(m.mul(f, g), h) == m.mul(f, m.mul(g, h))
    assert m.mul(m.identity, f) == f == m.mul(f, m.identity)
    assert m.identity == identity_transform(len(f))


def test_dfa_rejects_bad_tables():
    with pytest.raises(InputError):
        Dfa(2, ("a",), 0, frozenset({1}), [[0], [2]])
    with pytest.raises(InputError):
        Dfa(1, ("a", "a"), 0, frozenset(), [[0, 0]])
    with pytest.raises(InputError):
        Dfa(1, ("a",), 3, frozenset(), [[0]])


def ends_b():
    return Dfa(2, ("a", "b"), 0, frozenset({1}), [[0, 1], [0, 1]])


def test_reverse_of_ends_b_starts_with_b():
    rev = reverse_determinize(ends_b())
    for w in words("ab", 4):
        assert dfa_accepts(rev, w) == (len(w) > 0 and w[0] == "b")


def test_reverse_of_even_a_is_itself():
    even = Dfa(2, ("a",), 0, frozenset({0}), [[1], [0]])
    rev = reverse_determinize(even)
    for w in words("a", 8):
        assert dfa_accepts(rev, w) == (len(w) % 2 == 0)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 5), st.integers(1, 3))
def test_reverse_matches_brute_force(seed, n, k):
    dfa = random_dfa(random.Random(seed), n, "abc"[:k])
    rev = reverse_determinize(dfa)
    for w in words(dfa.alphabet, 5):
        assert dfa_accepts(rev, w) == dfa_accepts(dfa, w[::-1])


def test_sink_form_of_left_ideal():
    # Σ*ab reversed is baΣ*: its accepting states all lead to a sink
    l = Dfa(3, ("a", "b"), 0, frozenset({2}), [[1, 0], [1, 2], [1, 0]])
    rev = to_sink_form(reverse_determinize(l))
    s = final_sink(rev)
    assert s is not None and rev.finals == {s}
    for w in words("ab", 5):
        assert dfa_accepts(rev, w) == (w[:2] == ("b", "a"))


def test_sink_form_rejects_non_ideal():
    # "ends in b" read as a reversal automaton: accepting is not absorbing
    with pytest.raises(InputError):
        to_sink_form(ends_b())
