"""Slide a window over a text and ask whether it ends in ``b``.

Run from the repository root:  python3 demos/regular_window.py
"""

import random
from pathlib import Path

from slidewin import dfa_accepts, load_language

LANGS = Path(__file__).parent / "languages"


def main():
    spec = load_language(LANGS / "ends_b.dfa")
    w = spec.window()
    text = "abbabaab"
    width = 3
    for i, a in enumerate(text):
        w.push_right(a)
        if len(w) > width:
            w.pop_left()
        shown = text[max(0, i + 1 - width): i + 1]
        print(f"{shown:>{width}}  ends in b: {w.query()}")

    # both ends move; the answer always agrees with a fresh run of the DFA
    rng = random.Random(1)
    content = list(text[-width:])
    for _ in range(10000):
        if content and rng.random() < 0.45:
            if rng.random() < 0.5:
                w.pop_left()
                content.pop(0)
            else:
                w.pop_right()
                content.pop()
        else:
            a = rng.choice("ab")
            if rng.random() < 0.5:
                w.push_left(a)
                content.insert(0, a)
            else:
                w.push_right(a)
                content.append(a)
        assert w.query() == dfa_accepts(spec.automaton, content)
    print("10000 random two-way edits: answers match")
    print("most compositions in one op:", w.counters.max_per_op["compositions"])


if __name__ == "__main__":
    main()
