"""A counter DOCA for a^n b^n and a few counter-based windows.

Run:  python3 demos/counter_window.py
"""

from pathlib import Path

from slidewin import MarkedCounter, load_language

LANGS = Path(__file__).parent / "languages"


def main():
    c = MarkedCounter(ell=3)
    print("marked counter 0..4:", " ".join(_inc_all(c, 4)))

    anbn = load_language(LANGS / "anbn.doca")
    w = anbn.window()
    for a in "aaabbb":
        w.push_right(a)
    print("aaabbb in a^n b^n:", w.query())
    w.pop_right()
    print("aaabb  in a^n b^n:", w.query())
    w.pop_left()
    print("aabb   in a^n b^n:", w.query())

    combo = load_language(LANGS / "even_ends_ab.combo")
    w = combo.window()
    for word in ("ab", "aab", "baab", "bab"):
        while len(w):
            w.pop_left()
        for a in word:
            w.push_right(a)
        print(f"{word:<5} even length and ends in ab: {w.query()}")


def _inc_all(c, k):
    out = [c.render()]
    for _ in range(k):
        c.inc()
        out.append(c.render())
    return out


if __name__ == "__main__":
    main()
