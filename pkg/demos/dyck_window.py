"""Balanced brackets in a sliding window.

The window accepts exactly the well-matched words over ``( ) [ ]`` with
optional ``c`` fillers.  Run:  python3 demos/dyck_window.py
"""

from pathlib import Path

from slidewin import load_language

LANGS = Path(__file__).parent / "languages"


def show(w, label):
    print(f"{label:<28} {''.join(w.contents()):<12} balanced: {w.query()}")


def main():
    spec = load_language(LANGS / "dyck.vpa")
    w = spec.window()
    for a in "([c])":
        w.push_right(a)
    show(w, "push ([c]) on the right")
    w.push_left("(")
    show(w, "push ( on the left")
    w.push_right(")")
    show(w, "close it on the right")
    w.pop_left()
    show(w, "pop the left end")
    w.pop_right()
    show(w, "pop the right end")
    for a in "])":
        w.push_right(a)
    show(w, "unmatched closers")
    print("live tree nodes:", w.live_nodes)


if __name__ == "__main__":
    main()
