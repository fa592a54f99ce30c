"""Line-oriented text formats for languages and op streams.

Every file starts with a header line naming the class (``dfa``, ``vpa``,
``doca``, ``len``, ``li``, ``li-from-l`` or ``combo``).  ``#`` starts a
comment and blank lines are ignored.  See the README for full examples.
"""

import os

from .automata import Dfa, REVERSE_STATE_CAP, reverse_determinize, to_sink_form
from .counter import AND, NOT, OR
from .doca import Doca
from .errors import InputError, ParseError
from .language import DEFAULT_ALPHABET, LanguageSpec
from .vpl import BOTTOM, Vpa
from .window import LPOP, LPUSH, OP_KINDS, QUERY, RPOP, RPUSH

STACK_HINTS = {BOTTOM, "implicit"}


def _lines(text):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


class _Reader:
    def __init__(self, source):
        self.source = source

    def error(self, lineno, msg):
        return ParseError(lineno, msg, self.source)

    def int(self, lineno, tok, what):
        try:
            return int(tok)
        except ValueError:
            raise self.error(lineno, f"{what} must be an integer, got {tok!r}") from None

    def arity(self, lineno, toks, n):
        if len(toks) - 1 != n:
            raise self.error(lineno, f"{toks[0]} takes {n} argument(s), got {len(toks) - 1}")

    def once(self, seen, lineno, key):
        if key in seen:
            raise self.error(lineno, f"duplicate {key} line")
        seen.add(key)


def parse_language(text, source=None, base_dir=None):
    """Parse a language file; ``base_dir`` resolves paths in ``combo`` files."""
    lines = list(_lines(text))
    if not lines:
        raise ParseError(1, "empty language file", source)
    r = _Reader(source)
    lineno, head = lines[0]
    kind = head[0]
    body = lines[1:]
    try:
        if kind == "dfa":
            r.arity(lineno, head, 0)
            dfa = _parse_dfa(r, body)
            return LanguageSpec("dfa", dfa, dfa.alphabet)
        if kind == "vpa":
            r.arity(lineno, head, 0)
            vpa = _parse_vpa(r, body)
            return LanguageSpec("vpa", vpa, vpa.alphabet)
        if kind == "doca":
            r.arity(lineno, head, 0)
            doca = _parse_doca(r, body)
            return LanguageSpec("doca", doca, doca.alphabet)
        if kind == "len":
            return _parse_len(r, lineno, head, body)
        if kind in ("li", "li-from-l"):
            r.arity(lineno, head, 0)
            if body and body[0][1] == ["dfa"]:
                body = body[1:]
            dfa = _parse_dfa(r, body)
            if kind == "li":
                return LanguageSpec("li", to_sink_form_checked(r, lineno, dfa, given=True), dfa.alphabet)
            rev = reverse_determinize(dfa, REVERSE_STATE_CAP)
            return LanguageSpec("li", to_sink_form_checked(r, lineno, rev, given=False),
                                dfa.alphabet, original=dfa)
        if kind == "combo":
            r.arity(lineno, head, 0)
            return _parse_combo(r, body, base_dir)
    except ParseError:
        raise
    except InputError as e:
        raise ParseError(lineno, str(e), source) from None
    raise r.error(lineno, f"unknown language class {kind!r}")


def to_sink_form_checked(r, lineno, dfa, given):
    try:
        out = to_sink_form(dfa)
    except InputError as e:
        what = "reversal automaton" if given else "language"
        raise r.error(lineno, f"{what} is not usable for path summaries: {e}") from None
    if given and out.n_states > dfa.n_states:
        raise r.error(lineno, "reversal automaton has no final state")
    return out


def load_language(path):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_language(text, source=path, base_dir=os.path.dirname(os.path.abspath(path)))


def _parse_dfa(r, body):
    seen = set()
    alphabet = None
    n = None
    initial = None
    finals = set()
    trans = {}
    last = 1
    for lineno, toks in body:
        last = lineno
        key = toks[0]
        if key == "alphabet":
            r.once(seen, lineno, key)
            alphabet = tuple(toks[1:])
            if not alphabet:
                raise r.error(lineno, "alphabet is empty")
        elif key == "states":
            r.once(seen, lineno, key)
            r.arity(lineno, toks, 1)
            n = r.int(lineno, toks[1], "state count")
        elif key == "initial":
            r.once(seen, lineno, key)
            r.arity(lineno, toks, 1)
            initial = r.int(lineno, toks[1], "initial state")
        elif key == "final":
            finals.update(r.int(lineno, t, "final state") for t in toks[1:])
        elif key == "trans":
            r.arity(lineno, toks, 3)
            q = r.int(lineno, toks[1], "state")
            t = r.int(lineno, toks[3], "state")
            if (q, toks[2]) in trans:
                raise r.error(lineno, f"duplicate transition for ({q}, {toks[2]})")
            trans[(q, toks[2])] = (t, lineno)
        else:
            raise r.error(lineno, f"unexpected {key!r} in DFA")
    for key, val in (("alphabet", alphabet), ("states", n), ("initial", initial)):
        if val is None:
            raise r.error(last, f"missing {key} line")
    index = set(alphabet)
    for (q, a), (t, lineno) in trans.items():
        if a not in index:
            raise r.error(lineno, f"unknown symbol {a!r}")
        if not 0 <= q < n:
            raise r.error(lineno, f"state {q} out of range")
    delta = []
    for q in range(n):
        row = []
        for a in alphabet:
            if (q, a) not in trans:
                raise r.error(last, f"missing transition for ({q}, {a})")
            row.append(trans[(q, a)][0])
        delta.append(row)
    try:
        return Dfa(n, alphabet, initial, frozenset(finals), delta)
    except InputError as e:
        raise r.error(last, str(e)) from None


def _parse_vpa(r, body):
    seen = set()
    parts = {"calls": (), "returns": (), "internals": ()}
    stack = ()
    n = None
    initial = None
    finals = set()
    tcall, tret, tretbot, tint = {}, {}, {}, {}
    last = 1

    def put(table, key, val, lineno):
        if key in table:
            raise r.error(lineno, f"duplicate transition {key}")
        table[key] = val

    for lineno, toks in body:
        last = lineno
        key = toks[0]
        if key in parts:
            r.once(seen, lineno, key)
            parts[key] = tuple(toks[1:])
        elif key == "stack":
            r.once(seen, lineno, key)
            stack = tuple(t for t in toks[1:] if t not in STACK_HINTS)
        elif key == "states":
            r.once(seen, lineno, key)
            r.arity(lineno, toks, 1)
            n = r.int(lineno, toks[1], "state count")
        elif key == "initial":
            r.once(seen, lineno, key)
            r.arity(lineno, toks, 1)
            initial = r.int(lineno, toks[1], "initial state")
        elif key == "final":
            finals.update(r.int(lineno, t, "final state") for t in toks[1:])
        elif key == "tcall":
            r.arity(lineno, toks, 4)
            q, t = r.int(lineno, toks[1], "state"), r.int(lineno, toks[4], "state")
            put(tcall, (q, toks[2]), (toks[3], t), lineno)
        elif key == "tret":
            r.arity(lineno, toks, 4)
            q, t = r.int(lineno, toks[1], "state"), r.int(lineno, toks[4], "state")
            if toks[3] in STACK_HINTS:
                put(tretbot, (q, toks[2]), t, lineno)
            else:
                put(tret, (q, toks[2], toks[3]), t, lineno)
        elif key == "tretbot":
            r.arity(lineno, toks, 3)
            q, t = r.int(lineno, toks[1], "state"), r.int(lineno, toks[3], "state")
            put(tretbot, (q, toks[2]), t, lineno)
        elif key == "tint":
            r.arity(lineno, toks, 3)
            q, t = r.int(lineno, toks[1], "state"), r.int(lineno, toks[3], "state")
            put(tint, (q, toks[2]), t, lineno)
        else:
            raise r.error(lineno, f"unexpected {key!r} in VPA")
    for key, val in (("states", n), ("initial", initial)):
        if val is None:
            raise r.error(last, f"missing {key} line")
    try:
        return Vpa(n, parts["calls"], parts["returns"], parts["internals"], stack,
                   initial, frozenset(finals), tcall, tret, tretbot, tint)
    except InputError as e:
        raise r.error(last, str(e)) from None


def _parse_doca(r, body):
    seen = set()
    stable = reset = None
    alphabet = None
    initial = None
    finals = []
    trans = []
    periods = []
    rmaps = []
    last = 1
    for lineno, toks in body:
        last = lineno
        key = toks[0]
        if key in ("stable", "reset", "alphabet"):
            r.once(seen, lineno, key)
            vals = tuple(toks[1:])
            if key == "stable":
                stable = vals
            elif key == "reset":
                reset = vals
            else:
                alphabet = vals
        elif key == "initial":
            r.once(seen, lineno, key)
            r.arity(lineno, toks, 1)
            initial = (toks[1], lineno)
        elif key == "final":
            finals.extend((t, lineno) for t in toks[1:])
        elif key == "trans":
            r.arity(lineno, toks, 5)
            trans.append((lineno, toks[1:]))
        elif key == "period":
            r.arity(lineno, toks, 2)
            periods.append((lineno, toks[1:]))
        elif key == "rmap":
            r.arity(lineno, toks, 3)
            rmaps.append((lineno, toks[1:]))
        else:
            raise r.error(lineno, f"unexpected {key!r} in DOCA")
    if not stable:
        raise r.error(last, "missing stable line")
    if alphabet is None:
        raise r.error(last, "missing alphabet line")
    if initial is None:
        raise r.error(last, "missing initial line")
    reset = reset or ()
    names = list(stable) + list(reset)
    if len(set(names)) != len(names):
        raise r.error(last, "a state is listed twice")
    if all(t.isdigit() for t in names) and sorted(int(t) for t in names) == list(range(len(names))):
        ids = {t: int(t) for t in names}
    else:
        ids = {t: i for i, t in enumerate(names)}

    def state(tok, lineno):
        if tok not in ids:
            raise r.error(lineno, f"unknown state {tok!r}")
        return ids[tok]

    delta = {}
    for lineno, (q, a, z, q2, d) in trans:
        zi = r.int(lineno, z, "zero flag")
        di = r.int(lineno, d, "counter change")
        if zi not in (0, 1):
            raise r.error(lineno, "zero flag must be 0 or 1")
        if di not in (-1, 0, 1):
            raise r.error(lineno, "counter change must be -1, 0 or 1")
        if zi + di < 0:
            raise r.error(lineno, "transition would make the counter negative")
        if a not in alphabet:
            raise r.error(lineno, f"unknown symbol {a!r}")
        k = (state(q, lineno), a, zi)
        if k in delta:
            raise r.error(lineno, "duplicate transition")
        if q in reset:
            raise r.error(lineno, f"reset state {q!r} cannot read letters")
        delta[k] = (state(q2, lineno), di)
    period = {}
    for lineno, (q, k) in periods:
        if q not in reset:
            raise r.error(lineno, f"period given for non-reset state {q!r}")
        period[ids[q]] = r.int(lineno, k, "period")
    rmap = {}
    for lineno, (q, k, q2) in rmaps:
        if q not in reset:
            raise r.error(lineno, f"reset mapping given for non-reset state {q!r}")
        rmap[(ids[q], r.int(lineno, k, "residue"))] = state(q2, lineno)
    try:
        return Doca(len(names), frozenset(ids[t] for t in reset), alphabet,
                    state(*initial), frozenset(state(t, ln) for t, ln in finals),
                    delta, period, rmap)
    except InputError as e:
        raise r.error(last, str(e)) from None


def _parse_int_list(r, lineno, text):
    if not text:
        return frozenset()
    return frozenset(r.int(lineno, t, "list element") for t in text.split(","))


def _parse_len(r, lineno, head, body):
    vals = {}
    for tok in head[1:]:
        key, eq, val = tok.partition("=")
        if not eq or key not in ("N", "A", "B"):
            raise r.error(lineno, f"expected N=, A= or B=, got {tok!r}")
        if key in vals:
            raise r.error(lineno, f"duplicate {key}")
        vals[key] = val
    if "N" not in vals:
        raise r.error(lineno, "missing N=")
    N = r.int(lineno, vals["N"], "N")
    if N < 1:
        raise r.error(lineno, "N must be positive")
    A = _parse_int_list(r, lineno, vals.get("A", ""))
    B = _parse_int_list(r, lineno, vals.get("B", ""))
    for name, s in (("A", A), ("B", B)):
        for v in s:
            if not 0 <= v < N:
                raise r.error(lineno, f"{name} element {v} outside [0, {N})")
    alphabet = DEFAULT_ALPHABET
    for ln, toks in body:
        if toks[0] != "alphabet" or len(toks) < 2:
            raise r.error(ln, f"unexpected {toks[0]!r} in length language")
        alphabet = tuple(toks[1:])
    return LanguageSpec("len", (N, A, B), alphabet)


def _parse_formula(r, lineno, toks):
    pos = 0

    def node():
        nonlocal pos
        if pos >= len(toks):
            raise r.error(lineno, "formula ends early")
        t = toks[pos]
        pos += 1
        if t in (AND, OR):
            return (t, node(), node())
        if t == NOT:
            return (t, node())
        return t

    f = node()
    if pos != len(toks):
        raise r.error(lineno, "trailing tokens after formula")
    return f


def _parse_combo(r, body, base_dir):
    parts = {}
    paths = {}
    formula = None
    last = 1
    for lineno, toks in body:
        last = lineno
        key = toks[0]
        if key == "use":
            args = [t for t in toks[1:] if t != "="]
            if len(args) != 2:
                raise r.error(lineno, "expected: use <name> = <path>")
            name, path = args
            if name in parts:
                raise r.error(lineno, f"duplicate name {name!r}")
            if name in (AND, OR, NOT):
                raise r.error(lineno, f"{name!r} is reserved")
            full = path if base_dir is None or os.path.isabs(path) else os.path.join(base_dir, path)
            try:
                part = load_language(full)
            except OSError as e:
                raise r.error(lineno, f"cannot read {path}: {e.strerror}") from None
            if part.kind not in ("len", "li", "combo", "dfa"):
                raise r.error(lineno, f"{part.kind} languages cannot be combined")
            parts[name] = part
            paths[name] = path
        elif key == "formula":
            if formula is not None:
                raise r.error(lineno, "duplicate formula line")
            formula = (_parse_formula(r, lineno, toks[1:]), lineno)
        else:
            raise r.error(lineno, f"unexpected {key!r} in combo")
    if formula is None:
        raise r.error(last, "missing formula line")
    f, lineno = formula
    alphabet = None
    for part in parts.values():
        if part.kind != "len":
            alphabet = part.alphabet if alphabet is None else tuple(a for a in alphabet if a in part.alphabet)
    if alphabet is None:
        alphabet = next(iter(parts.values())).alphabet if parts else DEFAULT_ALPHABET
    try:
        return LanguageSpec("combo", f, alphabet, parts=parts, paths=paths)
    except InputError as e:
        raise r.error(lineno, str(e)) from None


# -- emitters -----------------------------------------------------------

def dump_dfa(dfa, header="dfa"):
    out = [header] if header else []
    out.append("alphabet " + " ".join(dfa.alphabet))
    out.append(f"states {dfa.n_states}")
    out.append(f"initial {dfa.initial}")
    out.append("final " + " ".join(str(q) for q in sorted(dfa.finals)))
    for q in range(dfa.n_states):
        for c, a in enumerate(dfa.alphabet):
            out.append(f"trans {q} {a} {dfa.delta[q][c]}")
    return "\n".join(out) + "\n"


def dump_vpa(vpa):
    out = ["vpa"]
    out.append("calls " + " ".join(vpa.calls))
    out.append("returns " + " ".join(vpa.returns))
    out.append("internals " + " ".join(vpa.internals))
    out.append(f"states {vpa.n_states}")
    out.append("stack " + " ".join(vpa.stack + (BOTTOM, "implicit")))
    out.append(f"initial {vpa.initial}")
    out.append("final " + " ".join(str(q) for q in sorted(vpa.finals)))
    for q in range(vpa.n_states):
        for a in vpa.calls:
            g, t = vpa.tcall[(q, a)]
            out.append(f"tcall {q} {a} {g} {t}")
        for b in vpa.returns:
            for g in vpa.stack:
                out.append(f"tret {q} {b} {g} {vpa.tret[(q, b, g)]}")
            out.append(f"tretbot {q} {b} {vpa.tretbot[(q, b)]}")
        for a in vpa.internals:
            out.append(f"tint {q} {a} {vpa.tint[(q, a)]}")
    return "\n".join(out) + "\n"


def dump_doca(d):
    out = ["doca"]
    out.append("stable " + " ".join(str(q) for q in d.stable))
    if d.reset:
        out.append("reset " + " ".join(str(q) for q in sorted(d.reset)))
    out.append("alphabet " + " ".join(d.alphabet))
    out.append(f"initial {d.initial}")
    out.append("final " + " ".join(str(q) for q in sorted(d.finals)))
    for q in d.stable:
        for a in d.alphabet:
            for z in (0, 1):
                q2, k = d.delta[(q, a, z)]
                out.append(f"trans {q} {a} {z} {q2} {k}")
    for q in sorted(d.reset):
        out.append(f"period {q} {d.period[q]}")
        for k in range(d.period[q]):
            out.append(f"rmap {q} {k} {d.rmap[(q, k)]}")
    return "\n".join(out) + "\n"


def _dump_formula(f):
    if isinstance(f, str):
        return f
    return " ".join([f[0]] + [_dump_formula(g) for g in f[1:]])


def dump_language(spec):
    k = spec.kind
    if k == "dfa":
        return dump_dfa(spec.automaton)
    if k == "vpa":
        return dump_vpa(spec.automaton)
    if k == "doca":
        return dump_doca(spec.automaton)
    if k == "len":
        N, A, B = spec.automaton
        text = f"len N={N} A={','.join(map(str, sorted(A)))} B={','.join(map(str, sorted(B)))}\n"
        if spec.alphabet != DEFAULT_ALPHABET:
            text += "alphabet " + " ".join(spec.alphabet) + "\n"
        return text
    if k == "li":
        if spec.original is not None:
            return "li-from-l\n" + dump_dfa(spec.original)
        return "li\n" + dump_dfa(spec.automaton)
    out = ["combo"]
    for name, path in spec.paths.items():
        out.append(f"use {name} = {path}")
    out.append("formula " + _dump_formula(spec.automaton))
    return "\n".join(out) + "\n"


# -- op streams -------------------------------------------------------------

def parse_ops(lines, source=None):
    """Parse op lines (an iterable of strings) into op tuples."""
    ops = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        kind = toks[0]
        if kind not in OP_KINDS:
            raise ParseError(lineno, f"unknown op {kind!r}", source)
        if kind in (RPUSH, LPUSH):
            if len(toks) != 2:
                raise ParseError(lineno, f"{kind} takes one symbol", source)
            ops.append((kind, toks[1]))
        else:
            if len(toks) != 1:
                raise ParseError(lineno, f"{kind} takes no argument", source)
            ops.append((kind,))
    return ops


def dump_ops(ops):
    return "".join(" ".join(op) + "\n" for op in ops)


__all__ = [
    "parse_language", "load_language", "dump_language", "dump_dfa", "dump_vpa",
    "dump_doca", "parse_ops", "dump_ops", "LPOP", "RPOP", "QUERY",
]
