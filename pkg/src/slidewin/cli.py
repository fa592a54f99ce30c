"""Command line: ``slidewin run|check|bench``.

Exit codes: 0 ok, 2 parse or validation error, 3 model violation,
4 divergence found by ``check``.
"""

import argparse
import sys

from .bench import bench, format_table
from .errors import InputError, ModelViolation, SlidewinError
from .formats import load_language, parse_ops
from .language import CLASSES
from .oracle import StreamGen, check_equivalence, drop_empty_pops, fill_symbol, gen_stream, validate_stream
from .window import LPOP, LPUSH, MODELS, QUERY, RPOP, RPUSH

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_MODEL = 3
EXIT_DIVERGENCE = 4


def _load(args):
    spec = load_language(args.langfile)
    if spec.kind != args.cls:
        raise InputError(f"{args.langfile} holds a {spec.kind} language, not {args.cls}")
    return spec


def _check_model(spec, model):
    if model not in spec.models:
        raise ModelViolation(0, f"{spec.kind} languages do not support the {model} model")


def _strict_pops(ops, start):
    n = start
    for i, op in enumerate(ops):
        if op[0] in (LPOP, RPOP):
            if not n:
                raise ModelViolation(i, "pop on an empty window")
            n -= 1
        elif op[0] in (RPUSH, LPUSH):
            n += 1


def cmd_run(args, out):
    spec = _load(args)
    _check_model(spec, args.model)
    if args.ops == "-":
        ops = parse_ops(sys.stdin, "<stdin>")
    else:
        with open(args.ops, encoding="utf-8") as fh:
            ops = parse_ops(fh, args.ops)
    validate_stream(ops, args.model)
    fixed = args.model[1] == "F"
    n = args.n if fixed else 0
    if fixed and n is None:
        raise InputError(f"the {args.model} model needs --n")
    w = spec.window(fixed=n if fixed else None)
    box = fill_symbol(spec.alphabet)
    for _ in range(n):
        w.push_right(box)
    if args.strict_empty_pop:
        _strict_pops(ops, n)
    else:
        ops = drop_empty_pops(ops, n)
    for op in ops:
        if op[0] == QUERY:
            out.write("1\n" if w.query() else "0\n")
        else:
            w.apply(op)
    return EXIT_OK


def cmd_check(args, out):
    spec = _load(args)
    _check_model(spec, args.model)
    fixed = args.model[1] == "F"
    n = args.n if fixed else 0
    passed = 0
    for k in range(args.streams):
        g = StreamGen(args.seed + k, args.model, spec.alphabet, args.length, n=n)
        rep = check_equivalence(spec, gen_stream(g), args.model, n=n)
        if rep.ok:
            passed += 1
        else:
            d = rep.first
            out.write(f"stream {k}: op {d.index}: expected {int(d.expected)} got {int(d.got)}"
                      f" window {' '.join(d.window)}\n")
    if passed == args.streams:
        out.write(f"PASS {passed}/{args.streams}\n")
        return EXIT_OK
    out.write(f"FAIL {passed}/{args.streams}\n")
    return EXIT_DIVERGENCE


def _sizes(text):
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if "^" in tok:
            b, e = tok.split("^", 1)
            out.append(int(b) ** int(e))
        else:
            out.append(int(tok))
    if not out or min(out) < 1:
        raise argparse.ArgumentTypeError("sizes must be positive")
    return out


def cmd_bench(args, out):
    spec = _load(args)
    rows = bench(spec, args.sizes, args.seed)
    out.write(format_table(rows) + "\n")
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="slidewin", description="Sliding window membership")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("cls", choices=CLASSES, metavar="class", help="language class: " + ", ".join(CLASSES))
        sp.add_argument("langfile")

    r = sub.add_parser("run", help="replay an op stream and print 1/0 per query")
    common(r)
    r.add_argument("--model", choices=MODELS, default="2V")
    r.add_argument("--n", type=int, help="window size for fixed-size models")
    r.add_argument("--ops", default="-", help="op stream file (default stdin)")
    r.add_argument("--strict-empty-pop", action="store_true",
                   help="reject pops on an empty window instead of ignoring them")
    r.set_defaults(func=cmd_run)

    c = sub.add_parser("check", help="compare against the naive oracle on random streams")
    common(c)
    c.add_argument("--model", choices=MODELS, default="2V")
    c.add_argument("--n", type=int, default=8, help="window size for fixed-size models")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--streams", type=int, default=100)
    c.add_argument("--length", type=int, default=2000)
    c.set_defaults(func=cmd_check)

    b = sub.add_parser("bench", help="per-op cost maxima at several window sizes")
    common(b)
    b.add_argument("--sizes", type=_sizes, default=[1 << 12, 1 << 16], help="e.g. 2^12,2^16")
    b.add_argument("--seed", type=int, default=0)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        if getattr(args, "n", None) is not None and args.n < 0:
            raise InputError("--n must be non-negative")
        return args.func(args, out)
    except ModelViolation as e:
        print(f"model violation: {e}", file=sys.stderr)
        return EXIT_MODEL
    except (SlidewinError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
