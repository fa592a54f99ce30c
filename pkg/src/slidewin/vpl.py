"""Constant-latency window for visibly pushdown languages.

A well-nested word is stored as a tree whose composite nodes keep their
children in an aggregation deque, so the node's state transform is always
the deque product.  The window itself is split as

    down = [T(w0), <r1>, T(w1), ..., <rs>]   (returns r_i)
    sep  = T(ws)
    up   = [<c_{s+1}>, T(w_{s+1}), ..., <ck>, T(wk)]   (calls c_i)

with every ``w_i`` well-nested.  The window transform is the product of the
three parts and decides membership.
"""

from dataclasses import dataclass, field
from operator import attrgetter

from .automata import TransformMonoid, identity_transform
from .deque import ResizingDeque
from .errors import ContractError, InputError
from .window import Window

BOTTOM = "⊥"

CALL, RET, INT = "call", "return", "internal"


@dataclass(frozen=True)
class Vpa:
    """Deterministic visibly pushdown automaton.

    ``tcall[(q, a)] = (g, q2)`` pushes stack symbol ``g``;
    ``tret[(q, b, g)] = q2`` pops ``g``; ``tretbot[(q, b)] = q2`` reads the
    bottom marker without popping it; ``tint[(q, a)] = q2``.
    """

    n_states: int
    calls: tuple
    returns: tuple
    internals: tuple
    stack: tuple
    initial: int
    finals: frozenset
    tcall: dict
    tret: dict
    tretbot: dict
    tint: dict
    kinds: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        for name in ("calls", "returns", "internals", "stack"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        object.__setattr__(self, "finals", frozenset(self.finals))
        n = self.n_states
        if n < 1:
            raise InputError("a VPA needs at least one state")
        kinds = {}
        for cls, syms in ((CALL, self.calls), (RET, self.returns), (INT, self.internals)):
            for a in syms:
                if a in kinds:
                    raise InputError(f"symbol {a!r} is in more than one partition")
                kinds[a] = cls
        if BOTTOM in self.stack:
            raise InputError("the bottom marker is implicit and cannot be pushed")
        if len(set(self.stack)) != len(self.stack):
            raise InputError("duplicate stack symbol")
        if (self.calls or self.returns) and not self.stack:
            raise InputError("calls need at least one stack symbol")
        if not 0 <= self.initial < n:
            raise InputError(f"initial state {self.initial} out of range")
        for q in self.finals:
            if not 0 <= q < n:
                raise InputError(f"final state {q} out of range")
        stack = set(self.stack)

        def state(t, what):
            if not isinstance(t, int) or not 0 <= t < n:
                raise InputError(f"{what}: target state {t!r} out of range")

        for q in range(n):
            for a in self.calls:
                if (q, a) not in self.tcall:
                    raise InputError(f"missing call transition for ({q}, {a})")
                g, t = self.tcall[(q, a)]
                if g not in stack:
                    raise InputError(f"call ({q}, {a}) pushes unknown stack symbol {g!r}")
                state(t, f"call ({q}, {a})")
            for b in self.returns:
                if (q, b) not in self.tretbot:
                    raise InputError(f"missing bottom return transition for ({q}, {b})")
                state(self.tretbot[(q, b)], f"return ({q}, {b}, ⊥)")
                for g in self.stack:
                    if (q, b, g) not in self.tret:
                        raise InputError(f"missing return transition for ({q}, {b}, {g})")
                    state(self.tret[(q, b, g)], f"return ({q}, {b}, {g})")
            for a in self.internals:
                if (q, a) not in self.tint:
                    raise InputError(f"missing internal transition for ({q}, {a})")
                state(self.tint[(q, a)], f"internal ({q}, {a})")
        object.__setattr__(self, "kinds", kinds)

    @property
    def alphabet(self):
        return self.calls + self.returns + self.internals

    def kind(self, a):
        try:
            return self.kinds[a]
        except KeyError:
            raise InputError(f"unknown symbol {a!r}") from None


def phi_letter(vpa, a):
    """State transform of a single letter on the bottom-only stack."""
    cls = vpa.kind(a)
    Q = range(vpa.n_states)
    if cls == INT:
        return tuple(vpa.tint[(q, a)] for q in Q)
    if cls == RET:
        return tuple(vpa.tretbot[(q, a)] for q in Q)
    return tuple(vpa.tcall[(q, a)][1] for q in Q)


def vpa_run(vpa, word, q=None):
    """Direct simulation from the bottom-only stack; returns (state, stack)."""
    q = vpa.initial if q is None else q
    stack = []
    for a in word:
        cls = vpa.kind(a)
        if cls == CALL:
            g, q = vpa.tcall[(q, a)]
            stack.append(g)
        elif cls == INT:
            q = vpa.tint[(q, a)]
        elif stack:
            q = vpa.tret[(q, a, stack.pop())]
        else:
            q = vpa.tretbot[(q, a)]
    return q, tuple(stack)


def vpa_accepts(vpa, word):
    return vpa_run(vpa, word)[0] in vpa.finals


def well_nested(vpa, word):
    depth = 0
    for a in word:
        cls = vpa.kind(a)
        if cls == CALL:
            depth += 1
        elif cls == RET:
            if not depth:
                return False
            depth -= 1
    return depth == 0


# node kinds: 0 is a letter marker in the top-level lists, 1-4 are tree nodes
MARK, EPS, LEAF, PRIME, COMP = 0, 1, 2, 3, 4

PHI = attrgetter("phi")


class VplNode:
    """Tree node.

    ``LEAF`` holds an internal letter, ``PRIME`` a call/return pair around
    ``child``, ``COMP`` two or more primes in the deque ``kids``.  ``MARK``
    nodes stand for a lone call or return letter.
    """

    __slots__ = ("kind", "sym", "ret", "phi", "child", "kids")

    def __init__(self, kind, phi, sym=None, ret=None, child=None, kids=None):
        self.kind = kind
        self.phi = phi
        self.sym = sym
        self.ret = ret
        self.child = child
        self.kids = kids

    def __repr__(self):
        return f"VplNode({self.kind}, {''.join(map(str, spell(self)))!r})"


def spell(node):
    """The word a node stands for."""
    out = []
    todo = [node]
    while todo:
        v = todo.pop()
        if isinstance(v, str):
            out.append(v)
        elif v.kind in (MARK, LEAF):
            out.append(v.sym)
        elif v.kind == PRIME:
            todo.append(v.ret)
            todo.append(v.child)
            todo.append(v.sym)
        elif v.kind == COMP:
            todo.extend(reversed(list(v.kids)))
    return out


def count_nodes(node):
    """Nodes reachable from ``node`` excluding the shared empty tree."""
    n = 0
    todo = [node]
    while todo:
        v = todo.pop()
        if v.kind == EPS:
            continue
        n += 1
        if v.kind == PRIME:
            todo.append(v.child)
        elif v.kind == COMP:
            todo.extend(v.kids)
    return n


class VplForest:
    """Tree operations over one automaton, sharing counters and ``T(ε)``."""

    def __init__(self, vpa, counters):
        self.vpa = vpa
        self.ctr = counters
        self.mono = TransformMonoid(vpa.n_states)
        self.eps = VplNode(EPS, identity_transform(vpa.n_states))
        self.letter_phi = {a: phi_letter(vpa, a) for a in vpa.alphabet}
        Q = range(vpa.n_states)
        self._call = {a: tuple(vpa.tcall[(q, a)] for q in Q) for a in vpa.calls}
        self._ret = {
            b: {g: tuple(vpa.tret[(q, b, g)] for q in Q) for g in vpa.stack}
            for b in vpa.returns
        }
        self.live = 0

    def _made(self):
        self.ctr.node_constructions += 1
        self.live += 1

    def dropped(self, k=1):
        self.live -= k

    def marker(self, a):
        self._made()
        return VplNode(MARK, self.letter_phi[a], sym=a)

    def leaf(self, a):
        self._made()
        return VplNode(LEAF, self.letter_phi[a], sym=a)

    def _composite(self, left, right):
        self._made()
        kids = ResizingDeque(self.mono, self.ctr, value=PHI)
        kids.push_right(left)
        kids.push_right(right)
        return VplNode(COMP, kids.product(), kids=kids)

    def concatenate(self, tu, tv):
        """``T(uv)`` for a prime ``v``; reuses ``tu`` when it is composite."""
        if tv.kind not in (LEAF, PRIME):
            raise ContractError("right operand of concatenate must be a prime")
        if tu.kind == EPS:
            return tv
        if tu.kind != COMP:
            return self._composite(tu, tv)
        tu.kids.push_right(tv)
        tu.phi = tu.kids.product()
        return tu

    def concatenate_left(self, tv, tu):
        """``T(vu)`` for a prime ``v``."""
        if tv.kind not in (LEAF, PRIME):
            raise ContractError("left operand of concatenate_left must be a prime")
        if tu.kind == EPS:
            return tv
        if tu.kind != COMP:
            return self._composite(tv, tu)
        tu.kids.push_left(tv)
        tu.phi = tu.kids.product()
        return tu

    def left_prime_pop(self, tw):
        """Split ``T(uv)`` into ``(T(u), T(v))`` with ``u`` its first prime."""
        if tw.kind == EPS:
            raise ContractError("left_prime_pop on the empty word")
        if tw.kind != COMP:
            return tw, self.eps
        kids = tw.kids
        u = kids.pop_left()
        if len(kids) == 1:
            self.dropped()
            return u, kids.peek_left()
        tw.phi = kids.product()
        return u, tw

    def right_prime_pop(self, tw):
        """Split ``T(uv)`` into ``(T(u), T(v))`` with ``v`` its last prime."""
        if tw.kind == EPS:
            raise ContractError("right_prime_pop on the empty word")
        if tw.kind != COMP:
            return self.eps, tw
        kids = tw.kids
        v = kids.pop_right()
        if len(kids) == 1:
            self.dropped()
            return kids.peek_left(), v
        tw.phi = kids.product()
        return tw, v

    def left_symbol_pop(self, tw):
        """Drop the first letter: ``(T(v),)`` or ``(T(u'), b, T(v))``."""
        u, v = self.left_prime_pop(tw)
        self.dropped()
        if u.kind == LEAF:
            return (v,)
        return (u.child, u.ret, v)

    def right_symbol_pop(self, tw):
        """Drop the last letter: ``(T(u),)`` or ``(T(u), a, T(u'))``."""
        u, v = self.right_prime_pop(tw)
        self.dropped()
        if v.kind == LEAF:
            return (u,)
        return (u, v.sym, v.child)

    def construct_prime(self, a, tw, b):
        """``T(a w b)`` for a call ``a`` and return ``b``."""
        call = self._call.get(a)
        ret = self._ret.get(b)
        if call is None or ret is None:
            raise ContractError(f"construct_prime needs a call and a return, got {a!r}, {b!r}")
        phi = tw.phi
        self.ctr.compositions += 1
        self._made()
        out = tuple([ret[g][phi[q]] for g, q in call])
        return VplNode(PRIME, out, sym=a, ret=b, child=tw)

    def make_tree(self, word):
        """Build ``T(word)`` for a well-nested word (testing aid)."""
        stack = [(None, self.eps)]
        for a in word:
            cls = self.vpa.kind(a)
            if cls == CALL:
                stack.append((a, self.eps))
            elif cls == INT:
                call, t = stack.pop()
                stack.append((call, self.concatenate(t, self.leaf(a))))
            else:
                if len(stack) < 2:
                    raise InputError("word is not well-nested")
                call, t = stack.pop()
                prime = self.construct_prime(call, t, a)
                outer, s = stack.pop()
                stack.append((outer, self.concatenate(s, prime)))
        if len(stack) != 1:
            raise InputError("word is not well-nested")
        return stack[0][1]


class VplWindow(Window):
    """Two-way window over the language of a VPA with O(1) work per op."""

    def __init__(self, vpa, counters=None):
        super().__init__(counters)
        self.vpa = vpa
        self.forest = f = VplForest(vpa, self.counters)
        self.eps = f.eps
        self.down = ResizingDeque(f.mono, self.counters, value=PHI)
        self.up = ResizingDeque(f.mono, self.counters, value=PHI)
        self.sep = f.eps
        self._kinds = vpa.kinds

    def _kind(self, a):
        k = self._kinds.get(a)
        if k is None:
            raise InputError(f"unknown symbol {a!r}")
        return k

    @property
    def live_nodes(self):
        return self.forest.live

    def _rpush(self, b):
        f, up = self.forest, self.up
        cls = self._kind(b)
        if cls == CALL:
            up.push_right(f.marker(b))
            up.push_right(self.eps)
        elif cls == INT:
            leaf = f.leaf(b)
            if not up:
                self.sep = f.concatenate(self.sep, leaf)
            else:
                up.push_right(f.concatenate(up.pop_right(), leaf))
        elif not up:
            self.down.push_right(self.sep)
            self.down.push_right(f.marker(b))
            self.sep = self.eps
        else:
            wk = up.pop_right()
            ak = up.pop_right()
            f.dropped()
            prime = f.construct_prime(ak.sym, wk, b)
            if not up:
                self.sep = f.concatenate(self.sep, prime)
            else:
                up.push_right(f.concatenate(up.pop_right(), prime))

    def _lpush(self, b):
        f, down = self.forest, self.down
        cls = self._kind(b)
        if cls == RET:
            down.push_left(f.marker(b))
            down.push_left(self.eps)
        elif cls == INT:
            leaf = f.leaf(b)
            if not down:
                self.sep = f.concatenate_left(leaf, self.sep)
            else:
                down.push_left(f.concatenate_left(leaf, down.pop_left()))
        elif not down:
            self.up.push_left(self.sep)
            self.up.push_left(f.marker(b))
            self.sep = self.eps
        else:
            w0 = down.pop_left()
            a1 = down.pop_left()
            f.dropped()
            prime = f.construct_prime(b, w0, a1.sym)
            if not down:
                self.sep = f.concatenate_left(prime, self.sep)
            else:
                down.push_left(f.concatenate_left(prime, down.pop_left()))

    def _lpop(self):
        f, down = self.forest, self.down
        if not down:
            if self.sep is not self.eps:
                r = f.left_symbol_pop(self.sep)
                if len(r) == 1:
                    self.sep = r[0]
                else:
                    down.push_right(r[0])
                    down.push_right(f.marker(r[1]))
                    self.sep = r[2]
            else:
                self.up.pop_left()
                f.dropped()
                self.sep = self.up.pop_left()
            return
        t = down.pop_left()
        if t is self.eps:
            down.pop_left()
            f.dropped()
            return
        r = f.left_symbol_pop(t)
        if len(r) == 1:
            down.push_left(r[0])
        else:
            down.push_left(r[2])
            down.push_left(f.marker(r[1]))
            down.push_left(r[0])

    def _rpop(self):
        f, up = self.forest, self.up
        if not up:
            if self.sep is not self.eps:
                r = f.right_symbol_pop(self.sep)
                if len(r) == 1:
                    self.sep = r[0]
                else:
                    up.push_left(r[2])
                    up.push_left(f.marker(r[1]))
                    self.sep = r[0]
            else:
                self.down.pop_right()
                f.dropped()
                self.sep = self.down.pop_right()
            return
        t = up.pop_right()
        if t is self.eps:
            up.pop_right()
            f.dropped()
            return
        r = f.right_symbol_pop(t)
        if len(r) == 1:
            up.push_right(r[0])
        else:
            up.push_right(r[0])
            up.push_right(f.marker(r[1]))
            up.push_right(r[2])

    def phi(self):
        """Transform of the whole window (down, then sep, then up)."""
        c = self.counters
        d = self.down.product()
        u = self.up.product()
        s = self.sep.phi
        c.compositions += 1
        return tuple([u[s[q]] for q in d])

    def _query(self):
        q = self.down.product()[self.vpa.initial]
        q = self.sep.phi[q]
        q = self.up.product()[q]
        return q in self.vpa.finals

    def contents(self):
        out = []
        for v in self.down:
            out.extend(spell(v))
        out.extend(spell(self.sep))
        for v in self.up:
            out.extend(spell(v))
        return out

    def count_live(self):
        """Live nodes found by traversal; should equal :attr:`live_nodes`."""
        n = count_nodes(self.sep)
        for v in self.down:
            n += count_nodes(v)
        for v in self.up:
            n += count_nodes(v)
        return n

    def check(self):
        """Assert the list shapes and that every stored transform is fresh."""
        vpa = self.vpa
        down, up = list(self.down), list(self.up)
        if len(down) % 2 or len(up) % 2:
            raise AssertionError("top-level lists must have even length")
        for i, v in enumerate(down):
            if i % 2:
                if v.kind != MARK or vpa.kinds[v.sym] != RET:
                    raise AssertionError("descending list must alternate trees and returns")
            elif v.kind == MARK:
                raise AssertionError("descending list must alternate trees and returns")
        for i, v in enumerate(up):
            if i % 2 == 0:
                if v.kind != MARK or vpa.kinds[v.sym] != CALL:
                    raise AssertionError("ascending list must alternate calls and trees")
            elif v.kind == MARK:
                raise AssertionError("ascending list must alternate calls and trees")
        for v in down + [self.sep] + up:
            if v.kind != MARK:
                _check_tree(self.forest, v)


def _check_tree(forest, node):
    vpa = forest.vpa
    todo = [node]
    while todo:
        v = todo.pop()
        word = spell(v)
        if not well_nested(vpa, word):
            raise AssertionError(f"tree spells a non-well-nested word {word}")
        expect = tuple(vpa_run(vpa, word, q)[0] for q in range(vpa.n_states))
        if v.phi != expect:
            raise AssertionError(f"stale transform at {v!r}")
        if v.kind == PRIME:
            todo.append(v.child)
        elif v.kind == COMP:
            kids = list(v.kids)
            if len(kids) < 2 or any(k.kind not in (LEAF, PRIME) for k in kids):
                raise AssertionError("composite node needs two or more prime children")
            todo.extend(kids)
