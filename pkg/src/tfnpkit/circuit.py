"""Total boolean circuits over fixed-width bit vectors.

The IR has two leaf families (gate networks and truth tables, plus named
builtin blocks registered by the codec layer) and a handful of combinators:
composition, parallel application on a split input, output slicing, zero
padding, a value-threshold guard, constant add/sub/xor, and a first-match
piecewise dispatch.  Evaluation is total: every node produces an output for
every input value.

Two evaluation paths are provided.  ``Circuit.eval`` maps one BitString to
one BitString.  ``apply_many`` maps a numpy array of input values to an array
of output values and is what makes exhaustive solving affordable; it only
evaluates piecewise branches on the inputs they are selected for, so partial
decoders stay safe inside guarded constructions.

Text format (see ``to_text``/``from_text``): a ``CIRCUIT in=<w> out=<w>``
header followed by one node.  Leaf content lines (table rows, netlist gates)
sit at the node's own indent; combinator children are indented two spaces
deeper.  ``COMPOSE`` children are listed outer first, i.e. ``Compose(f, g)``
with output ``f(g(x))``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import DomainError, ParseError
from .numerics import BitString, bits_of

MAX_TABLE_WIDTH = 20
MAX_VECTOR_WIDTH = 62  # apply_many packs values into int64


def _mask_array(xs, width):
    return xs & np.int64((1 << width) - 1)


class Circuit:
    """Base node; subclasses set in_width/out_width and the eval methods."""

    in_width: int
    out_width: int

    def eval(self, x: BitString) -> BitString:
        if x.width != self.in_width:
            raise DomainError(f"input width {x.width}, circuit expects {self.in_width}")
        # point evaluations repeat heavily during verification; memoize by value
        memo = self.__dict__.setdefault("_eval_memo", {})
        got = memo.get(x.value)
        if got is None:
            got = self._eval_value(x.value)
            memo[x.value] = got
        return bits_of(got, self.out_width)

    def _eval_value(self, v: int) -> int:
        raise NotImplementedError

    def _apply_many(self, xs: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _children(self) -> tuple["Circuit", ...]:
        return ()

    def __eq__(self, other):
        return (
            type(self) is type(other)
            and self._key() == other._key()
            and self._children() == other._children()
        )

    def __hash__(self):
        return hash((type(self).__name__, self._key(), self._children()))

    def _key(self):
        return (self.in_width, self.out_width)


def apply_many(c: Circuit, xs: np.ndarray) -> np.ndarray:
    """Evaluate c on an int64 array of input values."""
    if c.in_width > MAX_VECTOR_WIDTH or c.out_width > MAX_VECTOR_WIDTH:
        raise DomainError(f"width beyond vector limit {MAX_VECTOR_WIDTH}")
    return c._apply_many(np.asarray(xs, dtype=np.int64))


def eval_all(c: Circuit) -> np.ndarray:
    """Outputs of c on every input value 0 .. 2**in_width - 1, in order."""
    if c.in_width > 22:
        raise DomainError(f"eval_all capped at in_width 22, got {c.in_width}")
    return apply_many(c, np.arange(1 << c.in_width, dtype=np.int64))


# ---------------------------------------------------------------------------
# leaves


class Table(Circuit):
    """Explicit truth table: row i is the output for input value i."""

    def __init__(self, in_width: int, out_width: int, rows: Sequence[int]):
        if in_width > MAX_TABLE_WIDTH:
            raise DomainError(f"table in_width {in_width} beyond cap {MAX_TABLE_WIDTH}")
        rows = tuple(int(r) for r in rows)
        if len(rows) != 1 << in_width:
            raise DomainError(f"table needs {1 << in_width} rows, got {len(rows)}")
        top = 1 << out_width
        if any(not 0 <= r < top for r in rows):
            raise DomainError("table row out of range")
        self.in_width = in_width
        self.out_width = out_width
        self.rows = rows
        self._np_rows = None

    def _key(self):
        return (self.in_width, self.out_width, self.rows)

    def _eval_value(self, v):
        return self.rows[v]

    def _rows_array(self):
        if self._np_rows is None:
            self._np_rows = np.array(self.rows, dtype=np.int64)
        return self._np_rows

    def _apply_many(self, xs):
        return self._rows_array()[xs]


@dataclass(frozen=True)
class Gate:
    op: str  # INPUT | CONST | NOT | AND | OR | XOR
    a: int = 0
    b: int = 0


class GateNet(Circuit):
    """DAG of boolean gates; gates may only reference earlier gates."""

    _ARITY = {"INPUT": 0, "CONST": 0, "NOT": 1, "AND": 2, "OR": 2, "XOR": 2}

    def __init__(self, in_width: int, gates: Sequence[Gate], outputs: Sequence[int]):
        gates = tuple(gates)
        outputs = tuple(outputs)
        for i, g in enumerate(gates):
            if g.op not in self._ARITY:
                raise DomainError(f"unknown gate op {g.op!r}")
            if g.op == "INPUT" and not 0 <= g.a < in_width:
                raise DomainError(f"gate {i} reads input bit {g.a} of {in_width}")
            if g.op == "CONST" and g.a not in (0, 1):
                raise DomainError(f"gate {i} CONST must be 0 or 1")
            if g.op in ("NOT", "AND", "OR", "XOR") and not 0 <= g.a < i:
                raise DomainError(f"gate {i} references gate {g.a}")
            if self._ARITY[g.op] == 2 and not 0 <= g.b < i:
                raise DomainError(f"gate {i} references gate {g.b}")
        for o in outputs:
            if not 0 <= o < len(gates):
                raise DomainError(f"output references gate {o}")
        self.in_width = in_width
        self.out_width = len(outputs)
        self.gates = gates
        self.outputs = outputs

    def _key(self):
        return (self.in_width, self.gates, self.outputs)

    def _eval_value(self, v):
        vals = []
        w = self.in_width
        for g in self.gates:
            if g.op == "INPUT":
                vals.append((v >> (w - 1 - g.a)) & 1)
            elif g.op == "CONST":
                vals.append(g.a)
            elif g.op == "NOT":
                vals.append(1 - vals[g.a])
            elif g.op == "AND":
                vals.append(vals[g.a] & vals[g.b])
            elif g.op == "OR":
                vals.append(vals[g.a] | vals[g.b])
            else:
                vals.append(vals[g.a] ^ vals[g.b])
        out = 0
        for o in self.outputs:
            out = (out << 1) | vals[o]
        return out

    def _apply_many(self, xs):
        w = self.in_width
        vals: list[np.ndarray] = []
        for g in self.gates:
            if g.op == "INPUT":
                vals.append((xs >> np.int64(w - 1 - g.a)) & np.int64(1))
            elif g.op == "CONST":
                vals.append(np.full_like(xs, g.a))
            elif g.op == "NOT":
                vals.append(np.int64(1) - vals[g.a])
            elif g.op == "AND":
                vals.append(vals[g.a] & vals[g.b])
            elif g.op == "OR":
                vals.append(vals[g.a] | vals[g.b])
            else:
                vals.append(vals[g.a] ^ vals[g.b])
        out = np.zeros_like(xs)
        for o in self.outputs:
            out = (out << np.int64(1)) | vals[o]
        return out


# Builtin blocks are registered by the encodings module at import time.
_BUILTIN_FACTORIES: dict[str, Callable[..., tuple[int, int, Callable[[int], int]]]] = {}


def register_builtin(name: str, factory) -> None:
    """factory(**params) -> (in_width, out_width, fn: value -> value)."""
    _BUILTIN_FACTORIES[name] = factory


class Builtin(Circuit):
    """Named codec block with fixed parameters, evaluated by a host function.

    Results are memoized per value; partial hosts (decoders) only raise if an
    out-of-range value is actually queried.
    """

    def __init__(self, name: str, **params: int):
        if name not in _BUILTIN_FACTORIES:
            raise DomainError(f"unknown builtin block {name!r}")
        self.name = name
        self.params = dict(sorted(params.items()))
        self.in_width, self.out_width, self._fn = _BUILTIN_FACTORIES[name](**params)
        self._memo: dict[int, int] = {}

    def _key(self):
        return (self.name, tuple(self.params.items()))

    def _eval_value(self, v):
        r = self._memo.get(v)
        if r is None:
            r = self._memo[v] = self._fn(v)
        return r

    def _apply_many(self, xs):
        uniq, inv = np.unique(xs, return_inverse=True)
        vals = np.array([self._eval_value(int(u)) for u in uniq], dtype=np.int64)
        return vals[inv].reshape(xs.shape)


# ---------------------------------------------------------------------------
# combinators


class Compose(Circuit):
    """Compose(f, g)(x) = f(g(x))."""

    def __init__(self, f: Circuit, g: Circuit):
        if f.in_width != g.out_width:
            raise DomainError(f"compose widths: inner out {g.out_width}, outer in {f.in_width}")
        self.f, self.g = f, g
        self.in_width = g.in_width
        self.out_width = f.out_width

    def _children(self):
        return (self.f, self.g)

    def _eval_value(self, v):
        return self.f._eval_value(self.g._eval_value(v))

    def _apply_many(self, xs):
        return self.f._apply_many(self.g._apply_many(xs))


class Parallel(Circuit):
    """Split the input: f gets the first f.in_width bits, g the rest."""

    def __init__(self, f: Circuit, g: Circuit):
        self.f, self.g = f, g
        self.in_width = f.in_width + g.in_width
        self.out_width = f.out_width + g.out_width

    def _children(self):
        return (self.f, self.g)

    def _eval_value(self, v):
        lo = v & ((1 << self.g.in_width) - 1)
        hi = v >> self.g.in_width
        return (self.f._eval_value(hi) << self.g.out_width) | self.g._eval_value(lo)

    def _apply_many(self, xs):
        lo = _mask_array(xs, self.g.in_width)
        hi = xs >> np.int64(self.g.in_width)
        return (self.f._apply_many(hi) << np.int64(self.g.out_width)) | self.g._apply_many(lo)


class Slice(Circuit):
    """Output bits [start, stop) of the child, 0-based from the left."""

    def __init__(self, inner: Circuit, start: int, stop: int):
        if not 0 <= start <= stop <= inner.out_width:
            raise DomainError(f"slice [{start}, {stop}) of {inner.out_width} output bits")
        self.inner = inner
        self.start, self.stop = start, stop
        self.in_width = inner.in_width
        self.out_width = stop - start

    def _key(self):
        return (self.start, self.stop)

    def _children(self):
        return (self.inner,)

    def _eval_value(self, v):
        y = self.inner._eval_value(v)
        return (y >> (self.inner.out_width - self.stop)) & ((1 << self.out_width) - 1)

    def _apply_many(self, xs):
        ys = self.inner._apply_many(xs)
        return _mask_array(ys >> np.int64(self.inner.out_width - self.stop), self.out_width)


class PadLeft(Circuit):
    """Prefix the child's output with zero bits (value preserved)."""

    def __init__(self, inner: Circuit, bits: int):
        if bits < 0:
            raise DomainError("pad width must be nonnegative")
        self.inner = inner
        self.bits = bits
        self.in_width = inner.in_width
        self.out_width = inner.out_width + bits

    def _key(self):
        return (self.bits,)

    def _children(self):
        return (self.inner,)

    def _eval_value(self, v):
        return self.inner._eval_value(v)

    def _apply_many(self, xs):
        return self.inner._apply_many(xs)


class GuardPrefix(Circuit):
    """A(x) = inner(x) when value(x) < t, else x.  inner must be w -> w."""

    def __init__(self, inner: Circuit, t: int):
        if inner.in_width != inner.out_width:
            raise DomainError("guard inner circuit must preserve width")
        if not 0 <= t <= (1 << inner.in_width):
            raise DomainError(f"guard threshold {t} beyond width {inner.in_width}")
        self.inner = inner
        self.t = t
        self.in_width = self.out_width = inner.in_width

    def _key(self):
        return (self.t,)

    def _children(self):
        return (self.inner,)

    def _eval_value(self, v):
        return self.inner._eval_value(v) if v < self.t else v

    def _apply_many(self, xs):
        out = xs.copy()
        mask = xs < self.t
        if mask.any():
            out[mask] = self.inner._apply_many(xs[mask])
        return out


class ConstOp(Circuit):
    """x -> x op c (mod 2**width) with op in add/sub/xor."""

    OPS = ("add", "sub", "xor")

    def __init__(self, op: str, c: BitString):
        if op not in self.OPS:
            raise DomainError(f"unknown const op {op!r}")
        self.op = op
        self.c = c
        self.in_width = self.out_width = c.width

    def _key(self):
        return (self.op, self.c)

    def _eval_value(self, v):
        m = (1 << self.in_width) - 1
        if self.op == "add":
            return (v + self.c.value) & m
        if self.op == "sub":
            return (v - self.c.value) & m
        return v ^ self.c.value

    def _apply_many(self, xs):
        c = np.int64(self.c.value)
        if self.op == "add":
            return _mask_array(xs + c, self.in_width)
        if self.op == "sub":
            return _mask_array(xs - c, self.in_width)
        return xs ^ c


@dataclass(frozen=True)
class Case:
    """One piecewise case: a half-open value range or a 1-bit predicate circuit."""

    branch: Circuit
    lo: int | None = None
    hi: int | None = None
    pred: Circuit | None = None

    @property
    def is_range(self) -> bool:
        return self.pred is None


class Piecewise(Circuit):
    """First-match dispatch.  The final case must cover everything.

    Cases are tried in order; a range case fires when lo <= value(x) < hi, a
    predicate case when pred(x) = 1.  To keep evaluation total, the last case
    is required to be the full range.
    """

    def __init__(self, cases: Sequence[Case]):
        cases = tuple(cases)
        if not cases:
            raise DomainError("piecewise needs at least one case")
        w = cases[0].branch.in_width
        o = cases[0].branch.out_width
        for c in cases:
            if c.branch.in_width != w or c.branch.out_width != o:
                raise DomainError("piecewise branches must share widths")
            if c.is_range:
                if not 0 <= c.lo <= c.hi <= (1 << w):
                    raise DomainError(f"case range [{c.lo}, {c.hi}) bad for width {w}")
            else:
                if c.pred.in_width != w or c.pred.out_width != 1:
                    raise DomainError("predicate must map the input to one bit")
        last = cases[-1]
        if not (last.is_range and last.lo == 0 and last.hi == (1 << w)):
            raise DomainError("last piecewise case must cover the full range")
        self.cases = cases
        self.in_width = w
        self.out_width = o

    def _key(self):
        return tuple((c.lo, c.hi) for c in self.cases)

    def _children(self):
        out = []
        for c in self.cases:
            if c.pred is not None:
                out.append(c.pred)
            out.append(c.branch)
        return tuple(out)

    def _eval_value(self, v):
        for c in self.cases:
            if c.is_range:
                if c.lo <= v < c.hi:
                    return c.branch._eval_value(v)
            elif c.pred._eval_value(v) == 1:
                return c.branch._eval_value(v)
        raise AssertionError("unreachable: final case is total")

    def _apply_many(self, xs):
        out = np.zeros_like(xs)
        remaining = np.ones(xs.shape, dtype=bool)
        for c in self.cases:
            if not remaining.any():
                break
            if c.is_range:
                sel = remaining & (xs >= c.lo) & (xs < c.hi)
            else:
                sel = remaining.copy()
                sub = c.pred._apply_many(xs[remaining]) == 1
                sel[remaining] = sub
            if sel.any():
                out[sel] = c.branch._apply_many(xs[sel])
            remaining &= ~sel
        return out


# ---------------------------------------------------------------------------
# gate-level building blocks


def identity(w: int) -> Circuit:
    gates = [Gate("INPUT", i) for i in range(w)]
    return GateNet(w, gates, list(range(w)))


def const_circuit(b: BitString, in_width: int = 0) -> Circuit:
    """Circuit ignoring its input and emitting the constant b."""
    gates = [Gate("CONST", bit) for bit in b.bits()]
    return GateNet(in_width, gates, list(range(b.width)))


def projection(w: int, indices: Sequence[int]) -> Circuit:
    gates = [Gate("INPUT", i) for i in range(w)]
    return GateNet(w, gates, list(indices))


def duplicate(w: int, times: int) -> Circuit:
    return projection(w, list(range(w)) * times)


def not_all(w: int) -> Circuit:
    gates = [Gate("INPUT", i) for i in range(w)] + [Gate("NOT", i) for i in range(w)]
    return GateNet(w, gates, list(range(w, 2 * w)))


def swap_halves(w: int) -> Circuit:
    if w % 2:
        raise DomainError("swap_halves needs even width")
    h = w // 2
    return projection(w, list(range(h, w)) + list(range(h)))


def fanout(circuits: Sequence[Circuit]) -> Circuit:
    """Apply every circuit to the same input, concatenating the outputs."""
    w = circuits[0].in_width
    if any(c.in_width != w for c in circuits):
        raise DomainError("fanout circuits must share the input width")
    par = circuits[0]
    for c in circuits[1:]:
        par = Parallel(par, c)
    return Compose(par, duplicate(w, len(circuits)))


def append_const(w: int, b: BitString) -> Circuit:
    """x -> x || b."""
    return Parallel(identity(w), const_circuit(b))


def prepend_const(w: int, b: BitString) -> Circuit:
    """x -> b || x."""
    return Parallel(const_circuit(b), identity(w))


def eq_const(w: int, value: int) -> Circuit:
    """One output bit: 1 iff the input equals the given value."""
    target = bits_of(value, w)
    gates = [Gate("INPUT", i) for i in range(w)]
    lits = []
    for i, bit in enumerate(target.bits()):
        if bit:
            lits.append(i)
        else:
            gates.append(Gate("NOT", i))
            lits.append(len(gates) - 1)
    if not lits:
        gates.append(Gate("CONST", 1))
        return GateNet(w, gates, [len(gates) - 1])
    acc = lits[0]
    for g in lits[1:]:
        gates.append(Gate("AND", acc, g))
        acc = len(gates) - 1
    return GateNet(w, gates, [acc])


def eq_halves(w: int) -> Circuit:
    """One output bit: 1 iff the two halves of the input are equal."""
    if w % 2:
        raise DomainError("eq_halves needs even width")
    h = w // 2
    gates = [Gate("INPUT", i) for i in range(w)]
    diffs = []
    for i in range(h):
        gates.append(Gate("XOR", i, h + i))
        diffs.append(len(gates) - 1)
    if not diffs:
        gates.append(Gate("CONST", 1))
        return GateNet(w, gates, [len(gates) - 1])
    acc = diffs[0]
    for d in diffs[1:]:
        gates.append(Gate("OR", acc, d))
        acc = len(gates) - 1
    gates.append(Gate("NOT", acc))
    return GateNet(w, gates, [len(gates) - 1])


def le_halves(w: int) -> Circuit:
    """One output bit: 1 iff first half <= second half as values."""
    if w % 2:
        raise DomainError("le_halves needs even width")
    h = w // 2
    gates = [Gate("INPUT", i) for i in range(w)]

    def new(op, a, b=0):
        gates.append(Gate(op, a, b))
        return len(gates) - 1

    # gt = OR_i (x_i AND NOT y_i AND eq-prefix); le = NOT gt
    gt = new("CONST", 0)
    eq = new("CONST", 1)
    for i in range(h):
        xi, yi = i, h + i
        ny = new("NOT", yi)
        here = new("AND", xi, ny)
        here = new("AND", eq, here)
        gt = new("OR", gt, here)
        xeq = new("XOR", xi, yi)
        xeq = new("NOT", xeq)
        eq = new("AND", eq, xeq)
    return GateNet(w, gates, [new("NOT", gt)])


def take_low(w: int, m: int) -> Circuit:
    """Project onto the last (least significant) m bits."""
    return projection(w, list(range(w - m, w)))


def embed(inner: Circuit, w: int) -> Circuit:
    """Lift an m -> m circuit to w -> w acting on the low m bits of small values.

    For value(x) < 2**m the result equals 0-padded inner(low bits); elsewhere
    the output is whatever the lift produces, so wrap it in a guard.
    """
    m = inner.in_width
    if inner.out_width != m or m > w:
        raise DomainError("embed needs an m -> m circuit and w >= m")
    if m == w:
        return inner
    return PadLeft(Compose(inner, take_low(w, m)), w - m)


def guard_prefix(inner: Circuit, t: int) -> Circuit:
    return GuardPrefix(inner, t)


# ---------------------------------------------------------------------------
# one-bit shrink chains with collision pull-back


def shrink_chain(cprime: Circuit, w_in: int, w_out: int) -> Circuit:
    """Chain of stages T_w(u || v) = cprime(u) || v, u the first m input bits.

    cprime must shrink by exactly one bit (m -> m-1); valid whenever
    w_in > w_out >= m-1, which keeps every stage at least m bits wide.
    """
    m = cprime.in_width
    if cprime.out_width != m - 1:
        raise DomainError("shrink stage circuit must drop exactly one bit")
    if not w_in > w_out >= m - 1:
        raise DomainError(f"cannot chain {w_in} -> {w_out} with stage width {m}")
    chain = None
    for w in range(w_in, w_out, -1):
        stage = Parallel(cprime, identity(w - m)) if w > m else cprime
        chain = stage if chain is None else Compose(stage, chain)
    return chain


def shrink_chain_pullback(
    cprime: Circuit, w_in: int, w_out: int, x1: BitString, x2: BitString
) -> tuple[BitString, BitString]:
    """Given chain(x1) = chain(x2) with x1 != x2, return distinct u1, u2 with
    cprime(u1) = cprime(u2) by replaying the stages and taking the first one
    whose outputs coincide."""
    m = cprime.in_width
    if x1 == x2:
        raise DomainError("pull-back needs distinct inputs")
    a, b = x1, x2
    for w in range(w_in, w_out, -1):
        u1, v1 = a[:m], a[m:]
        u2, v2 = b[:m], b[m:]
        y1 = cprime.eval(u1).concat(v1)
        y2 = cprime.eval(u2).concat(v2)
        if y1 == y2:
            if u1 == u2:
                raise DomainError("inputs merge without a stage collision")
            return u1, u2
        a, b = y1, y2
    raise DomainError("chain outputs never met: not a genuine collision")


# ---------------------------------------------------------------------------
# serialization


def _params_str(d: dict) -> str:
    return " ".join(f"{k}={v}" for k, v in d.items())


def _node_lines(c: Circuit, indent: int) -> list[str]:
    pad = " " * indent
    kid = indent + 2
    if isinstance(c, Table):
        lines = [f"{pad}TABLE in={c.in_width} out={c.out_width}"]
        lines += [pad + format(r, f"0{c.out_width}b") for r in c.rows]
        return lines
    if isinstance(c, GateNet):
        lines = [f"{pad}NETLIST in={c.in_width}"]
        for i, g in enumerate(c.gates):
            if g.op in ("INPUT", "CONST"):
                lines.append(f"{pad}g{i} = {g.op} {g.a}")
            elif g.op == "NOT":
                lines.append(f"{pad}g{i} = NOT g{g.a}")
            else:
                lines.append(f"{pad}g{i} = {g.op} g{g.a} g{g.b}")
        lines.append(pad + "OUTPUT " + " ".join(f"g{o}" for o in c.outputs))
        return lines
    if isinstance(c, Builtin):
        return [f"{pad}BLOCK {c.name} {_params_str(c.params)}".rstrip()]
    if isinstance(c, Compose):
        return [f"{pad}COMPOSE"] + _node_lines(c.f, kid) + _node_lines(c.g, kid)
    if isinstance(c, Parallel):
        return [f"{pad}PARALLEL"] + _node_lines(c.f, kid) + _node_lines(c.g, kid)
    if isinstance(c, Slice):
        return [f"{pad}SLICE start={c.start} stop={c.stop}"] + _node_lines(c.inner, kid)
    if isinstance(c, PadLeft):
        return [f"{pad}PAD bits={c.bits}"] + _node_lines(c.inner, kid)
    if isinstance(c, GuardPrefix):
        return [f"{pad}GUARD t={c.t}"] + _node_lines(c.inner, kid)
    if isinstance(c, ConstOp):
        return [f"{pad}{c.op.upper()}C c={c.c}"]
    if isinstance(c, Piecewise):
        lines = [f"{pad}PIECEWISE"]
        for case in c.cases[:-1]:
            if case.is_range:
                lines.append(f"{pad}  CASE lo={case.lo} hi={case.hi}")
                lines += _node_lines(case.branch, indent + 4)
            else:
                lines.append(f"{pad}  CASEPRED")
                lines += _node_lines(case.pred, indent + 4)
                lines += _node_lines(case.branch, indent + 4)
        lines.append(f"{pad}  ELSE")
        lines += _node_lines(c.cases[-1].branch, indent + 4)
        return lines
    raise DomainError(f"cannot serialize node {type(c).__name__}")


def to_text(c: Circuit) -> str:
    if c.out_width == 0:
        raise DomainError("zero-output circuits have no text form")
    return "\n".join([f"CIRCUIT in={c.in_width} out={c.out_width}"] + _node_lines(c, 0)) + "\n"


_NODE_WORDS = {
    "TABLE", "NETLIST", "BLOCK", "COMPOSE", "PARALLEL", "SLICE", "PAD",
    "GUARD", "ADDC", "SUBC", "XORC", "PIECEWISE", "CASE", "CASEPRED", "ELSE",
}


class _Parser:
    def __init__(self, lines: list[tuple[int, int, str]]):
        self.lines = lines  # (lineno, indent, text)
        self.pos = 0

    def peek(self):
        return self.lines[self.pos] if self.pos < len(self.lines) else None

    def take(self):
        item = self.peek()
        if item is None:
            raise ParseError("unexpected end of circuit text")
        self.pos += 1
        return item

    def parse_node(self, indent: int, default_in=None, default_out=None) -> Circuit:
        item = self.peek()
        if item is None:
            raise ParseError("expected a circuit node")
        lineno, ind, text = item
        if ind != indent:
            raise ParseError(f"expected node at indent {indent}", lineno)
        word = text.split()[0]
        if word not in _NODE_WORDS:
            raise ParseError(f"unknown node {word!r}", lineno)
        self.take()
        attrs = _parse_attrs(text, lineno)
        try:
            return self._build(word, attrs, indent, lineno, default_in, default_out)
        except ParseError:
            raise
        except (DomainError, ValueError) as e:
            raise ParseError(str(e), lineno) from e
        except KeyError as e:
            raise ParseError(f"missing or unknown attribute {e}", lineno) from e

    def _build(self, word, attrs, indent, lineno, default_in, default_out):
        kid = indent + 2
        if word == "TABLE":
            in_w = int(attrs.get("in", default_in if default_in is not None else -1))
            out_w = int(attrs.get("out", default_out if default_out is not None else -1))
            if in_w < 0 or out_w < 0:
                raise ParseError("nested TABLE needs in= and out=", lineno)
            rows = []
            for _ in range(1 << in_w):
                ln, _, row = self.take()
                if set(row) - {"0", "1"} or len(row) != out_w:
                    raise ParseError(f"bad table row {row!r}", ln)
                rows.append(int(row, 2) if row else 0)
            return Table(in_w, out_w, rows)
        if word == "NETLIST":
            in_w = int(attrs.get("in", default_in if default_in is not None else -1))
            if in_w < 0:
                raise ParseError("nested NETLIST needs in=", lineno)
            gates, ids = [], {}
            while True:
                ln, _, line = self.take()
                if line.startswith("OUTPUT"):
                    outs = []
                    for tok in line.split()[1:]:
                        if tok not in ids:
                            raise ParseError(f"unknown gate {tok!r}", ln)
                        outs.append(ids[tok])
                    return GateNet(in_w, gates, outs)
                m = line.split(" = ")
                if len(m) != 2:
                    raise ParseError(f"bad netlist line {line!r}", ln)
                name, rhs = m[0].strip(), m[1].split()
                op = rhs[0]
                if op in ("INPUT", "CONST"):
                    gates.append(Gate(op, int(rhs[1])))
                elif op == "NOT":
                    gates.append(Gate(op, ids[rhs[1]]))
                elif op in ("AND", "OR", "XOR"):
                    gates.append(Gate(op, ids[rhs[1]], ids[rhs[2]]))
                else:
                    raise ParseError(f"unknown gate op {op!r}", ln)
                ids[name] = len(gates) - 1
        if word == "BLOCK":
            return Builtin(attrs.pop("_name"), **{k: int(v) for k, v in attrs.items()})
        if word == "COMPOSE":
            f = self.parse_node(kid)
            g = self.parse_node(kid)
            return Compose(f, g)
        if word == "PARALLEL":
            f = self.parse_node(kid)
            g = self.parse_node(kid)
            return Parallel(f, g)
        if word == "SLICE":
            return Slice(self.parse_node(kid), int(attrs["start"]), int(attrs["stop"]))
        if word == "PAD":
            return PadLeft(self.parse_node(kid), int(attrs["bits"]))
        if word == "GUARD":
            return GuardPrefix(self.parse_node(kid), int(attrs["t"]))
        if word in ("ADDC", "SUBC", "XORC"):
            return ConstOp(word[:3].lower(), BitString.from_str(attrs["c"]))
        if word == "PIECEWISE":
            cases = []
            while True:
                item = self.peek()
                if item is None or item[1] != kid:
                    raise ParseError("piecewise must end with an ELSE case", lineno)
                _, _, head = item
                kw = head.split()[0]
                if kw == "CASE":
                    ln, _, txt = self.take()
                    a = _parse_attrs(txt, ln)
                    branch = self.parse_node(kid + 2)
                    cases.append(Case(branch, lo=int(a["lo"]), hi=int(a["hi"])))
                elif kw == "CASEPRED":
                    self.take()
                    pred = self.parse_node(kid + 2)
                    branch = self.parse_node(kid + 2)
                    cases.append(Case(branch, pred=pred))
                elif kw == "ELSE":
                    self.take()
                    branch = self.parse_node(kid + 2)
                    cases.append(Case(branch, lo=0, hi=1 << branch.in_width))
                    return Piecewise(cases)
                else:
                    raise ParseError(f"unexpected {kw!r} inside PIECEWISE", item[0])
        raise ParseError(f"unknown node {word!r}", lineno)


def _parse_attrs(text: str, lineno: int) -> dict:
    toks = text.split()
    attrs: dict = {}
    for i, tok in enumerate(toks[1:]):
        if "=" in tok:
            k, v = tok.split("=", 1)
            attrs[k] = v
        elif i == 0:
            attrs["_name"] = tok
        else:
            raise ParseError(f"bad attribute {tok!r}", lineno)
    return attrs


def from_text(text: str, start_line: int = 1) -> Circuit:
    lines = []
    header = None
    for off, raw in enumerate(text.splitlines()):
        if not raw.strip():
            continue
        lineno = start_line + off
        stripped = raw.lstrip(" ")
        indent = len(raw) - len(stripped)
        if header is None:
            if not stripped.startswith("CIRCUIT"):
                raise ParseError("expected CIRCUIT header", lineno)
            header = (_parse_attrs(stripped, lineno), lineno)
        else:
            lines.append((lineno, indent, stripped.rstrip()))
    if header is None:
        raise ParseError("empty circuit text")
    attrs, hline = header
    try:
        in_w, out_w = int(attrs["in"]), int(attrs["out"])
    except KeyError as e:
        raise ParseError(f"CIRCUIT header missing {e}", hline)
    parser = _Parser(lines)
    node = parser.parse_node(0, default_in=in_w, default_out=out_w)
    if parser.peek() is not None:
        raise ParseError("trailing content after circuit", parser.peek()[0])
    if (node.in_width, node.out_width) != (in_w, out_w):
        raise ParseError(
            f"header says {in_w}->{out_w} but node is {node.in_width}->{node.out_width}", hline
        )
    return node
