"""Fuel-bounded reduction for closed L_HAP terms, and bounded three-valued
formula evaluation on top of it.

Reduction is deterministic leftmost-outermost rewriting by the defining
equations of the combinators.  Numerals are first-class machine values
(arbitrary precision), and the pairing combinator acts on two numerals
through the shared bijection, so surjective pairing holds on numbers and
Goedel-code surgery costs O(1) steps per node.  On non-numeral values `p`
is a constructor and the projections take it apart.

A fuel budget makes everything total: running out is reported as
FuelExhausted, normal forms that are not numerals are Stuck values.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

from .pairing import pair, unpair
from .syntax import (
    BinOp, Const, NumLit, PRApp, SApp, Term, TVar, app, numeral,
)

if sys.getrecursionlimit() < 50000:
    sys.setrecursionlimit(50000)

DEFAULT_FUEL = 100_000

# Machine nodes.  Leaves are tuples: ('n', value) numerals, ('c', name)
# constants, ('pv', l, r) constructor pairs.  Reducible positions are
# mutable lists: ['a', fun, arg] application, ['s1', t] successor,
# ['op', o, l, r] arithmetic, and ['i', node] an indirection left behind
# once a node has been reduced.  Overwriting reduced nodes in place makes
# shared arguments cost one reduction instead of one per use; the
# rewrite relation itself is the plain leftmost-outermost one.


class _OutOfFuel(Exception):
    pass


def compile_term(t: Term, memo: dict | None = None):
    """Closed Term -> machine node; shared subterms share nodes."""
    if memo is None:
        memo = {}
    key = id(t)
    got = memo.get(key)
    if got is not None:
        return got
    if isinstance(t, Const):
        out = ("n", 0) if t.name == "0" else ("c", t.name)
    elif isinstance(t, NumLit):
        out = ("n", t.value)
    elif isinstance(t, SApp):
        out = ["s1", compile_term(t.arg, memo)]
    elif isinstance(t, BinOp):
        if t.op == "@":
            out = ["a", compile_term(t.left, memo), compile_term(t.right, memo)]
        else:
            out = ["op", t.op, compile_term(t.left, memo), compile_term(t.right, memo)]
    elif isinstance(t, TVar):
        raise ValueError(f"open term: {t.var} is free")
    elif isinstance(t, PRApp):
        raise ValueError("PR symbols must be translated before evaluation")
    else:
        raise TypeError(t)
    memo[key] = out
    return out


_ARITY = {"k": 2, "s": 3, "p": 2, "p_l": 1, "p_r": 1, "succ": 1, "r": 3}


def _chase(t):
    while type(t) is list and t[0] == "i":
        inner = t[1]
        if type(inner) is list and inner[0] == "i":
            t[1] = inner[1]  # path compression
        t = t[1]
    return t


def _whnf(t, fuel: list[int]):
    stack: list[list] = []  # application nodes whose functions we entered
    while True:
        t = _chase(t)
        while type(t) is list and t[0] == "a":
            stack.append(t)
            t = _chase(t[1])
        if type(t) is tuple:
            tag = t[0]
            if tag != "c":
                break  # numeral or pair at the head: spine is stuck
            name = t[1]
            need = _ARITY[name]
            if len(stack) < need:
                break
            if fuel[0] <= 0:
                raise _OutOfFuel
            fuel[0] -= 1
            nodes = [stack.pop() for _ in range(need)]
            root = nodes[-1]
            stuck = False
            if name == "k":
                res = nodes[0][2]
            elif name == "s":
                a, b, c = nodes[0][2], nodes[1][2], nodes[2][2]
                res = ["a", ["a", a, c], ["a", b, c]]
            elif name == "succ":
                a = _whnf(nodes[0][2], fuel)
                if a[0] == "n":
                    res = ("n", a[1] + 1)
                else:
                    res, stuck = ["a", t, a], True
            elif name == "p":
                a = _whnf(nodes[0][2], fuel)
                b = _whnf(nodes[1][2], fuel)
                if a[0] == "n" and b[0] == "n":
                    res = ("n", pair(a[1], b[1]))
                else:
                    res = ("pv", a, b)
            elif name == "p_l":
                a = _whnf(nodes[0][2], fuel)
                if a[0] == "n":
                    res = ("n", unpair(a[1])[0])
                elif a[0] == "pv":
                    res = a[1]
                else:
                    res, stuck = ["a", t, a], True
            elif name == "p_r":
                a = _whnf(nodes[0][2], fuel)
                if a[0] == "n":
                    res = ("n", unpair(a[1])[1])
                elif a[0] == "pv":
                    res = a[2]
                else:
                    res, stuck = ["a", t, a], True
            else:  # r
                x, y = nodes[0][2], nodes[1][2]
                z = _whnf(nodes[2][2], fuel)
                if z[0] != "n":
                    res, stuck = ["a", ["a", ["a", t, x], y], z], True
                elif z[1] == 0:
                    res = x
                else:
                    prev = ("n", z[1] - 1)
                    res = ["a", ["a", y, prev], ["a", ["a", ["a", t, x], y], prev]]
            root[:] = ["i", res]
            t = res
            if stuck:
                break
            continue
        tag = t[0]
        if tag == "s1":
            if fuel[0] <= 0:
                raise _OutOfFuel
            fuel[0] -= 1
            inner = _whnf(t[1], fuel)
            if inner[0] == "n":
                res = ("n", inner[1] + 1)
                t[:] = ["i", res]
                t = res
                continue
            t[1] = inner
            break
        if tag == "op":
            if fuel[0] <= 0:
                raise _OutOfFuel
            fuel[0] -= 1
            a = _whnf(t[2], fuel)
            b = _whnf(t[3], fuel)
            if a[0] == "n" and b[0] == "n":
                res = ("n", a[1] + b[1] if t[1] == "+" else a[1] * b[1])
                t[:] = ["i", res]
                t = res
                continue
            t[2], t[3] = a, b
            break
        raise TypeError(t)
    # stuck: stitch the remaining spine back together, sharing the head
    while stack:
        node = stack.pop()
        node[1] = t
        t = node
    return t


def _value_of(t, fuel: list[int]):
    """Full normal form of a machine node (arguments included)."""
    t = _whnf(t, fuel)
    if type(t) is tuple:
        if t[0] == "pv":
            return ("pv", _value_of(t[1], fuel), _value_of(t[2], fuel))
        return t
    if t[0] == "a":
        return ["a", _value_of(t[1], fuel), _value_of(t[2], fuel)]
    if t[0] == "s1":
        return ["s1", _value_of(t[1], fuel)]
    if t[0] == "op":
        return ["op", t[1], _value_of(t[2], fuel), _value_of(t[3], fuel)]
    raise TypeError(t)


def machine_to_term(t) -> Term:
    t = _chase(t)
    tag = t[0]
    if tag == "n":
        return NumLit(t[1])
    if tag == "c":
        return Const(t[1])
    if tag == "a":
        return BinOp("@", machine_to_term(t[1]), machine_to_term(t[2]))
    if tag == "pv":
        return app(Const("p"), machine_to_term(t[1]), machine_to_term(t[2]))
    if tag == "s1":
        return SApp(machine_to_term(t[1]))
    if tag == "op":
        return BinOp(t[1], machine_to_term(t[2]), machine_to_term(t[3]))
    raise TypeError(t)


@dataclass(frozen=True)
class Fuel:
    steps: int = DEFAULT_FUEL


@dataclass(frozen=True)
class EvalResult:
    """Outcome of bounded reduction: a value, or fuel exhaustion."""
    converged: bool
    term: Term | None = None
    value: int | None = None  # set when the value is a numeral

    @property
    def is_numeral(self) -> bool:
        return self.converged and self.value is not None

    @property
    def is_stuck(self) -> bool:
        return self.converged and self.value is None

    def __repr__(self) -> str:
        if not self.converged:
            return "FuelExhausted"
        if self.value is not None:
            return f"Value({self.value})"
        return f"Stuck({self.term!r})"


FUEL_EXHAUSTED = EvalResult(False)


def eval_term(t: Term, fuel: int | Fuel = DEFAULT_FUEL) -> EvalResult:
    """Reduce a closed term to applicative normal form within the budget."""
    budget = [fuel.steps if isinstance(fuel, Fuel) else fuel]
    try:
        m = _value_of(compile_term(t), budget)
    except _OutOfFuel:
        return FUEL_EXHAUSTED
    if m[0] == "n":
        return EvalResult(True, NumLit(m[1]), m[1])
    return EvalResult(True, machine_to_term(m), None)


def eval_machine(m, fuel: int = DEFAULT_FUEL):
    """Reduce an already-compiled machine node; None on fuel exhaustion."""
    budget = [fuel]
    try:
        return _value_of(m, budget)
    except _OutOfFuel:
        return None


# ---------------------------------------------------------------------------
# bounded three-valued formula semantics

from .syntax import (  # noqa: E402
    All, And, Bot, Eq, Ex, Formula, Imp, Or, RelAtom, RelSymbol, TVar, Var,
    subst_in_term,
)

RelSemantics = "dict[RelSymbol, object]"


def _eval_atom_term(t: Term, env: dict[int, int], fuel: int) -> EvalResult:
    mapping = {v: NumLit(env[v.index]) for v in _term_vars_cached(t) if v.index in env}
    closed = subst_in_term(t, mapping) if mapping else t
    return eval_term(closed, fuel)


from .syntax import term_vars as _term_vars_cached  # noqa: E402


def eval_formula(
    phi: Formula,
    env: dict[int, int] | None = None,
    bound: int = 6,
    fuel: int = DEFAULT_FUEL,
    rels: dict[RelSymbol, object] | None = None,
) -> bool | None:
    """Three-valued bounded truth: True, False, or None for unknown.

    Quantifiers range over [0, bound].  A universal never reports True on
    the infinite domain, an existential never reports False; atoms whose
    terms run out of fuel are unknown, stuck-value comparisons are unknown
    unless both sides are the same normal form.
    """
    env = env or {}
    rels = rels or {}

    def ev(f: Formula, e: dict[int, int]) -> bool | None:
        if isinstance(f, Bot):
            return False
        if isinstance(f, Eq):
            a = _eval_atom_term(f.left, e, fuel)
            b = _eval_atom_term(f.right, e, fuel)
            if not a.converged or not b.converged:
                return None
            if a.is_numeral and b.is_numeral:
                return a.value == b.value
            return True if a.term == b.term else None
        if isinstance(f, RelAtom):
            if f.rel not in rels:
                raise ValueError(f"no semantics supplied for relation {f.rel}")
            vals = []
            for t in f.args:
                r = _eval_atom_term(t, e, fuel)
                if not r.is_numeral:
                    return None
                vals.append(r.value)
            return rels[f.rel](tuple(vals))
        if isinstance(f, And):
            a = ev(f.left, e)
            if a is False:
                return False
            b = ev(f.right, e)
            if b is False:
                return False
            return True if (a is True and b is True) else None
        if isinstance(f, Or):
            a = ev(f.left, e)
            if a is True:
                return True
            b = ev(f.right, e)
            if b is True:
                return True
            return False if (a is False and b is False) else None
        if isinstance(f, Imp):
            a = ev(f.left, e)
            if a is False:
                return True
            b = ev(f.right, e)
            if b is True:
                return True
            if a is True and b is False:
                return False
            return None
        if isinstance(f, All):
            saw_unknown = False
            for n in range(bound + 1):
                e2 = dict(e)
                e2[f.var.index] = n
                r = ev(f.body, e2)
                if r is False:
                    return False
                if r is None:
                    saw_unknown = True
            del saw_unknown
            return None  # the bound truncates an infinite domain
        if isinstance(f, Ex):
            # solved form: an equation with the bound variable isolated on
            # one side names its own witness, however large
            if isinstance(f.body, Eq):
                for side, other in ((f.body.left, f.body.right),
                                    (f.body.right, f.body.left)):
                    if (isinstance(side, TVar) and side.var == f.var
                            and f.var not in _term_vars_cached(other)):
                        r = _eval_atom_term(other, e, fuel)
                        if r.is_numeral:
                            return True
            for n in range(bound + 1):
                e2 = dict(e)
                e2[f.var.index] = n
                if ev(f.body, e2) is True:
                    return True
            return None
        raise TypeError(f)

    return ev(phi, env)
