"""A tiny functional layer compiled to pure applicative combinator terms.

The object-level syntax machinery (valuation, code surgery, the code-level
normalizer) is written in this DSL and compiled to closed L_HAP terms.
Everything compiles to constants and application only: no S/+/x nodes,
so the abstraction never needs arithmetic factoring.  The bracket
abstraction here uses the B/C optimizations plus eta, which keeps the
compiled programs near-linear in the source size (the exported
`lambda_abstract` of the combinatory module intentionally does not).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .combinatory import builtin
from .syntax import (
    BinOp, Const, NumLit, Term, TVar, Var, app, term_vars,
)

K = Const("k")
S = Const("s")
I_TERM = app(S, K, K)


@lru_cache(maxsize=None)
def _b_comb() -> Term:
    # B m n c = m (n c)
    return app(S, app(K, S), K)


@lru_cache(maxsize=None)
def _c_comb() -> Term:
    # C m n c = m c n, derived once from basic abstraction
    from .combinatory import lambdas
    m, n, c = Var(0), Var(1), Var(2)
    return lambdas([m, n, c], app(TVar(m), TVar(c), TVar(n)))


def _fv(t: Term, cache: dict) -> frozenset:
    got = cache.get(id(t))
    if got is not None:
        return got
    if isinstance(t, TVar):
        out = frozenset((t.var,))
    elif isinstance(t, BinOp):
        out = _fv(t.left, cache) | _fv(t.right, cache)
    else:
        out = frozenset()
    cache[id(t)] = out
    return out


def abstract(x: Var, t: Term, _cache: dict | None = None) -> Term:
    """Bracket abstraction with B/C/eta, application-only terms."""
    cache = _cache if _cache is not None else {}
    if isinstance(t, TVar) and t.var == x:
        return I_TERM
    if x not in _fv(t, cache):
        return app(K, t)
    if not (isinstance(t, BinOp) and t.op == "@"):
        raise ValueError("object programs are application-only")
    f, a = t.left, t.right
    fin = x in _fv(f, cache)
    ain = x in _fv(a, cache)
    if fin and ain:
        return app(S, abstract(x, f, cache), abstract(x, a, cache))
    if fin:
        return app(_c_comb(), abstract(x, f, cache), a)
    if isinstance(a, TVar) and a.var == x:
        return f  # eta
    return app(_b_comb(), f, abstract(x, a, cache))


# ---------------------------------------------------------------------------
# expression nodes

class OExpr:
    __slots__ = ()

    def __call__(self, *args: "OExpr | int") -> "OExpr":
        return ap(self, *args)


@dataclass(frozen=True)
class OV(OExpr):
    name: str


@dataclass(frozen=True)
class OL(OExpr):
    term: Term


@dataclass(frozen=True)
class OA(OExpr):
    fun: OExpr
    arg: OExpr


def _coerce(x) -> OExpr:
    if isinstance(x, OExpr):
        return x
    if isinstance(x, int):
        return OL(NumLit(x))
    if isinstance(x, Term):
        return OL(x)
    raise TypeError(x)


def ap(f, *args) -> OExpr:
    out = _coerce(f)
    for a in args:
        out = OA(out, _coerce(a))
    return out


@dataclass(frozen=True)
class OLam(OExpr):
    names: tuple[str, ...]
    body: OExpr


def lam(names, body) -> OLam:
    if isinstance(names, str):
        names = (names,)
    return OLam(tuple(names), _coerce(body))


def let(name: str, value, body) -> OExpr:
    """let x = v in b, as an immediate application.

    The evaluator updates shared nodes in place, so the bound value is
    reduced once however often the body uses it."""
    return ap(lam(name, body), value)


def fix(fname: str, argnames, bodyfn) -> OExpr:
    """A recursive function: bodyfn receives (self, *args) as OExprs."""
    if isinstance(argnames, str):
        argnames = (argnames,)
    args = [OV(a) for a in argnames]
    body = _coerce(bodyfn(OV(fname), *args))
    return ap(OL(builtin("fix")), lam((fname, *argnames), body))


_D = None


def if_eq(a, b, then, otherwise) -> OExpr:
    """Branch on numeral equality; only the taken branch is reduced."""
    global _D
    if _D is None:
        _D = OL(builtin("d"))
    return ap(_D, a, b, lam("_t", then), lam("_e", otherwise), 0)


def switch_tag(subject, cases: dict[int, "OExpr"], default) -> OExpr:
    """Jump-table dispatch on a small natural (node tags).

    The branches sit in a nested-pair table as thunks; selection walks
    `subject` tail steps with the recursor and projects, so the cost is
    linear in the tag value with a tiny constant, and only the chosen
    branch is reduced."""
    hi = max(cases) if cases else 0
    table: OExpr = ap(OL(Const("p")), lam("_j", default), 0)  # beyond-range slot
    for tagval in range(hi, -1, -1):
        branch = cases.get(tagval)
        entry = lam("_j", branch if branch is not None else default)
        table = ap(OL(Const("p")), entry, table)
    # clamp the index so garbage tags stop at the beyond-range slot
    idx = let("_sw", subject,
              if_zero(ap(OL(builtin("monus")), OV("_sw"), hi + 1), OV("_sw"), hi + 1))
    walk = ap(OL(Const("r")), table, ap(OL(Const("k")), OL(Const("p_r"))), idx)
    return ap(ap(OL(Const("p_l")), walk), 0)


_ISZERO = None


def if_zero(a, then, otherwise) -> OExpr:
    """Zero test through the O(1) iszero flag; never compare a large
    number with d directly (its equality loop costs the magnitude)."""
    global _ISZERO
    if _ISZERO is None:
        _ISZERO = OL(builtin("iszero"))
    return if_eq(ap(_ISZERO, a), 1, then, otherwise)


# ---------------------------------------------------------------------------
# compilation

def compile_obj(e: OExpr) -> Term:
    """Compile a closed DSL expression to a closed combinator term."""
    fresh = [0]
    binding: dict[str, Var] = {}

    def walk(x: OExpr) -> Term:
        if isinstance(x, OV):
            v = binding.get(x.name)
            if v is None:
                raise ValueError(f"unbound object variable {x.name!r}")
            return TVar(v)
        if isinstance(x, OL):
            if term_vars(x.term):
                raise ValueError("literal terms must be closed")
            return x.term
        if isinstance(x, OA):
            return BinOp("@", walk(x.fun), walk(x.arg))
        if isinstance(x, OLam):
            saved = {}
            vs = []
            for name in x.names:
                saved[name] = binding.get(name)
                v = Var(10_000 + fresh[0])
                fresh[0] += 1
                binding[name] = v
                vs.append(v)
            body = walk(x.body)
            for name in x.names:
                if saved[name] is None:
                    del binding[name]
                else:
                    binding[name] = saved[name]
            for v in reversed(vs):
                body = abstract(v, body)
            return body
        raise TypeError(x)

    out = walk(_coerce(e))
    if term_vars(out):
        raise ValueError("expression is not closed")
    return out
