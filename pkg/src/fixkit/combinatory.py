"""The partial combinatory algebra toolkit.

Bracket abstraction (variable case s k k, constant case k tau, recursing
through applications), the derived combinators id, d, fix and min,
compilation of primitive recursive definitions to closed combinator
terms, the L_PRA -> L_HAP translation, and update terms.

Abstraction first factors the arithmetic function symbols out through
total wrappers (succ for S, compiled PR addition and multiplication for
+ and x), so its output lives in the application-only fragment and
always denotes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .syntax import (
    And, BinOp, Bot, Const, Eq, Ex, All, Imp, Formula, NumLit, Or, PRApp,
    RelAtom, SApp, Term, TVar, Var, app, free_vars, numeral, term_vars,
    K, S_COMB, P, P_L, P_R, SUCC, R, ZERO, LanguageTag, in_language,
)

SKK = app(S_COMB, K, K)  # the identity combinator


# ---------------------------------------------------------------------------
# primitive recursive definitions

class PRDef:
    __slots__ = ()


@dataclass(frozen=True)
class Zero(PRDef):
    arity: int = 1

    def __post_init__(self):
        if self.arity < 0:
            raise ValueError("negative arity")


@dataclass(frozen=True)
class Succ(PRDef):
    @property
    def arity(self) -> int:
        return 1


@dataclass(frozen=True)
class Proj(PRDef):
    k: int
    i: int

    def __post_init__(self):
        if not 0 <= self.i < self.k:
            raise ValueError("projection index out of range")

    @property
    def arity(self) -> int:
        return self.k


@dataclass(frozen=True)
class Comp(PRDef):
    f: PRDef
    gs: tuple[PRDef, ...]

    def __post_init__(self):
        if self.f.arity != len(self.gs):
            raise ValueError("outer arity mismatch in composition")
        if not self.gs:
            raise ValueError("composition needs at least one inner function")
        n = self.gs[0].arity
        if any(g.arity != n for g in self.gs):
            raise ValueError("inner arity mismatch in composition")

    @property
    def arity(self) -> int:
        return self.gs[0].arity


@dataclass(frozen=True)
class Rec(PRDef):
    """Primitive recursion: value at 0 from h (arity k), step from g
    (arity k+2, arguments x..., counter, previous value)."""
    g: PRDef
    h: PRDef

    def __post_init__(self):
        if self.g.arity != self.h.arity + 2:
            raise ValueError("recursion arities inconsistent")

    @property
    def arity(self) -> int:
        return self.h.arity + 1


def pr_eval(d: PRDef, args: tuple[int, ...] | list[int]) -> int:
    """Direct interpreter for PR definitions (the non-combinator route)."""
    args = tuple(args)
    if len(args) != d.arity:
        raise ValueError(f"arity {d.arity} function applied to {len(args)} arguments")
    if isinstance(d, Zero):
        return 0
    if isinstance(d, Succ):
        return args[0] + 1
    if isinstance(d, Proj):
        return args[d.i]
    if isinstance(d, Comp):
        inner = tuple(pr_eval(g, args) for g in d.gs)
        return pr_eval(d.f, inner)
    if isinstance(d, Rec):
        xs, y = args[:-1], args[-1]
        acc = pr_eval(d.h, xs)
        for i in range(y):
            acc = pr_eval(d.g, xs + (i, acc))
        return acc
    raise TypeError(d)


PR_ADD = Rec(g=Comp(Succ(), (Proj(3, 2),)), h=Proj(1, 0))
PR_MUL = Rec(g=Comp(PR_ADD, (Proj(3, 2), Proj(3, 0))), h=Zero(1))
PR_PRED = Rec(g=Proj(2, 0), h=Zero(0))
PR_MONUS = Rec(g=Comp(PR_PRED, (Proj(3, 2),)), h=Proj(1, 0))
PR_SG = Rec(g=Comp(Succ(), (Zero(2),)), h=Zero(0))
_ONE2 = Comp(Succ(), (Zero(2),))
PR_PAR = Rec(g=Comp(PR_MONUS, (_ONE2, Proj(2, 1))), h=Zero(0))
PR_DIV2 = Rec(g=Comp(PR_ADD, (Proj(2, 1), Comp(PR_PAR, (Proj(2, 0),)))), h=Zero(0))
_SUM2 = Comp(PR_ADD, (Proj(2, 0), Proj(2, 1)))
PR_CANTOR = Comp(
    PR_ADD,
    (Comp(PR_DIV2, (Comp(PR_MUL, (_SUM2, Comp(Succ(), (_SUM2,)))),)), Proj(2, 1)),
)


def bounded_min(f: PRDef) -> PRDef:
    """Least i <= b with f(i) = 0, else b + 1, as a PR definition in b."""
    if f.arity != 1:
        raise ValueError("bounded_min takes a unary predicate")
    # m(0) = sg(f(0)); m(S b) = m(b) + sg(m(b) - b) * ((S b - m(b)) + sg(f(S b)))
    b, prev = Proj(2, 0), Proj(2, 1)
    sb = Comp(Succ(), (b,))
    done = Comp(PR_SG, (Comp(PR_MONUS, (prev, b)),))
    fresh = Comp(PR_ADD, (Comp(PR_MONUS, (sb, prev)), Comp(PR_SG, (Comp(f, (sb,)),))))
    step = Comp(PR_ADD, (prev, Comp(PR_MUL, (done, fresh))))
    base = Comp(PR_SG, (Comp(f, (Proj(1, 0),)),))
    # h must be 0-ary: fold the base case through a recursion from zero
    return Rec(g=step, h=_const0ary(base))


def _const0ary(unary_at_zero: PRDef) -> PRDef:
    # value at 0 of a unary PR function, as a 0-ary definition
    return Comp(unary_at_zero, (Zero(0),))


# bmin_sample: least i <= b with 2 monus i*i = 0, i.e. the first i with i*i >= 2
_F_SAMPLE = Comp(PR_MONUS, (Comp(Succ(), (Comp(Succ(), (Zero(1),)),)),
                            Comp(PR_MUL, (Proj(1, 0), Proj(1, 0)))))

PR_REGISTRY: dict[str, PRDef] = {
    "add": PR_ADD,
    "mul": PR_MUL,
    "pred": PR_PRED,
    "monus": PR_MONUS,
    "sg": PR_SG,
    "par": PR_PAR,
    "div2": PR_DIV2,
    "cantor": PR_CANTOR,
    "bmin_sample": bounded_min(_F_SAMPLE),
}


# ---------------------------------------------------------------------------
# bracket abstraction

def _strip_arith(t: Term) -> Term:
    """Replace S/+/x by applications of their total wrapper combinators."""
    if isinstance(t, (TVar, Const, NumLit)):
        return t
    if isinstance(t, SApp):
        return app(SUCC, _strip_arith(t.arg))
    if isinstance(t, BinOp):
        if t.op == "@":
            return BinOp("@", _strip_arith(t.left), _strip_arith(t.right))
        wrapper = add_term() if t.op == "+" else mul_term()
        return app(wrapper, _strip_arith(t.left), _strip_arith(t.right))
    if isinstance(t, PRApp):
        raise ValueError("translate the L_PRA fragment before abstraction")
    raise TypeError(t)


def _bracket(x: Var, t: Term) -> Term:
    if isinstance(t, TVar) and t.var == x:
        return SKK
    if x not in term_vars(t):
        return app(K, t)
    if isinstance(t, BinOp) and t.op == "@":
        return app(S_COMB, _bracket(x, t.left), _bracket(x, t.right))
    raise TypeError(f"unexpected node under abstraction: {t}")


def lambda_abstract(x: Var, t: Term) -> Term:
    """A denoting term l with FV(l) = FV(t) - {x} and l . s ~ t[x/s]."""
    return _bracket(x, _strip_arith(t))


def lambdas(xs: list[Var], t: Term) -> Term:
    out = t
    for x in reversed(xs):
        out = lambda_abstract(x, out)
    return out


# ---------------------------------------------------------------------------
# compiled PR terms

_compile_cache: dict[PRDef, Term] = {}


def compile_pr(d: PRDef) -> Term:
    """Closed application-only combinator computing the PR function."""
    if d in _compile_cache:
        return _compile_cache[d]
    n = d.arity
    xs = [Var(i) for i in range(n)]
    if isinstance(d, Zero):
        body: Term = ZERO
        out = lambdas(xs, body) if xs else ZERO
    elif isinstance(d, Succ):
        out = SUCC
    elif isinstance(d, Proj):
        out = lambdas(xs, TVar(xs[d.i]))
    elif isinstance(d, Comp):
        inner = [app(compile_pr(g), *[TVar(v) for v in xs]) for g in d.gs]
        out = lambdas(xs, app(compile_pr(d.f), *inner))
    elif isinstance(d, Rec):
        k = d.h.arity
        params, y = xs[:k], xs[k]
        z, w = Var(n), Var(n + 1)
        base = app(compile_pr(d.h), *[TVar(v) for v in params]) if k else compile_pr(d.h)
        step = lambdas([z, w], app(compile_pr(d.g), *[TVar(v) for v in params], TVar(z), TVar(w)))
        out = lambdas(xs, app(R, base, step, TVar(y)))
    else:
        raise TypeError(d)
    _compile_cache[d] = out
    return out


@lru_cache(maxsize=None)
def add_term() -> Term:
    return compile_pr(PR_ADD)


@lru_cache(maxsize=None)
def mul_term() -> Term:
    return compile_pr(PR_MUL)


# ---------------------------------------------------------------------------
# derived combinators

@lru_cache(maxsize=None)
def _derived(name: str) -> Term:
    if name == "id":
        return SKK
    if name == "pred":
        n = Var(0)
        return lambda_abstract(n, app(R, ZERO, K, TVar(n)))
    if name == "iszero":
        n = Var(0)
        return lambda_abstract(n, app(R, numeral(1), app(K, app(K, ZERO)), TVar(n)))
    if name == "monus":
        a, b = Var(0), Var(1)
        return lambdas([a, b], app(R, TVar(a), app(K, _derived("pred")), TVar(b)))
    if name == "eqnum":
        a, b = Var(0), Var(1)
        m = _derived("monus")
        body = app(_derived("iszero"),
                   BinOp("+", app(m, TVar(a), TVar(b)), app(m, TVar(b), TVar(a))))
        return lambdas([a, b], body)
    if name == "d":
        x, y, f, g, z = (Var(i) for i in range(5))
        flag = app(_derived("eqnum"), TVar(x), TVar(y))
        sel = app(R, TVar(g), app(K, app(K, TVar(f))), flag)
        return lambdas([x, y, f, g, z], app(sel, TVar(z)))
    if name == "fix":
        f, u, y = Var(0), Var(1), Var(2)
        w = lambdas([u, y], app(TVar(f), app(TVar(u), TVar(u)), TVar(y)))
        return lambda_abstract(f, app(w, w))
    if name == "min":
        f, x, rec, y, w = (Var(i) for i in range(5))
        step = lambdas(
            [rec, y],
            app(_derived("d"),
                app(TVar(f), TVar(x), TVar(y)), ZERO,
                app(K, TVar(y)),
                lambda_abstract(w, app(TVar(rec), app(SUCC, TVar(y)))),
                TVar(y)))
        return lambdas([f, x], app(app(_derived("fix"), step), ZERO))
    raise ValueError(f"unknown builtin {name!r}")


def builtin(name: str) -> Term:
    """Closed terms for id, d, fix, min and the conjs helper."""
    if name in ("id", "d", "fix", "min", "pred", "iszero", "monus", "eqnum"):
        return _derived(name)
    if name == "conjs":
        from .objprog import conjs_term
        return conjs_term()
    raise ValueError(f"unknown builtin {name!r}")


def update_term(eta: Term, nu: Term, tau: Term) -> Term:
    """The update of eta at argument nu with value tau:
    lambda u. d u nu (k tau) eta u, with u fresh."""
    avoid = {v.index for v in term_vars(eta) | term_vars(nu) | term_vars(tau)}
    i = 0
    while i in avoid:
        i += 1
    u = Var(i)
    body = app(_derived("d"), TVar(u), nu, app(K, tau), eta, TVar(u))
    return lambda_abstract(u, body)


def update_chain(eta: Term, pairs: list[tuple[Term, Term]]) -> Term:
    """Iterated update; later writes shadow earlier ones on collision."""
    out = eta
    for nu, tau in pairs:
        out = update_term(out, nu, tau)
    return out


# ---------------------------------------------------------------------------
# the L_PRA -> L_HAP translation

def translate_pra_term(t: Term) -> Term:
    if isinstance(t, (TVar, Const, NumLit)):
        return t
    if isinstance(t, SApp):
        return SApp(translate_pra_term(t.arg))
    if isinstance(t, BinOp):
        return BinOp(t.op, translate_pra_term(t.left), translate_pra_term(t.right))
    if isinstance(t, PRApp):
        if t.name not in PR_REGISTRY:
            raise ValueError(f"unknown PR function symbol {t.name!r}")
        d = PR_REGISTRY[t.name]
        if d.arity != len(t.args):
            raise ValueError(f"PR symbol {t.name} has arity {d.arity}")
        return app(compile_pr(d), *[translate_pra_term(a) for a in t.args])
    raise TypeError(t)


def translate_pra(phi: Formula) -> Formula:
    """Compositional translation fixing the arithmetical fragment pointwise;
    PR symbols become applications of their compiled terms."""
    if not in_language(phi, LanguageTag.PRA):
        raise ValueError("input is not an L_PRA formula")
    return _translate(phi)


def _translate(phi: Formula) -> Formula:
    if isinstance(phi, Bot):
        return phi
    if isinstance(phi, Eq):
        return Eq(translate_pra_term(phi.left), translate_pra_term(phi.right))
    if isinstance(phi, RelAtom):
        return RelAtom(phi.rel, tuple(translate_pra_term(a) for a in phi.args))
    if isinstance(phi, (And, Or, Imp)):
        return type(phi)(_translate(phi.left), _translate(phi.right))
    if isinstance(phi, (All, Ex)):
        return type(phi)(phi.var, _translate(phi.body))
    raise TypeError(phi)
