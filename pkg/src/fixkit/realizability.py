"""The realizability translation, its syntactic laws, and realizer
extraction from checked derivations.

`realize(tau, phi)` is the clause-by-clause translation into a negative
formula; parameter predicates step up one arity (r P_n = P_{n+1}) and a
fixpoint predicate is realized by the fixpoint predicate of the realized
operator.  Extraction walks a derivation, draws axiom realizers from a
fixed table, composes rule realizers with combinators, and returns the
realizer together with its correctness obligation as a formula.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .combinatory import builtin, lambda_abstract, lambdas, update_chain
from .goedel import decode_formula, encode
from .kernel import (
    Derivation, FixpointAxiom, HapAxiom, Hypothesis, Induction, Justification,
    LptAxiom, Rule,
)
from .syntax import (
    All, And, BinOp, Bot, BOT, Const, Eq, Ex, Formula, Imp, NumLit,
    OperatorForm, Or, RelAtom, RelSymbol, SApp, Term, TVar, Var,
    all_var_indices, alpha_eq, app, denotes, free_vars, numeral, prel,
    subst_in_term, subst_term, term_vars,
)

P_L = Const("p_l")
P_R = Const("p_r")
P_C = Const("p")
K = Const("k")
R_C = Const("r")
ZERO = Const("0")


@dataclass(frozen=True)
class RealizabilityConfig:
    """Relation clauses: each relation maps to one of arity + 1.

    Parameter predicates and fixpoint predicates have their canonical
    clauses built in; extension relations must be supplied explicitly,
    injectively, and outside the canonical ranges.
    """
    defined: tuple[tuple[RelSymbol, RelSymbol], ...] = ()

    def __post_init__(self):
        seen = set()
        for src, dst in self.defined:
            if dst.arity != src.arity + 1:
                raise ValueError("clause must step the arity up by one")
            if dst.kind != "def" or dst in seen:
                raise ValueError("clauses must be injective fresh extension relations")
            seen.add(dst)

    def clause(self, rel: RelSymbol) -> RelSymbol:
        if rel.kind == "P":
            return prel(rel.arity + 1)
        if rel.kind == "fix":
            op = OperatorForm(decode_formula(rel.opcode), rel.arity)
            return RelSymbol("fix", rel.arity + 1, opcode=int(encode(rea_operator(op).body)))
        for src, dst in self.defined:
            if src == rel:
                return dst
        raise ValueError(f"relation {rel} has no realizability clause")


DEFAULT_CONFIG = RealizabilityConfig()


def _fresh_for(*parts) -> Var:
    used: set[int] = set()
    for p in parts:
        if isinstance(p, Term) or isinstance(p, Formula):
            used |= all_var_indices(p)
    i = 0
    while i in used:
        i += 1
    return Var(i)


def realize(tau: Term, phi: Formula, cfg: RealizabilityConfig = DEFAULT_CONFIG) -> Formula:
    """The formula `tau realizes phi`."""
    phi = _alpha_avoiding(phi, {v.index for v in term_vars(tau)})
    return _rea(tau, phi, cfg)


def _alpha_avoiding(phi: Formula, avoid: set[int]) -> Formula:
    """Alpha-rename so no binder index clashes with `avoid` or nests."""
    frees = {v.index for v in free_vars(phi)} | avoid

    def walk(f: Formula, ren: dict[int, int], path: frozenset[int]) -> Formula:
        from .syntax import _rename_term
        if isinstance(f, (Bot,)):
            return f
        if isinstance(f, Eq):
            return Eq(_rename_term(f.left, ren), _rename_term(f.right, ren))
        if isinstance(f, RelAtom):
            return RelAtom(f.rel, tuple(_rename_term(a, ren) for a in f.args))
        if isinstance(f, (And, Or, Imp)):
            return type(f)(walk(f.left, ren, path), walk(f.right, ren, path))
        if isinstance(f, (All, Ex)):
            i = 0
            while i in frees or i in path:
                i += 1
            ren2 = dict(ren)
            ren2[f.var.index] = i
            return type(f)(Var(i), walk(f.body, ren2, path | {i}))
        raise TypeError(f)

    return walk(phi, {}, frozenset())


def _rea(tau: Term, phi: Formula, cfg: RealizabilityConfig) -> Formula:
    if isinstance(phi, Eq):
        return phi
    if isinstance(phi, Bot):
        return BOT
    if isinstance(phi, And):
        return And(_rea(app(P_L, tau), phi.left, cfg), _rea(app(P_R, tau), phi.right, cfg))
    if isinstance(phi, Or):
        flag_zero = Eq(app(P_L, tau), ZERO)
        return And(
            Imp(flag_zero, _rea(app(P_R, tau), phi.left, cfg)),
            Imp(Imp(flag_zero, BOT), _rea(app(P_R, tau), phi.right, cfg)),
        )
    if isinstance(phi, Imp):
        y = _fresh_for(tau, phi)
        ty = app(tau, TVar(y))
        return All(y, Imp(_rea(TVar(y), phi.left, cfg), And(denotes(ty), _rea(ty, phi.right, cfg))))
    if isinstance(phi, All):
        tx = app(tau, TVar(phi.var))
        return All(phi.var, And(denotes(tx), _rea(tx, phi.body, cfg)))
    if isinstance(phi, Ex):
        inner = subst_term(phi.body, [phi.var], [app(P_L, tau)])
        return _rea(app(P_R, tau), inner, cfg)
    if isinstance(phi, RelAtom):
        return RelAtom(cfg.clause(phi.rel), phi.args + (tau,))
    raise TypeError(phi)


def self_realize(phi: Formula, cfg: RealizabilityConfig = DEFAULT_CONFIG) -> Formula:
    """The statement `some x realizes phi`, with x fresh."""
    x = _fresh_for(phi)
    return Ex(x, realize(TVar(x), phi, cfg))


def check_readist(
    phi: Formula, tau: Term, us: list[Var], sigmas: list[Term],
    cfg: RealizabilityConfig = DEFAULT_CONFIG,
) -> bool:
    """Substitution distributes over realizability (always true)."""
    lhs = subst_term(realize(tau, phi, cfg), us, sigmas)
    tau2 = subst_in_term(tau, dict(zip(us, sigmas)))
    rhs = realize(tau2, subst_term(phi, us, sigmas), cfg)
    return alpha_eq(lhs, rhs)


def rea_operator(op: OperatorForm, cfg: RealizabilityConfig = DEFAULT_CONFIG) -> OperatorForm:
    """v_n r Phi as an operator form in the stepped-up parameter."""
    vn = Var(op.arity)
    return OperatorForm(realize(TVar(vn), op.body, cfg), op.arity + 1)


def fixpoint_realizer(op: OperatorForm) -> Term:
    """The n-fold abstraction of p . id . id realizing the fixpoint axiom."""
    idt = builtin("id")
    core = app(P_C, idt, idt)
    return lambdas([Var(i) for i in range(op.arity)], core)


# ---------------------------------------------------------------------------
# extraction

@dataclass(frozen=True)
class ExtractionResult:
    realizer: Term     # at most v0 free: the hypothesis-package variable
    obligation: Formula


def _canonical_realizer(phi: Formula) -> Term:
    """Trivial realizer for the Harrop-shaped equational axioms."""
    if isinstance(phi, (Eq, Bot, RelAtom)):
        return ZERO
    if isinstance(phi, And):
        return app(P_C, _canonical_realizer(phi.left), _canonical_realizer(phi.right))
    if isinstance(phi, Imp):
        return app(K, _canonical_realizer(phi.right))
    if isinstance(phi, All):
        return app(K, _canonical_realizer(phi.body))
    raise ValueError("no canonical realizer for disjunctive/existential shapes")


def _k_tower(height: int, core: Term) -> Term:
    out = core
    for _ in range(height):
        out = app(K, out)
    return out


def _lpt_realizer(axiom_id: int, data: tuple) -> Term:
    idt = builtin("id")
    i = axiom_id
    if i in (1, 10):
        return idt
    if i == 4:
        return P_L if data[2] == "l" else P_R
    if i == 6:
        a = Var(0)
        flag = ZERO if data[2] == "l" else numeral(1)
        return lambda_abstract(a, app(P_C, flag, TVar(a)))
    if i == 12:
        x, phi, tau = data
        c = _fresh_for(tau)
        return lambda_abstract(c, app(app(P_L, TVar(c)), tau))
    if i == 14:
        x, phi, tau = data
        c = _fresh_for(tau)
        return lambda_abstract(c, app(P_C, tau, app(P_L, TVar(c))))
    if i == 15:
        return app(K, ZERO)
    if i == 16:
        return _k_tower(3, ZERO)
    if i == 17:
        return _k_tower(4, ZERO)
    if i == 18:
        m = len(data[1])
        return _k_tower(2 * m + 1, ZERO)
    if i == 19:
        m = len(data[1])
        return _k_tower(2 * m, P_L)
    if i == 20 or i == 23:
        return ZERO
    if i in (21, 22):
        if i == 22 and data[2] == "both":
            return app(K, app(P_C, ZERO, ZERO))
        return app(K, ZERO)
    raise ValueError(f"no realizer for LPT{i}")


def _hyp_selector(pkg: Var, index: int, count: int) -> Term:
    """Projection of the index-th component of a right-nested package."""
    t: Term = TVar(pkg)
    if count == 1:
        return t
    for _ in range(index):
        t = app(P_R, t)
    if index < count - 1:
        t = app(P_L, t)
    return t


def hypotheses_premise(pkg: Var, hyps: list[Formula], cfg: RealizabilityConfig) -> Formula:
    """`pkg realizes the hypothesis list` as a right-nested conjunction."""
    if not hyps:
        return Eq(ZERO, ZERO)
    count = len(hyps)
    parts = [
        realize(_hyp_selector(pkg, i, count), h, cfg) for i, h in enumerate(hyps)
    ]
    out = parts[-1]
    for part in reversed(parts[:-1]):
        out = And(part, out)
    return out


def extract(d: Derivation, cfg: RealizabilityConfig = DEFAULT_CONFIG) -> ExtractionResult:
    """Structural recursion over a checked derivation.

    Axioms take fixed realizers, induction takes the recursor, fixpoint
    axioms take the paired identities, rules compose premise realizers.
    The result has only the hypothesis-package variable free.
    """
    top = 0
    for f, _ in d.lines:
        idx = all_var_indices(f)
        if idx:
            top = max(top, max(idx))
    for h in d.hypotheses:
        idx = all_var_indices(h)
        if idx:
            top = max(top, max(idx))
    pkg = Var(top + 1)
    count = len(d.hypotheses)
    realizers: list[Term] = []
    for formula, just in d.lines:
        realizers.append(_line_realizer(d, formula, just, realizers, pkg, count))
    rho = realizers[-1]
    statement_vars = set(free_vars(d.conclusion))
    for h in d.hypotheses:
        statement_vars |= free_vars(h)
    spare = term_vars(rho) - {pkg} - statement_vars
    if spare:
        raise ValueError(
            f"extracted realizer mentions object variables {sorted(v.index for v in spare)} "
            "that are not parameters of the statement"
        )
    # package variable: the smallest index not free in the statement
    pi = 0
    while any(v.index == pi for v in statement_vars):
        pi += 1
    pvar = Var(pi)
    rho = subst_in_term(rho, {pkg: TVar(pvar)})
    premise = hypotheses_premise(pvar, d.hypotheses, cfg)
    obligation = All(pvar, Imp(premise, And(denotes(rho), realize(rho, d.conclusion, cfg))))
    return ExtractionResult(rho, obligation)


def check_obligation(
    res: ExtractionResult,
    bound: int = 4,
    fuel: int = 200_000,
    rels=None,
    env: dict[int, int] | None = None,
) -> bool | None:
    """Bounded verdict for an extraction obligation.

    The obligation is one universal over the package variable; since the
    bounded semantics never asserts a universal over the infinite domain,
    this checks the matrix at every package value up to the bound: True
    if all instances are definitely true, False if any is false."""
    from .evaluator import eval_formula
    assert isinstance(res.obligation, All)
    pvar, matrix = res.obligation.var, res.obligation.body
    env = dict(env or {})
    verdicts = []
    for n in range(bound + 1):
        env[pvar.index] = n
        verdicts.append(eval_formula(matrix, env, bound=bound, fuel=fuel, rels=rels))
    if any(v is False for v in verdicts):
        return False
    if all(v is True for v in verdicts):
        return True
    return None


def _line_realizer(
    d: Derivation, formula: Formula, just: Justification,
    earlier: list[Term], pkg: Var, hyp_count: int,
) -> Term:
    if isinstance(just, Hypothesis):
        return _hyp_selector(pkg, just.index, hyp_count)
    if isinstance(just, LptAxiom):
        return _lpt_realizer(just.axiom_id, just.data)
    if isinstance(just, HapAxiom):
        return _canonical_realizer(formula)
    if isinstance(just, Induction):
        return R_C
    if isinstance(just, FixpointAxiom):
        return fixpoint_realizer(just.operator)
    if isinstance(just, Rule):
        ps = [earlier[p] for p in just.premises]
        rid = just.rule_id
        if rid == 2:
            return app(ps[1], ps[0])
        if rid == 3:
            y = _fresh_for(ps[0], ps[1], TVar(pkg))
            return lambda_abstract(y, app(ps[1], app(ps[0], TVar(y))))
        if rid == 5:
            y = _fresh_for(ps[0], ps[1], TVar(pkg))
            return lambda_abstract(y, app(P_C, app(ps[0], TVar(y)), app(ps[1], TVar(y))))
        if rid == 7:
            y = _fresh_for(ps[0], ps[1], TVar(pkg))
            dt = builtin("d")
            body = app(
                dt, app(P_L, TVar(y)), ZERO,
                app(K, app(ps[0], app(P_R, TVar(y)))),
                app(K, app(ps[1], app(P_R, TVar(y)))),
                ZERO,
            )
            return lambda_abstract(y, body)
        if rid == 8:
            a = _fresh_for(ps[0], TVar(pkg))
            b = Var(a.index + 1)
            return lambdas([a, b], app(ps[0], app(P_C, TVar(a), TVar(b))))
        if rid == 9:
            c = _fresh_for(ps[0], TVar(pkg))
            return lambda_abstract(c, app(ps[0], app(P_L, TVar(c)), app(P_R, TVar(c))))
        if rid == 11:
            x = just.var
            a = _fresh_for(ps[0], TVar(pkg), TVar(x))
            return lambda_abstract(a, lambda_abstract(x, app(ps[0], TVar(a))))
        if rid == 13:
            x = just.var
            y = _fresh_for(ps[0], TVar(pkg), TVar(x))
            a = Var(max(y.index, x.index) + 1)
            inner = lambda_abstract(x, lambda_abstract(a, app(ps[0], TVar(a))))
            return lambda_abstract(
                y, app(app(inner, app(P_L, TVar(y))), app(P_R, TVar(y)))
            )
    raise ValueError(f"unmatched justification {just!r}")
