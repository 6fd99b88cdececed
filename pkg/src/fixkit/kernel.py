"""Hilbert-style proof objects and checking for the logic of partial terms,
arithmetic with partial terms, and the fixpoint extensions.

Checking is matching: every justification carries its instantiation data,
the checker rebuilds the axiom instance from the data and compares it with
the line up to alpha.  The axiom numbering follows the two-column layout
of the deductive system (odd numbers left, even numbers right), with the
strictness-of-variables axiom as number 23.  For arithmetic with partial
terms the groups are 1..7 (successor through recursor), and induction is
its own justification kind.

The generalisation rules record their variable and, besides the usual
side condition, require it not to occur free in any hypothesis; this is
what makes the deduction transformer below sound.
"""

from __future__ import annotations

from dataclasses import dataclass

from .goedel import encode
from .hierarchy import classify
from .syntax import (
    All, And, BinOp, Bot, BOT, Const, CONSTANTS, Eq, Ex, Formula, Imp,
    LanguageTag, NumLit, OperatorForm, Or, RelAtom, RelSymbol, SApp, Term,
    TVar, Var, alpha_eq, alpha_normalize, app, conj, denotes, free_vars, iff,
    in_language, is_almost_negative, prel, subst_term,
)

RULE_IDS = (2, 3, 5, 7, 8, 9, 11, 13)
AXIOM_IDS = (1, 4, 6, 10, 12, 14, 15, 16, 17, 18, 19, 20, 21, 22, 23)


# ---------------------------------------------------------------------------
# justifications

class Justification:
    __slots__ = ()


@dataclass(frozen=True)
class LptAxiom(Justification):
    axiom_id: int
    data: tuple


@dataclass(frozen=True)
class HapAxiom(Justification):
    group: int
    clause: str
    data: tuple


@dataclass(frozen=True)
class Induction(Justification):
    formula: Formula
    var: Var


@dataclass(frozen=True)
class FixpointAxiom(Justification):
    operator: OperatorForm


@dataclass(frozen=True)
class Hypothesis(Justification):
    index: int


@dataclass(frozen=True)
class Rule(Justification):
    rule_id: int
    premises: tuple[int, ...]
    var: Var | None = None


@dataclass
class Derivation:
    hypotheses: list[Formula]
    lines: list[tuple[Formula, Justification]]

    @property
    def conclusion(self) -> Formula:
        return self.lines[-1][0]


@dataclass(frozen=True)
class TheorySpec:
    name: str
    language: LanguageTag
    has_fixpoints: bool = False
    almost_negative_only: bool = False

    def induction_admits(self, phi: Formula) -> bool:
        return in_language(phi, self.language)

    def fixpoint_admits(self, op: OperatorForm) -> bool:
        if not self.has_fixpoints:
            return False
        if not in_language(op.body, LanguageTag.HAP_P):
            return False
        if self.almost_negative_only:
            return classify(op.body) is not None
        return True


SPEC_HAP = TheorySpec("HAP", LanguageTag.HAP)
SPEC_HAP_P = TheorySpec("HAP-P", LanguageTag.HAP_P)
SPEC_IIDP1 = TheorySpec("IIDP1", LanguageTag.HAP_ID, has_fixpoints=True)
SPEC_IIDP1_LAMBDA = TheorySpec(
    "IIDP1-LAMBDA", LanguageTag.HAP_ID, has_fixpoints=True, almost_negative_only=True
)
THEORY_SPECS = {s.name: s for s in (SPEC_HAP, SPEC_HAP_P, SPEC_IIDP1, SPEC_IIDP1_LAMBDA)}


# ---------------------------------------------------------------------------
# axiom instance builders

_FUN_ARITY = {"S": 1, "+": 2, "*": 2, "@": 2}


def _fun_app(fsym: str, args: list[Term]) -> Term:
    if fsym == "S":
        return SApp(args[0])
    return BinOp(fsym, args[0], args[1])


def _vec_eq(xs: list[Var], ys: list[Var]) -> Formula:
    return conj([Eq(TVar(a), TVar(b)) for a, b in zip(xs, ys)])


def _closure(vs: list[Var], body: Formula) -> Formula:
    for v in reversed(vs):
        body = All(v, body)
    return body


def build_lpt_axiom(axiom_id: int, data: tuple) -> Formula:
    """The instance of the given axiom schema at the given data."""
    i = axiom_id
    if i == 1:
        (phi,) = data
        return Imp(phi, phi)
    if i == 4:
        phi, psi, side = data
        return Imp(And(phi, psi), phi if side == "l" else psi)
    if i == 6:
        phi, psi, side = data
        return Imp(phi if side == "l" else psi, Or(phi, psi))
    if i == 10:
        (phi,) = data
        return Imp(BOT, phi)
    if i == 12:
        x, phi, tau = data
        return Imp(And(All(x, phi), denotes(tau)), subst_term(phi, [x], [tau]))
    if i == 14:
        x, phi, tau = data
        return Imp(And(subst_term(phi, [x], [tau]), denotes(tau)), Ex(x, phi))
    if i == 15:
        (x,) = data
        return All(x, Eq(TVar(x), TVar(x)))
    if i == 16:
        x, y = data
        return _closure([x, y], Imp(Eq(TVar(x), TVar(y)), Eq(TVar(y), TVar(x))))
    if i == 17:
        x, y, z = data
        return _closure(
            [x, y, z],
            Imp(And(Eq(TVar(x), TVar(y)), Eq(TVar(y), TVar(z))), Eq(TVar(x), TVar(z))),
        )
    if i == 18:
        fsym, xs, ys = data
        xs, ys = list(xs), list(ys)
        if len(xs) != _FUN_ARITY[fsym] or len(set(xs + ys)) != 2 * len(xs):
            raise ValueError("bad congruence instance")
        fx = _fun_app(fsym, [TVar(v) for v in xs])
        fy = _fun_app(fsym, [TVar(v) for v in ys])
        return _closure(xs + ys, Imp(And(_vec_eq(xs, ys), denotes(fx)), Eq(fx, fy)))
    if i == 19:
        rel, xs, ys = data
        xs, ys = list(xs), list(ys)
        if len(set(xs + ys)) != 2 * len(xs):
            raise ValueError("bad congruence instance")
        if rel == "=":
            rx: Formula = Eq(TVar(xs[0]), TVar(xs[1]))
            ry: Formula = Eq(TVar(ys[0]), TVar(ys[1]))
        else:
            rx = RelAtom(rel, tuple(TVar(v) for v in xs))
            ry = RelAtom(rel, tuple(TVar(v) for v in ys))
        return _closure(xs + ys, Imp(And(rx, _vec_eq(xs, ys)), ry))
    if i == 20:
        (c,) = data
        t = NumLit(c) if isinstance(c, int) else Const(c)
        return denotes(t)
    if i == 21:
        fsym, taus, j = data
        taus = list(taus)
        return Imp(denotes(_fun_app(fsym, taus)), denotes(taus[j]))
    if i == 22:
        rel, taus, j = data
        taus = list(taus)
        atom: Formula = Eq(taus[0], taus[1]) if rel == "=" else RelAtom(rel, tuple(taus))
        if j == "both":
            if rel != "=":
                raise ValueError("paired strictness only for equality")
            return Imp(atom, And(denotes(taus[0]), denotes(taus[1])))
        return Imp(atom, denotes(taus[j]))
    if i == 23:
        (x,) = data
        return denotes(TVar(x))
    raise ValueError(f"LPT{i} is not an axiom schema")


_HAP_CLAUSE_ARITY = {
    (1, "a"): 1, (1, "b"): 2, (1, "c"): 2,
    (2, "a"): 2, (2, "b"): 1,
    (3, "a"): 1, (3, "b"): 2,
    (4, "a"): 1, (4, "b"): 2,
    (5, "a"): 2, (5, "b"): 2, (5, "c"): 3,
    (6, "a"): 1, (6, "b"): 1, (6, "c"): 2, (6, "d"): 2, (6, "e"): 1,
    (7, "a"): 1, (7, "b"): 2, (7, "c"): 3,
}


def _weak_eq(a: Term, b: Term) -> Formula:
    return Imp(Or(denotes(a), denotes(b)), Eq(a, b))


def build_hap_axiom(group: int, clause: str, data: tuple) -> Formula:
    """Equational axioms of arithmetic with partial terms, over variables.

    Note: the recursion clause for x is x*S(y) = (x*y) + x; the source
    presentation misprints the added term.
    """
    want = _HAP_CLAUSE_ARITY.get((group, clause))
    if want is None or len(data) != want:
        raise ValueError(f"unknown or malformed clause {group}{clause}")
    vs = [TVar(v) for v in data]
    k, s, pl, pr, p, succ, r = (Const(c) for c in ("k", "s", "p_l", "p_r", "p", "succ", "r"))
    zero = Const("0")
    if group == 1:
        if clause == "a":
            return denotes(SApp(vs[0]))
        op = "+" if clause == "b" else "*"
        return denotes(BinOp(op, vs[0], vs[1]))
    if group == 2:
        if clause == "a":
            return Imp(Eq(SApp(vs[0]), SApp(vs[1])), Eq(vs[0], vs[1]))
        return Imp(Eq(zero, SApp(vs[0])), BOT)
    if group == 3:
        if clause == "a":
            return Eq(BinOp("+", vs[0], zero), vs[0])
        return Eq(BinOp("+", vs[0], SApp(vs[1])), SApp(BinOp("+", vs[0], vs[1])))
    if group == 4:
        if clause == "a":
            return Eq(BinOp("*", vs[0], zero), zero)
        return Eq(BinOp("*", vs[0], SApp(vs[1])), BinOp("+", BinOp("*", vs[0], vs[1]), vs[0]))
    if group == 5:
        if clause == "a":
            return Eq(app(k, vs[0], vs[1]), vs[0])
        if clause == "b":
            return denotes(app(s, vs[0], vs[1]))
        return _weak_eq(app(s, vs[0], vs[1], vs[2]), app(vs[0], vs[2], app(vs[1], vs[2])))
    if group == 6:
        if clause == "a":
            return denotes(app(pl, vs[0]))
        if clause == "b":
            return denotes(app(pr, vs[0]))
        if clause == "c":
            return Eq(app(pl, app(p, vs[0], vs[1])), vs[0])
        if clause == "d":
            return Eq(app(pr, app(p, vs[0], vs[1])), vs[1])
        return Eq(app(p, app(pl, vs[0]), app(pr, vs[0])), vs[0])
    if group == 7:
        if clause == "a":
            return Eq(app(succ, vs[0]), SApp(vs[0]))
        if clause == "b":
            return Eq(app(r, vs[0], vs[1], zero), vs[0])
        return Eq(
            app(r, vs[0], vs[1], SApp(vs[2])),
            app(vs[1], vs[2], app(r, vs[0], vs[1], vs[2])),
        )
    raise ValueError(f"unknown group {group}")


def build_induction(phi: Formula, x: Var) -> Formula:
    base = subst_term(phi, [x], [Const("0")])
    step = All(x, Imp(phi, subst_term(phi, [x], [SApp(TVar(x))])))
    return Imp(base, Imp(step, All(x, phi)))


def fix_symbol(op: OperatorForm) -> RelSymbol:
    return RelSymbol("fix", op.arity, opcode=int(encode(op.body)))


def apply_operator(op: OperatorForm, theta_rel: RelSymbol) -> Formula:
    """Phi with the parameter predicate replaced by the given relation."""
    vs = [Var(i) for i in range(op.arity)]
    atom = RelAtom(theta_rel, tuple(TVar(v) for v in vs))
    from .syntax import subst_relation
    return subst_relation(op.body, op.parameter, (vs, atom))


def build_fixpoint_axiom(op: OperatorForm) -> Formula:
    ifix = fix_symbol(op)
    vs = [Var(i) for i in range(op.arity)]
    left = RelAtom(ifix, tuple(TVar(v) for v in vs))
    right = apply_operator(op, ifix)
    return _closure(vs, iff(left, right))


# ---------------------------------------------------------------------------
# matching (search versions of the instance builders)

def match_lpt_axiom(phi: Formula):
    """Identify phi as an instance of an axiom schema; (id, data) or None."""
    f = alpha_normalize(phi)
    for i, data in _lpt_candidates(f):
        try:
            if alpha_eq(build_lpt_axiom(i, data), phi):
                return i, data
        except (ValueError, IndexError, TypeError):
            continue
    return None


def _quant_prefix(f: Formula) -> tuple[list[Var], Formula]:
    vs = []
    while isinstance(f, All):
        vs.append(f.var)
        f = f.body
    return vs, f


def _lpt_candidates(f: Formula):
    if isinstance(f, Imp):
        l, r = f.left, f.right
        if l == r:
            yield 1, (l,)
        if isinstance(l, Bot):
            yield 10, (r,)
        if isinstance(l, And):
            yield 4, (l.left, l.right, "l")
            yield 4, (l.left, l.right, "r")
            if isinstance(l.left, All) and isinstance(l.right, Eq) and l.right.left == l.right.right:
                yield 12, (l.left.var, l.left.body, l.right.left)
            if isinstance(r, Ex) and isinstance(l.right, Eq) and l.right.left == l.right.right:
                yield 14, (r.var, r.body, l.right.left)
        if isinstance(r, Or):
            yield 6, (r.left, r.right, "l")
            yield 6, (r.left, r.right, "r")
        # strictness for functions / relations
        if isinstance(r, Eq) and r.left == r.right:
            if isinstance(l, Eq) and l.left == l.right:
                t = l.left
                if isinstance(t, SApp):
                    yield 21, ("S", (t.arg,), 0)
                if isinstance(t, BinOp):
                    yield 21, (t.op, (t.left, t.right), 0)
                    yield 21, (t.op, (t.left, t.right), 1)
            if isinstance(l, Eq):
                yield 22, ("=", (l.left, l.right), 0)
                yield 22, ("=", (l.left, l.right), 1)
            if isinstance(l, RelAtom):
                for j in range(len(l.args)):
                    yield 22, (l.rel, l.args, j)
        if isinstance(l, Eq) and isinstance(r, And):
            yield 22, ("=", (l.left, l.right), "both")
    if isinstance(f, Eq) and f.left == f.right:
        t = f.left
        if isinstance(t, TVar):
            yield 23, (t.var,)
        if isinstance(t, Const):
            yield 20, (t.name,)
        if isinstance(t, NumLit):
            yield 20, (t.value,)
    vs, body = _quant_prefix(f)
    if len(vs) == 1 and isinstance(body, Eq):
        yield 15, (vs[0],)
    if len(vs) == 2 and isinstance(body, Imp):
        yield 16, (vs[0], vs[1])
    if len(vs) == 3 and isinstance(body, Imp):
        yield 17, (vs[0], vs[1], vs[2])
    if len(vs) >= 2 and len(vs) % 2 == 0 and isinstance(body, Imp):
        m = len(vs) // 2
        xs, ys = vs[:m], vs[m:]
        if isinstance(body.right, Eq):
            t = body.right.left
            if isinstance(t, SApp):
                yield 18, ("S", tuple(xs), tuple(ys))
            if isinstance(t, BinOp):
                yield 18, (t.op, tuple(xs), tuple(ys))
        if isinstance(body.right, RelAtom):
            yield 19, (body.right.rel, tuple(xs), tuple(ys))
        if isinstance(body.right, Eq) and m == 2:
            yield 19, ("=", tuple(xs), tuple(ys))
    return


def match_hap_axiom(phi: Formula):
    """Identify phi as an equational-group instance; (group, clause, data)
    or None.  Induction is matched separately."""
    for (group, clause), arity in _HAP_CLAUSE_ARITY.items():
        vs = _extract_hap_vars(phi, group, clause)
        if vs is not None and len(vs) == arity:
            try:
                if build_hap_axiom(group, clause, tuple(vs)) == phi:
                    return group, clause, tuple(vs)
            except (ValueError, TypeError):
                continue
    return None


def _extract_hap_vars(phi: Formula, group: int, clause: str):
    # collect candidate variables left-to-right and re-build to compare
    seen: list[Var] = []

    def grab(t: Term):
        if isinstance(t, TVar) and t.var not in seen:
            seen.append(t.var)
        elif isinstance(t, SApp):
            grab(t.arg)
        elif isinstance(t, BinOp):
            grab(t.left)
            grab(t.right)

    def walk(f: Formula):
        if isinstance(f, Eq):
            grab(f.left)
            grab(f.right)
        elif isinstance(f, (And, Or, Imp)):
            walk(f.left)
            walk(f.right)
        elif isinstance(f, (All, Ex)):
            walk(f.body)

    walk(phi)
    want = _HAP_CLAUSE_ARITY[(group, clause)]
    if len(seen) < want:
        # repeated-variable instances: pad with what is there
        while seen and len(seen) < want:
            seen.append(seen[-1])
    return seen[:want] if len(seen) >= want else None


def match_induction(phi: Formula):
    if not (isinstance(phi, Imp) and isinstance(phi.right, Imp)):
        return None
    last = phi.right.right
    if not isinstance(last, All):
        return None
    x, body = last.var, last.body
    if alpha_eq(build_induction(body, x), phi):
        return body, x
    return None


def match_fixpoint_axiom(phi: Formula, spec: TheorySpec):
    """Recognize a fixpoint axiom whose operator lies in the theory's
    class; returns the OperatorForm or None."""
    vs, body = _quant_prefix(phi)
    probe = body
    if not (isinstance(probe, And) and isinstance(probe.left, Imp)):
        return None
    head = probe.left.left
    if not (isinstance(head, RelAtom) and head.rel.kind == "fix"):
        return None
    from .goedel import decode_formula
    try:
        op_body = decode_formula(head.rel.opcode)
        op = OperatorForm(op_body, head.rel.arity)
    except (ValueError, TypeError):
        return None
    if not spec.fixpoint_admits(op):
        return None
    if alpha_eq(build_fixpoint_axiom(op), phi):
        return op
    return None


# ---------------------------------------------------------------------------
# checking

@dataclass(frozen=True)
class CheckResult:
    ok: bool
    line: int | None = None
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def _check_line(
    d: Derivation, idx: int, spec: TheorySpec, hyp_frees: set[int]
) -> str | None:
    phi, just = d.lines[idx]
    if not in_language(phi, spec.language):
        return f"formula outside the {spec.language.value} language"
    if isinstance(just, Hypothesis):
        if not 0 <= just.index < len(d.hypotheses):
            return "hypothesis index out of range"
        if not alpha_eq(phi, d.hypotheses[just.index]):
            return "line is not the cited hypothesis"
        return None
    if isinstance(just, LptAxiom):
        try:
            built = build_lpt_axiom(just.axiom_id, just.data)
        except (ValueError, TypeError, IndexError) as e:
            return f"bad axiom data: {e}"
        if not alpha_eq(phi, built):
            return f"line is not the stated LPT{just.axiom_id} instance"
        return None
    if isinstance(just, HapAxiom):
        try:
            built = build_hap_axiom(just.group, just.clause, just.data)
        except (ValueError, TypeError) as e:
            return f"bad axiom data: {e}"
        if not alpha_eq(phi, built):
            return f"line is not the stated HAP{just.group}{just.clause} instance"
        return None
    if isinstance(just, Induction):
        if not spec.induction_admits(just.formula):
            return "induction formula outside the theory's induction class"
        if not alpha_eq(phi, build_induction(just.formula, just.var)):
            return "line is not the stated induction instance"
        return None
    if isinstance(just, FixpointAxiom):
        if not spec.fixpoint_admits(just.operator):
            return "operator outside the theory's fixpoint class"
        if not alpha_eq(phi, build_fixpoint_axiom(just.operator)):
            return "line is not the fixpoint axiom of the stated operator"
        return None
    if isinstance(just, Rule):
        return _check_rule(d, idx, phi, just, hyp_frees)
    return f"unknown justification {just!r}"


def _check_rule(
    d: Derivation, idx: int, phi: Formula, just: Rule, hyp_frees: set[int]
) -> str | None:
    rid = just.rule_id
    if rid not in RULE_IDS:
        return f"LPT{rid} is not a rule"
    if any(p >= idx or p < 0 for p in just.premises):
        return "premises must be strictly earlier lines"
    prem = [d.lines[p][0] for p in just.premises]
    need = 1 if rid in (8, 9, 11, 13) else 2
    if len(prem) != need:
        return f"rule LPT{rid} takes {need} premise(s)"
    if rid == 2:
        if alpha_eq(prem[1], Imp(prem[0], phi)):
            return None
        return "modus ponens shape mismatch"
    if rid == 3:
        a, b = prem
        if (isinstance(a, Imp) and isinstance(b, Imp) and isinstance(phi, Imp)
                and alpha_eq(a.right, b.left) and alpha_eq(phi, Imp(a.left, b.right))):
            return None
        return "transitivity shape mismatch"
    if rid == 5:
        a, b = prem
        if (isinstance(a, Imp) and isinstance(b, Imp) and alpha_eq(a.left, b.left)
                and alpha_eq(phi, Imp(a.left, And(a.right, b.right)))):
            return None
        return "conjunction rule shape mismatch"
    if rid == 7:
        a, b = prem
        if (isinstance(a, Imp) and isinstance(b, Imp) and alpha_eq(a.right, b.right)
                and alpha_eq(phi, Imp(Or(a.left, b.left), a.right))):
            return None
        return "disjunction rule shape mismatch"
    if rid == 8:
        (a,) = prem
        if (isinstance(a, Imp) and isinstance(a.left, And)
                and alpha_eq(phi, Imp(a.left.left, Imp(a.left.right, a.right)))):
            return None
        return "currying shape mismatch"
    if rid == 9:
        (a,) = prem
        if (isinstance(a, Imp) and isinstance(a.right, Imp)
                and alpha_eq(phi, Imp(And(a.left, a.right.left), a.right.right))):
            return None
        return "uncurrying shape mismatch"
    if rid in (11, 13):
        (a,) = prem
        x = just.var
        if x is None:
            return "generalisation must record its variable"
        if not isinstance(a, Imp):
            return "generalisation premise must be an implication"
        if x.index in hyp_frees:
            return "generalised variable occurs free in a hypothesis"
        if rid == 11:
            if x in free_vars(a.left):
                return "generalised variable free in the antecedent"
            if alpha_eq(phi, Imp(a.left, All(x, a.right))):
                return None
            return "universal generalisation shape mismatch"
        if x in free_vars(a.right):
            return "generalised variable free in the consequent"
        if alpha_eq(phi, Imp(Ex(x, a.left), a.right)):
            return None
        return "existential generalisation shape mismatch"
    return f"unhandled rule LPT{rid}"


def check(d: Derivation, spec: TheorySpec) -> CheckResult:
    """Every line a hypothesis, an axiom of the theory, or a rule
    application from earlier lines; reports the first failing line."""
    if not d.lines:
        return CheckResult(False, None, "empty derivation")
    hyp_frees = {v.index for h in d.hypotheses for v in free_vars(h)}
    for h in d.hypotheses:
        if not in_language(h, spec.language):
            return CheckResult(False, None, "hypothesis outside the language")
    for i in range(len(d.lines)):
        reason = _check_line(d, i, spec, hyp_frees)
        if reason is not None:
            return CheckResult(False, i, reason)
    return CheckResult(True)


# ---------------------------------------------------------------------------
# the deduction theorem as a derivation transformer

class _Emitter:
    def __init__(self, hypotheses: list[Formula]):
        self.hypotheses = hypotheses
        self.lines: list[tuple[Formula, Justification]] = []
        self._memo: dict[Formula, int] = {}

    def emit(self, phi: Formula, just: Justification) -> int:
        key = alpha_normalize(phi)
        got = self._memo.get(key)
        if got is not None:
            return got
        self.lines.append((phi, just))
        idx = len(self.lines) - 1
        self._memo[key] = idx
        return idx

    # small derived moves -------------------------------------------------
    def lpt1(self, phi: Formula) -> int:
        return self.emit(Imp(phi, phi), LptAxiom(1, (phi,)))

    def proj(self, a: Formula, b: Formula, side: str) -> int:
        return self.emit(
            Imp(And(a, b), a if side == "l" else b), LptAxiom(4, (a, b, side))
        )

    def mp(self, i_phi: int, i_imp: int) -> int:
        imp = self.lines[i_imp][0]
        assert isinstance(imp, Imp)
        return self.emit(imp.right, Rule(2, (i_phi, i_imp)))

    def trans(self, i_ab: int, i_bc: int) -> int:
        ab, bc = self.lines[i_ab][0], self.lines[i_bc][0]
        assert isinstance(ab, Imp) and isinstance(bc, Imp)
        return self.emit(Imp(ab.left, bc.right), Rule(3, (i_ab, i_bc)))

    def con(self, i_ab: int, i_ac: int) -> int:
        ab, ac = self.lines[i_ab][0], self.lines[i_ac][0]
        assert isinstance(ab, Imp) and isinstance(ac, Imp)
        return self.emit(Imp(ab.left, And(ab.right, ac.right)), Rule(5, (i_ab, i_ac)))

    def dis(self, i_ac: int, i_bc: int) -> int:
        ac, bc = self.lines[i_ac][0], self.lines[i_bc][0]
        assert isinstance(ac, Imp) and isinstance(bc, Imp)
        return self.emit(Imp(Or(ac.left, bc.left), ac.right), Rule(7, (i_ac, i_bc)))

    def curry(self, i: int) -> int:
        a = self.lines[i][0]
        assert isinstance(a, Imp) and isinstance(a.left, And)
        return self.emit(
            Imp(a.left.left, Imp(a.left.right, a.right)), Rule(8, (i,))
        )

    def uncurry(self, i: int) -> int:
        a = self.lines[i][0]
        assert isinstance(a, Imp) and isinstance(a.right, Imp)
        return self.emit(
            Imp(And(a.left, a.right.left), a.right.right), Rule(9, (i,))
        )

    def commute(self, a: Formula, b: Formula) -> int:
        """a & b -> b & a"""
        i1 = self.proj(a, b, "r")
        i2 = self.proj(a, b, "l")
        return self.con(i1, i2)

    def weaken(self, i_chi: int, psi: Formula) -> int:
        """From chi conclude psi -> chi."""
        chi = self.lines[i_chi][0]
        i1 = self.proj(chi, psi, "l")
        i2 = self.curry(i1)
        return self.mp(i_chi, i2)

    def assoc_rl(self, a: Formula, b: Formula, c: Formula) -> int:
        """(a & b) & c -> a & (b & c)"""
        ab = And(a, b)
        i_ab = self.proj(ab, c, "l")
        i_a = self.trans(i_ab, self.proj(a, b, "l"))
        i_b = self.trans(i_ab, self.proj(a, b, "r"))
        i_c = self.proj(ab, c, "r")
        i_bc = self.con(i_b, i_c)
        return self.con(i_a, i_bc)

    def assoc_lr(self, a: Formula, b: Formula, c: Formula) -> int:
        """a & (b & c) -> (a & b) & c"""
        bc = And(b, c)
        i_bc = self.proj(a, bc, "r")
        i_b = self.trans(i_bc, self.proj(b, c, "l"))
        i_c = self.trans(i_bc, self.proj(b, c, "r"))
        i_a = self.proj(a, bc, "l")
        i_ab = self.con(i_a, i_b)
        return self.con(i_ab, i_c)


def deduction(d: Derivation, hyp_index: int | None = None) -> Derivation:
    """Discharge a hypothesis: from D proving phi under Gamma + {psi},
    a derivation of psi -> phi under Gamma."""
    if not d.hypotheses:
        raise ValueError("derivation has no hypothesis to discharge")
    if hyp_index is None:
        hyp_index = len(d.hypotheses) - 1
    if not 0 <= hyp_index < len(d.hypotheses):
        raise ValueError("hypothesis not among the derivation's hypotheses")
    psi = d.hypotheses[hyp_index]
    rest = [h for j, h in enumerate(d.hypotheses) if j != hyp_index]
    em = _Emitter(rest)
    new_of: dict[int, int] = {}  # old line -> line proving psi -> formula

    def reindex(j: int) -> int:
        return j if j < hyp_index else j - 1

    for old_idx, (chi, just) in enumerate(d.lines):
        if isinstance(just, Hypothesis) and just.index == hyp_index:
            new_of[old_idx] = em.lpt1(psi)
            continue
        if isinstance(just, Hypothesis):
            base = em.emit(chi, Hypothesis(reindex(just.index)))
            new_of[old_idx] = em.weaken(base, psi)
            continue
        if isinstance(just, (LptAxiom, HapAxiom, Induction, FixpointAxiom)):
            base = em.emit(chi, just)
            new_of[old_idx] = em.weaken(base, psi)
            continue
        assert isinstance(just, Rule)
        rid = just.rule_id
        ps = [new_of[p] for p in just.premises]
        if rid == 2:  # from psi->a and psi->(a->chi)
            i_un = em.uncurry(ps[1])           # psi & a -> chi
            i_id = em.lpt1(psi)
            i_pair = em.con(i_id, ps[0])       # psi -> psi & a
            new_of[old_idx] = em.trans(i_pair, i_un)
        elif rid == 3:  # transitivity under psi
            a = d.lines[just.premises[0]][0]
            assert isinstance(a, Imp)
            u1 = em.uncurry(ps[0])             # psi & p -> q
            u2 = em.uncurry(ps[1])             # psi & q -> r
            i_keep = em.proj(psi, a.left, "l")  # psi & p -> psi
            i_pq = em.con(i_keep, u1)          # psi & p -> psi & q
            i_pr = em.trans(i_pq, u2)          # psi & p -> r
            new_of[old_idx] = em.curry(i_pr)
        elif rid == 5:
            u1 = em.uncurry(ps[0])
            u2 = em.uncurry(ps[1])
            new_of[old_idx] = em.curry(em.con(u1, u2))
        elif rid == 7:
            a = d.lines[just.premises[0]][0]
            b = d.lines[just.premises[1]][0]
            assert isinstance(a, Imp) and isinstance(b, Imp)

            def half(i_new: int, ante: Formula) -> int:
                u = em.uncurry(i_new)                   # psi & ante -> c
                cm = em.commute(ante, psi)              # ante & psi -> psi & ante
                t = em.trans(cm, u)                     # ante & psi -> c
                return em.curry(t)                      # ante -> (psi -> c)

            h1 = half(ps[0], a.left)
            h2 = half(ps[1], b.left)
            i_dis = em.dis(h1, h2)                      # a|b -> (psi -> c)
            u = em.uncurry(i_dis)                       # (a|b) & psi -> c
            cm = em.commute(psi, Or(a.left, b.left))    # psi & (a|b) -> (a|b) & psi
            t = em.trans(cm, u)
            new_of[old_idx] = em.curry(t)
        elif rid == 8:  # premise psi -> (a & b -> c); goal psi -> (a -> (b -> c))
            a = d.lines[just.premises[0]][0]
            assert isinstance(a, Imp) and isinstance(a.left, And)
            pa, pb, pc = a.left.left, a.left.right, a.right
            u = em.uncurry(ps[0])                       # psi & (a & b) -> c
            i_as = em.assoc_rl(psi, pa, pb)             # (psi & a) & b -> psi & (a & b)
            t = em.trans(i_as, u)                       # (psi & a) & b -> c
            c1 = em.curry(t)                            # psi & a -> (b -> c)
            new_of[old_idx] = em.curry(c1)
        elif rid == 9:  # premise psi -> (a -> (b -> c)); goal psi -> (a & b -> c)
            a = d.lines[just.premises[0]][0]
            assert isinstance(a, Imp) and isinstance(a.right, Imp)
            pa, pb = a.left, a.right.left
            u1 = em.uncurry(ps[0])                      # psi & a -> (b -> c)
            u2 = em.uncurry(u1)                         # (psi & a) & b -> c
            i_as = em.assoc_lr(psi, pa, pb)             # psi & (a & b) -> (psi & a) & b
            t = em.trans(i_as, u2)
            new_of[old_idx] = em.curry(t)
        elif rid in (11, 13):
            a = d.lines[just.premises[0]][0]
            assert isinstance(a, Imp)
            x = just.var
            assert x is not None
            if rid == 11:
                u = em.uncurry(ps[0])                   # psi & a -> b
                g = em.emit(
                    Imp(And(psi, a.left), All(x, a.right)), Rule(11, (u,), x)
                )
                new_of[old_idx] = em.curry(g)
            else:
                u = em.uncurry(ps[0])                   # psi & a -> b
                cm = em.commute(a.left, psi)
                t = em.trans(cm, u)                     # a & psi -> b
                c1 = em.curry(t)                        # a -> (psi -> b)
                g = em.emit(Imp(Ex(x, a.left), Imp(psi, a.right)), Rule(13, (c1,), x))
                u2 = em.uncurry(g)                      # Ex x a & psi -> b
                cm2 = em.commute(psi, Ex(x, a.left))
                t2 = em.trans(cm2, u2)
                new_of[old_idx] = em.curry(t2)
        else:
            raise ValueError(f"unhandled rule LPT{rid}")

    # ensure the conclusion is the final line
    goal = new_of[len(d.lines) - 1]
    if goal != len(em.lines) - 1:
        last = em.lines[goal][0]
        i_id = em.lpt1(last)
        em.lines.append((last, Rule(2, (goal, i_id))))
    return Derivation(rest, em.lines)
