"""Convenience constructors for Hilbert-style derivations.

These are macro emitters, not search: each helper appends a fixed block
of lines (axiom instances plus rule applications) and returns the index
of the line it concludes.  They exist so the derivation corpus and the
pipeline examples can be written at the level of `instantiate this axiom
at these terms` instead of raw line bookkeeping.
"""

from __future__ import annotations

from .kernel import (
    Derivation, FixpointAxiom, HapAxiom, Hypothesis, Induction, Justification,
    LptAxiom, Rule, TheorySpec, build_fixpoint_axiom, build_hap_axiom,
    build_induction, build_lpt_axiom,
)
from .syntax import (
    All, And, BinOp, Bot, Const, Eq, Ex, Formula, Imp, NumLit, OperatorForm,
    Or, SApp, Term, TVar, Var, alpha_normalize, app, denotes, free_vars,
    subst_term, term_vars,
)

ZERO = Const("0")


class ProofBuilder:
    def __init__(self, hypotheses: list[Formula] | None = None):
        self.hypotheses = list(hypotheses or [])
        self.lines: list[tuple[Formula, Justification]] = []
        self._memo: dict[Formula, int] = {}

    def derivation(self) -> Derivation:
        return Derivation(self.hypotheses, list(self.lines))

    def add(self, phi: Formula, just: Justification) -> int:
        key = alpha_normalize(phi)
        got = self._memo.get(key)
        if got is not None:
            return got
        self.lines.append((phi, just))
        idx = len(self.lines) - 1
        self._memo[key] = idx
        return idx

    def formula(self, idx: int) -> Formula:
        return self.lines[idx][0]

    def conclude(self, idx: int) -> int:
        """Make the given line the derivation's final line (re-emitting it
        through a trivial modus ponens when memoization left it earlier)."""
        if idx == len(self.lines) - 1:
            return idx
        phi = self.formula(idx)
        i_id = self.lpt(1, phi)
        self.lines.append((phi, Rule(2, (idx, i_id))))
        return len(self.lines) - 1

    # ------------------------------------------------------------------
    # axioms and hypotheses

    def hyp(self, index: int) -> int:
        return self.add(self.hypotheses[index], Hypothesis(index))

    def lpt(self, axiom_id: int, *data) -> int:
        return self.add(build_lpt_axiom(axiom_id, data), LptAxiom(axiom_id, data))

    def hap(self, group: int, clause: str, *vs: Var) -> int:
        return self.add(build_hap_axiom(group, clause, vs), HapAxiom(group, clause, vs))

    def induction(self, phi: Formula, x: Var) -> int:
        return self.add(build_induction(phi, x), Induction(phi, x))

    def fixpoint(self, op: OperatorForm) -> int:
        return self.add(build_fixpoint_axiom(op), FixpointAxiom(op))

    # ------------------------------------------------------------------
    # rules

    def mp(self, i_phi: int, i_imp: int) -> int:
        imp = self.formula(i_imp)
        assert isinstance(imp, Imp), "modus ponens needs an implication"
        return self.add(imp.right, Rule(2, (i_phi, i_imp)))

    def trans(self, i_ab: int, i_bc: int) -> int:
        ab, bc = self.formula(i_ab), self.formula(i_bc)
        assert isinstance(ab, Imp) and isinstance(bc, Imp)
        return self.add(Imp(ab.left, bc.right), Rule(3, (i_ab, i_bc)))

    def con_rule(self, i_ab: int, i_ac: int) -> int:
        ab, ac = self.formula(i_ab), self.formula(i_ac)
        assert isinstance(ab, Imp) and isinstance(ac, Imp)
        return self.add(Imp(ab.left, And(ab.right, ac.right)), Rule(5, (i_ab, i_ac)))

    def curry(self, i: int) -> int:
        a = self.formula(i)
        assert isinstance(a, Imp) and isinstance(a.left, And)
        return self.add(Imp(a.left.left, Imp(a.left.right, a.right)), Rule(8, (i,)))

    def uncurry(self, i: int) -> int:
        a = self.formula(i)
        assert isinstance(a, Imp) and isinstance(a.right, Imp)
        return self.add(Imp(And(a.left, a.right.left), a.right.right), Rule(9, (i,)))

    def gen_all(self, i: int, x: Var) -> int:
        a = self.formula(i)
        assert isinstance(a, Imp)
        return self.add(Imp(a.left, All(x, a.right)), Rule(11, (i,), x))

    def gen_ex(self, i: int, x: Var) -> int:
        a = self.formula(i)
        assert isinstance(a, Imp)
        return self.add(Imp(Ex(x, a.left), a.right), Rule(13, (i,), x))

    # ------------------------------------------------------------------
    # derived moves

    def weaken(self, i_chi: int, psi: Formula) -> int:
        """From chi: psi -> chi."""
        chi = self.formula(i_chi)
        i1 = self.lpt(4, chi, psi, "l")
        i2 = self.curry(i1)
        return self.mp(i_chi, i2)

    def conj_intro(self, i_a: int, i_b: int) -> int:
        """From a and b: a & b."""
        a, b = self.formula(i_a), self.formula(i_b)
        i1 = self.lpt(1, a)
        i2 = self.weaken(i_b, a)
        i3 = self.con_rule(i1, i2)
        return self.mp(i_a, i3)

    def closure(self, i_open: int, x: Var) -> int:
        """From an open line chi: forall x chi (x free nowhere else)."""
        chi = self.formula(i_open)
        triv = self.lpt(20, "0")  # 0 denotes, a closed true side formula
        i1 = self.weaken(i_open, self.formula(triv))
        i2 = self.gen_all(i1, x)
        return self.mp(triv, i2)

    def denote(self, t: Term) -> int:
        """Derive that an arithmetic-over-denoting-parts term denotes."""
        if isinstance(t, Const):
            return self.lpt(20, t.name)
        if isinstance(t, NumLit):
            return self.lpt(20, t.value)
        if isinstance(t, TVar):
            return self.lpt(23, t.var)
        if isinstance(t, SApp):
            i_arg = self.denote(t.arg)
            x = self._fresh([t])
            i_ax = self.hap(1, "a", x)
            return self._inst_open(i_ax, x, t.arg, i_arg)
        if isinstance(t, BinOp) and t.op in ("+", "*"):
            i_l = self.denote(t.left)
            i_r = self.denote(t.right)
            x, y = self._fresh2([t])
            i_ax = self.hap(1, "b" if t.op == "+" else "c", x, y)
            i1 = self._inst_open(i_ax, x, t.left, i_l)
            return self._inst_open(i1, y, t.right, i_r)
        raise ValueError("term has no derivable totality here (application?)")

    def _fresh(self, around: list) -> Var:
        used = set()
        for x in around:
            used |= {v.index for v in (term_vars(x) if isinstance(x, Term) else free_vars(x))}
        for h in self.hypotheses:
            used |= {v.index for v in free_vars(h)}
        i = 0
        while i in used:
            i += 1
        return Var(i)

    def _fresh2(self, around: list) -> tuple[Var, Var]:
        a = self._fresh(around)
        b = Var(a.index + 1)
        while any(
            b in (term_vars(x) if isinstance(x, Term) else free_vars(x)) for x in around
        ) or any(b in free_vars(h) for h in self.hypotheses):
            b = Var(b.index + 1)
        return a, b

    def _inst_open(self, i_open: int, x: Var, tau: Term, i_tau_denotes: int) -> int:
        """From an open line chi and tau-down: chi(x / tau)."""
        chi = self.formula(i_open)
        i_cl = self.closure(i_open, x) if x in free_vars(chi) else None
        if i_cl is None:
            return i_open
        closed = self.formula(i_cl)
        assert isinstance(closed, All)
        i_ax = self.lpt(12, x, closed.body, tau)
        i_cj = self.conj_intro(i_cl, i_tau_denotes)
        return self.mp(i_cj, i_ax)

    def instantiate(self, i_open: int, pairs: list[tuple[Var, Term]]) -> int:
        """Substitute terms for free variables of an open line, one by one;
        each term must have derivable totality."""
        cur = i_open
        for x, tau in pairs:
            i_tau = self.denote(tau)
            cur = self._inst_open(cur, x, tau, i_tau)
        return cur

    def inst_closed(self, i_closed: int, taus: list[Term]) -> int:
        """Peel universal quantifiers of a closed line at the given terms."""
        cur = i_closed
        for tau in taus:
            closed = self.formula(cur)
            assert isinstance(closed, All)
            i_tau = self.denote(tau)
            i_ax = self.lpt(12, closed.var, closed.body, tau)
            i_cj = self.conj_intro(cur, i_tau)
            cur = self.mp(i_cj, i_ax)
        return cur

    # equality toolkit ---------------------------------------------------

    def denote_from_eq(self, i_eq: int, side: int) -> int:
        eq = self.formula(i_eq)
        assert isinstance(eq, Eq)
        i_ax = self.lpt(22, "=", (eq.left, eq.right), side)
        return self.mp(i_eq, i_ax)

    def eq_refl(self, t: Term) -> int:
        i_t = self.denote(t)
        x = self._fresh([t])
        i_ax = self.lpt(15, x)
        i_inst = self.lpt(12, x, Eq(TVar(x), TVar(x)), t)
        i_cj = self.conj_intro(i_ax, i_t)
        return self.mp(i_cj, i_inst)

    def eq_sym(self, i_eq: int) -> int:
        eq = self.formula(i_eq)
        assert isinstance(eq, Eq)
        x, y = self._fresh2([eq.left, eq.right])
        i_ax = self.lpt(16, x, y)
        i_l = self.denote_from_eq(i_eq, 0)
        i_r = self.denote_from_eq(i_eq, 1)
        body = Imp(Eq(TVar(x), TVar(y)), Eq(TVar(y), TVar(x)))
        i1 = self.lpt(12, x, All(y, body), eq.left)
        i2 = self.mp(self.conj_intro(i_ax, i_l), i1)
        inner = self.formula(i2)
        assert isinstance(inner, All)
        i3 = self.lpt(12, y, inner.body, eq.right)
        i4 = self.mp(self.conj_intro(i2, i_r), i3)
        return self.mp(i_eq, i4)

    def eq_trans(self, i_ab: int, i_bc: int) -> int:
        ab, bc = self.formula(i_ab), self.formula(i_bc)
        assert isinstance(ab, Eq) and isinstance(bc, Eq) and ab.right == bc.left
        x, y, z = self._fresh3([ab.left, ab.right, bc.right])
        i_ax = self.lpt(17, x, y, z)
        chain = [self.denote_from_eq(i_ab, 0), self.denote_from_eq(i_ab, 1),
                 self.denote_from_eq(i_bc, 1)]
        cur = i_ax
        for tau, i_tau in zip((ab.left, ab.right, bc.right), chain):
            closed = self.formula(cur)
            assert isinstance(closed, All)
            i_axi = self.lpt(12, closed.var, closed.body, tau)
            cur = self.mp(self.conj_intro(cur, i_tau), i_axi)
        i_cj = self.conj_intro(i_ab, i_bc)
        return self.mp(i_cj, cur)

    def _fresh3(self, around: list) -> tuple[Var, Var, Var]:
        a = self._fresh(around)
        return a, Var(a.index + 1), Var(a.index + 2)

    def congr_s(self, i_eq: int) -> int:
        """From a = b: S(a) = S(b)."""
        eq = self.formula(i_eq)
        assert isinstance(eq, Eq)
        x, y = self._fresh2([eq.left, eq.right])
        i_ax = self.lpt(18, "S", (x,), (y,))
        # S of anything denoting denotes, via the closed totality clause
        i_a = self.denote_from_eq(i_eq, 0)
        v = self._fresh([eq.left, eq.right])
        i_sx = self.hap(1, "a", v)
        i_sa = self._inst_open(i_sx, v, eq.left, i_a)
        cur = i_ax
        for tau, i_tau in ((eq.left, self.denote_from_eq(i_eq, 0)),
                           (eq.right, self.denote_from_eq(i_eq, 1))):
            closed = self.formula(cur)
            assert isinstance(closed, All)
            i_axi = self.lpt(12, closed.var, closed.body, tau)
            cur = self.mp(self.conj_intro(cur, i_tau), i_axi)
        i_cj = self.conj_intro(i_eq, i_sa)
        return self.mp(i_cj, cur)

    def exists_intro(self, x: Var, phi: Formula, tau: Term, i_inst: int) -> int:
        """From phi(x/tau): exists x phi (tau must denote derivably)."""
        i_tau = self.denote(tau)
        i_ax = self.lpt(14, x, phi, tau)
        i_cj = self.conj_intro(i_inst, i_tau)
        return self.mp(i_cj, i_ax)

    def congr_op(self, op: str, i_eq1: int, i_eq2: int) -> int:
        """From a = b and c = d: a op c = b op d, for + and *."""
        e1, e2 = self.formula(i_eq1), self.formula(i_eq2)
        assert isinstance(e1, Eq) and isinstance(e2, Eq) and op in ("+", "*")
        a, b, c, d0 = e1.left, e1.right, e2.left, e2.right
        xs = self._freshn(4, [a, b, c, d0])
        i_ax = self.lpt(18, op, (xs[0], xs[1]), (xs[2], xs[3]))
        i_den = self.denote(BinOp(op, a, c))
        cur = i_ax
        for tau, i_tau in ((a, self.denote_from_eq(i_eq1, 0)),
                           (c, self.denote_from_eq(i_eq2, 0)),
                           (b, self.denote_from_eq(i_eq1, 1)),
                           (d0, self.denote_from_eq(i_eq2, 1))):
            closed = self.formula(cur)
            assert isinstance(closed, All)
            i_axi = self.lpt(12, closed.var, closed.body, tau)
            cur = self.mp(self.conj_intro(cur, i_tau), i_axi)
        i_eqs = self.conj_intro(i_eq1, i_eq2)
        i_cj = self.conj_intro(i_eqs, i_den)
        return self.mp(i_cj, cur)

    def _freshn(self, n: int, around: list) -> list[Var]:
        a = self._fresh(around)
        return [Var(a.index + j) for j in range(n)]

    def splice(self, other: Derivation) -> int:
        """Append another derivation's lines (same hypothesis list prefix);
        returns the index of its conclusion here."""
        if other.hypotheses != self.hypotheses[: len(other.hypotheses)]:
            raise ValueError("spliced derivation's hypotheses must be a prefix")
        offset = len(self.lines)
        for phi, just in other.lines:
            if isinstance(just, Rule):
                just = Rule(just.rule_id, tuple(p + offset for p in just.premises), just.var)
            self.lines.append((phi, just))
        return len(self.lines) - 1

    def imp_intro(self, psi: Formula, build) -> int:
        """Derive psi -> chi by deriving chi under the extra hypothesis psi
        and discharging it with the deduction transformer."""
        from .kernel import deduction
        sub = ProofBuilder(self.hypotheses + [psi])
        build(sub)
        discharged = deduction(sub.derivation(), len(self.hypotheses))
        return self.splice(discharged)


def _arith(t: Term) -> bool:
    if isinstance(t, (Const, NumLit)):
        return not isinstance(t, Const) or t.name == "0"
    if isinstance(t, TVar):
        return True
    if isinstance(t, SApp):
        return _arith(t.arg)
    if isinstance(t, BinOp):
        return t.op in ("+", "*") and _arith(t.left) and _arith(t.right)
    return False
