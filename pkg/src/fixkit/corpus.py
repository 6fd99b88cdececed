"""A corpus of worked derivations: arithmetic facts, quantifier moves,
an induction instance, and fixpoint-axiom uses.

Each entry is a (derivation, theory name) pair; the files checked into
tests/corpus are serializations of exactly these.
"""

from __future__ import annotations

from .kernel import Derivation, SPEC_HAP, SPEC_IIDP1, TheorySpec
from .proofs import ProofBuilder
from .syntax import (
    And, BinOp, Const, Eq, Ex, Imp, OperatorForm, RelAtom, SApp, TVar, Var,
    app, numeral, prel,
)

ZERO = Const("0")
ONE = SApp(ZERO)
TWO = SApp(ONE)


def _refl_zero() -> Derivation:
    pb = ProofBuilder()
    pb.lpt(20, "0")
    return pb.derivation()


def _forall_elim_refl() -> Derivation:
    # 0 = 0 by eliminating the universal closure of reflexivity
    pb = ProofBuilder()
    i = pb.lpt(15, Var(0))
    pb.conclude(pb.inst_closed(i, [ZERO]))
    return pb.derivation()


def _one_plus_one() -> Derivation:
    pb = ProofBuilder()
    x, y = Var(0), Var(1)
    i_b = pb.hap(3, "b", x, y)
    i1 = pb.instantiate(i_b, [(x, ONE), (y, ZERO)])     # 1 + S(0) = S(1 + 0)
    i_a = pb.hap(3, "a", x)
    i2 = pb.instantiate(i_a, [(x, ONE)])                # 1 + 0 = 1
    i3 = pb.congr_s(i2)                                 # S(1 + 0) = S(1)
    pb.conclude(pb.eq_trans(i1, i3))                    # 1 + 1 = 2
    return pb.derivation()


def _zero_plus(t) -> "tuple[ProofBuilder, int]":
    # helper chain: derives 0 + t = t for a numeral t, inside a builder
    pb = ProofBuilder()
    x, y = Var(0), Var(1)
    i_a = pb.hap(3, "a", x)
    cur = pb.instantiate(i_a, [(x, ZERO)])              # 0 + 0 = 0
    n, chain = 0, ZERO
    while chain != t:
        i_b = pb.hap(3, "b", x, y)
        i1 = pb.instantiate(i_b, [(x, ZERO), (y, chain)])   # 0+S(c) = S(0+c)
        i2 = pb.congr_s(cur)                                # S(0+c) = S(c)
        cur = pb.eq_trans(i1, i2)
        chain = SApp(chain)
    return pb, cur


def _two_times_one() -> Derivation:
    pb = ProofBuilder()
    x, y = Var(0), Var(1)
    i_m = pb.hap(4, "b", x, y)
    i1 = pb.instantiate(i_m, [(x, TWO), (y, ZERO)])     # 2*1 = (2*0) + 2
    i_m0 = pb.hap(4, "a", x)
    i2 = pb.instantiate(i_m0, [(x, TWO)])               # 2*0 = 0
    i_refl2 = pb.eq_refl(TWO)
    i3 = pb.congr_op("+", i2, i_refl2)                  # (2*0)+2 = 0+2
    sub, _ = _zero_plus(TWO)
    i4 = pb.splice(sub.derivation())                    # 0 + 2 = 2
    i5 = pb.eq_trans(i3, i4)                            # (2*0)+2 = 2
    pb.conclude(pb.eq_trans(i1, i5))                    # 2*1 = 2
    return pb.derivation()


def _succ_inj_instance() -> Derivation:
    pb = ProofBuilder()
    x, y = Var(0), Var(1)
    i = pb.hap(2, "a", x, y)
    pb.conclude(pb.instantiate(i, [(x, ZERO), (y, ZERO)]))   # S(0)=S(0) -> 0=0
    return pb.derivation()


def _pair_left() -> Derivation:
    pb = ProofBuilder()
    x, y = Var(0), Var(1)
    i = pb.hap(6, "c", x, y)
    pb.conclude(pb.instantiate(i, [(x, ZERO), (y, ONE)]))            # p_l (p 0 1) = 0
    return pb.derivation()


def _k_law() -> Derivation:
    pb = ProofBuilder()
    x, y = Var(0), Var(1)
    i = pb.hap(5, "a", x, y)
    pb.conclude(pb.instantiate(i, [(x, ZERO), (y, ONE)]))            # k 0 1 = 0
    return pb.derivation()


def _s_total() -> Derivation:
    pb = ProofBuilder()
    x, y = Var(0), Var(1)
    i = pb.hap(5, "b", x, y)
    pb.conclude(pb.instantiate(i, [(x, Const("k")), (y, Const("k"))]))   # (s k k) denotes
    return pb.derivation()


def _exists_one() -> Derivation:
    pb = ProofBuilder()
    v = Var(0)
    i_r = pb.eq_refl(ONE)
    pb.conclude(pb.exists_intro(v, Eq(TVar(v), ONE), ONE, i_r))
    return pb.derivation()


def _add_zero_induction() -> Derivation:
    pb = ProofBuilder()
    x = Var(0)
    phi = Eq(BinOp("+", ZERO, TVar(x)), TVar(x))
    i_a = pb.hap(3, "a", x)
    i_base = pb.instantiate(i_a, [(x, ZERO)])

    def build_step(sub: ProofBuilder):
        ih = sub.hyp(0)
        xx, yy = Var(1), Var(2)
        i_b = sub.hap(3, "b", xx, yy)
        i_b0 = sub.instantiate(i_b, [(xx, ZERO), (yy, TVar(x))])
        i_s = sub.congr_s(ih)
        sub.eq_trans(i_b0, i_s)

    i_imp = pb.imp_intro(phi, build_step)
    i_step = pb.closure(i_imp, x)
    i_ind = pb.induction(phi, x)
    i_m1 = pb.mp(i_base, i_ind)
    pb.conclude(pb.mp(i_step, i_m1))
    return pb.derivation()


def sample_operator() -> OperatorForm:
    """Ex v1 (v1 = v0) & P1(v0): strictly positive, almost negative."""
    v0, v1 = Var(0), Var(1)
    body = And(Ex(v1, Eq(TVar(v1), TVar(v0))), RelAtom(prel(1), (TVar(v0),)))
    return OperatorForm(body, 1)


def _fix_projection() -> Derivation:
    # I(1) -> Ex v1 (v1 = 1), from the fixpoint axiom of sample_operator
    pb = ProofBuilder()
    op = sample_operator()
    i_ax = pb.fixpoint(op)
    i_inst = pb.inst_closed(i_ax, [ONE])
    both = pb.formula(i_inst)
    i_4l = pb.lpt(4, both.left, both.right, "l")
    i_fwd = pb.mp(i_inst, i_4l)                  # I(1) -> (Ex.. & I(1))
    fwd = pb.formula(i_fwd)
    i_proj = pb.lpt(4, fwd.right.left, fwd.right.right, "l")
    pb.conclude(pb.trans(i_fwd, i_proj))         # I(1) -> Ex v1 (v1 = 1)
    return pb.derivation()


def _exists_one_fix_detour() -> Derivation:
    # Ex v0 (v0 = 1), alongside a fixpoint-axiom detour through I(1)
    pb = ProofBuilder()
    op = sample_operator()
    i_ax = pb.fixpoint(op)
    i_inst = pb.inst_closed(i_ax, [ONE])
    both = pb.formula(i_inst)
    i_4l = pb.lpt(4, both.left, both.right, "l")
    pb.mp(i_inst, i_4l)                          # the forward implication
    v = Var(0)
    i_r = pb.eq_refl(ONE)
    pb.conclude(pb.exists_intro(v, Eq(TVar(v), ONE), ONE, i_r))
    return pb.derivation()


def _hyp_congruence() -> Derivation:
    # from the hypothesis v1 = 0: S(v1) = S(0)
    hyp = Eq(TVar(Var(1)), ZERO)
    pb = ProofBuilder([hyp])
    ih = pb.hyp(0)
    pb.conclude(pb.congr_s(ih))
    return pb.derivation()


def build_corpus() -> dict[str, tuple[Derivation, TheorySpec]]:
    entries: dict[str, tuple[Derivation, TheorySpec]] = {
        "refl-zero": (_refl_zero(), SPEC_HAP),
        "forall-elim-refl": (_forall_elim_refl(), SPEC_HAP),
        "one-plus-one": (_one_plus_one(), SPEC_HAP),
        "two-times-one": (_two_times_one(), SPEC_HAP),
        "succ-inj-instance": (_succ_inj_instance(), SPEC_HAP),
        "pair-left": (_pair_left(), SPEC_HAP),
        "k-law": (_k_law(), SPEC_HAP),
        "s-total": (_s_total(), SPEC_HAP),
        "exists-one": (_exists_one(), SPEC_HAP),
        "add-zero-induction": (_add_zero_induction(), SPEC_HAP),
        "fix-projection": (_fix_projection(), SPEC_IIDP1),
        "exists-one-fix-detour": (_exists_one_fix_detour(), SPEC_IIDP1),
        "hyp-congruence": (_hyp_congruence(), SPEC_HAP),
    }
    return entries
