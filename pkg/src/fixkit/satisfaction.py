"""Generated object-level machinery: the valuation package, the level-n
satisfaction predicates, diagonalization, and the fixpoint-eliminating
interpretation.

The satisfaction family at level 0 is semantically exercised through a
decode-guided bounded checker: the witness of the compressed
Sigma-equation is assembled from per-conjunct searches through the same
pairing the normalizer uses, then the raw matrix (with its valuation and
syntax-predicate terms) is evaluated object-level at that witness.  A
blind linear search could never reach these witnesses, whose magnitudes
are Goedel codes.

Levels above 0 are verified structurally (membership, normal-form-hood,
free variables); the compositionality statements the construction is
responsible for there are emitted as hypothesis-stub derivation files.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import objprog as op
from .combinatory import builtin, update_chain, update_term
from .evaluator import DEFAULT_FUEL, eval_formula, eval_term
from .goedel import decode_formula, encode, encode_raw, encode_var
from .hierarchy import (
    classify, compress_sigma_block, is_nf, normalize, normalize_internal,
    plain_subst,
)
from .syntax import (
    All, And, BinOp, Bot, Eq, Ex, Formula, Imp, NumLit, OperatorForm, Or,
    RelAtom, Term, TVar, Var, alpha_normalize, app, conj, conjuncts,
    free_vars, iff, is_sigma_equation, less_than, numeral, prel, rels_of,
    subst_term,
)

E_SLOT = Var(0)
F_SLOT = Var(1)
_ONE = numeral(1)


@dataclass(frozen=True)
class ValPackage:
    """The valuation term and the syntax-predicate terms it leans on."""
    val: Term
    var_chk: Term
    term_chk: Term
    seq_chk: Term
    lh: Term
    elem: Term
    fv_chk: Term
    bv_chk: Term
    sub: Term
    num: Term
    conjs: Term
    level_chk: Term
    normalizer: Term


@lru_cache(maxsize=None)
def build_val() -> ValPackage:
    return ValPackage(
        val=op.val_term(),
        var_chk=op.var_chk_term(),
        term_chk=op.term_chk_term(),
        seq_chk=op.seq_chk_term(),
        lh=op.lh_term(),
        elem=op.elem_term(),
        fv_chk=op.fv_chk_code_term(),
        bv_chk=op.bv_chk_term(),
        sub=op.sub_term(),
        num=op.num_term(),
        conjs=op.conjs_term(),
        level_chk=op.lvl_chk_term(),
        normalizer=op.lam_n_term(),
    )


@dataclass(frozen=True)
class SatFamily:
    n: int
    sat_raw: Formula   # the written-out predicate over normal-form codes
    sat_nf: Formula    # its level-n normal form
    sat: Formula       # sat_nf with the code argument pre-normalized


def _chk(term: Term, *args: Term) -> Formula:
    return Eq(app(term, *args), _ONE)


def _sat0_raw() -> Formula:
    vp = build_val()
    x, v, s, t = Var(2), Var(3), Var(4), Var(5)
    upd = update_term(TVar(E_SLOT), TVar(v), TVar(x))
    parts = [
        _chk(vp.term_chk, TVar(s)),
        _chk(vp.term_chk, TVar(t)),
        _chk(vp.var_chk, TVar(v)),
        Eq(TVar(F_SLOT), app(op.mk_ex_term(), TVar(v),
                             app(op.mk_eq_term(), TVar(s), TVar(t)))),
        Eq(app(vp.val, upd, TVar(s)), app(vp.val, upd, TVar(t))),
    ]
    return Ex(x, Ex(v, Ex(s, Ex(t, conj(parts)))))


def _sat_succ_raw(n: int, fam_n: SatFamily, fam_0: SatFamily) -> Formula:
    vp = build_val()
    x, v, G, s = Var(2), Var(3), Var(4), Var(5)
    i, f, g = Var(6), Var(7), Var(8)
    upd = update_term(TVar(E_SLOT), TVar(v), TVar(x))
    guard1 = conj([
        _chk(vp.var_chk, TVar(v)),
        Eq(TVar(F_SLOT), app(op.mk_all_term(), TVar(v), TVar(G))),
        _chk(vp.seq_chk, TVar(s)),
        less_than(numeral(0), app(vp.lh, TVar(s)), fresh=9),
        Eq(TVar(G), app(vp.conjs, TVar(s))),
    ])
    s_i = app(vp.elem, TVar(s), TVar(i))
    guard2 = conj([
        less_than(TVar(f), s_i, fresh=10),
        less_than(TVar(g), s_i, fresh=11),
        Eq(s_i, app(op.mk_imp_term(), TVar(g), TVar(f))),
        _chk(vp.level_chk, numeral(n), TVar(g)),
        _chk(vp.level_chk, numeral(0), TVar(f)),
    ])
    sat_n_inst = subst_term(fam_n.sat_nf, [E_SLOT, F_SLOT], [upd, TVar(g)])
    sat_0_inst = subst_term(fam_0.sat_nf, [E_SLOT, F_SLOT], [upd, TVar(f)])
    inner = All(i, Imp(
        less_than(TVar(i), app(vp.lh, TVar(s)), fresh=12),
        All(f, All(g, Imp(guard2, Imp(sat_n_inst, sat_0_inst))))))
    block = All(x, All(v, All(G, All(s, Imp(guard1, inner)))))
    return And(_chk(vp.level_chk, numeral(n + 1), TVar(F_SLOT)), block)


@lru_cache(maxsize=None)
def build_sat(n: int) -> SatFamily:
    """The level-n satisfaction family (raw, normal form, composed)."""
    if n == 0:
        raw = _sat0_raw()
        nf = alpha_normalize(compress_sigma_block(raw))
    else:
        raw = _sat_succ_raw(n - 1, build_sat(n - 1), build_sat(0))
        nf = normalize(raw, n)
    composed = subst_term(nf, [F_SLOT], [app(op.lam_at(n), TVar(F_SLOT))])
    return SatFamily(n, raw, nf, composed)


# ---------------------------------------------------------------------------
# decode-guided bounded adequacy at level 0

def _env_term(env: dict[int, int]) -> Term:
    pairs = [(NumLit(int(encode_var(Var(j)))), numeral(val))
             for j, val in sorted(env.items())]
    return update_chain(builtin("id"), pairs)


def _sigma_witnesses(phi: Formula, env: dict[int, int], bound: int,
                     fuel: int, cap: int = 128) -> list[int] | None:
    """Candidate witnesses for the merged Sigma-equation of the level-0
    normal form, mirroring the normalizer's pairing merge."""
    from .pairing import pair as _pair
    combos: list[int] | None = None
    for part in conjuncts(alpha_normalize(phi)):
        if isinstance(part, RelAtom):
            raise ValueError("guided adequacy covers the pure language only")
        if isinstance(part, Bot):
            return None
        if isinstance(part, Eq):
            sigma = Ex(Var(max((v.index for v in free_vars(part)), default=-1) + 1), part)
        else:
            sigma = part
        ws = []
        for w in range(bound + 1):
            e2 = dict(env)
            e2[sigma.var.index] = w
            if eval_formula(sigma.body, e2, bound=bound, fuel=fuel) is True:
                ws.append(w)
        if not ws:
            return None
        if combos is None:
            combos = ws
        else:
            combos = [_pair(a, b) for a in combos for b in ws][:cap]
    return combos


def sat0_verdict(phi: Formula, env: dict[int, int] | None = None,
                 bound: int = 6, fuel: int = 2_000_000) -> bool | None:
    """Bounded verdict of Sat_0(e, code(phi)) for pure level-0 formulas.

    Runs the object-level normalizer on the code, assembles the witness
    from per-conjunct searches, and confirms it against the raw matrix;
    the existential is never definitely false on the infinite domain, so
    the answer is True or unknown."""
    env = dict(env or {})
    if classify(phi) != 0 or rels_of(phi):
        raise ValueError("guided adequacy wants a pure level-0 formula")
    if not all(v.index in env for v in free_vars(phi)):
        raise ValueError("environment must cover the free variables")
    code = int(encode(phi))
    r = eval_term(app(op.lam_at(0), NumLit(code)), fuel)
    if not r.is_numeral:
        return None
    nf_code = r.value
    nf = decode_formula(nf_code)
    if not is_sigma_equation(nf):
        return None
    # mirror check: the object normalizer agrees with the artifact one
    assert nf_code == int(encode_raw(normalize_internal(alpha_normalize(phi), 0)))
    v_c, eq_c = int(encode_var(nf.var)), nf.body
    witnesses = _sigma_witnesses(phi, env, bound, fuel)
    if not witnesses:
        return None
    s_c = int(encode(eq_c.left))
    t_c = int(encode(eq_c.right))
    e_term = _env_term(env)
    raw = _sat0_raw()
    matrix = raw.body.body.body.body  # under Ex x, v, s, t
    for w in witnesses:
        inst = subst_term(
            matrix,
            [E_SLOT, F_SLOT, Var(2), Var(3), Var(4), Var(5)],
            [e_term, NumLit(nf_code), NumLit(w), NumLit(v_c), NumLit(s_c), NumLit(t_c)],
        )
        if eval_formula(inst, {}, bound=bound, fuel=fuel) is True:
            return True
    return None


def sat0_adequate(phi: Formula, env: dict[int, int], bound: int = 6,
                  fuel: int = 2_000_000) -> tuple[bool | None, bool | None]:
    """(satisfaction verdict, direct bounded verdict) for comparison."""
    sat_v = sat0_verdict(phi, env, bound, fuel)
    direct = eval_formula(phi, dict(env), bound=bound, fuel=fuel)
    return sat_v, direct


# ---------------------------------------------------------------------------
# diagonalization

def diagonalize(phi: Formula, n: int) -> Formula:
    """psi with free variables v0..v_{k-1} whose defining equivalence
    against phi(x..., code(psi)) holds; level membership is preserved."""
    lvl = classify(phi)
    if lvl is None or lvl > n:
        raise ValueError(f"formula is not in level {n}")
    fv = free_vars(phi)
    if not fv:
        raise ValueError("nothing to diagonalize: no free variables")
    k = max(v.index for v in fv)
    if fv != {Var(j) for j in range(k + 1)}:
        raise ValueError("free variables must be exactly v0..vk")
    vk = Var(k)
    theta = alpha_normalize(
        subst_term(phi, [vk], [app(op.diagsub_term(k), TVar(vk))]))
    c_theta = int(encode_raw(theta))
    return plain_subst(theta, vk, NumLit(c_theta))


def diagonal_code(psi: Formula) -> int:
    """The code the diagonal formula ascribes to itself."""
    return int(encode_raw(psi))


def diagonal_obligation(phi: Formula, n: int) -> Formula:
    """The defining equivalence psi(x...) <-> phi(x..., code(psi))."""
    psi = diagonalize(phi, n)
    k = max(v.index for v in free_vars(phi))
    rhs = subst_term(phi, [Var(k)], [NumLit(diagonal_code(psi))])
    return iff(psi, rhs)


# ---------------------------------------------------------------------------
# the fixpoint-eliminating interpretation

def t_env_term(k: int) -> Term:
    """The identity environment updated so the code of v_j maps to v_j."""
    pairs = [(NumLit(int(encode_var(Var(j)))), TVar(Var(j))) for j in range(k)]
    return update_chain(builtin("id"), pairs)


@lru_cache(maxsize=None)
def _interpretation_by_opcode(opcode: int, arity: int) -> Formula | None:
    body = decode_formula(opcode)
    operator = OperatorForm(body, arity)
    n = classify(operator.body)
    if n is None:
        return None
    fam = build_sat(n)
    k = arity
    theta = subst_term(fam.sat, [E_SLOT, F_SLOT], [t_env_term(k), TVar(Var(k))])
    from .syntax import subst_relation
    phi_op = subst_relation(operator.body, prel(k),
                            ([Var(j) for j in range(k)], theta))
    return diagonalize(phi_op, n)


def fix_interpretation(operator: OperatorForm) -> Formula | None:
    """The diagonal formula interpreting the operator's fixpoint
    predicate; None when the operator is not almost negative."""
    return _interpretation_by_opcode(int(encode(operator.body)), operator.arity)


def interpret_F(phi: Formula) -> Formula:
    """Eliminate fixpoint predicates, keeping the base language fixed.

    Fixpoint atoms over almost negative operators become instances of
    their diagonal interpretation; other fixpoint atoms become bottom."""
    if isinstance(phi, (Bot, Eq)):
        return phi
    if isinstance(phi, RelAtom):
        if phi.rel.kind == "fix":
            psi = _interpretation_by_opcode(phi.rel.opcode, phi.rel.arity)
            if psi is None:
                return Bot()
            k = phi.rel.arity
            return subst_term(psi, [Var(j) for j in range(k)], list(phi.args))
        if phi.rel.kind == "P":
            raise ValueError("parameter predicates have no interpretation")
        return phi
    if isinstance(phi, (And, Or, Imp)):
        return type(phi)(interpret_F(phi.left), interpret_F(phi.right))
    if isinstance(phi, (All, Ex)):
        return type(phi)(phi.var, interpret_F(phi.body))
    raise TypeError(phi)


# ---------------------------------------------------------------------------
# compositionality obligations at the unverifiable levels

def sat_obligations(n: int) -> dict[str, Formula]:
    """Theorem-level statements about the level-n family (conjunction,
    environment relevance, substitution), as formulas."""
    vp = build_val()
    fam = build_sat(n)
    F, G, e, f = Var(2), Var(3), Var(4), Var(5)
    xv, sv = Var(6), Var(7)
    lvl = lambda t: _chk(vp.level_chk, numeral(n), t)  # noqa: E731

    def satp(env_t: Term, code_t: Term) -> Formula:
        return subst_term(fam.sat_nf, [E_SLOT, F_SLOT], [env_t, code_t])

    conj_clause = All(F, All(G, All(e, Imp(
        And(lvl(TVar(F)), lvl(TVar(G))),
        iff(satp(TVar(e), app(op.lam_at(n),
                              app(op.mk_and_term(), TVar(F), TVar(G)))),
            And(satp(TVar(e), TVar(F)), satp(TVar(e), TVar(G))))))))
    relevance = All(F, All(e, All(f, Imp(
        And(lvl(TVar(F)),
            All(xv, Imp(less_than(TVar(xv), TVar(F), fresh=8),
                        Imp(_chk(vp.fv_chk, TVar(F), TVar(xv)),
                            Eq(app(TVar(e), TVar(xv)), app(TVar(f), TVar(xv))))))),
        iff(satp(TVar(e), TVar(F)), satp(TVar(f), TVar(F)))))))
    bv_guard = All(xv, Imp(
        less_than(TVar(xv), TVar(F), fresh=8),
        Imp(And(_chk(vp.bv_chk, TVar(F), TVar(xv)),
                _chk(vp.fv_chk, TVar(sv), TVar(xv))), Bot())))
    substitution = All(F, All(Var(8), All(sv, All(e, Imp(
        And(And(And(lvl(TVar(F)), _chk(vp.var_chk, TVar(Var(8)))),
                _chk(vp.term_chk, TVar(sv))), bv_guard),
        iff(satp(TVar(e), app(vp.sub, TVar(F), TVar(Var(8)), TVar(sv))),
            satp(update_term(TVar(e), TVar(Var(8)),
                             app(vp.val, TVar(e), TVar(sv))), TVar(F))))))))
    return {
        "conjunction": conj_clause,
        "environment-relevance": relevance,
        "substitution": substitution,
    }


def write_sat_obligation_files(n: int, directory: str) -> list[str]:
    """Serialize the level-n obligations as hypothesis-stub derivation
    files (checkable, explicitly not proved)."""
    import os

    from .derivfile import serialize_derivation
    from .kernel import Derivation, Hypothesis, SPEC_HAP_P
    paths = []
    for name, phi in sat_obligations(n).items():
        d = Derivation([phi], [(phi, Hypothesis(0))])
        text = serialize_derivation(d, SPEC_HAP_P, f"obligation {name} level {n}")
        path = os.path.join(directory, f"sat-obligation-{name}-level{n}.fxd")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
        paths.append(path)
    return paths
