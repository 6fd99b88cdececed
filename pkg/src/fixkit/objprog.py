"""Object-level syntax machinery: closed combinator programs that walk
Goedel codes.

Each program mirrors an artifact-level function (variable-hood, term-hood,
free and bound variables, substitution, sequence length and elements, the
conjunction builder, the level classifier and the level-n normalizer) and
a dedicated agreement suite binds the two.  Code surgery is cheap because
the coding pairing is the evaluator's pairing: projections of a code are
single steps, so these programs run in time proportional to the code's
tree size, not its magnitude.

The code-level substitution performs no renaming; its callers only ever
substitute terms whose variables cannot be captured (fresh-by-sum
variables and closed terms), which is also how the normalizer stays
capture-free.
"""

from __future__ import annotations

from functools import lru_cache

from . import goedel as g
from .combinatory import builtin
from .goedel import encode_raw, encode_term
from .hierarchy import BOT_SIGMA, TRIVIAL_SIGMA
from .objlang import OL, OV, ap, compile_obj, fix, if_eq, if_zero, lam, let, switch_tag
from .syntax import Const, NumLit, Term, Var, app

# shared little combinators
_PRED = OL(builtin("pred"))
_PL = OL(Const("p_l"))
_PR = OL(Const("p_r"))
_P = OL(Const("p"))
_SUCC = OL(Const("succ"))
_MONUS = OL(builtin("monus"))
_ISZERO = OL(builtin("iszero"))


def _tag(c):
    return ap(_PL, ap(_PRED, c))


def _kids(c):
    return ap(_PR, ap(_PRED, c))


def _head(l):
    return ap(_PL, ap(_PRED, l))


def _tail(l):
    return ap(_PR, ap(_PRED, l))


def _kid1(c):
    return _head(_kids(c))


def _kid2(c):
    return _head(_tail(_kids(c)))


def _cons(h, t):
    return ap(_SUCC, ap(_P, h, t))


def _node(tag: int, *kids):
    out = OL(NumLit(0))
    for k in reversed(kids):
        out = _cons(k, out)
    return ap(_SUCC, ap(_P, tag, out))


def _node_dyn(tag_expr, *kids):
    out = OL(NumLit(0))
    for k in reversed(kids):
        out = _cons(k, out)
    return ap(_SUCC, ap(_P, tag_expr, out))


def _var_index(vc):
    # index of a variable code
    return _kid1(vc)


def _mk_var(i):
    return _node(g.TAG_VAR, i)


def _mk_tvar_of_index(i):
    return _node(g.TAG_TVAR, _mk_var(i))


def _add(a, b):
    # recursor addition; costs O(b), used on small numbers only
    return ap(OL(Const("r")), a, ap(OL(Const("k")), _SUCC), b)


def _max(a, b):
    return if_zero(ap(_MONUS, a, b), b, a)


def _leq(a, b):
    return ap(_ISZERO, ap(_MONUS, a, b))


# term codes of the constants, p_l z / p_r z builders
_CODE_CONST = {name: int(encode_term(Const(name))) for name in
               ("0", "k", "s", "p_l", "p_r", "p", "succ", "r")}
_T0_CODE = int(encode_raw(TRIVIAL_SIGMA))
_BOT_SIGMA_CODE = int(encode_raw(BOT_SIGMA))


def _mk_app(f, a):
    return _node(g.TAG_APP, f, a)


def _proj_term(which: str, z_index):
    # the term code of p_l z or p_r z for a given variable index
    return _mk_app(OL(NumLit(_CODE_CONST[which])), _mk_tvar_of_index(z_index))


# ---------------------------------------------------------------------------
# predicates and measures

@lru_cache(maxsize=None)
def var_chk_term() -> Term:
    body = lam("c", if_zero(
        OV("c"), 0,
        if_eq(_tag(OV("c")), g.TAG_VAR,
              if_zero(_tail(_kids(OV("c"))), 1, 0),
              0)))
    return compile_obj(body)


@lru_cache(maxsize=None)
def term_chk_term() -> Term:
    def body(self, c):
        one_kid = if_zero(_tail(_kids(c)), 1, 0)
        two_kid = if_zero(_tail(_tail(_kids(c))), 1, 0)
        rec1 = ap(self, _kid1(c))
        both = if_zero(two_kid, 0, if_zero(ap(self, _kid1(c)), 0, ap(self, _kid2(c))))
        return if_zero(c, 0, switch_tag(_tag(c), {
            g.TAG_TVAR: if_zero(one_kid, 0, ap(OL(var_chk_term()), _kid1(c))),
            g.TAG_CONST: if_zero(one_kid, 0, _leq(_kid1(c), 7)),
            g.TAG_NUM: one_kid,
            g.TAG_S: if_zero(one_kid, 0, rec1),
            g.TAG_PLUS: both, g.TAG_TIMES: both, g.TAG_APP: both,
        }, 0))
    return compile_obj(fix("tm", "c", body))


@lru_cache(maxsize=None)
def seq_chk_term() -> Term:
    return compile_obj(lam("s", if_zero(
        OV("s"), 0, if_eq(_tag(OV("s")), g.TAG_SEQ, 1, 0))))


@lru_cache(maxsize=None)
def chain_len_term() -> Term:
    return compile_obj(fix(
        "len", "l",
        lambda self, l: if_zero(l, 0, ap(_SUCC, ap(self, _tail(l))))))


@lru_cache(maxsize=None)
def lh_term() -> Term:
    return compile_obj(lam("s", ap(OL(chain_len_term()), _kids(OV("s")))))


@lru_cache(maxsize=None)
def elem_term() -> Term:
    def body(self, l, i):
        return if_zero(i, _head(l), ap(self, _tail(l), ap(_PRED, i)))
    walk = compile_obj(fix("el", ("l", "i"), body))
    return compile_obj(lam(("s", "i"), ap(OL(walk), _kids(OV("s")), OV("i"))))


def _binary_tags_dispatch(c, unary, binary, quant, relatom, var_case, leaf):
    """Shared structural dispatch for walks over term/formula codes."""
    return switch_tag(_tag(c), {
        g.TAG_S: unary,
        g.TAG_PLUS: binary, g.TAG_TIMES: binary, g.TAG_APP: binary,
        g.TAG_EQ: binary, g.TAG_AND: binary, g.TAG_OR: binary,
        g.TAG_IMP: binary,
        g.TAG_ALL: quant, g.TAG_EX: quant,
        g.TAG_RELATOM: relatom, g.TAG_TVAR: var_case,
    }, leaf)


@lru_cache(maxsize=None)
def fv_pair_terms() -> tuple[Term, Term]:
    """Free-occurrence check: (public term taking a variable code,
    inner walker taking a bare index)."""
    # single fixpoint over the node walker; the chain walk is inlined
    def body(self, c, i):
        def chain_any(l):
            return ap(fix("fvl", ("l",), lambda sl, l2: if_zero(
                l2, 0, if_zero(ap(self, _head(l2), i), ap(sl, _tail(l2)), 1))), l)
        both = if_zero(ap(self, _kid1(c), i), ap(self, _kid2(c), i), 1)
        quant = if_eq(_var_index(_kid1(c)), i, 0, ap(self, _kid2(c), i))
        rel = chain_any(_kid2(c))
        var_case = if_eq(_var_index(_kid1(c)), i, 1, 0)
        return _binary_tags_dispatch(
            c, ap(self, _kid1(c), i), both, quant, rel, var_case, 0)

    walker = compile_obj(fix("fv", ("c", "i"), body))
    # public form takes the variable as a code, per the paper's FV(t, x)
    public = compile_obj(lam(("c", "x"),
                             ap(OL(walker), OV("c"), _var_index(OV("x")))))
    return public, walker


def fv_chk_code_term() -> Term:
    return fv_pair_terms()[0]


@lru_cache(maxsize=None)
def bv_chk_term() -> Term:
    def body(self, c, i):
        def chain_any(l):
            return ap(fix("bvl", ("l",), lambda sl, l2: if_zero(
                l2, 0, if_zero(ap(self, _head(l2), i), ap(sl, _tail(l2)), 1))), l)
        both = if_zero(ap(self, _kid1(c), i), ap(self, _kid2(c), i), 1)
        quant = if_eq(_var_index(_kid1(c)), i, 1, ap(self, _kid2(c), i))
        rel = chain_any(_kid2(c))
        return _binary_tags_dispatch(
            c, ap(self, _kid1(c), i), both, quant, rel, 0, 0)
    walker = compile_obj(fix("bv", ("c", "i"), body))
    return compile_obj(lam(("c", "x"), ap(OL(walker), OV("c"), _var_index(OV("x")))))


@lru_cache(maxsize=None)
def sumvar_term() -> Term:
    def body(self, c):
        def chain_sum(l):
            return ap(fix("svl", ("l",), lambda sl, l2: if_zero(
                l2, 0, _add(ap(self, _head(l2)), ap(sl, _tail(l2))))), l)
        both = _add(ap(self, _kid1(c)), ap(self, _kid2(c)))
        quant = _add(_var_index(_kid1(c)), ap(self, _kid2(c)))
        rel = chain_sum(_kid2(c))
        var_case = _var_index(_kid1(c))
        return _binary_tags_dispatch(
            c, ap(self, _kid1(c)), both, quant, rel, var_case, 0)
    return compile_obj(fix("sv", ("c",), body))


@lru_cache(maxsize=None)
def sub_term() -> Term:
    """sub . t . x . s : substitute the term coded s for free occurrences
    of the variable coded x; no renaming."""
    def body(self, c, x, s):
        def chain_map(l):
            return ap(fix("sbl", ("l",), lambda sl, l2: if_zero(
                l2, 0, _cons(ap(self, _head(l2), x, s), ap(sl, _tail(l2))))), l)
        i = _var_index(x)
        both = _node_dyn(_tag(c), ap(self, _kid1(c), x, s), ap(self, _kid2(c), x, s))
        quant = if_eq(_var_index(_kid1(c)), i, c,
                      _node_dyn(_tag(c), _kid1(c), ap(self, _kid2(c), x, s)))
        rel = _node(g.TAG_RELATOM, _kid1(c), chain_map(_kid2(c)))
        var_case = if_eq(_var_index(_kid1(c)), i, s, c)
        unary = _node(g.TAG_S, ap(self, _kid1(c), x, s))
        return _binary_tags_dispatch(c, unary, both, quant, rel, var_case, c)
    return compile_obj(fix("sb", ("c", "x", "s"), body))


@lru_cache(maxsize=None)
def num_term() -> Term:
    """c -> the code of the numeral literal with value c."""
    return compile_obj(lam("c", _node(g.TAG_NUM, OV("c"))))


@lru_cache(maxsize=None)
def conjs_term() -> Term:
    """Conjunction of a coded sequence: conjs([e]) = e,
    conjs(h : t) = conjs(t) & h."""
    def chainbody(self, l):
        return if_zero(_tail(l), _head(l),
                       _node(g.TAG_AND, ap(self, _tail(l)), _head(l)))
    chain = compile_obj(fix("cj", ("l",), chainbody))
    return compile_obj(lam("s", ap(OL(chain), _kids(OV("s")))))


@lru_cache(maxsize=None)
def an_level_term() -> Term:
    """Shifted minimal level: 0 for not almost negative, level + 1 else."""
    def body(self, c):
        t = _tag(c)
        atom = OL(NumLit(1))
        ex_case = if_eq(_tag(_kid2(c)), g.TAG_EQ, 1, 0)
        both = let("a", ap(self, _kid1(c)),
                   let("b", ap(self, _kid2(c)),
                       if_zero(OV("a"), 0, if_zero(OV("b"), 0, _max(OV("a"), OV("b"))))))
        alls = let("m", ap(self, _kid2(c)),
                   if_zero(OV("m"), 0, _max(2, OV("m"))))
        imp = let("a", ap(self, _kid1(c)),
                  let("b", ap(self, _kid2(c)),
                      if_zero(OV("a"), 0,
                              if_zero(OV("b"), 0, _max(ap(_SUCC, OV("a")), OV("b"))))))
        return switch_tag(t, {
            g.TAG_BOT: atom, g.TAG_EQ: atom, g.TAG_RELATOM: atom,
            g.TAG_EX: ex_case, g.TAG_AND: both, g.TAG_ALL: alls,
            g.TAG_IMP: imp,
        }, 0)
    return compile_obj(fix("lv", ("c",), body))


@lru_cache(maxsize=None)
def lvl_chk_term() -> Term:
    """lvl_chk . n . F : membership of the coded formula in level n."""
    return compile_obj(lam(("n", "F"), let(
        "m", ap(OL(an_level_term()), OV("F")),
        if_zero(OV("m"), 0, _leq(OV("m"), ap(_SUCC, OV("n")))))))


# ---------------------------------------------------------------------------
# the code-level normalizer (mirror of hierarchy.normalize_internal)

def _mk_all(v, b):
    return _node(g.TAG_ALL, v, b)


def _mk_ex(v, b):
    return _node(g.TAG_EX, v, b)


def _mk_eq(a, b):
    return _node(g.TAG_EQ, a, b)


def _mk_and(a, b):
    return _node(g.TAG_AND, a, b)


def _mk_imp(a, b):
    return _node(g.TAG_IMP, a, b)


@lru_cache(maxsize=None)
def mk_ex_term() -> Term:
    return compile_obj(lam(("v", "b"), _mk_ex(OV("v"), OV("b"))))


@lru_cache(maxsize=None)
def mk_eq_term() -> Term:
    return compile_obj(lam(("a", "b"), _mk_eq(OV("a"), OV("b"))))


@lru_cache(maxsize=None)
def mk_imp_term() -> Term:
    return compile_obj(lam(("a", "b"), _mk_imp(OV("a"), OV("b"))))


@lru_cache(maxsize=None)
def mk_all_term() -> Term:
    return compile_obj(lam(("v", "b"), _mk_all(OV("v"), OV("b"))))


@lru_cache(maxsize=None)
def mk_and_term() -> Term:
    return compile_obj(lam(("a", "b"), _mk_and(OV("a"), OV("b"))))


@lru_cache(maxsize=None)
def _chain_append_term() -> Term:
    def body(self, l1, l2):
        return if_zero(l1, l2, _cons(_head(l1), ap(self, _tail(l1), l2)))
    return compile_obj(fix("cap", ("l1", "l2"), body))


@lru_cache(maxsize=None)
def _flatten_term() -> Term:
    """Conjunction tree -> in-order chain of conjunct codes."""
    def body(self, c):
        return if_eq(_tag(c), g.TAG_AND,
                     ap(OL(_chain_append_term()), ap(self, _kid1(c)), ap(self, _kid2(c))),
                     _cons(c, 0))
    return compile_obj(fix("fl", ("c",), body))


@lru_cache(maxsize=None)
def _as_sigma_term() -> Term:
    def expr(part):
        return if_eq(_tag(part), g.TAG_EX, part,
                     if_eq(_tag(part), g.TAG_BOT, OL(NumLit(_BOT_SIGMA_CODE)),
                           _mk_ex(_mk_var(ap(_SUCC, ap(OL(sumvar_term()), part))), part)))
    return compile_obj(lam("p", expr(OV("p"))))


@lru_cache(maxsize=None)
def _merge_sigma_term() -> Term:
    """Two Sigma-equation codes -> the pair-merged Sigma-equation code."""
    def body(a, b):
        sub = OL(sub_term())
        sv = OL(sumvar_term())
        return let("z", ap(_SUCC, _add(ap(sv, a), ap(sv, b))), let(
            "ea", ap(sub, _kid2(a), _kid1(a), _proj_term("p_l", OV("z"))), let(
                "eb", ap(sub, _kid2(b), _kid1(b), _proj_term("p_r", OV("z"))),
                _mk_ex(_mk_var(OV("z")), _mk_eq(
                    _mk_app(_mk_app(OL(NumLit(_CODE_CONST["p"])), _kid1(OV("ea"))), _kid1(OV("eb"))),
                    _mk_app(_mk_app(OL(NumLit(_CODE_CONST["p"])), _kid2(OV("ea"))), _kid2(OV("eb"))))))))
    return compile_obj(lam(("a", "b"), body(OV("a"), OV("b"))))


@lru_cache(maxsize=None)
def _conj_fold_term() -> Term:
    """acc, chain -> left-associated conjunction."""
    def body(self, acc, l):
        return if_zero(l, acc, ap(self, _mk_and(acc, _head(l)), _tail(l)))
    return compile_obj(fix("cf", ("acc", "l"), body))


@lru_cache(maxsize=None)
def nf0_term() -> Term:
    """Level-0 normal form on codes (mirror of the artifact _nf0)."""
    def part_body(self, l):
        # returns p(sigma-chain, atom-chain), order preserved
        def on_rest(r):
            h = _head(l)
            return if_eq(_tag(h), g.TAG_RELATOM,
                         ap(_P, ap(_PL, r), _cons(h, ap(_PR, r))),
                         ap(_P, _cons(ap(OL(_as_sigma_term()), h), ap(_PL, r)), ap(_PR, r)))
        return if_zero(l, ap(_P, 0, 0), let("r", ap(self, _tail(l)), on_rest(OV("r"))))
    partition = compile_obj(fix("pt", ("l",), part_body))

    def fold_body(self, acc, l):
        return if_zero(l, acc, ap(self, ap(OL(_merge_sigma_term()), acc, _head(l)), _tail(l)))
    foldmerge = compile_obj(fix("fm", ("acc", "l"), fold_body))

    def main(F):
        return let("pr", ap(OL(partition), ap(OL(_flatten_term()), F)), let(
            "sc", ap(_PL, OV("pr")), let(
                "ac", ap(_PR, OV("pr")),
                ap(OL(_conj_fold_term()),
                   if_zero(OV("sc"), OL(NumLit(_T0_CODE)),
                           ap(OL(foldmerge), _head(OV("sc")), _tail(OV("sc")))),
                   OV("ac")))))
    return compile_obj(lam("F", main(OV("F"))))


@lru_cache(maxsize=None)
def trivial_nf_term() -> Term:
    def body(self, n):
        return if_zero(n, OL(NumLit(_T0_CODE)),
                       _mk_all(OL(NumLit(int(g.encode_var(Var(0))))),
                               _mk_imp(ap(self, ap(_PRED, n)), OL(NumLit(_T0_CODE)))))
    return compile_obj(fix("tv", ("n",), body))


@lru_cache(maxsize=None)
def nf_and_term() -> Term:
    """Level-m conjunction of two level-m normal-form codes."""
    def body(m, A, B):
        sub = OL(sub_term())
        sv = OL(sumvar_term())
        fl = OL(_flatten_term())
        merged = let("u", ap(_SUCC, _add(ap(sv, A), ap(sv, B))), let(
            "ca", ap(sub, _kid2(A), _kid1(A), _mk_tvar_of_index(OV("u"))), let(
                "cb", ap(sub, _kid2(B), _kid1(B), _mk_tvar_of_index(OV("u"))), let(
                    "ch", ap(OL(_chain_append_term()), ap(fl, OV("ca")), ap(fl, OV("cb"))),
                    _mk_all(_mk_var(OV("u")),
                            ap(OL(_conj_fold_term()), _head(OV("ch")), _tail(OV("ch"))))))))
        return if_zero(m, ap(OL(nf0_term()), _mk_and(A, B)), merged)
    return compile_obj(lam(("m", "A", "B"), body(OV("m"), OV("A"), OV("B"))))


@lru_cache(maxsize=None)
def _is_atomic0_term() -> Term:
    def expr(c):
        return switch_tag(_tag(c), {
            g.TAG_BOT: OL(NumLit(1)), g.TAG_EQ: OL(NumLit(1)),
            g.TAG_RELATOM: OL(NumLit(1)),
            g.TAG_EX: if_eq(_tag(_kid2(c)), g.TAG_EQ, 1, 0),
        }, 0)
    return compile_obj(lam("c", expr(OV("c"))))


@lru_cache(maxsize=None)
def lam_n_term() -> Term:
    """The code-level normalizer: lam . n . F, mirror of normalize_internal."""
    sub = OL(sub_term())
    sv = OL(sumvar_term())
    nf0 = OL(nf0_term())
    nfand = OL(nf_and_term())
    triv = OL(trivial_nf_term())
    fl = OL(_flatten_term())
    cf = OL(_conj_fold_term())
    fvw = OL(fv_pair_terms()[1])  # walker on bare indices
    atomic = OL(_is_atomic0_term())
    lvl = OL(an_level_term())

    def body(self, n, F):
        atom_case = let(
            "u", ap(_SUCC, ap(sv, F)),
            _mk_all(_mk_var(OV("u")),
                    _mk_imp(ap(triv, ap(_PRED, n)), ap(nf0, F))))

        and_case = ap(nfand, n, ap(self, n, _kid1(F)), ap(self, n, _kid2(F)))

        def all_with_inner(inner):
            y = _kid1(inner)
            C = _kid2(inner)
            merged = let(
                "z", ap(_SUCC, _add(ap(sv, inner), _var_index(_kid1(F)))), let(
                    "b1", ap(sub, C, _kid1(F), _proj_term("p_l", OV("z"))), let(
                        "b2", ap(sub, OV("b1"), y, _proj_term("p_r", OV("z"))),
                        _mk_all(_mk_var(OV("z")), OV("b2")))))
            return if_zero(ap(fvw, C, _var_index(y)),
                           _mk_all(_kid1(F), C), merged)
        all_case = let("inner", ap(self, n, _kid2(F)), all_with_inner(OV("inner")))

        def imp_with_ante(ante):
            shortcut = let(
                "u", ap(_SUCC, ap(sv, F)),
                _mk_all(_mk_var(OV("u")), _mk_imp(ante, ap(nf0, _kid2(F)))))

            def mapped_imps(body_chain):
                def mp_body(mself, l):
                    q = _head(l)
                    new = _mk_imp(ap(nfand, ap(_PRED, n), ante, _kid1(q)), _kid2(q))
                    return if_zero(l, 0, _cons(new, ap(mself, _tail(l))))
                return ap(fix("mpc", ("l",), mp_body), body_chain)

            general = let(
                "cons", ap(self, n, _kid2(F)), let(
                    "w", ap(_SUCC, _add(ap(sv, ante), ap(sv, OV("cons")))), let(
                        "bd", ap(sub, _kid2(OV("cons")), _kid1(OV("cons")),
                                 _mk_tvar_of_index(OV("w"))), let(
                            "ch", mapped_imps(ap(fl, OV("bd"))),
                            _mk_all(_mk_var(OV("w")),
                                    ap(cf, _head(OV("ch")), _tail(OV("ch"))))))))
            return if_eq(ap(lvl, _kid2(F)), 1, shortcut, general)
        imp_case = let("ante", ap(self, ap(_PRED, n), _kid1(F)),
                       imp_with_ante(OV("ante")))

        dispatch = switch_tag(_tag(F), {
            g.TAG_AND: and_case, g.TAG_ALL: all_case, g.TAG_IMP: imp_case,
        }, F)
        positive = if_zero(ap(atomic, F), dispatch, atom_case)
        return if_zero(n, ap(nf0, F), positive)
    return compile_obj(fix("nrm", ("n", "F"), body))


def lam_at(n: int) -> Term:
    """The level-n normalizer as a unary closed term."""
    return app(lam_n_term(), NumLit(n))


# ---------------------------------------------------------------------------
# the valuation program

@lru_cache(maxsize=None)
def _omega_term() -> Term:
    sii = compile_obj(lam("x", ap(OV("x"), OV("x"))))
    return app(sii, sii)


@lru_cache(maxsize=None)
def val_term() -> Term:
    """val . e . t : the value of the coded term under the environment e
    (an object mapping variable codes to values)."""
    addr = lam(("a", "b"), ap(OL(Const("r")), OV("a"),
                              ap(OL(Const("k")), _SUCC), OV("b")))
    mulr = lam(("a", "b"), ap(OL(Const("r")), 0,
                              lam(("_z", "w"), ap(addr, OV("a"), OV("w"))), OV("b")))

    def body(self, e, t):
        const_case = switch_tag(_kid1(t), {
            cid: (OL(Const(name)) if name != "0" else OL(NumLit(0)))
            for cid, name in enumerate(("0", "k", "s", "p_l", "p_r", "p", "succ", "r"))
        }, ap(OL(_omega_term()), 0))
        return switch_tag(_tag(t), {
            g.TAG_CONST: const_case,
            g.TAG_VAR: ap(e, t),
            g.TAG_TVAR: ap(e, _kid1(t)),
            g.TAG_NUM: _kid1(t),
            g.TAG_S: ap(_SUCC, ap(self, e, _kid1(t))),
            g.TAG_PLUS: ap(addr, ap(self, e, _kid1(t)), ap(self, e, _kid2(t))),
            g.TAG_TIMES: ap(mulr, ap(self, e, _kid1(t)), ap(self, e, _kid2(t))),
            g.TAG_APP: ap(ap(self, e, _kid1(t)), ap(self, e, _kid2(t))),
        }, ap(OL(_omega_term()), 0))
    return compile_obj(fix("val", ("e", "t"), body))


@lru_cache(maxsize=None)
def diagsub_term(k: int) -> Term:
    """c -> the code of (the coded formula with the numeral literal of c
    substituted for v_k)."""
    vk = int(g.encode_var(Var(k)))
    return compile_obj(lam("c", ap(OL(sub_term()), OV("c"), OL(NumLit(vk)),
                                   ap(OL(num_term()), OV("c")))))
