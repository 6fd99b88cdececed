"""Terms, formulas, binding analysis and substitution.

Variables are bare indices (v0, v1, ...); there are no names anywhere.
Formulas are plain frozen trees; alpha canonicalization is an explicit
operation (`alpha_normalize`), not an implicit identification.

The term language covers L_HA (0, S, +, x), the combinator constants of
L_HAP with binary application, primitive-recursive function symbols for
the L_PRA fragment, and literal numerals `NumLit` (a compact stand-in for
an S-chain; without it, numerals of Goedel codes are unwritable).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Var:
    index: int

    def __repr__(self) -> str:
        return f"v{self.index}"


# ---------------------------------------------------------------------------
# terms

CONSTANTS = ("0", "k", "s", "p_l", "p_r", "p", "succ", "r")
TERM_OPS = ("+", "*", "@")  # @ is combinator application


class Term:
    __slots__ = ()


@dataclass(frozen=True)
class TVar(Term):
    var: Var


@dataclass(frozen=True)
class Const(Term):
    name: str  # one of CONSTANTS


@dataclass(frozen=True)
class NumLit(Term):
    value: int


@dataclass(frozen=True)
class SApp(Term):
    arg: Term


@dataclass(frozen=True)
class BinOp(Term):
    op: str  # one of TERM_OPS
    left: Term
    right: Term


@dataclass(frozen=True)
class PRApp(Term):
    name: str
    args: tuple[Term, ...]


def app(f: Term, *args: Term) -> Term:
    """Left-nested combinator application f @ a0 @ a1 ..."""
    t = f
    for a in args:
        t = BinOp("@", t, a)
    return t


ZERO = Const("0")
K = Const("k")
S_COMB = Const("s")
P_L = Const("p_l")
P_R = Const("p_r")
P = Const("p")
SUCC = Const("succ")
R = Const("r")


def numeral(n: int) -> Term:
    """The standard numeral: 0, S(0), S(S(0)), ..."""
    if n < 0:
        raise ValueError("numerals are naturals")
    t: Term = ZERO
    for _ in range(n):
        t = SApp(t)
    return t


# ---------------------------------------------------------------------------
# relation symbols and formulas

@dataclass(frozen=True)
class RelSymbol:
    kind: str  # 'P', 'fix' or 'def'
    arity: int
    opcode: int = 0  # for 'fix': the code of the generating operator form
    tag: str = ""    # for 'def': the extension-relation name

    def __repr__(self) -> str:
        if self.kind == "P":
            return f"P{self.arity}"
        if self.kind == "fix":
            return f"I[{self.opcode}]/{self.arity}"
        return f"rel:{self.tag}/{self.arity}"


def prel(n: int) -> RelSymbol:
    return RelSymbol("P", n)


class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class Bot(Formula):
    pass


@dataclass(frozen=True)
class Eq(Formula):
    left: Term
    right: Term


@dataclass(frozen=True)
class RelAtom(Formula):
    rel: RelSymbol
    args: tuple[Term, ...]

    def __post_init__(self):
        if len(self.args) != self.rel.arity:
            raise ValueError(f"{self.rel} applied to {len(self.args)} arguments")


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Imp(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class All(Formula):
    var: Var
    body: Formula


@dataclass(frozen=True)
class Ex(Formula):
    var: Var
    body: Formula


BOT = Bot()


def conj(parts: list[Formula]) -> Formula:
    """Left-associated conjunction of a nonempty list."""
    if not parts:
        raise ValueError("empty conjunction")
    out = parts[0]
    for q in parts[1:]:
        out = And(out, q)
    return out


def conjuncts(phi: Formula) -> list[Formula]:
    """Leaves of the conjunction tree, in order."""
    if isinstance(phi, And):
        return conjuncts(phi.left) + conjuncts(phi.right)
    return [phi]


def denotes(t: Term) -> Formula:
    """tau-down, i.e. tau = tau."""
    return Eq(t, t)


def iff(a: Formula, b: Formula) -> Formula:
    """Surface biconditional: conjunction of the two implications."""
    return And(Imp(a, b), Imp(b, a))


def less_than(a: Term, b: Term, fresh: int | None = None) -> Formula:
    """a < b unfolded as Ex z (a + S(z) = b); the AST has no < node."""
    if fresh is None:
        used = {v.index for v in term_vars(a) | term_vars(b)}
        fresh = 0
        while fresh in used:
            fresh += 1
    z = Var(fresh)
    return Ex(z, Eq(BinOp("+", a, SApp(TVar(z))), b))


# ---------------------------------------------------------------------------
# variable analysis

def term_vars(t: Term) -> set[Var]:
    if isinstance(t, TVar):
        return {t.var}
    if isinstance(t, (Const, NumLit)):
        return set()
    if isinstance(t, SApp):
        return term_vars(t.arg)
    if isinstance(t, BinOp):
        return term_vars(t.left) | term_vars(t.right)
    if isinstance(t, PRApp):
        out: set[Var] = set()
        for a in t.args:
            out |= term_vars(a)
        return out
    raise TypeError(t)


def free_vars(x: Formula | Term) -> set[Var]:
    """Exact free-variable set; bound occurrences excluded."""
    if isinstance(x, Term):
        return term_vars(x)
    if isinstance(x, Bot):
        return set()
    if isinstance(x, Eq):
        return term_vars(x.left) | term_vars(x.right)
    if isinstance(x, RelAtom):
        out: set[Var] = set()
        for a in x.args:
            out |= term_vars(a)
        return out
    if isinstance(x, (And, Or, Imp)):
        return free_vars(x.left) | free_vars(x.right)
    if isinstance(x, (All, Ex)):
        return free_vars(x.body) - {x.var}
    raise TypeError(x)


def all_var_indices(x: Formula | Term) -> set[int]:
    """Indices of every variable occurrence, free or bound (binders too)."""
    if isinstance(x, Term):
        return {v.index for v in term_vars(x)}
    if isinstance(x, Bot):
        return set()
    if isinstance(x, Eq):
        return {v.index for v in term_vars(x.left) | term_vars(x.right)}
    if isinstance(x, RelAtom):
        out: set[int] = set()
        for a in x.args:
            out |= {v.index for v in term_vars(a)}
        return out
    if isinstance(x, (And, Or, Imp)):
        return all_var_indices(x.left) | all_var_indices(x.right)
    if isinstance(x, (All, Ex)):
        return all_var_indices(x.body) | {x.var.index}
    raise TypeError(x)


def fresh_index(avoid: set[int]) -> int:
    i = 0
    while i in avoid:
        i += 1
    return i


# ---------------------------------------------------------------------------
# substitution

def subst_in_term(t: Term, mapping: dict[Var, Term]) -> Term:
    if isinstance(t, TVar):
        return mapping.get(t.var, t)
    if isinstance(t, (Const, NumLit)):
        return t
    if isinstance(t, SApp):
        return SApp(subst_in_term(t.arg, mapping))
    if isinstance(t, BinOp):
        return BinOp(t.op, subst_in_term(t.left, mapping), subst_in_term(t.right, mapping))
    if isinstance(t, PRApp):
        return PRApp(t.name, tuple(subst_in_term(a, mapping) for a in t.args))
    raise TypeError(t)


def _subst(phi: Formula, mapping: dict[Var, Term]) -> Formula:
    if not mapping:
        return phi
    if isinstance(phi, Bot):
        return phi
    if isinstance(phi, Eq):
        return Eq(subst_in_term(phi.left, mapping), subst_in_term(phi.right, mapping))
    if isinstance(phi, RelAtom):
        return RelAtom(phi.rel, tuple(subst_in_term(a, mapping) for a in phi.args))
    if isinstance(phi, (And, Or, Imp)):
        cls = type(phi)
        return cls(_subst(phi.left, mapping), _subst(phi.right, mapping))
    if isinstance(phi, (All, Ex)):
        cls = type(phi)
        live = {u: t for u, t in mapping.items() if u != phi.var and u in free_vars(phi.body)}
        if not live:
            return phi
        clash = any(phi.var in term_vars(t) for t in live.values())
        var, body = phi.var, phi.body
        if clash:
            avoid = {v.index for v in free_vars(body)}
            for t in live.values():
                avoid |= {v.index for v in term_vars(t)}
            avoid |= {u.index for u in live}
            nv = Var(fresh_index(avoid))
            body = _subst(body, {var: TVar(nv)})
            var = nv
        return cls(var, _subst(body, live))
    raise TypeError(phi)


def subst_term(phi: Formula, us: list[Var], taus: list[Term]) -> Formula:
    """Simultaneous capture-avoiding substitution into free occurrences."""
    if len(us) != len(taus):
        raise ValueError("length mismatch between variables and terms")
    if len(set(us)) != len(us):
        raise ValueError("repeated variable in substitution")
    return _subst(phi, dict(zip(us, taus)))


def subst_relation(phi: Formula, rel: RelSymbol, binder: tuple[list[Var], Formula]) -> Formula:
    """Replace every atom rel(taus) by theta with taus plugged into xs.

    Bound variables of phi are renamed away from the spare free variables
    of theta, and theta's own binders are handled by subst_term.
    """
    xs, theta = binder
    if len(xs) != rel.arity:
        raise ValueError(f"binder arity {len(xs)} != relation arity {rel.arity}")
    spare = {v.index for v in free_vars(theta)} - {x.index for x in xs}

    def walk(f: Formula) -> Formula:
        if isinstance(f, Bot) or isinstance(f, Eq):
            return f
        if isinstance(f, RelAtom):
            if f.rel == rel:
                return subst_term(theta, xs, list(f.args))
            return f
        if isinstance(f, (And, Or, Imp)):
            return type(f)(walk(f.left), walk(f.right))
        if isinstance(f, (All, Ex)):
            var, body = f.var, f.body
            if var.index in spare and _mentions(body, rel):
                avoid = {v.index for v in free_vars(body)} | spare
                avoid |= all_var_indices(body)
                nv = Var(fresh_index(avoid))
                body = _subst(body, {var: TVar(nv)})
                var = nv
            return type(f)(var, walk(body))
        raise TypeError(f)

    return walk(phi)


def _mentions(phi: Formula, rel: RelSymbol) -> bool:
    if isinstance(phi, RelAtom):
        return phi.rel == rel
    if isinstance(phi, (And, Or, Imp)):
        return _mentions(phi.left, rel) or _mentions(phi.right, rel)
    if isinstance(phi, (All, Ex)):
        return _mentions(phi.body, rel)
    return False


def count_rel(phi: Formula, rel: RelSymbol) -> int:
    if isinstance(phi, RelAtom):
        return 1 if phi.rel == rel else 0
    if isinstance(phi, (And, Or, Imp)):
        return count_rel(phi.left, rel) + count_rel(phi.right, rel)
    if isinstance(phi, (All, Ex)):
        return count_rel(phi.body, rel)
    return 0


# ---------------------------------------------------------------------------
# alpha canonicalization

def alpha_normalize(phi: Formula) -> Formula:
    """Canonical representative of the alpha class.

    Depth-first, left-to-right: each binder is renamed to the smallest
    index that avoids the formula's free variables and every enclosing
    binder, so no two nested quantifiers bind the same variable.
    """
    frees = {v.index for v in free_vars(phi)}

    def walk(f: Formula, ren: dict[int, int], path: frozenset[int]) -> Formula:
        if isinstance(f, Bot):
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


def _rename_term(t: Term, ren: dict[int, int]) -> Term:
    if isinstance(t, TVar):
        j = ren.get(t.var.index)
        return t if j is None else TVar(Var(j))
    if isinstance(t, (Const, NumLit)):
        return t
    if isinstance(t, SApp):
        return SApp(_rename_term(t.arg, ren))
    if isinstance(t, BinOp):
        return BinOp(t.op, _rename_term(t.left, ren), _rename_term(t.right, ren))
    if isinstance(t, PRApp):
        return PRApp(t.name, tuple(_rename_term(a, ren) for a in t.args))
    raise TypeError(t)


def alpha_eq(a: Formula, b: Formula) -> bool:
    return alpha_normalize(a) == alpha_normalize(b)


# ---------------------------------------------------------------------------
# positivity, operator forms, almost negative formulas

def strictly_positive_occurrences(phi: Formula, rel: RelSymbol) -> tuple[int, int]:
    """(total occurrences, occurrences not inside any implication antecedent)."""

    def walk(f: Formula, positive: bool) -> tuple[int, int]:
        if isinstance(f, RelAtom) and f.rel == rel:
            return 1, 1 if positive else 0
        if isinstance(f, (And, Or)):
            lt, lp = walk(f.left, positive)
            rt, rp = walk(f.right, positive)
            return lt + rt, lp + rp
        if isinstance(f, Imp):
            lt, _ = walk(f.left, False)
            ll, _ = walk(f.left, positive)
            assert lt == ll
            rt, rp = walk(f.right, positive)
            return lt + rt, rp
        if isinstance(f, (All, Ex)):
            return walk(f.body, positive)
        return 0, 0

    return walk(phi, True)


def is_operator_form(phi: Formula, n: int) -> bool:
    """Membership in POS_{P_n}: free variables exactly v0..v_{n-1}, P_n
    occurs at least once and only strictly positively, no other P_m."""
    if free_vars(phi) != {Var(i) for i in range(n)}:
        return False
    pn = prel(n)
    for rel in _rels_of(phi):
        if rel.kind == "P" and rel != pn:
            return False
        if rel.kind == "fix":
            return False
    total, pos = strictly_positive_occurrences(phi, pn)
    return total >= 1 and total == pos


def _rels_of(phi: Formula) -> set[RelSymbol]:
    if isinstance(phi, RelAtom):
        return {phi.rel}
    if isinstance(phi, (And, Or, Imp)):
        return _rels_of(phi.left) | _rels_of(phi.right)
    if isinstance(phi, (All, Ex)):
        return _rels_of(phi.body)
    return set()


def rels_of(phi: Formula) -> set[RelSymbol]:
    return _rels_of(phi)


def is_almost_negative(phi: Formula) -> bool:
    """No disjunction, and every existential fronts a term equation."""
    if isinstance(phi, (Bot, Eq, RelAtom)):
        return True
    if isinstance(phi, Or):
        return False
    if isinstance(phi, (And, Imp)):
        return is_almost_negative(phi.left) and is_almost_negative(phi.right)
    if isinstance(phi, All):
        return is_almost_negative(phi.body)
    if isinstance(phi, Ex):
        return isinstance(phi.body, Eq)
    raise TypeError(phi)


def is_negative(phi: Formula) -> bool:
    """Almost negative with no existential quantifier at all."""
    if isinstance(phi, (Bot, Eq, RelAtom)):
        return True
    if isinstance(phi, (Or, Ex)):
        return False
    if isinstance(phi, (And, Imp)):
        return is_negative(phi.left) and is_negative(phi.right)
    if isinstance(phi, All):
        return is_negative(phi.body)
    raise TypeError(phi)


def is_sigma_equation(phi: Formula) -> bool:
    return isinstance(phi, Ex) and isinstance(phi.body, Eq)


@dataclass(frozen=True)
class OperatorForm:
    """A formula of POS_{P_n}, packaged with its parameter arity."""
    body: Formula
    arity: int

    def __post_init__(self):
        if not is_operator_form(self.body, self.arity):
            raise ValueError("not a strictly positive operator form of this arity")

    @property
    def parameter(self) -> RelSymbol:
        return prel(self.arity)


# ---------------------------------------------------------------------------
# languages

class LanguageTag(enum.Enum):
    HA = "HA"
    PRA = "PRA"
    HAP = "HAP"
    HAP_P = "HAP_P"
    HAP_ID = "HAP_ID"


_ARITH_ONLY = {"0"}


def _term_in(t: Term, tag: LanguageTag) -> bool:
    if isinstance(t, TVar):
        return True
    if isinstance(t, NumLit):
        return True
    if isinstance(t, Const):
        if t.name == "0":
            return True
        return tag not in (LanguageTag.HA, LanguageTag.PRA)
    if isinstance(t, SApp):
        return _term_in(t.arg, tag)
    if isinstance(t, BinOp):
        if t.op == "@" and tag in (LanguageTag.HA, LanguageTag.PRA):
            return False
        return _term_in(t.left, tag) and _term_in(t.right, tag)
    if isinstance(t, PRApp):
        if tag != LanguageTag.PRA:
            return False
        return all(_term_in(a, tag) for a in t.args)
    raise TypeError(t)


def in_language(x: Formula | Term, tag: LanguageTag) -> bool:
    """Decidable membership; L_HA is a sublanguage of L_HAP syntactically."""
    if isinstance(x, Term):
        return _term_in(x, tag)
    if isinstance(x, Bot):
        return True
    if isinstance(x, Eq):
        return _term_in(x.left, tag) and _term_in(x.right, tag)
    if isinstance(x, RelAtom):
        if x.rel.kind == "P" and tag not in (LanguageTag.HAP_P, LanguageTag.HAP_ID):
            return False
        if x.rel.kind == "fix" and tag != LanguageTag.HAP_ID:
            return False
        return all(_term_in(a, tag) for a in x.args)
    if isinstance(x, (And, Or, Imp)):
        return in_language(x.left, tag) and in_language(x.right, tag)
    if isinstance(x, (All, Ex)):
        return in_language(x.body, tag)
    raise TypeError(x)
