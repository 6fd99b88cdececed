"""The almost-negative hierarchy: levels, normal forms, and the normalizer.

Level n admits Sigma-equations and atoms, conjunction at every level,
universal quantification and implications with level-(n-1) antecedents
from level 1 up.  Normal forms are Sigma-equation-led conjunctions at
level 0 and universally quantified conjunctions of implications above.

The normalizer is written to be mirrored verbatim by an object-level
program operating on codes, so it avoids anything non-structural:

  * fresh variables come from `sum of all variable-index occurrences + 1`,
    which is deterministic, order-free and always beyond every index;
  * every substitution it performs is capture-free by that choice, so a
    plain free-occurrence replacement suffices;
  * quantifier merging goes through the surjective pairing (x, y both
    become projections of one fresh variable);
  * missing Sigma-equations and antecedents are padded with closed,
    provably true fillers built from `Ex v0 (v0 = 0)`.

`normalize` wraps the structural pass with alpha canonicalization on both
ends; `normalize_internal` is the raw pass the object mirror replicates.
"""

from __future__ import annotations

from .syntax import (
    All, And, BinOp, Bot, BOT, Eq, Ex, Formula, Imp, Or, RelAtom, SApp, Term,
    TVar, Var, alpha_normalize, app, conj, conjuncts, is_sigma_equation,
    numeral, subst_in_term, P, P_L, P_R, ZERO,
)


def classify(phi: Formula) -> int | None:
    """Minimal n with phi in level n; None iff phi is not almost negative."""
    if isinstance(phi, (Bot, Eq, RelAtom)):
        return 0
    if isinstance(phi, Ex):
        return 0 if isinstance(phi.body, Eq) else None
    if isinstance(phi, Or):
        return None
    if isinstance(phi, And):
        a, b = classify(phi.left), classify(phi.right)
        return None if a is None or b is None else max(a, b)
    if isinstance(phi, All):
        b = classify(phi.body)
        return None if b is None else max(1, b)
    if isinstance(phi, Imp):
        a, b = classify(phi.left), classify(phi.right)
        return None if a is None or b is None else max(a + 1, b)
    raise TypeError(phi)


def is_nf(phi: Formula, n: int) -> bool:
    """Exact membership in the level-n normal form grammar."""
    if n == 0:
        parts = conjuncts(phi)
        if not is_sigma_equation(parts[0]):
            return False
        return all(isinstance(q, RelAtom) for q in parts[1:])
    if not isinstance(phi, All):
        return False
    imps = conjuncts(phi.body)
    return all(
        isinstance(q, Imp) and is_nf(q.left, n - 1) and is_nf(q.right, 0)
        for q in imps
    )


# ---------------------------------------------------------------------------
# structural helpers shared with the object-level mirror

def sumvar(x: Formula | Term) -> int:
    """Sum of all variable-index occurrences, binders included."""
    if isinstance(x, Term):
        if isinstance(x, TVar):
            return x.var.index
        if isinstance(x, SApp):
            return sumvar(x.arg)
        if isinstance(x, BinOp):
            return sumvar(x.left) + sumvar(x.right)
        return 0  # Const, NumLit
    if isinstance(x, Bot):
        return 0
    if isinstance(x, Eq):
        return sumvar(x.left) + sumvar(x.right)
    if isinstance(x, RelAtom):
        return sum(sumvar(a) for a in x.args)
    if isinstance(x, (And, Or, Imp)):
        return sumvar(x.left) + sumvar(x.right)
    if isinstance(x, (All, Ex)):
        return x.var.index + sumvar(x.body)
    raise TypeError(x)


def plain_subst(phi: Formula, v: Var, t: Term) -> Formula:
    """Free-occurrence replacement with no renaming; the callers guarantee
    the inserted term's variables cannot be captured."""
    if isinstance(phi, Bot):
        return phi
    if isinstance(phi, Eq):
        m = {v: t}
        return Eq(subst_in_term(phi.left, m), subst_in_term(phi.right, m))
    if isinstance(phi, RelAtom):
        m = {v: t}
        return RelAtom(phi.rel, tuple(subst_in_term(a, m) for a in phi.args))
    if isinstance(phi, (And, Or, Imp)):
        return type(phi)(plain_subst(phi.left, v, t), plain_subst(phi.right, v, t))
    if isinstance(phi, (All, Ex)):
        if phi.var == v:
            return phi
        return type(phi)(phi.var, plain_subst(phi.body, v, t))
    raise TypeError(phi)


TRIVIAL_SIGMA = Ex(Var(0), Eq(TVar(Var(0)), ZERO))
BOT_SIGMA = Ex(Var(0), Eq(ZERO, SApp(ZERO)))  # the 0 = S(0) device


def trivial_nf(n: int) -> Formula:
    """A closed, provably true level-n normal form used for padding."""
    out: Formula = TRIVIAL_SIGMA
    for _ in range(n):
        out = All(Var(0), Imp(out, TRIVIAL_SIGMA))
    return out


def _as_sigma(part: Formula) -> Ex:
    """View a level-0 non-relational conjunct as a Sigma-equation."""
    if isinstance(part, Ex):
        return part
    if isinstance(part, Bot):
        return BOT_SIGMA
    if isinstance(part, Eq):
        return Ex(Var(sumvar(part) + 1), part)
    raise TypeError(part)


def _merge_sigma(a: Ex, b: Ex) -> Ex:
    """One Sigma-equation equivalent to the conjunction of two, through
    the surjective pairing."""
    z = Var(sumvar(a) + sumvar(b) + 1)
    ea: Eq = a.body
    eb: Eq = b.body
    ma = {a.var: app(P_L, TVar(z))}
    mb = {b.var: app(P_R, TVar(z))}
    la, ra = subst_in_term(ea.left, ma), subst_in_term(ea.right, ma)
    lb, rb = subst_in_term(eb.left, mb), subst_in_term(eb.right, mb)
    return Ex(z, Eq(app(P, la, lb), app(P, ra, rb)))


def _nf0(phi: Formula) -> Formula:
    """Level-0 normal form: one Sigma-equation, then the relation atoms."""
    sigmas: list[Ex] = []
    atoms: list[Formula] = []
    for part in conjuncts(phi):
        if isinstance(part, RelAtom):
            atoms.append(part)
        else:
            sigmas.append(_as_sigma(part))
    if not sigmas:
        merged: Formula = TRIVIAL_SIGMA
    else:
        acc = sigmas[0]
        for nxt in sigmas[1:]:
            acc = _merge_sigma(acc, nxt)
        merged = acc
    return conj([merged] + atoms)


def _nf_and(a: Formula, b: Formula, m: int) -> Formula:
    """Conjunction of two level-m normal forms, again in normal form."""
    if m == 0:
        return _nf0(And(a, b))
    assert isinstance(a, All) and isinstance(b, All)
    u = Var(sumvar(a) + sumvar(b) + 1)
    ca = plain_subst(a.body, a.var, TVar(u))
    cb = plain_subst(b.body, b.var, TVar(u))
    return All(u, conj(conjuncts(ca) + conjuncts(cb)))


def normalize_internal(phi: Formula, n: int) -> Formula:
    """The structural normalization pass (no alpha steps)."""
    if n == 0:
        return _nf0(phi)
    if isinstance(phi, (Bot, Eq, RelAtom)) or is_sigma_equation(phi):
        u = Var(sumvar(phi) + 1)
        return All(u, Imp(trivial_nf(n - 1), _nf0(phi)))
    if isinstance(phi, And):
        return _nf_and(
            normalize_internal(phi.left, n), normalize_internal(phi.right, n), n
        )
    if isinstance(phi, All):
        inner = normalize_internal(phi.body, n)
        assert isinstance(inner, All)
        if inner.var.index not in {v.index for v in _frees(inner.body)}:
            return All(phi.var, inner.body)
        z = Var(sumvar(inner) + phi.var.index + 1)
        body = plain_subst(inner.body, phi.var, app(P_L, TVar(z)))
        body = plain_subst(body, inner.var, app(P_R, TVar(z)))
        return All(z, body)
    if isinstance(phi, Imp):
        ante = normalize_internal(phi.left, n - 1)
        if classify(phi.right) == 0:
            u = Var(sumvar(phi) + 1)
            return All(u, Imp(ante, _nf0(phi.right)))
        cons = normalize_internal(phi.right, n)
        assert isinstance(cons, All)
        w = Var(sumvar(ante) + sumvar(cons) + 1)
        body = plain_subst(cons.body, cons.var, TVar(w))
        out = []
        for q in conjuncts(body):
            assert isinstance(q, Imp)
            out.append(Imp(_nf_and(ante, q.left, n - 1), q.right))
        return All(w, conj(out))
    raise ValueError("formula outside the almost negative hierarchy")


from .syntax import free_vars as _frees  # noqa: E402


def normalize(phi: Formula, n: int) -> Formula:
    """Equivalent level-n normal form; rejects formulas outside level n."""
    lvl = classify(phi)
    if lvl is None or lvl > n:
        raise ValueError(f"formula is not in level {n} of the hierarchy")
    return alpha_normalize(normalize_internal(alpha_normalize(phi), n))


# ---------------------------------------------------------------------------
# compression of existential blocks over equation conjunctions
# (used to bring the raw satisfaction predicate into Sigma-equation shape;
#  sound over the surjective pairing axioms)

def compress_sigma_block(phi: Formula) -> Ex:
    """Ex x1..xk (e1 & ... & em) with every e an equation or a
    Sigma-equation, folded into a single Sigma-equation."""
    prefix: list[Var] = []
    body = phi
    while isinstance(body, Ex) and not isinstance(body.body, Eq):
        prefix.append(body.var)
        body = body.body
    if isinstance(body, Ex):  # the whole thing is already a Sigma-equation
        prefix.append(body.var)
        body = body.body
    parts = conjuncts(body) if not isinstance(body, Eq) else [body]
    sigmas = [_as_sigma(p) for p in parts]
    acc = sigmas[0]
    for nxt in sigmas[1:]:
        acc = _merge_sigma(acc, nxt)
    # now fold the named prefix variables into the single witness
    for x in reversed(prefix):
        z = Var(sumvar(acc) + x.index + 1)
        eq: Eq = acc.body
        m = {acc.var: app(P_R, TVar(z)), x: app(P_L, TVar(z))}
        acc = Ex(z, Eq(subst_in_term(eq.left, m), subst_in_term(eq.right, m)))
    return acc
