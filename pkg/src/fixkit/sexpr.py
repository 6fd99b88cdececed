"""Parenthesized prefix text format for terms and formulas.

One object per line.  Grammar (see README for the full table):

    term    := v<k> | 0 | k | s | p_l | p_r | p | succ | r | <decimal>
             | (num <decimal>) | (S t) | (+ t t) | (* t t)
             | (app t t ...) | (pr <name> t ...)
    formula := bot | (= t t) | (t = t) | (P<n> t ...) | (ifix <code> t ...)
             | (rel <name> t ...) | (and f f) | (or f f) | (-> f f)
             | (iff f f) | (not f) | (Av<k> f) | (Ev<k> f)
             | (A v<k> f) | (E v<k> f) | (def t) | (weq t t) | (< t t)

`iff`, `not`, `def` (tau-down), `weq` (weak equality) and `<` are surface
sugar expanded at parse time; the printer emits only core syntax.  The
printer and parser round-trip exactly on alpha-normal forms.
"""

from __future__ import annotations

import re

from .syntax import (
    All, And, BinOp, Bot, BOT, Const, CONSTANTS, Eq, Ex, Formula, Imp, NumLit,
    Or, PRApp, RelAtom, RelSymbol, SApp, Term, TVar, Var, app, denotes, iff,
    less_than, numeral, prel,
)

_PARSE_NUMERAL_CAP = 4096


class SexprError(ValueError):
    pass


_TOKEN = re.compile(r"\(|\)|=|[^\s()=]+")


def tokenize(text: str) -> list[str]:
    return _TOKEN.findall(text)


def _read(tokens: list[str], pos: int):
    if pos >= len(tokens):
        raise SexprError("unexpected end of input")
    tok = tokens[pos]
    if tok == "(":
        items = []
        pos += 1
        while pos < len(tokens) and tokens[pos] != ")":
            node, pos = _read(tokens, pos)
            items.append(node)
        if pos >= len(tokens):
            raise SexprError("missing )")
        return items, pos + 1
    if tok == ")":
        raise SexprError("unexpected )")
    return tok, pos + 1


def read_sexpr(text: str):
    tokens = tokenize(text)
    node, pos = _read(tokens, 0)
    if pos != len(tokens):
        raise SexprError(f"trailing input: {' '.join(tokens[pos:])}")
    return node


_VAR = re.compile(r"^v(\d+)$")
_PREL = re.compile(r"^P(\d+)$")
_QUANT = re.compile(r"^([AE])v(\d+)$")


def _var(tok) -> Var:
    if isinstance(tok, str):
        m = _VAR.match(tok)
        if m:
            return Var(int(m.group(1)))
    raise SexprError(f"expected a variable, got {tok!r}")


def term_of(node) -> Term:
    if isinstance(node, str):
        m = _VAR.match(node)
        if m:
            return TVar(Var(int(m.group(1))))
        if node in CONSTANTS:
            return Const(node)
        if node.isdigit():
            n = int(node)
            if n > _PARSE_NUMERAL_CAP:
                raise SexprError(f"numeral {n} too large; write (num {n})")
            return numeral(n)
        raise SexprError(f"unknown term atom {node!r}")
    if not node:
        raise SexprError("empty term")
    head = node[0]
    if head == "num":
        if len(node) != 2 or not (isinstance(node[1], str) and node[1].isdigit()):
            raise SexprError("(num <decimal>)")
        return NumLit(int(node[1]))
    if head == "S":
        if len(node) != 2:
            raise SexprError("(S t)")
        return SApp(term_of(node[1]))
    if head in ("+", "*"):
        if len(node) != 3:
            raise SexprError(f"({head} t t)")
        return BinOp(head, term_of(node[1]), term_of(node[2]))
    if head == "app":
        if len(node) < 3:
            raise SexprError("(app f a ...)")
        return app(term_of(node[1]), *[term_of(x) for x in node[2:]])
    if head == "pr":
        if len(node) < 2 or not isinstance(node[1], str):
            raise SexprError("(pr <name> t ...)")
        return PRApp(node[1], tuple(term_of(x) for x in node[2:]))
    raise SexprError(f"unknown term form {head!r}")


def formula_of(node) -> Formula:
    if isinstance(node, str):
        if node == "bot":
            return BOT
        raise SexprError(f"unknown formula atom {node!r}")
    if not node:
        raise SexprError("empty formula")
    head = node[0]
    if isinstance(head, str):
        if head == "=":
            if len(node) != 3:
                raise SexprError("(= t t)")
            return Eq(term_of(node[1]), term_of(node[2]))
        m = _PREL.match(head)
        if m:
            return RelAtom(prel(len(node) - 1), tuple(term_of(x) for x in node[1:]))
        if head == "ifix":
            if len(node) < 2 or not (isinstance(node[1], str) and node[1].isdigit()):
                raise SexprError("(ifix <code> t ...)")
            rel = RelSymbol("fix", len(node) - 2, opcode=int(node[1]))
            return RelAtom(rel, tuple(term_of(x) for x in node[2:]))
        if head == "rel":
            if len(node) < 2 or not isinstance(node[1], str):
                raise SexprError("(rel <name> t ...)")
            rel = RelSymbol("def", len(node) - 2, tag=node[1])
            return RelAtom(rel, tuple(term_of(x) for x in node[2:]))
        if head in ("and", "or", "->", "iff"):
            if len(node) != 3:
                raise SexprError(f"({head} f f)")
            a, b = formula_of(node[1]), formula_of(node[2])
            if head == "and":
                return And(a, b)
            if head == "or":
                return Or(a, b)
            if head == "->":
                return Imp(a, b)
            return iff(a, b)
        if head == "not":
            if len(node) != 2:
                raise SexprError("(not f)")
            return Imp(formula_of(node[1]), BOT)
        m = _QUANT.match(head)
        if m:
            if len(node) != 2:
                raise SexprError(f"({head} f)")
            cls = All if m.group(1) == "A" else Ex
            return cls(Var(int(m.group(2))), formula_of(node[1]))
        if head in ("A", "E"):
            if len(node) != 3:
                raise SexprError(f"({head} v<k> f)")
            cls = All if head == "A" else Ex
            return cls(_var(node[1]), formula_of(node[2]))
        if head == "def":
            if len(node) != 2:
                raise SexprError("(def t)")
            return denotes(term_of(node[1]))
        if head == "weq":
            if len(node) != 3:
                raise SexprError("(weq t t)")
            a, b = term_of(node[1]), term_of(node[2])
            return Imp(Or(denotes(a), denotes(b)), Eq(a, b))
        if head == "<":
            if len(node) != 3:
                raise SexprError("(< t t)")
            return less_than(term_of(node[1]), term_of(node[2]))
    # infix equation: (t = t)
    if len(node) == 3 and node[1] == "=":
        return Eq(term_of(node[0]), term_of(node[2]))
    raise SexprError(f"unknown formula form {node!r}")


def parse_term(text: str) -> Term:
    return term_of(read_sexpr(text))


def parse_formula(text: str) -> Formula:
    return formula_of(read_sexpr(text))


def parse(text: str) -> Formula | Term:
    """Formula if it reads as one, else a term."""
    node = read_sexpr(text)
    try:
        return formula_of(node)
    except SexprError:
        return term_of(node)


# ---------------------------------------------------------------------------
# printing

def show_term(t: Term) -> str:
    if isinstance(t, TVar):
        return f"v{t.var.index}"
    if isinstance(t, Const):
        return t.name
    if isinstance(t, NumLit):
        return f"(num {t.value})"
    if isinstance(t, SApp):
        # print full numerals in decimal
        n, base = 0, t
        while isinstance(base, SApp):
            n, base = n + 1, base.arg
        if base == Const("0"):
            return str(n)
        return f"(S {show_term(t.arg)})"
    if isinstance(t, BinOp):
        if t.op == "@":
            spine = [t.right]
            f = t.left
            while isinstance(f, BinOp) and f.op == "@":
                spine.append(f.right)
                f = f.left
            spine.append(f)
            spine.reverse()
            return "(app " + " ".join(show_term(x) for x in spine) + ")"
        return f"({t.op} {show_term(t.left)} {show_term(t.right)})"
    if isinstance(t, PRApp):
        inner = " ".join(show_term(a) for a in t.args)
        return f"(pr {t.name} {inner})" if inner else f"(pr {t.name})"
    raise TypeError(t)


def show_formula(phi: Formula) -> str:
    if isinstance(phi, Bot):
        return "bot"
    if isinstance(phi, Eq):
        return f"(= {show_term(phi.left)} {show_term(phi.right)})"
    if isinstance(phi, RelAtom):
        args = " ".join(show_term(a) for a in phi.args)
        r = phi.rel
        if r.kind == "P":
            return f"(P{r.arity} {args})" if args else f"(P{r.arity})"
        if r.kind == "fix":
            return f"(ifix {r.opcode} {args})" if args else f"(ifix {r.opcode})"
        return f"(rel {r.tag} {args})" if args else f"(rel {r.tag})"
    if isinstance(phi, And):
        return f"(and {show_formula(phi.left)} {show_formula(phi.right)})"
    if isinstance(phi, Or):
        return f"(or {show_formula(phi.left)} {show_formula(phi.right)})"
    if isinstance(phi, Imp):
        return f"(-> {show_formula(phi.left)} {show_formula(phi.right)})"
    if isinstance(phi, All):
        return f"(Av{phi.var.index} {show_formula(phi.body)})"
    if isinstance(phi, Ex):
        return f"(Ev{phi.var.index} {show_formula(phi.body)})"
    raise TypeError(phi)


def show(x: Formula | Term) -> str:
    return show_term(x) if isinstance(x, Term) else show_formula(x)
