"""Goedel coding of variables, terms, formulas and sequences.

Codes are built from the shared monotone pairing: a node is
``1 + pair(tag, seqlist(children))`` with ``seqlist`` the cons-chain
``0 | 1 + pair(head, tail)``.  Category disjointness comes from the tag,
0 codes nothing (every code has the +1 offset), and a composite's code
strictly exceeds each constituent because ``pair(a, b) >= max(a, b)``.

Formulas are alpha-normalized before coding, so a code names an alpha
class; `encode_raw` skips that step (the object-level mirrors operate on
raw structure).  PR function symbols are not codable: coding targets
L_HA/L_HAP, and the L_PRA fragment is translated away first.
"""

from __future__ import annotations

from typing import NewType

from . import syntax as syn
from .pairing import pair, unpair
from .syntax import (
    All, And, BinOp, Bot, BOT, Const, CONSTANTS, Eq, Ex, Formula, Imp, NumLit,
    Or, PRApp, RelAtom, RelSymbol, SApp, Term, TVar, Var, alpha_normalize,
    numeral,
)

Code = NewType("Code", int)

# node tags
TAG_VAR = 0
TAG_TVAR = 1
TAG_CONST = 2
TAG_NUM = 3
TAG_S = 4
TAG_PLUS = 5
TAG_TIMES = 6
TAG_APP = 7
TAG_BOT = 9
TAG_EQ = 10
TAG_AND = 11
TAG_OR = 12
TAG_IMP = 13
TAG_ALL = 14
TAG_EX = 15
TAG_RELATOM = 16
TAG_RELSYM = 17
TAG_SEQ = 18

_TERM_TAGS = (TAG_TVAR, TAG_CONST, TAG_NUM, TAG_S, TAG_PLUS, TAG_TIMES, TAG_APP)
_FORMULA_TAGS = (TAG_BOT, TAG_EQ, TAG_AND, TAG_OR, TAG_IMP, TAG_ALL, TAG_EX, TAG_RELATOM)

_CONST_ID = {name: i for i, name in enumerate(CONSTANTS)}
_REL_KIND_ID = {"P": 0, "fix": 1, "def": 2}
_REL_KIND_NAME = {i: k for k, i in _REL_KIND_ID.items()}


class NotACode(ValueError):
    pass


class CategoryMismatch(ValueError):
    pass


def seqlist(items: list[int]) -> int:
    out = 0
    for x in reversed(items):
        out = 1 + pair(x, out)
    return out


def unseqlist(c: int) -> list[int]:
    out = []
    while c != 0:
        h, c = unpair(c - 1)
        out.append(h)
    return out


def node(tag: int, children: list[int]) -> int:
    return 1 + pair(tag, seqlist(children))


def unnode(c: int) -> tuple[int, list[int]]:
    if c <= 0:
        raise NotACode("0 codes nothing")
    tag, payload = unpair(c - 1)
    return tag, unseqlist(payload)


# ---------------------------------------------------------------------------
# encoding

def encode_var(v: Var) -> Code:
    return Code(node(TAG_VAR, [v.index]))


def encode_term(t: Term) -> Code:
    if isinstance(t, TVar):
        return Code(node(TAG_TVAR, [encode_var(t.var)]))
    if isinstance(t, Const):
        return Code(node(TAG_CONST, [_CONST_ID[t.name]]))
    if isinstance(t, NumLit):
        return Code(node(TAG_NUM, [t.value]))
    if isinstance(t, SApp):
        return Code(node(TAG_S, [encode_term(t.arg)]))
    if isinstance(t, BinOp):
        tag = {"+": TAG_PLUS, "*": TAG_TIMES, "@": TAG_APP}[t.op]
        return Code(node(tag, [encode_term(t.left), encode_term(t.right)]))
    if isinstance(t, PRApp):
        raise NotACode("PR function symbols are outside the coded language")
    raise TypeError(t)


def _encode_string(s: str) -> int:
    return seqlist([ord(ch) for ch in s])


def _decode_string(c: int) -> str:
    return "".join(chr(i) for i in unseqlist(c))


def encode_rel(rel: RelSymbol) -> Code:
    extra = rel.opcode if rel.kind == "fix" else (_encode_string(rel.tag) if rel.kind == "def" else 0)
    return Code(node(TAG_RELSYM, [_REL_KIND_ID[rel.kind], rel.arity, extra]))


def encode_raw(phi: Formula) -> Code:
    """Code of the formula exactly as written (no alpha step)."""
    if isinstance(phi, Bot):
        return Code(node(TAG_BOT, []))
    if isinstance(phi, Eq):
        return Code(node(TAG_EQ, [encode_term(phi.left), encode_term(phi.right)]))
    if isinstance(phi, RelAtom):
        args = seqlist([encode_term(a) for a in phi.args])
        return Code(node(TAG_RELATOM, [encode_rel(phi.rel), args]))
    if isinstance(phi, (And, Or, Imp)):
        tag = {And: TAG_AND, Or: TAG_OR, Imp: TAG_IMP}[type(phi)]
        return Code(node(tag, [encode_raw(phi.left), encode_raw(phi.right)]))
    if isinstance(phi, (All, Ex)):
        tag = TAG_ALL if isinstance(phi, All) else TAG_EX
        return Code(node(tag, [encode_var(phi.var), encode_raw(phi.body)]))
    raise TypeError(phi)


def encode_seq(items: list) -> Code:
    return Code(node(TAG_SEQ, [encode(x) for x in items]))


def encode(x) -> Code:
    """Code of a variable, term, formula or sequence thereof."""
    if isinstance(x, Var):
        return encode_var(x)
    if isinstance(x, Term):
        return encode_term(x)
    if isinstance(x, Formula):
        return encode_raw(alpha_normalize(x))
    if isinstance(x, (list, tuple)):
        return encode_seq(list(x))
    raise TypeError(f"cannot encode {x!r}")


# ---------------------------------------------------------------------------
# decoding

def _tag_of(c: int) -> int:
    if c <= 0:
        raise NotACode("0 codes nothing")
    tag, _ = unpair(c - 1)
    return tag


def decode_var(c: int) -> Var:
    tag, kids = unnode(c)
    if tag != TAG_VAR:
        if _is_valid_any(c):
            raise CategoryMismatch("not a variable code")
        raise NotACode(f"{c} is not a code")
    if len(kids) != 1:
        raise NotACode("malformed variable code")
    return Var(kids[0])


def decode_term(c: int) -> Term:
    tag, kids = unnode(c)
    if tag not in _TERM_TAGS:
        if _is_valid_any(c):
            raise CategoryMismatch("not a term code")
        raise NotACode(f"{c} is not a code")
    try:
        return _decode_term_node(tag, kids)
    except (NotACode, CategoryMismatch):
        raise
    except Exception as e:  # malformed arithmetic in children
        raise NotACode(str(e))


def _decode_term_node(tag: int, kids: list[int]) -> Term:
    if tag == TAG_TVAR:
        (vc,) = kids
        return TVar(decode_var(vc))
    if tag == TAG_CONST:
        (i,) = kids
        if i >= len(CONSTANTS):
            raise NotACode("bad constant id")
        return Const(CONSTANTS[i])
    if tag == TAG_NUM:
        (n,) = kids
        return NumLit(n)
    if tag == TAG_S:
        (a,) = kids
        return SApp(decode_term(a))
    if tag in (TAG_PLUS, TAG_TIMES, TAG_APP):
        a, b = kids
        op = {TAG_PLUS: "+", TAG_TIMES: "*", TAG_APP: "@"}[tag]
        return BinOp(op, decode_term(a), decode_term(b))
    raise NotACode("bad term tag")


def decode_rel(c: int) -> RelSymbol:
    tag, kids = unnode(c)
    if tag != TAG_RELSYM or len(kids) != 3:
        raise NotACode("malformed relation symbol code")
    kind_id, arity, extra = kids
    if kind_id not in _REL_KIND_NAME:
        raise NotACode("bad relation kind")
    kind = _REL_KIND_NAME[kind_id]
    if kind == "fix":
        return RelSymbol("fix", arity, opcode=extra)
    if kind == "def":
        return RelSymbol("def", arity, tag=_decode_string(extra))
    return RelSymbol("P", arity)


def decode_formula(c: int) -> Formula:
    tag, kids = unnode(c)
    if tag not in _FORMULA_TAGS:
        if _is_valid_any(c):
            raise CategoryMismatch("not a formula code")
        raise NotACode(f"{c} is not a code")
    try:
        return _decode_formula_node(tag, kids)
    except (NotACode, CategoryMismatch):
        raise
    except Exception as e:
        raise NotACode(str(e))


def _decode_formula_node(tag: int, kids: list[int]) -> Formula:
    if tag == TAG_BOT:
        if kids:
            raise NotACode("malformed bottom")
        return BOT
    if tag == TAG_EQ:
        a, b = kids
        return Eq(decode_term(a), decode_term(b))
    if tag in (TAG_AND, TAG_OR, TAG_IMP):
        a, b = kids
        cls = {TAG_AND: And, TAG_OR: Or, TAG_IMP: Imp}[tag]
        return cls(decode_formula(a), decode_formula(b))
    if tag in (TAG_ALL, TAG_EX):
        vc, bc = kids
        cls = All if tag == TAG_ALL else Ex
        return cls(decode_var(vc), decode_formula(bc))
    if tag == TAG_RELATOM:
        rc, argsc = kids
        rel = decode_rel(rc)
        args = tuple(decode_term(a) for a in unseqlist(argsc))
        return RelAtom(rel, args)
    raise NotACode("bad formula tag")


def decode_seq(c: int) -> list:
    tag, kids = unnode(c)
    if tag != TAG_SEQ:
        if _is_valid_any(c):
            raise CategoryMismatch("not a sequence code")
        raise NotACode(f"{c} is not a code")
    return [decode(x) for x in kids]


def _is_valid_any(c: int) -> bool:
    try:
        decode(c)
        return True
    except (NotACode, CategoryMismatch):
        return False


def decode(c: int):
    """Inverse of encode on its image; raises NotACode off the image."""
    if c <= 0:
        raise NotACode("0 codes nothing")
    tag, kids = unnode(c)
    try:
        if tag == TAG_VAR:
            if len(kids) != 1:
                raise NotACode("malformed variable code")
            return Var(kids[0])
        if tag in _TERM_TAGS:
            return _decode_term_node(tag, kids)
        if tag in _FORMULA_TAGS:
            return _decode_formula_node(tag, kids)
        if tag == TAG_SEQ:
            return [decode(x) for x in kids]
    except (NotACode, CategoryMismatch):
        raise
    except Exception as e:
        raise NotACode(str(e))
    raise NotACode(f"unknown tag {tag}")


__all__ = [
    "Code", "NotACode", "CategoryMismatch", "encode", "encode_raw",
    "encode_term", "encode_var", "encode_rel", "encode_seq", "decode",
    "decode_term", "decode_formula", "decode_var", "decode_rel", "decode_seq",
    "numeral", "node", "unnode", "seqlist", "unseqlist",
    "TAG_VAR", "TAG_TVAR", "TAG_CONST", "TAG_NUM", "TAG_S", "TAG_PLUS",
    "TAG_TIMES", "TAG_APP", "TAG_BOT", "TAG_EQ", "TAG_AND", "TAG_OR",
    "TAG_IMP", "TAG_ALL", "TAG_EX", "TAG_RELATOM", "TAG_RELSYM", "TAG_SEQ",
]
