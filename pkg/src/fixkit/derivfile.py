"""Derivation files: a header naming the theory and hypotheses, then
numbered lines `n. <formula> ; <justification>`.

    # optional comments
    theory HAP
    hyp (= v1 0)
    1. (= 0 0) ; lpt 20 0
    2. (-> (= 0 0) (= 0 0)) ; lpt 1 (= 0 0)
    3. (= 0 0) ; rule 2 1 2

Premise references inside justifications are 1-based line numbers.
Relation symbols in axiom data are written `=`, `P<n>`, `fix:<code>:<arity>`
or `def:<tag>:<arity>`.
"""

from __future__ import annotations

import re

from .goedel import decode_formula
from .kernel import (
    Derivation, FixpointAxiom, HapAxiom, Hypothesis, Induction, Justification,
    LptAxiom, Rule, TheorySpec, THEORY_SPECS,
)
from .sexpr import SexprError, formula_of, read_sexpr, show_formula, show_term, term_of, tokenize, _read
from .syntax import CONSTANTS, Formula, NumLit, OperatorForm, RelSymbol, Term, Var


class DerivationFileError(ValueError):
    pass


def _read_nodes(text: str) -> list:
    tokens = tokenize(text)
    nodes, pos = [], 0
    while pos < len(tokens):
        node, pos = _read(tokens, pos)
        nodes.append(node)
    return nodes


_VARTOK = re.compile(r"^v(\d+)$")


def _var_of(node) -> Var:
    if isinstance(node, str):
        m = _VARTOK.match(node)
        if m:
            return Var(int(m.group(1)))
    raise DerivationFileError(f"expected a variable, got {node!r}")


def _rel_token(rel) -> str:
    if rel == "=":
        return "="
    if rel.kind == "P":
        return f"P{rel.arity}"
    if rel.kind == "fix":
        return f"fix:{rel.opcode}:{rel.arity}"
    return f"def:{rel.tag}:{rel.arity}"


def _rel_of(tok: str):
    if tok == "=":
        return "="
    m = re.match(r"^P(\d+)$", tok)
    if m:
        return RelSymbol("P", int(m.group(1)))
    m = re.match(r"^fix:(\d+):(\d+)$", tok)
    if m:
        return RelSymbol("fix", int(m.group(2)), opcode=int(m.group(1)))
    m = re.match(r"^def:([^:]+):(\d+)$", tok)
    if m:
        return RelSymbol("def", int(m.group(2)), tag=m.group(1))
    raise DerivationFileError(f"bad relation token {tok!r}")


def _const_token(c) -> str:
    return str(c)


# ---------------------------------------------------------------------------
# justification serialization

def show_justification(j: Justification) -> str:
    if isinstance(j, Hypothesis):
        return f"hyp {j.index}"
    if isinstance(j, Rule):
        parts = [str(p + 1) for p in j.premises]
        if j.var is not None:
            parts.append(f"v{j.var.index}")
        return f"rule {j.rule_id} " + " ".join(parts)
    if isinstance(j, Induction):
        return f"ind {show_formula(j.formula)} v{j.var.index}"
    if isinstance(j, FixpointAxiom):
        return f"fixax {show_formula(j.operator.body)} {j.operator.arity}"
    if isinstance(j, HapAxiom):
        vs = " ".join(f"v{v.index}" for v in j.data)
        return f"hap {j.group} {j.clause} {vs}".rstrip()
    if isinstance(j, LptAxiom):
        return f"lpt {j.axiom_id} " + _show_lpt_data(j.axiom_id, j.data)
    raise TypeError(j)


def _show_lpt_data(i: int, data: tuple) -> str:
    if i in (1, 10):
        return show_formula(data[0])
    if i in (4, 6):
        return f"{show_formula(data[0])} {show_formula(data[1])} {data[2]}"
    if i in (12, 14):
        x, phi, tau = data
        return f"v{x.index} {show_formula(phi)} {show_term(tau)}"
    if i in (15, 23):
        return f"v{data[0].index}"
    if i == 16:
        return f"v{data[0].index} v{data[1].index}"
    if i == 17:
        return " ".join(f"v{v.index}" for v in data)
    if i == 18:
        fsym, xs, ys = data
        return f"{fsym} " + " ".join(f"v{v.index}" for v in list(xs) + list(ys))
    if i == 19:
        rel, xs, ys = data
        return f"{_rel_token(rel)} " + " ".join(f"v{v.index}" for v in list(xs) + list(ys))
    if i == 20:
        return _const_token(data[0])
    if i in (21, 22):
        head, taus, j = data
        head_tok = head if i == 21 else _rel_token(head)
        taus_txt = " ".join(show_term(t) for t in taus)
        return f"{head_tok} {taus_txt} {j}"
    raise ValueError(f"LPT{i} has no data form")


def parse_justification(text: str) -> Justification:
    nodes = _read_nodes(text)
    if not nodes:
        raise DerivationFileError("empty justification")
    head = nodes[0]
    rest = nodes[1:]
    if head == "hyp":
        return Hypothesis(int(rest[0]))
    if head == "rule":
        rid = int(rest[0])
        var = None
        prem = []
        for tok in rest[1:]:
            if isinstance(tok, str) and _VARTOK.match(tok):
                var = _var_of(tok)
            else:
                prem.append(int(tok) - 1)
        return Rule(rid, tuple(prem), var)
    if head == "ind":
        return Induction(formula_of(rest[0]), _var_of(rest[1]))
    if head == "fixax":
        return FixpointAxiom(OperatorForm(formula_of(rest[0]), int(rest[1])))
    if head == "hap":
        group, clause = int(rest[0]), rest[1]
        return HapAxiom(group, clause, tuple(_var_of(v) for v in rest[2:]))
    if head == "lpt":
        i = int(rest[0])
        return LptAxiom(i, _parse_lpt_data(i, rest[1:]))
    raise DerivationFileError(f"unknown justification head {head!r}")


def _parse_lpt_data(i: int, nodes: list) -> tuple:
    if i in (1, 10):
        return (formula_of(nodes[0]),)
    if i in (4, 6):
        return (formula_of(nodes[0]), formula_of(nodes[1]), nodes[2])
    if i in (12, 14):
        return (_var_of(nodes[0]), formula_of(nodes[1]), term_of(nodes[2]))
    if i in (15, 23):
        return (_var_of(nodes[0]),)
    if i == 16:
        return (_var_of(nodes[0]), _var_of(nodes[1]))
    if i == 17:
        return tuple(_var_of(v) for v in nodes)
    if i == 18:
        fsym = nodes[0]
        vs = [_var_of(v) for v in nodes[1:]]
        m = len(vs) // 2
        return (fsym, tuple(vs[:m]), tuple(vs[m:]))
    if i == 19:
        rel = _rel_of(nodes[0])
        vs = [_var_of(v) for v in nodes[1:]]
        m = len(vs) // 2
        return (rel, tuple(vs[:m]), tuple(vs[m:]))
    if i == 20:
        tok = nodes[0]
        if tok in CONSTANTS:
            return (tok,)
        return (int(tok),)
    if i in (21, 22):
        head = nodes[0] if i == 21 else _rel_of(nodes[0])
        *taus, j = nodes[1:]
        idx = "both" if j == "both" else int(j)
        return (head, tuple(term_of(t) for t in taus), idx)
    raise DerivationFileError(f"LPT{i} takes no data")


# ---------------------------------------------------------------------------
# whole files

def serialize_derivation(d: Derivation, spec: TheorySpec, name: str = "") -> str:
    out = []
    if name:
        out.append(f"# {name}")
    out.append(f"theory {spec.name}")
    for h in d.hypotheses:
        out.append(f"hyp {show_formula(h)}")
    for idx, (phi, just) in enumerate(d.lines):
        out.append(f"{idx + 1}. {show_formula(phi)} ; {show_justification(just)}")
    return "\n".join(out) + "\n"


def parse_derivation(text: str) -> tuple[Derivation, TheorySpec]:
    spec: TheorySpec | None = None
    hyps: list[Formula] = []
    lines: list[tuple[Formula, Justification]] = []
    expected = 1
    for raw in text.splitlines():
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if stripped.startswith("theory "):
            name = stripped.split(None, 1)[1].strip()
            if name not in THEORY_SPECS:
                raise DerivationFileError(f"unknown theory {name!r}")
            spec = THEORY_SPECS[name]
            continue
        if stripped.startswith("hyp "):
            hyps.append(formula_of(read_sexpr(stripped[4:])))
            continue
        m = re.match(r"^(\d+)\.\s*(.*?)\s*;\s*(.*)$", stripped)
        if not m:
            raise DerivationFileError(f"bad line: {stripped!r}")
        num = int(m.group(1))
        if num != expected:
            raise DerivationFileError(f"line number {num}, expected {expected}")
        expected += 1
        phi = formula_of(read_sexpr(m.group(2)))
        just = parse_justification(m.group(3))
        lines.append((phi, just))
    if spec is None:
        raise DerivationFileError("missing theory header")
    if not lines:
        raise DerivationFileError("no derivation lines")
    return Derivation(hyps, lines), spec


def load_derivation(path: str) -> tuple[Derivation, TheorySpec]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_derivation(fh.read())
