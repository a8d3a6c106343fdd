"""Expression DSL: lexer, parser, evaluator, canonical printer and reports.

Grammar::

    program := header expr
    header  := "dim" INT decl*
    decl    := "field" IDENT ":" ("even" | "odd")
    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "^w") unary)*
    unary   := "-" unary | power
    power   := atom ("^" INT)?
    atom    := INT ("/" INT)? | "x"<i> | "dx"<i> | "vol" | IDENT | IDENT"["<digits>"]"
             | "theta(" IDENT "," "["<digits>"]" ")" | "bar(" IDENT "," "["<digits>"]" ")"
             | OP "(" expr ")" | "(" expr ")"
    OP      := "d_H" | "d_V" | "d" | "delta" | "d"<i>

``*`` and ``^w`` both denote the graded product; ``^`` is a power.
Digits inside brackets are base indices, read as a multiset.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .algebra import (
    AUX,
    BASE,
    DX,
    FIELD,
    THETA,
    GradedForm,
    GradedPolynomial,
    base_gen,
    dx_gen,
    field_gen,
    theta_gen,
    total_derivative,
)
from .multiindex import MultiIndex
from .signature import Signature, SignatureError, parity_of

CONVENTIONS = {
    "odd_partial": "left",
    "base_index": "0-based",
    "coefficients": "exact rational",
    "lepage_gauge": "h = 0",
}


# --- errors -------------------------------------------------------------------------

class DSLError(Exception):
    category = "error"

    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.message = message
        self.line = line
        self.col = col
        super().__init__(f"{self.category} error at line {line}, column {col}: {message}")


class LexError(DSLError):
    category = "lexical"


class DSLSyntaxError(DSLError):
    category = "syntax"


class ResolutionError(DSLError):
    category = "resolution"


class ArityError(DSLError):
    category = "arity"


# --- lexer ----------------------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str  # INT IDENT JET MI SYM WEDGE EOF
    text: str
    line: int
    col: int


_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
_SYMS = set("+-*/^(),:{};")


def tokenize(text: str) -> list[Token]:
    tokens = []
    i, line, col = 0, 1, 1
    n = len(text)

    def bracket(start, sline, scol):
        j = start + 1
        while j < n and text[j] != "]":
            if not text[j].isdigit():
                if text[j] in " \t\r\n" or text[j] in _SYMS:
                    break
                raise LexError(f"unexpected character {text[j]!r} in multi-index", sline, scol + (j - start))
            j += 1
        if j >= n or text[j] != "]":
            raise DSLSyntaxError("unclosed '[' in multi-index", sline, scol)
        return text[start + 1:j], j + 1

    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == ".":
                raise LexError("decimal literals are not accepted; use p/q", line, col)
            tokens.append(Token("INT", text[i:j], line, col))
            col += j - i
            i = j
            continue
        m = _IDENT_RE.match(text, i)
        if m:
            j = m.end()
            word = m.group()
            if j < n and text[j] == "[":
                digits, k = bracket(j, line, col + (j - i))
                tokens.append(Token("JET", word + "[" + digits + "]", line, col))
                col += k - i
                i = k
            else:
                tokens.append(Token("IDENT", word, line, col))
                col += j - i
                i = j
            continue
        if ch == "[":
            digits, k = bracket(i, line, col)
            tokens.append(Token("MI", digits, line, col))
            col += k - i
            i = k
            continue
        if ch == "^" and i + 1 < n and text[i + 1] == "w" and not (
                i + 2 < n and (text[i + 2].isalnum() or text[i + 2] == "_")):
            tokens.append(Token("WEDGE", "^w", line, col))
            i += 2
            col += 2
            continue
        if ch in _SYMS:
            tokens.append(Token("SYM", ch, line, col))
            i += 1
            col += 1
            continue
        raise LexError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("EOF", "", line, col))
    return tokens


# --- AST ------------------------------------------------------------------------------

@dataclass(frozen=True)
class Node:
    kind: str  # num var jet base dx vol theta bar op add sub mul neg pow
    value: object = None
    args: tuple = ()
    line: int = 0
    col: int = 0


@dataclass
class SourceProgram:
    signature: Signature
    body: Node | None
    source: str = dc_field(default="", repr=False)

    def evaluate(self) -> GradedForm:
        if self.body is None:
            raise DSLSyntaxError("empty expression body", 1, 1)
        return evaluate(self.body, self.signature)


_OPS = {"d_H", "d_V", "d", "delta"}
_TOTAL_RE = re.compile(r"^d(\d+)$")
_X_RE = re.compile(r"^x(\d+)$")
_DX_RE = re.compile(r"^dx(\d+)$")


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.toks = tokens
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.pos]

    def advance(self) -> Token:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect(self, kind, text=None) -> Token:
        t = self.tok
        if t.kind != kind or (text is not None and t.text != text):
            want = text or kind
            got = t.text or "end of input"
            raise DSLSyntaxError(f"expected {want!r}, found {got!r}", t.line, t.col)
        return self.advance()

    def is_sym(self, s) -> bool:
        return self.tok.kind == "SYM" and self.tok.text == s

    # header
    def header(self) -> Signature:
        t = self.expect("IDENT", "dim")
        nt = self.expect("INT")
        fields = []
        while self.tok.kind == "IDENT" and self.tok.text == "field":
            self.advance()
            name = self.expect("IDENT")
            self.expect("SYM", ":")
            par = self.expect("IDENT")
            if par.text not in ("even", "odd"):
                raise DSLSyntaxError(f"parity must be 'even' or 'odd', found {par.text!r}", par.line, par.col)
            fields.append((name.text, parity_of(par.text), name))
        try:
            return Signature(int(nt.text), tuple((f, p) for f, p, _ in fields))
        except SignatureError as exc:
            where = fields[-1][2] if fields else t
            raise ResolutionError(str(exc), where.line, where.col) from None

    # expressions
    def expr(self) -> Node:
        # sums and products are kept flat so long printed values do not nest deeply
        first = self.term()
        args, signs = [first], [1]
        while self.is_sym("+") or self.is_sym("-"):
            op = self.advance()
            args.append(self.term())
            signs.append(1 if op.text == "+" else -1)
        if len(args) == 1:
            return first
        return Node("sum", tuple(signs), tuple(args), first.line, first.col)

    def term(self) -> Node:
        first = self.unary()
        args = [first]
        while self.is_sym("*") or self.tok.kind == "WEDGE":
            self.advance()
            args.append(self.unary())
        if len(args) == 1:
            return first
        return Node("prod", None, tuple(args), first.line, first.col)

    def unary(self) -> Node:
        if self.is_sym("-"):
            op = self.advance()
            return Node("neg", None, (self.unary(),), op.line, op.col)
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.is_sym("^"):
            op = self.advance()
            e = self.expect("INT")
            return Node("pow", int(e.text), (base,), op.line, op.col)
        return base

    def atom(self) -> Node:
        t = self.tok
        if t.kind == "INT":
            self.advance()
            num = int(t.text)
            if self.is_sym("/"):
                self.advance()
                d = self.expect("INT")
                if int(d.text) == 0:
                    raise DSLSyntaxError("zero denominator", d.line, d.col)
                return Node("num", Fraction(num, int(d.text)), (), t.line, t.col)
            return Node("num", Fraction(num), (), t.line, t.col)
        if self.is_sym("("):
            self.advance()
            inner = self.expr()
            self.expect("SYM", ")")
            return inner
        if t.kind == "JET":
            self.advance()
            name, digits = t.text[:-1].split("[")
            return Node("jet", (name, digits), (), t.line, t.col)
        if t.kind == "IDENT":
            self.advance()
            word = t.text
            if self.is_sym("("):
                return self.call(t)
            if word == "vol":
                return Node("vol", None, (), t.line, t.col)
            m = _X_RE.match(word)
            if m:
                return Node("base", int(m.group(1)), (), t.line, t.col)
            m = _DX_RE.match(word)
            if m:
                return Node("dx", int(m.group(1)), (), t.line, t.col)
            return Node("jet", (word, ""), (), t.line, t.col)
        got = t.text or "end of input"
        raise DSLSyntaxError(f"unexpected {got!r}", t.line, t.col)

    def call(self, name_tok: Token) -> Node:
        word = name_tok.text
        self.expect("SYM", "(")
        if word in ("theta", "bar"):
            args = []
            while True:
                if self.tok.kind == "MI":
                    args.append(("mi", self.advance()))
                elif self.tok.kind == "IDENT":
                    args.append(("id", self.advance()))
                else:
                    args.append(("expr", self.expr()))
                if self.is_sym(","):
                    self.advance()
                    continue
                break
            self.expect("SYM", ")")
            if len(args) != 2:
                raise ArityError(f"{word} takes 2 arguments, got {len(args)}", name_tok.line, name_tok.col)
            (k1, a1), (k2, a2) = args
            if k1 != "id" or k2 != "mi":
                raise DSLSyntaxError(f"{word} expects (FIELD, [digits])", name_tok.line, name_tok.col)
            return Node(word, (a1.text, a2.text), (), name_tok.line, name_tok.col)
        args = [self.expr()]
        while self.is_sym(","):
            self.advance()
            args.append(self.expr())
        self.expect("SYM", ")")
        if word in _OPS or _TOTAL_RE.match(word):
            if len(args) != 1:
                raise ArityError(f"{word} takes 1 argument, got {len(args)}", name_tok.line, name_tok.col)
            return Node("op", word, tuple(args), name_tok.line, name_tok.col)
        raise ResolutionError(f"unknown operator {word!r}", name_tok.line, name_tok.col)


def parse(text: str) -> SourceProgram:
    """Parse a full program (header + expression)."""
    p = _Parser(tokenize(text))
    sig = p.header()
    body = None
    if p.tok.kind != "EOF":
        body = p.expr()
        if p.tok.kind != "EOF":
            t = p.tok
            raise DSLSyntaxError(f"unexpected {t.text!r}", t.line, t.col)
    if body is not None:
        _resolve(body, sig)
    return SourceProgram(sig, body, text)


def parse_expr(text: str, sig: Signature) -> GradedForm:
    """Parse and evaluate a bare expression against an existing signature."""
    p = _Parser(tokenize(text))
    body = p.expr()
    if p.tok.kind != "EOF":
        t = p.tok
        raise DSLSyntaxError(f"unexpected {t.text!r}", t.line, t.col)
    _resolve(body, sig)
    return evaluate(body, sig)


def parse_value(text: str) -> tuple[Signature, GradedForm]:
    prog = parse(text)
    return prog.signature, prog.evaluate()


def _field_id(sig, name, node):
    try:
        return sig.field_index(name)
    except KeyError:
        raise ResolutionError(f"undeclared field {name!r}", node.line, node.col) from None


def _counts(sig, digits, node):
    idx = [int(ch) for ch in digits]
    for i in idx:
        if i >= sig.n:
            raise ResolutionError(f"base index {i} out of range for dim {sig.n}", node.line, node.col)
    return MultiIndex.from_indices(sig.n, idx).counts


def _resolve(node: Node, sig: Signature) -> None:
    k = node.kind
    if k == "jet":
        name, digits = node.value
        _field_id(sig, name, node)
        _counts(sig, digits, node)
    elif k in ("theta", "bar"):
        name, digits = node.value
        _field_id(sig, name, node)
        _counts(sig, digits, node)
        if k == "bar" and not sig.aux_enabled:
            raise ResolutionError("mirror variables need an aux-enabled signature", node.line, node.col)
    elif k in ("base", "dx"):
        if node.value >= sig.n:
            raise ResolutionError(f"base index {node.value} out of range for dim {sig.n}", node.line, node.col)
    elif k == "op":
        m = _TOTAL_RE.match(node.value)
        if m and int(m.group(1)) >= sig.n:
            raise ResolutionError(f"base index {m.group(1)} out of range for dim {sig.n}", node.line, node.col)
    for a in node.args:
        _resolve(a, sig)


def evaluate(node: Node, sig: Signature) -> GradedForm:
    from . import forms, variational

    k = node.kind
    if k == "num":
        return GradedPolynomial.const(sig, node.value)
    if k == "jet":
        name, digits = node.value
        fid = _field_id(sig, name, node)
        return GradedPolynomial.from_gen(sig, field_gen(sig, fid, _counts(sig, digits, node)))
    if k == "bar":
        name, digits = node.value
        fid = _field_id(sig, name, node)
        return GradedPolynomial.from_gen(sig, field_gen(sig, fid, _counts(sig, digits, node), AUX))
    if k == "theta":
        name, digits = node.value
        fid = _field_id(sig, name, node)
        return GradedForm.from_gen(sig, theta_gen(sig, fid, _counts(sig, digits, node)))
    if k == "base":
        return GradedPolynomial.from_gen(sig, base_gen(node.value))
    if k == "dx":
        return GradedForm.from_gen(sig, dx_gen(node.value))
    if k == "vol":
        return forms.vol(sig)
    if k == "neg":
        return -evaluate(node.args[0], sig)
    if k == "sum":
        total = GradedPolynomial.zero(sig)
        for sign, a in zip(node.value, node.args):
            total = total + evaluate(a, sig) if sign > 0 else total - evaluate(a, sig)
        return total
    if k == "prod":
        acc = evaluate(node.args[0], sig)
        for a in node.args[1:]:
            acc = acc * evaluate(a, sig)
        return acc
    if k == "pow":
        return evaluate(node.args[0], sig) ** node.value
    if k == "op":
        arg = evaluate(node.args[0], sig)
        op = node.value
        if op == "d_H":
            return forms.d_H(arg)
        if op == "d_V":
            return forms.d_V(arg)
        if op == "d":
            return forms.exterior_d(arg)
        if op == "delta":
            return variational.delta(arg)
        return total_derivative(arg, int(_TOTAL_RE.match(op).group(1)))
    raise AssertionError(f"unknown node {k}")  # pragma: no cover


# --- printer ---------------------------------------------------------------------------

def _digits(counts) -> str:
    return "".join(str(i) for i in MultiIndex(tuple(counts)).indices())


def gen_text(sig: Signature, g) -> str:
    kind = g[0]
    if kind == BASE:
        return f"x{g[1]}"
    if kind == DX:
        return f"dx{g[1]}"
    name = sig.field_name(g[1])
    if kind == FIELD:
        return name if sum(g[2]) == 0 else f"{name}[{_digits(g[2])}]"
    if kind == AUX:
        return f"bar({name},[{_digits(g[2])}])"
    if kind == THETA:
        return f"theta({name},[{_digits(g[2])}])"
    raise AssertionError(kind)  # pragma: no cover


def _coef_text(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _mono_text(sig: Signature, m, c: Fraction) -> str:
    factors = []
    atoms = []
    n_dx = sum(1 for g, _ in m if g[0] == DX)
    for g, e in m:
        if g[0] == DX and n_dx == sig.n:
            continue
        t = gen_text(sig, g)
        if g[0] >= THETA:
            atoms.extend([t] * e)
        else:
            factors.append(t if e == 1 else f"{t}^{e}")
    if n_dx == sig.n and n_dx:
        atoms.append("vol")
    if c == 1 and (factors or atoms):
        head = []
    elif c == -1 and (factors or atoms):
        head = ["-1"]
    else:
        head = [_coef_text(c)]
    left = "*".join(head + factors)
    right = "^w ".join(atoms)
    if left and right:
        return f"{left}*{right}"
    return left or right


def print_value(value: GradedForm) -> str:
    """Canonical, re-parseable text for a polynomial or form."""
    items = sorted(value.terms.items(), key=lambda kv: _term_order(kv[0]))
    if not items:
        return "0"
    out = []
    for i, (m, c) in enumerate(items):
        t = _mono_text(value.sig, m, c)
        if i == 0:
            out.append(t)
        elif t.startswith("-"):
            out.append(" - " + t[1:])
        else:
            out.append(" + " + t)
    return "".join(out)


def _term_order(m):
    degree = sum(e for g, e in m if g[0] in (FIELD, AUX))
    return (sum(e for g, e in m if g[0] >= THETA), degree, m)


def print_derivation(v) -> str:
    parts = []
    for mu, p in enumerate(v.horiz):
        if p:
            parts.append(f"dx{mu}: {print_value(p)}")
    for fid, p in enumerate(v.vert):
        if p:
            parts.append(f"{v.sig.field_name(fid)}: {print_value(p)}")
    return "deriv { " + "; ".join(parts) + " }" if parts else "deriv { }"


def parse_derivation(text: str, sig: Signature):
    """Parse ``deriv { dx0: <poly>; y: <poly>; ... }`` into a ContactDerivation."""
    from .derivations import ContactDerivation, DerivationError

    toks = tokenize(text)
    p = _Parser(toks)
    if p.tok.kind == "IDENT" and p.tok.text == "deriv":
        p.advance()
    p.expect("SYM", "{")
    horiz: dict = {}
    vert: dict = {}
    while not p.is_sym("}"):
        key = p.expect("IDENT")
        p.expect("SYM", ":")
        body = p.expr()
        _resolve(body, sig)
        val = evaluate(body, sig)
        if any(b != (0, 0) for b in val.bidegrees()):
            raise ResolutionError("derivation components must be functions", key.line, key.col)
        m = _DX_RE.match(key.text)
        if m:
            mu = int(m.group(1))
            if mu >= sig.n:
                raise ResolutionError(f"base index {mu} out of range", key.line, key.col)
            horiz[mu] = val.as_poly()
        else:
            _field_id(sig, key.text, key)
            vert[key.text] = val.as_poly()
        if p.is_sym(";"):
            p.advance()
        elif not p.is_sym("}"):
            t = p.tok
            raise DSLSyntaxError(f"expected ';' or '}}', found {t.text or 'end of input'!r}", t.line, t.col)
    p.expect("SYM", "}")
    p.expect("EOF")
    try:
        return ContactDerivation.from_components(sig, horiz, vert)
    except DerivationError as exc:
        raise ResolutionError(str(exc), 1, 1) from None


# --- reports ------------------------------------------------------------------------------

def signature_doc(sig: Signature) -> dict:
    return {
        "dim": sig.base_dim,
        "fields": [{"name": n, "parity": "odd" if p else "even"} for n, p in sig.fields],
    }


def _to_doc(v):
    if isinstance(v, GradedForm):
        return print_value(v)
    if isinstance(v, dict):
        return {str(k): _to_doc(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_to_doc(x) for x in v]
    if isinstance(v, Fraction):
        return _coef_text(v)
    if hasattr(v, "horiz") and hasattr(v, "vert"):
        return print_derivation(v)
    return v


def format_report(command: str, sig: Signature, result: dict, certificates: dict | None = None,
                  fmt: str = "text") -> str:
    certificates = certificates or {}
    if fmt == "json":
        doc = {
            "command": command,
            "conventions": CONVENTIONS,
            "signature": signature_doc(sig),
            "result": _to_doc(result),
            "certificates": _to_doc(certificates),
        }
        return json.dumps(doc, indent=2, sort_keys=True)
    lines = [
        f"command: {command}",
        "convention: " + ", ".join(f"{k}={v}" for k, v in CONVENTIONS.items()),
        f"signature: {sig.header()}",
    ]
    for key, value in result.items():
        lines.extend(_text_lines(key, value))
    for key, value in certificates.items():
        lines.extend(_text_lines(f"certificate.{key}", value))
    return "\n".join(lines)


def _text_lines(key, value):
    doc = _to_doc(value)
    if isinstance(doc, dict):
        out = []
        for k in sorted(doc):
            out.extend(_text_lines(f"{key}.{k}", doc[k]))
        return out
    if isinstance(doc, list):
        return [f"{key}: " + ", ".join(str(x) for x in doc)]
    return [f"{key}: {doc}"]
