"""Concrete syntax: parsing and printing of formulas, terms, derivations.

Formula grammar, loosest to tightest: -> and -< bind loosest and may not be
mixed without parentheses (-> associates right, -< left), then |, then &.
Term syntax is fully parenthesized by constructor, so terms round-trip
exactly; neither printer ever renames a variable.

Derivations travel as JSON trees: {"rule", "concl", "prems"} with formulas
and terms embedded as strings in this module's syntax.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .syntax import (
    PLUS,
    MINUS,
    And,
    Atom,
    Basis,
    Bot,
    Case,
    CoImp,
    Falsum,
    Formula,
    Fst,
    Imp,
    Inl,
    Inr,
    Lam,
    MetaVar,
    MPair,
    Or,
    App,
    Abort,
    Pair,
    Pi1,
    Pi2,
    Polarity,
    Snd,
    Term,
    Top,
    Var,
    Verum,
    check_polarities,
)
from .derivation import Derivation, Judgment


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int
    line: int
    column: int


class ParseError(Exception):
    def __init__(self, message: str, span: SourceSpan, expected: frozenset[str] = frozenset()):
        super().__init__(message)
        self.message = message
        self.span = span
        self.expected = expected


class PolarityError(Exception):
    """A parsed term violates the polarity discipline."""

    def __init__(self, message: str, span: SourceSpan):
        super().__init__(message)
        self.message = message
        self.span = span


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    span: SourceSpan


_TERM_KEYWORDS = {"top", "bot", "abort", "fst", "snd", "inl", "inr", "case", "app", "p1", "p2"}


def _lex(src: str, two_char: tuple[str, ...], singles: str) -> list[_Token]:
    toks: list[_Token] = []
    i, line, col = 0, 0, 0

    def span(start: int, end: int, l: int, c: int) -> SourceSpan:
        return SourceSpan(start, end, l, c)

    while i < len(src):
        ch = src[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 0
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        for op in two_char:
            if src.startswith(op, i):
                toks.append(_Token(op, op, span(i, i + 2, line, col)))
                i += 2
                col += 2
                break
        else:
            if ch.islower() and ch.isalpha():
                j = i
                while j < len(src) and (src[j].isalnum() or src[j] == "_"):
                    j += 1
                toks.append(_Token("ident", src[i:j], span(i, j, line, col)))
                col += j - i
                i = j
            elif ch in singles:
                toks.append(_Token(ch, ch, span(i, i + 1, line, col)))
                i += 1
                col += 1
            else:
                raise ParseError(f"unexpected character {ch!r}", span(i, i + 1, line, col))
    toks.append(_Token("eof", "", span(len(src), len(src), line, col)))
    return toks


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.toks = tokens
        self.pos = 0

    def peek(self, ahead: int = 0) -> _Token:
        return self.toks[min(self.pos + ahead, len(self.toks) - 1)]

    def next(self) -> _Token:
        t = self.toks[self.pos]
        if t.kind != "eof":
            self.pos += 1
        return t

    def expect(self, kind: str) -> _Token:
        t = self.peek()
        if t.kind != kind:
            raise ParseError(
                f"expected {kind!r}, found {t.text or 'end of input'!r}",
                t.span,
                frozenset({kind}),
            )
        return self.next()

    def fail(self, message: str, expected: frozenset[str] = frozenset()):
        raise ParseError(message, self.peek().span, expected)


# ---------------------------------------------------------------- formulas


def parse_formula(src: str) -> Formula:
    p = _Parser(_lex(src, ("->", "-<"), "&|()"))
    f = _formula(p)
    if p.peek().kind != "eof":
        p.fail(f"unexpected {p.peek().text!r} after formula")
    return f


def _formula(p: _Parser) -> Formula:
    left = _disjunct(p)
    op = p.peek().kind
    if op not in ("->", "-<"):
        return left
    if op == "->":
        parts = [left]
        while p.peek().kind == "->":
            p.next()
            if p.peek(0).kind == "eof":
                p.fail("expected a formula after '->'")
            parts.append(_disjunct(p))
            if p.peek().kind == "-<":
                p.fail("cannot mix '->' and '-<' without parentheses")
        f = parts[-1]
        for part in reversed(parts[:-1]):
            f = Imp(part, f)
        return f
    f = left
    while p.peek().kind == "-<":
        p.next()
        f = CoImp(f, _disjunct(p))
        if p.peek().kind == "->":
            p.fail("cannot mix '->' and '-<' without parentheses")
    return f


def _disjunct(p: _Parser) -> Formula:
    f = _conjunct(p)
    while p.peek().kind == "|":
        p.next()
        f = Or(f, _conjunct(p))
    return f


def _conjunct(p: _Parser) -> Formula:
    f = _atomic(p)
    while p.peek().kind == "&":
        p.next()
        f = And(f, _atomic(p))
    return f


def _atomic(p: _Parser) -> Formula:
    t = p.peek()
    if t.kind == "(":
        p.next()
        f = _formula(p)
        p.expect(")")
        return f
    if t.kind == "ident":
        p.next()
        if t.text == "bot":
            return Falsum()
        if t.text == "top":
            return Verum()
        return Atom(t.text)
    p.fail(f"expected a formula, found {t.text or 'end of input'!r}", frozenset({"ident", "("}))


_ATOMIC_LEVEL = 3


def _formula_level(f: Formula) -> int:
    match f:
        case Imp() | CoImp():
            return 0
        case Or():
            return 1
        case And():
            return 2
        case _:
            return _ATOMIC_LEVEL


def print_formula(f: Formula) -> str:
    def paren(sub: Formula, bare: bool) -> str:
        s = print_formula(sub)
        return s if bare else f"({s})"

    match f:
        case Atom(name):
            return name
        case Falsum():
            return "bot"
        case Verum():
            return "top"
        case MetaVar(name):
            return f"?{name}"
        case And(a, b):
            return f"{paren(a, _formula_level(a) >= 2)} & {paren(b, _formula_level(b) >= 3)}"
        case Or(a, b):
            return f"{paren(a, _formula_level(a) >= 1)} | {paren(b, _formula_level(b) >= 2)}"
        case Imp(a, b):
            return f"{paren(a, _formula_level(a) >= 1)} -> {paren(b, isinstance(b, Imp) or _formula_level(b) >= 1)}"
        case CoImp(a, b):
            return f"{paren(a, isinstance(a, CoImp) or _formula_level(a) >= 1)} -< {paren(b, _formula_level(b) >= 1)}"
    raise TypeError(f"not a formula: {f!r}")


# ------------------------------------------------------------------- terms


def parse_term(src: str) -> Term:
    p = _Parser(_lex(src, (), "()<>{},.|\\+-"))
    spans: dict[tuple[int, ...], SourceSpan] = {}
    t = _term(p, (), spans)
    if p.peek().kind != "eof":
        p.fail(f"unexpected {p.peek().text!r} after term")
    violations = check_polarities(t)
    if violations:
        v = violations[0]
        raise PolarityError(v.message, spans.get(v.path, spans[()]))
    return t


def _pol(p: _Parser) -> Polarity:
    t = p.peek()
    if t.kind == "+":
        p.next()
        return PLUS
    if t.kind == "-":
        p.next()
        return MINUS
    p.fail(f"expected '+' or '-', found {t.text or 'end of input'!r}", frozenset({"+", "-"}))


def _binder(p: _Parser) -> tuple[str, Polarity]:
    t = p.expect("ident")
    if t.text in _TERM_KEYWORDS:
        raise ParseError(f"{t.text!r} is reserved and cannot bind", t.span)
    return t.text, _pol(p)


def _term(p: _Parser, path: tuple[int, ...], spans: dict) -> Term:
    start = p.peek().span

    def record(t: Term) -> Term:
        end = p.toks[p.pos - 1].span if p.pos else start
        spans[path] = SourceSpan(start.start, end.end, start.line, start.column)
        return t

    tok = p.peek()
    if tok.kind == "(":
        if p.peek(1).kind == "\\":
            p.next()
            p.next()
            name, bpol = _binder(p)
            p.expect(".")
            body = _term(p, path + (0,), spans)
            p.expect(")")
            pol = _pol(p)
            if bpol is not pol:
                raise ParseError(
                    f"lambda binder is {bpol} but the lambda is {pol}", tok.span
                )
            return record(Lam(name, body, pol))
        p.next()
        t = _term(p, path, spans)
        p.expect(")")
        return record(t)
    if tok.kind == "<":
        p.next()
        left = _term(p, path + (0,), spans)
        p.expect(",")
        right = _term(p, path + (1,), spans)
        p.expect(">")
        return record(Pair(left, right, _pol(p)))
    if tok.kind == "{":
        p.next()
        pos = _term(p, path + (0,), spans)
        p.expect(",")
        neg = _term(p, path + (1,), spans)
        p.expect("}")
        return record(MPair(pos, neg, _pol(p)))
    if tok.kind == "ident":
        p.next()
        word = tok.text
        if word == "top":
            p.expect("+")
            return record(Top())
        if word == "bot":
            p.expect("-")
            return record(Bot())
        if word in ("abort", "fst", "snd", "inl", "inr", "p1", "p2"):
            pol = _pol(p)
            p.expect("(")
            body = _term(p, path + (0,), spans)
            p.expect(")")
            if word == "p1":
                if pol is not PLUS:
                    raise ParseError("p1 is always +", tok.span)
                return record(Pi1(body))
            if word == "p2":
                if pol is not MINUS:
                    raise ParseError("p2 is always -", tok.span)
                return record(Pi2(body))
            ctor = {"abort": Abort, "fst": Fst, "snd": Snd, "inl": Inl, "inr": Inr}[word]
            return record(ctor(body, pol))
        if word == "app":
            pol = _pol(p)
            p.expect("(")
            fun = _term(p, path + (0,), spans)
            p.expect(",")
            arg = _term(p, path + (1,), spans)
            p.expect(")")
            return record(App(fun, arg, pol))
        if word == "case":
            scrutinee = _term(p, path + (0,), spans)
            p.expect("{")
            b1, q1 = _binder(p)
            p.expect(".")
            branch1 = _term(p, path + (1,), spans)
            p.expect("|")
            b2, q2 = _binder(p)
            p.expect(".")
            branch2 = _term(p, path + (2,), spans)
            p.expect("}")
            pol = _pol(p)
            if q1 is not scrutinee.pol or q2 is not scrutinee.pol:
                raise ParseError(
                    f"case binders must match the scrutinee's polarity ({scrutinee.pol})",
                    tok.span,
                )
            return record(Case(scrutinee, b1, branch1, b2, branch2, pol))
        return record(Var(word, _pol(p)))
    p.fail(f"expected a term, found {tok.text or 'end of input'!r}")


def print_term(t: Term) -> str:
    match t:
        case Var(name, pol):
            return f"{name}{pol}"
        case Top():
            return "top+"
        case Bot():
            return "bot-"
        case Abort(body, pol):
            return f"abort{pol}({print_term(body)})"
        case Pair(left, right, pol):
            return f"<{print_term(left)}, {print_term(right)}>{pol}"
        case Fst(body, pol):
            return f"fst{pol}({print_term(body)})"
        case Snd(body, pol):
            return f"snd{pol}({print_term(body)})"
        case Inl(body, pol):
            return f"inl{pol}({print_term(body)})"
        case Inr(body, pol):
            return f"inr{pol}({print_term(body)})"
        case Case(scrutinee, b1, s1, b2, s2, pol):
            q = scrutinee.pol
            return (
                f"case {print_term(scrutinee)} "
                f"{{{b1}{q}. {print_term(s1)} | {b2}{q}. {print_term(s2)}}}{pol}"
            )
        case Lam(binder, body, pol):
            return f"(\\{binder}{pol}. {print_term(body)}){pol}"
        case App(fun, arg, pol):
            return f"app{pol}({print_term(fun)}, {print_term(arg)})"
        case MPair(pos, neg, pol):
            return f"{{{print_term(pos)}, {print_term(neg)}}}{pol}"
        case Pi1(body):
            return f"p1+({print_term(body)})"
        case Pi2(body):
            return f"p2-({print_term(body)})"
    raise TypeError(f"not a term: {t!r}")


# ------------------------------------------------------------- derivations


def print_basis(b: Basis) -> str:
    gamma = ", ".join(f"{n}+: {print_formula(f)}" for n, f in b.gamma)
    delta = ", ".join(f"{n}-: {print_formula(f)}" for n, f in b.delta)
    sep = "; " if delta else ";"
    return f"({gamma}{sep}{delta})"


def print_judgment(j: Judgment) -> str:
    return f"{print_basis(j.basis)} =>{j.pol} {print_term(j.term)} : {print_formula(j.type)}"


def judgment_to_obj(j: Judgment) -> dict:
    return {
        "gamma": [[n, print_formula(f)] for n, f in j.basis.gamma],
        "delta": [[n, print_formula(f)] for n, f in j.basis.delta],
        "pol": str(j.pol),
        "term": print_term(j.term),
        "type": print_formula(j.type),
    }


def derivation_to_obj(d: Derivation) -> dict:
    return {
        "rule": d.rule,
        "concl": judgment_to_obj(d.concl),
        "prems": [derivation_to_obj(p) for p in d.prems],
    }


def derivation_to_json(d: Derivation, indent: int | None = 2) -> str:
    return json.dumps(derivation_to_obj(d), indent=indent)


class DerivationFormatError(Exception):
    """The JSON is structurally not a derivation."""


def _obj_judgment(obj) -> Judgment:
    if not isinstance(obj, dict):
        raise DerivationFormatError("judgment must be an object")
    try:
        gamma = {n: parse_formula(f) for n, f in obj["gamma"]}
        delta = {n: parse_formula(f) for n, f in obj["delta"]}
        pol = {"+": PLUS, "-": MINUS}[obj["pol"]]
        term = parse_term(obj["term"])
        typ = parse_formula(obj["type"])
    except (KeyError, TypeError, ValueError) as e:
        raise DerivationFormatError(f"malformed judgment: {e}") from e
    if len(gamma) != len(obj["gamma"]) or len(delta) != len(obj["delta"]):
        raise DerivationFormatError("duplicate assumption name in basis")
    return Judgment(Basis.make(gamma, delta), pol, term, typ)


def derivation_from_obj(obj) -> Derivation:
    if not isinstance(obj, dict):
        raise DerivationFormatError("derivation must be an object")
    for key in ("rule", "concl", "prems"):
        if key not in obj:
            raise DerivationFormatError(f"derivation node lacks {key!r}")
    if not isinstance(obj["rule"], str):
        raise DerivationFormatError("rule must be a string")
    if not isinstance(obj["prems"], list):
        raise DerivationFormatError("prems must be a list")
    concl = _obj_judgment(obj["concl"])
    prems = tuple(derivation_from_obj(p) for p in obj["prems"])
    return Derivation(obj["rule"], concl, prems)


def derivation_from_json(text: str) -> Derivation:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise DerivationFormatError(f"not valid JSON: {e}") from e
    return derivation_from_obj(obj)
