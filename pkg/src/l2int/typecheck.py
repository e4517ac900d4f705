"""Curry-style type checking and principal type inference.

Every constructor-polarity combination matches exactly one rule, so
inference is syntax directed: walk the term, allocate metavariables,
collect first-order constraints, solve by unification.  check() runs the
same inference with the free variables pinned to their basis entries and
then rebuilds the full derivation tree, node by node.
"""

from __future__ import annotations

import string
from dataclasses import dataclass, field

from .derivation import Derivation, Judgment
from .syntax import (
    PLUS,
    MINUS,
    Abort,
    And,
    App,
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
    free_vars,
    fresh_name,
    substitute,
)


class UnifyError(Exception):
    pass


class Clash(UnifyError):
    pass


class OccursCheck(UnifyError):
    pass


class Untypable(Exception):
    def __init__(self, reason: str, path: tuple[int, ...]):
        super().__init__(f"{reason} (at {'.'.join(map(str, path)) or 'root'})")
        self.reason = reason
        self.path = path


class TypeMismatch(Exception):
    pass


class UnboundVariable(Exception):
    pass


@dataclass
class Substitution:
    mapping: dict[str, Formula] = field(default_factory=dict)

    def walk(self, f: Formula) -> Formula:
        while isinstance(f, MetaVar) and f.name in self.mapping:
            f = self.mapping[f.name]
        return f

    def apply(self, f: Formula) -> Formula:
        f = self.walk(f)
        match f:
            case And(a, b):
                return And(self.apply(a), self.apply(b))
            case Or(a, b):
                return Or(self.apply(a), self.apply(b))
            case Imp(a, b):
                return Imp(self.apply(a), self.apply(b))
            case CoImp(a, b):
                return CoImp(self.apply(a), self.apply(b))
            case _:
                return f


def _occurs(name: str, f: Formula, s: Substitution) -> bool:
    f = s.walk(f)
    match f:
        case MetaVar(n):
            return n == name
        case And(a, b) | Or(a, b) | Imp(a, b) | CoImp(a, b):
            return _occurs(name, a, s) or _occurs(name, b, s)
        case _:
            return False


def _unify(a: Formula, b: Formula, s: Substitution) -> None:
    a, b = s.walk(a), s.walk(b)
    match a, b:
        case MetaVar(x), MetaVar(y) if x == y:
            return
        case MetaVar(x), _:
            if _occurs(x, b, s):
                raise OccursCheck(f"?{x} occurs inside the formula it must equal")
            s.mapping[x] = b
        case _, MetaVar(_):
            _unify(b, a, s)
        case Atom(n1), Atom(n2):
            if n1 != n2:
                raise Clash(f"atom {n1} is not {n2}")
        case (Falsum(), Falsum()) | (Verum(), Verum()):
            return
        case (And(a1, b1), And(a2, b2)) | (Or(a1, b1), Or(a2, b2)) | (
            Imp(a1, b1),
            Imp(a2, b2),
        ) | (CoImp(a1, b1), CoImp(a2, b2)):
            _unify(a1, a2, s)
            _unify(b1, b2, s)
        case _:
            raise Clash(f"{type(a).__name__} is not {type(b).__name__}")


def unify(a: Formula, b: Formula) -> Substitution:
    """Most general unifier of a and b, or Clash/OccursCheck."""
    s = Substitution()
    _unify(a, b, s)
    return s


@dataclass(frozen=True)
class TypeScheme:
    """A formula over metavariables; every metavariable in body is listed."""

    metavariables: tuple[str, ...]
    body: Formula


@dataclass(frozen=True)
class Principal:
    basis: Basis
    pol: Polarity
    scheme: TypeScheme


def _letter(i: int) -> str:
    s = string.ascii_uppercase
    return s[i % 26] + ("" if i < 26 else str(i // 26))


def _rename_metavars(f: Formula, names: dict[str, str]) -> Formula:
    match f:
        case MetaVar(n):
            return MetaVar(names[n])
        case And(a, b):
            return And(_rename_metavars(a, names), _rename_metavars(b, names))
        case Or(a, b):
            return Or(_rename_metavars(a, names), _rename_metavars(b, names))
        case Imp(a, b):
            return Imp(_rename_metavars(a, names), _rename_metavars(b, names))
        case CoImp(a, b):
            return CoImp(_rename_metavars(a, names), _rename_metavars(b, names))
        case _:
            return f


def _metavar_order(formulas) -> list[str]:
    order: list[str] = []

    def walk(f: Formula) -> None:
        match f:
            case MetaVar(n):
                if n not in order:
                    order.append(n)
            case And(a, b) | Or(a, b) | Imp(a, b) | CoImp(a, b):
                walk(a)
                walk(b)

    for f in formulas:
        walk(f)
    return order


@dataclass
class _Ctx:
    subst: Substitution = field(default_factory=Substitution)
    free: dict[tuple[str, Polarity], Formula] = field(default_factory=dict)
    node_type: dict[tuple[int, ...], Formula] = field(default_factory=dict)
    counter: int = 0
    seeded: Basis | None = None

    def fresh(self) -> MetaVar:
        self.counter += 1
        return MetaVar(f"m{self.counter}")


def _infer(t: Term, path: tuple[int, ...], env: dict, cx: _Ctx) -> Formula:
    def uni(a: Formula, b: Formula) -> None:
        try:
            _unify(a, b, cx.subst)
        except UnifyError as e:
            raise Untypable(str(e), path) from e

    match t:
        case Var(n, p):
            if (n, p) in env:
                ty = env[(n, p)]
            elif (n, p) in cx.free:
                ty = cx.free[(n, p)]
            elif cx.seeded is not None:
                held = cx.seeded.lookup(n, p)
                if held is None:
                    raise UnboundVariable(f"{n}{p} is not assumed in the basis")
                cx.free[(n, p)] = held
                ty = held
            else:
                ty = cx.fresh()
                cx.free[(n, p)] = ty
        case Top():
            ty = Verum()
        case Bot():
            ty = Falsum()
        case Abort(body, _):
            want = Falsum() if body.pol is PLUS else Verum()
            uni(_infer(body, path + (0,), env, cx), want)
            ty = cx.fresh()
        case Pair(left, right, p):
            a = _infer(left, path + (0,), env, cx)
            b = _infer(right, path + (1,), env, cx)
            ty = And(a, b) if p is PLUS else Or(a, b)
        case Fst(body, p):
            a, b = cx.fresh(), cx.fresh()
            shape = And(a, b) if p is PLUS else Or(a, b)
            uni(_infer(body, path + (0,), env, cx), shape)
            ty = a
        case Snd(body, p):
            a, b = cx.fresh(), cx.fresh()
            shape = And(a, b) if p is PLUS else Or(a, b)
            uni(_infer(body, path + (0,), env, cx), shape)
            ty = b
        case Inl(body, p):
            a = _infer(body, path + (0,), env, cx)
            other = cx.fresh()
            ty = Or(a, other) if p is PLUS else And(a, other)
        case Inr(body, p):
            b = _infer(body, path + (0,), env, cx)
            other = cx.fresh()
            ty = Or(other, b) if p is PLUS else And(other, b)
        case Case(scrutinee, x, branch1, y, branch2, _):
            q = scrutinee.pol
            a, b = cx.fresh(), cx.fresh()
            shape = Or(a, b) if q is PLUS else And(a, b)
            uni(_infer(scrutinee, path + (0,), env, cx), shape)
            env1 = dict(env)
            env1[(x, q)] = a
            t1 = _infer(branch1, path + (1,), env1, cx)
            env2 = dict(env)
            env2[(y, q)] = b
            t2 = _infer(branch2, path + (2,), env2, cx)
            uni(t1, t2)
            ty = t1
        case Lam(x, body, p):
            a = cx.fresh()
            env1 = dict(env)
            env1[(x, p)] = a
            b = _infer(body, path + (0,), env1, cx)
            ty = Imp(a, b) if p is PLUS else CoImp(b, a)
        case App(fun, arg, p):
            tf = _infer(fun, path + (0,), env, cx)
            ta = _infer(arg, path + (1,), env, cx)
            res = cx.fresh()
            uni(tf, Imp(ta, res) if p is PLUS else CoImp(res, ta))
            ty = res
        case MPair(pos, neg, _):
            a = _infer(pos, path + (0,), env, cx)
            b = _infer(neg, path + (1,), env, cx)
            ty = CoImp(a, b) if t.pol is PLUS else Imp(a, b)
        case Pi1(body):
            a, b = cx.fresh(), cx.fresh()
            shape = CoImp(a, b) if body.pol is PLUS else Imp(a, b)
            uni(_infer(body, path + (0,), env, cx), shape)
            ty = a
        case Pi2(body):
            a, b = cx.fresh(), cx.fresh()
            shape = CoImp(a, b) if body.pol is PLUS else Imp(a, b)
            uni(_infer(body, path + (0,), env, cx), shape)
            ty = b
        case _:
            raise TypeError(f"not a term: {t!r}")
    cx.node_type[path] = ty
    return ty


def infer_principal(t: Term) -> Principal:
    """Most general basis and type making t a valid subject."""
    for v in check_polarities(t):
        raise Untypable(v.message, v.path)
    cx = _Ctx()
    body = cx.subst.apply(_infer(t, (), {}, cx))
    gamma = sorted((n, cx.subst.apply(f)) for (n, p), f in cx.free.items() if p is PLUS)
    delta = sorted((n, cx.subst.apply(f)) for (n, p), f in cx.free.items() if p is MINUS)
    order = _metavar_order([f for _, f in gamma] + [f for _, f in delta] + [body])
    names = {n: _letter(i) for i, n in enumerate(order)}
    basis = Basis(
        tuple((n, _rename_metavars(f, names)) for n, f in gamma),
        tuple((n, _rename_metavars(f, names)) for n, f in delta),
    )
    scheme = TypeScheme(tuple(names[n] for n in order), _rename_metavars(body, names))
    return Principal(basis, t.pol, scheme)


def schemes_equal(a: TypeScheme, b: TypeScheme) -> bool:
    """Equality modulo renaming of metavariables."""
    na = {n: _letter(i) for i, n in enumerate(_metavar_order([a.body]))}
    nb = {n: _letter(i) for i, n in enumerate(_metavar_order([b.body]))}
    return len(a.metavariables) == len(b.metavariables) and _rename_metavars(
        a.body, na
    ) == _rename_metavars(b.body, nb)


def check(basis: Basis, pol: Polarity, t: Term, a: Formula) -> Derivation:
    """Derivation concluding (gamma; delta) =>pol t : a, or an error.

    Free variables must be assumed in the basis at the polarity they are
    used.  Binders that would shadow a basis name at a different formula
    are renamed, so the end term is alpha-equal to t (and usually t
    itself).
    """
    for v in check_polarities(t):
        raise Untypable(v.message, v.path)
    if pol is not t.pol:
        raise TypeMismatch(f"term is {t.pol} but the judgment wants {pol}")
    cx = _Ctx(seeded=basis)
    got = _infer(t, (), {}, cx)
    try:
        _unify(got, a, cx.subst)
    except UnifyError as e:
        raise TypeMismatch(
            f"term has type {_show(cx.subst.apply(got))}, not {_show(a)}"
        ) from e
    _ground_residuals(cx)
    return _build(t, (), basis, cx)


def _show(f: Formula) -> str:
    from .textio import print_formula

    return print_formula(f)


def _ground_residuals(cx: _Ctx) -> None:
    """Pin any metavariable the constraints left open to top."""
    pending = list(cx.node_type.values()) + list(cx.free.values())
    for f in pending:
        for n in _metavar_order([cx.subst.apply(f)]):
            cx.subst.mapping[n] = Verum()


def _retype(cx: _Ctx, path: tuple[int, ...]) -> Formula:
    return cx.subst.apply(cx.node_type[path])


def _unshadow(
    binder: str, q: Polarity, formula: Formula, basis: Basis, body: Term
) -> tuple[str, Term]:
    held = basis.lookup(binder, q)
    if held is None or held == formula:
        return binder, body
    avoid = basis.names() | {n for n, _ in free_vars(body)} | {binder}
    renamed = fresh_name(binder, avoid)
    return renamed, substitute(body, binder, q, Var(renamed, q))


def _build(t: Term, path: tuple[int, ...], basis: Basis, cx: _Ctx) -> Derivation:
    ty = _retype(cx, path)

    def node(rule: str, term: Term, *prems: Derivation) -> Derivation:
        return Derivation(rule, Judgment(basis, term.pol, term, ty), tuple(prems))

    match t:
        case Var(_, p):
            return node("Hyp+" if p is PLUS else "Hyp-", t)
        case Top():
            return node("TopI", t)
        case Bot():
            return node("BotI_d", t)
        case Abort(body, p):
            rule = "BotE" if body.pol is PLUS else "TopE_d"
            d0 = _build(body, path + (0,), basis, cx)
            return node(rule, Abort(d0.concl.term, p), d0)
        case Pair(left, right, p):
            rule = "AndI" if p is PLUS else "OrI_d"
            d0 = _build(left, path + (0,), basis, cx)
            d1 = _build(right, path + (1,), basis, cx)
            return node(rule, Pair(d0.concl.term, d1.concl.term, p), d0, d1)
        case Fst(body, p):
            rule = "AndE1" if p is PLUS else "OrE_d1"
            d0 = _build(body, path + (0,), basis, cx)
            return node(rule, Fst(d0.concl.term, p), d0)
        case Snd(body, p):
            rule = "AndE2" if p is PLUS else "OrE_d2"
            d0 = _build(body, path + (0,), basis, cx)
            return node(rule, Snd(d0.concl.term, p), d0)
        case Inl(body, p):
            rule = "OrI1" if p is PLUS else "AndI_d1"
            d0 = _build(body, path + (0,), basis, cx)
            return node(rule, Inl(d0.concl.term, p), d0)
        case Inr(body, p):
            rule = "OrI2" if p is PLUS else "AndI_d2"
            d0 = _build(body, path + (0,), basis, cx)
            return node(rule, Inr(d0.concl.term, p), d0)
        case Lam(x, body, p):
            if p is PLUS:
                rule, bound = "ImpI", ty.left
            else:
                rule, bound = "CoImpI_d", ty.right
            x, body = _unshadow(x, p, bound, basis, body)
            d0 = _build(body, path + (0,), basis.extend(x, p, bound), cx)
            return node(rule, Lam(x, d0.concl.term, p), d0)
        case App(fun, arg, p):
            rule = "ImpE" if p is PLUS else "CoImpE_d"
            d0 = _build(fun, path + (0,), basis, cx)
            d1 = _build(arg, path + (1,), basis, cx)
            return node(rule, App(d0.concl.term, d1.concl.term, p), d0, d1)
        case MPair(pos, neg, p):
            rule = "CoImpI" if p is PLUS else "ImpI_d"
            d0 = _build(pos, path + (0,), basis, cx)
            d1 = _build(neg, path + (1,), basis, cx)
            return node(rule, MPair(d0.concl.term, d1.concl.term, p), d0, d1)
        case Pi1(body):
            rule = "CoImpE1" if body.pol is PLUS else "ImpE_d1"
            d0 = _build(body, path + (0,), basis, cx)
            return node(rule, Pi1(d0.concl.term), d0)
        case Pi2(body):
            rule = "CoImpE2" if body.pol is PLUS else "ImpE_d2"
            d0 = _build(body, path + (0,), basis, cx)
            return node(rule, Pi2(d0.concl.term), d0)
        case Case(scrutinee, x, branch1, y, branch2, p):
            rule = "OrE" if scrutinee.pol is PLUS else "AndE_d"
            q = scrutinee.pol
            d0 = _build(scrutinee, path + (0,), basis, cx)
            sty = d0.concl.type
            x, branch1 = _unshadow(x, q, sty.left, basis, branch1)
            y, branch2 = _unshadow(y, q, sty.right, basis, branch2)
            d1 = _build(branch1, path + (1,), basis.extend(x, q, sty.left), cx)
            d2 = _build(branch2, path + (2,), basis.extend(y, q, sty.right), cx)
            term = Case(d0.concl.term, x, d1.concl.term, y, d2.concl.term, p)
            return node(rule, term, d0, d1, d2)
    raise TypeError(f"not a term: {t!r}")
