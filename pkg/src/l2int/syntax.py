"""Core syntax: formulas, polarized terms, bases.

Terms come in two sorts distinguished by a polarity: plus terms stand for
proofs, minus terms for refutations.  A variable is identified by its name
*and* its polarity, so x+ and x- are unrelated.  Binders (lambda and the
case branches) bind one polarity only.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass


class Polarity(enum.Enum):
    PLUS = "+"
    MINUS = "-"

    def flip(self) -> "Polarity":
        return MINUS if self is PLUS else PLUS

    def __str__(self) -> str:
        return self.value


PLUS = Polarity.PLUS
MINUS = Polarity.MINUS


# ---------------------------------------------------------------- formulas


class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Falsum(Formula):
    pass


@dataclass(frozen=True)
class Verum(Formula):
    pass


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
class CoImp(Formula):
    """b -< a: something that proves b while refuting a."""

    left: Formula
    right: Formula


@dataclass(frozen=True)
class MetaVar(Formula):
    """Placeholder used by type inference; never produced by the parser."""

    name: str


def atoms_of(f: Formula) -> set[str]:
    match f:
        case Atom(name):
            return {name}
        case And(a, b) | Or(a, b) | Imp(a, b) | CoImp(a, b):
            return atoms_of(a) | atoms_of(b)
        case _:
            return set()


def metavars_of(f: Formula) -> set[str]:
    match f:
        case MetaVar(name):
            return {name}
        case And(a, b) | Or(a, b) | Imp(a, b) | CoImp(a, b):
            return metavars_of(a) | metavars_of(b)
        case _:
            return set()


def is_ground(f: Formula) -> bool:
    return not metavars_of(f)


# ------------------------------------------------------------------- terms


class Term:
    __slots__ = ()


@dataclass(frozen=True)
class Var(Term):
    name: str
    pol: Polarity


@dataclass(frozen=True)
class Top(Term):
    """The canonical proof of verum; always positive."""

    @property
    def pol(self) -> Polarity:
        return PLUS


@dataclass(frozen=True)
class Bot(Term):
    """The canonical refutation of falsum; always negative."""

    @property
    def pol(self) -> Polarity:
        return MINUS


@dataclass(frozen=True)
class Abort(Term):
    """Anything follows from a proof of falsum or a refutation of verum."""

    body: Term
    pol: Polarity


@dataclass(frozen=True)
class Pair(Term):
    """Plus: proof of a conjunction.  Minus: refutation of a disjunction."""

    left: Term
    right: Term
    pol: Polarity


@dataclass(frozen=True)
class Fst(Term):
    body: Term
    pol: Polarity


@dataclass(frozen=True)
class Snd(Term):
    body: Term
    pol: Polarity


@dataclass(frozen=True)
class Inl(Term):
    body: Term
    pol: Polarity


@dataclass(frozen=True)
class Inr(Term):
    body: Term
    pol: Polarity


@dataclass(frozen=True)
class Case(Term):
    """Branch on a pair-like hypothesis.

    The binders share the scrutinee's polarity; the branches share the
    polarity of the whole term.  binder1 scopes branch1 only, binder2
    scopes branch2 only.
    """

    scrutinee: Term
    binder1: str
    branch1: Term
    binder2: str
    branch2: Term
    pol: Polarity


@dataclass(frozen=True)
class Lam(Term):
    """Plus: proof of an implication.  Minus: refutation of a co-implication.

    The binder has the polarity of the whole term.
    """

    binder: str
    body: Term
    pol: Polarity


@dataclass(frozen=True)
class App(Term):
    fun: Term
    arg: Term
    pol: Polarity


@dataclass(frozen=True)
class MPair(Term):
    """Mixed pair: a plus component and a minus component.

    Plus: proof of a co-implication.  Minus: refutation of an implication.
    """

    pos: Term
    neg: Term
    pol: Polarity


@dataclass(frozen=True)
class Pi1(Term):
    """First projection of a mixed pair; always positive."""

    body: Term

    @property
    def pol(self) -> Polarity:
        return PLUS


@dataclass(frozen=True)
class Pi2(Term):
    """Second projection of a mixed pair; always negative."""

    body: Term

    @property
    def pol(self) -> Polarity:
        return MINUS


def children(t: Term) -> tuple[Term, ...]:
    """Immediate subterms, left to right.  Binder names are not children."""
    match t:
        case Var() | Top() | Bot():
            return ()
        case Abort(body) | Fst(body) | Snd(body) | Inl(body) | Inr(body):
            return (body,)
        case Pi1(body) | Pi2(body):
            return (body,)
        case Pair(left, right):
            return (left, right)
        case App(fun, arg):
            return (fun, arg)
        case MPair(pos, neg):
            return (pos, neg)
        case Lam(_, body):
            return (body,)
        case Case(scrutinee, _, branch1, _, branch2):
            return (scrutinee, branch1, branch2)
    raise TypeError(f"not a term: {t!r}")


def with_children(t: Term, new: tuple[Term, ...]) -> Term:
    match t:
        case Var() | Top() | Bot():
            return t
        case Abort(_, pol):
            return Abort(new[0], pol)
        case Fst(_, pol):
            return Fst(new[0], pol)
        case Snd(_, pol):
            return Snd(new[0], pol)
        case Inl(_, pol):
            return Inl(new[0], pol)
        case Inr(_, pol):
            return Inr(new[0], pol)
        case Pi1():
            return Pi1(new[0])
        case Pi2():
            return Pi2(new[0])
        case Pair(_, _, pol):
            return Pair(new[0], new[1], pol)
        case App(_, _, pol):
            return App(new[0], new[1], pol)
        case MPair(_, _, pol):
            return MPair(new[0], new[1], pol)
        case Lam(binder, _, pol):
            return Lam(binder, new[0], pol)
        case Case(_, binder1, _, binder2, _, pol):
            return Case(new[0], binder1, new[1], binder2, new[2], pol)
    raise TypeError(f"not a term: {t!r}")


def subterm_at(t: Term, path: tuple[int, ...]) -> Term:
    for i in path:
        t = children(t)[i]
    return t


def replace_at(t: Term, path: tuple[int, ...], new: Term) -> Term:
    if not path:
        return new
    kids = list(children(t))
    kids[path[0]] = replace_at(kids[path[0]], path[1:], new)
    return with_children(t, tuple(kids))


def term_size(t: Term) -> int:
    return 1 + sum(term_size(c) for c in children(t))


def free_vars(t: Term) -> set[tuple[str, Polarity]]:
    match t:
        case Var(name, pol):
            return {(name, pol)}
        case Top() | Bot():
            return set()
        case Lam(binder, body, pol):
            return free_vars(body) - {(binder, pol)}
        case Case(scrutinee, binder1, branch1, binder2, branch2, _):
            q = scrutinee.pol
            return (
                free_vars(scrutinee)
                | (free_vars(branch1) - {(binder1, q)})
                | (free_vars(branch2) - {(binder2, q)})
            )
        case _:
            out: set[tuple[str, Polarity]] = set()
            for c in children(t):
                out |= free_vars(c)
            return out


class PolarityMismatch(Exception):
    """Substituting a term of one polarity for a variable of the other."""


def fresh_name(base: str, taken: set[str]) -> str:
    """base with the smallest numeric suffix that avoids taken."""
    if base not in taken:
        return base
    i = 1
    while f"{base}{i}" in taken:
        i += 1
    return f"{base}{i}"


def _names(vs: set[tuple[str, Polarity]]) -> set[str]:
    return {n for n, _ in vs}


def substitute(t: Term, name: str, pol: Polarity, s: Term) -> Term:
    """t with s for every free occurrence of the variable (name, pol).

    Capture is avoided by renaming binders with a minimal numeric suffix.
    """
    if s.pol is not pol:
        raise PolarityMismatch(f"cannot substitute a {s.pol} term for {name}{pol}")
    fv_s = free_vars(s)

    def go(t: Term) -> Term:
        match t:
            case Var(n, p):
                return s if (n, p) == (name, pol) else t
            case Top() | Bot():
                return t
            case Lam(binder, body, p):
                if (binder, p) == (name, pol):
                    return t
                if (binder, p) in fv_s and (name, pol) in free_vars(body):
                    avoid = _names(fv_s | free_vars(body)) | {binder}
                    b2 = fresh_name(binder, avoid)
                    body = substitute(body, binder, p, Var(b2, p))
                    return Lam(b2, go(body), p)
                return Lam(binder, go(body), p)
            case Case(scrutinee, b1, s1, b2, s2, p):
                q = scrutinee.pol
                r = go(scrutinee)

                def branch(b: str, body: Term) -> tuple[str, Term]:
                    if (b, q) == (name, pol):
                        return b, body
                    if (b, q) in fv_s and (name, pol) in free_vars(body):
                        avoid = _names(fv_s | free_vars(body)) | {b}
                        nb = fresh_name(b, avoid)
                        return nb, go(substitute(body, b, q, Var(nb, q)))
                    return b, go(body)

                nb1, ns1 = branch(b1, s1)
                nb2, ns2 = branch(b2, s2)
                return Case(r, nb1, ns1, nb2, ns2, p)
            case _:
                return with_children(t, tuple(go(c) for c in children(t)))

    return go(t)


def alpha_eq(t: Term, u: Term) -> bool:
    """Structural equality up to renaming of bound variables."""

    def go(t: Term, u: Term, env_t: dict, env_u: dict, depth: int) -> bool:
        if type(t) is not type(u) or t.pol is not u.pol:
            return False
        match t, u:
            case Var(n1, p), Var(n2, _):
                k1, k2 = env_t.get((n1, p)), env_u.get((n2, p))
                if k1 is None and k2 is None:
                    return n1 == n2
                return k1 == k2
            case Lam(b1, body1, p), Lam(b2, body2, _):
                e1 = dict(env_t)
                e2 = dict(env_u)
                e1[(b1, p)] = depth
                e2[(b2, p)] = depth
                return go(body1, body2, e1, e2, depth + 1)
            case Case(r1, x1, s1, y1, u1, _), Case(r2, x2, s2, y2, u2, _):
                q1, q2 = r1.pol, r2.pol
                if q1 is not q2:
                    return False
                if not go(r1, r2, env_t, env_u, depth):
                    return False
                e1 = dict(env_t)
                e2 = dict(env_u)
                e1[(x1, q1)] = depth
                e2[(x2, q2)] = depth
                if not go(s1, s2, e1, e2, depth + 1):
                    return False
                e1 = dict(env_t)
                e2 = dict(env_u)
                e1[(y1, q1)] = depth
                e2[(y2, q2)] = depth
                return go(u1, u2, e1, e2, depth + 1)
            case _:
                ct, cu = children(t), children(u)
                return len(ct) == len(cu) and all(
                    go(a, b, env_t, env_u, depth) for a, b in zip(ct, cu)
                )

    return go(t, u, {}, {}, 0)


def alpha_key(t: Term):
    """Hashable key equal for alpha-equivalent terms; free vars keep identity."""

    def go(t: Term, env: dict, depth: int):
        match t:
            case Var(n, p):
                k = env.get((n, p))
                return ("b", k, p.value) if k is not None else ("f", n, p.value)
            case Top():
                return ("top",)
            case Bot():
                return ("bot",)
            case Lam(b, body, p):
                e = dict(env)
                e[(b, p)] = depth
                return ("lam", p.value, go(body, e, depth + 1))
            case Case(r, x, s, y, u, p):
                q = r.pol
                ex = dict(env)
                ex[(x, q)] = depth
                ey = dict(env)
                ey[(y, q)] = depth
                return (
                    "case",
                    p.value,
                    go(r, env, depth),
                    go(s, ex, depth + 1),
                    go(u, ey, depth + 1),
                )
            case _:
                tag = type(t).__name__.lower()
                return (tag, t.pol.value) + tuple(go(c, env, depth) for c in children(t))

    return go(t, {}, 0)


# --------------------------------------------------- polarity well-formedness


@dataclass(frozen=True)
class PolarityViolation:
    path: tuple[int, ...]
    message: str


def check_polarities(t: Term) -> list[PolarityViolation]:
    """All structural polarity violations in t; empty means well formed."""
    out: list[PolarityViolation] = []

    def bad(path, msg):
        out.append(PolarityViolation(path, msg))

    def go(t: Term, path: tuple[int, ...]) -> None:
        match t:
            case Var() | Top() | Bot():
                pass
            case Abort(body, _):
                go(body, path + (0,))
            case Pair(left, right, pol):
                if left.pol is not pol:
                    bad(path, f"pair component 1 is {left.pol}, pair is {pol}")
                if right.pol is not pol:
                    bad(path, f"pair component 2 is {right.pol}, pair is {pol}")
                go(left, path + (0,))
                go(right, path + (1,))
            case Fst(body, pol) | Snd(body, pol):
                if body.pol is not pol:
                    bad(path, f"projection body is {body.pol}, projection is {pol}")
                go(body, path + (0,))
            case Inl(body, pol) | Inr(body, pol):
                if body.pol is not pol:
                    bad(path, f"injection body is {body.pol}, injection is {pol}")
                go(body, path + (0,))
            case Case(scrutinee, _, branch1, _, branch2, pol):
                if branch1.pol is not pol:
                    bad(path, f"branch 1 is {branch1.pol}, case is {pol}")
                if branch2.pol is not pol:
                    bad(path, f"branch 2 is {branch2.pol}, case is {pol}")
                go(scrutinee, path + (0,))
                go(branch1, path + (1,))
                go(branch2, path + (2,))
            case Lam(_, body, pol):
                if body.pol is not pol:
                    bad(path, f"lambda body is {body.pol}, lambda is {pol}")
                go(body, path + (0,))
            case App(fun, arg, pol):
                if fun.pol is not pol:
                    bad(path, f"applied term is {fun.pol}, application is {pol}")
                if arg.pol is not pol:
                    bad(path, f"argument is {arg.pol}, application is {pol}")
                go(fun, path + (0,))
                go(arg, path + (1,))
            case MPair(pos, neg, _):
                if pos.pol is not PLUS:
                    bad(path, "mixed pair component 1 must be +")
                if neg.pol is not MINUS:
                    bad(path, "mixed pair component 2 must be -")
                go(pos, path + (0,))
                go(neg, path + (1,))
            case Pi1(body) | Pi2(body):
                go(body, path + (0,))

    go(t, ())
    return out


# ------------------------------------------------------------------- bases


@dataclass(frozen=True)
class Basis:
    """Assumptions: gamma maps names to formulas taken as proved, delta as
    refuted.  Entries are kept sorted by name."""

    gamma: tuple[tuple[str, Formula], ...] = ()
    delta: tuple[tuple[str, Formula], ...] = ()

    @staticmethod
    def make(gamma: dict[str, Formula] | None = None, delta: dict[str, Formula] | None = None) -> "Basis":
        g = tuple(sorted((gamma or {}).items()))
        d = tuple(sorted((delta or {}).items()))
        return Basis(g, d)

    def side(self, pol: Polarity) -> tuple[tuple[str, Formula], ...]:
        return self.gamma if pol is PLUS else self.delta

    def lookup(self, name: str, pol: Polarity) -> Formula | None:
        for n, f in self.side(pol):
            if n == name:
                return f
        return None

    def extend(self, name: str, pol: Polarity, formula: Formula) -> "Basis":
        entries = dict(self.side(pol))
        entries[name] = formula
        new = tuple(sorted(entries.items()))
        return Basis(new, self.delta) if pol is PLUS else Basis(self.gamma, new)

    def merge(self, other: "Basis") -> "Basis":
        g = dict(self.gamma)
        g.update(other.gamma)
        d = dict(self.delta)
        d.update(other.delta)
        return Basis(tuple(sorted(g.items())), tuple(sorted(d.items())))

    def is_sub(self, other: "Basis") -> bool:
        return set(self.gamma) <= set(other.gamma) and set(self.delta) <= set(other.delta)

    def names(self) -> set[str]:
        return {n for n, _ in self.gamma} | {n for n, _ in self.delta}

    def is_empty(self) -> bool:
        return not self.gamma and not self.delta
