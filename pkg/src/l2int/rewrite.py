"""Reduction to normal form.

Three redex families: beta (a constructor meets its matching destructor),
perm (a destructor applied to a case is pushed into both branches), and
simp (a case neither of whose binders occurs in one branch collapses to
that branch, preferring the left one).  A term is normal when no family
applies anywhere.

normalize() contracts one redex at a time, betas anywhere before perms
anywhere before simps, leftmost-outermost within a family.  Fuel bounds
the step count; running out is an explicit outcome that keeps the trace.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .syntax import (
    PLUS,
    MINUS,
    App,
    Case,
    Fst,
    Inl,
    Inr,
    Lam,
    MPair,
    Pair,
    Pi1,
    Pi2,
    Snd,
    Term,
    Var,
    children,
    free_vars,
    fresh_name,
    replace_at,
    substitute,
    subterm_at,
)

KINDS = ("beta", "perm", "simp")


@dataclass(frozen=True)
class RedexPosition:
    path: tuple[int, ...]
    kind: str
    detail: str


class NotARedex(Exception):
    pass


class FuelExhausted(Exception):
    """Raised by callers that need a normal form; carries the partial work."""

    def __init__(self, term: Term, steps: list["TraceStep"]):
        super().__init__(f"no normal form within {len(steps)} steps")
        self.term = term
        self.steps = steps


def _redexes_here(t: Term) -> list[tuple[str, str]]:
    out: list[tuple[str, str]] = []
    match t:
        case App(Lam(), _, _):
            out.append(("beta", "beta-App"))
        case App(Case(), _, _):
            out.append(("perm", "perm-App"))
        case Pi1(MPair()):
            out.append(("beta", "beta-Pi1"))
        case Pi1(Case()):
            out.append(("perm", "perm-Pi1"))
        case Pi2(MPair()):
            out.append(("beta", "beta-Pi2"))
        case Pi2(Case()):
            out.append(("perm", "perm-Pi2"))
        case Fst(Pair(), _):
            out.append(("beta", "beta-Fst"))
        case Fst(Case(), _):
            out.append(("perm", "perm-Fst"))
        case Snd(Pair(), _):
            out.append(("beta", "beta-Snd"))
        case Snd(Case(), _):
            out.append(("perm", "perm-Snd"))
        case Case(scrutinee=Inl()):
            out.append(("beta", "beta-CaseInl"))
        case Case(scrutinee=Inr()):
            out.append(("beta", "beta-CaseInr"))
        case Case(scrutinee=Case()):
            out.append(("perm", f"perm-Case{t.pol}"))
    if isinstance(t, Case):
        q = t.scrutinee.pol
        binders = {(t.binder1, q), (t.binder2, q)}
        if not (binders & free_vars(t.branch1)):
            out.append(("simp", "simp-left"))
        if not (binders & free_vars(t.branch2)):
            out.append(("simp", "simp-right"))
    return out


def find_redexes(t: Term) -> list[RedexPosition]:
    """Every redex position, outermost first, left to right."""
    out: list[RedexPosition] = []

    def go(t: Term, path: tuple[int, ...]) -> None:
        for kind, detail in _redexes_here(t):
            out.append(RedexPosition(path, kind, detail))
        for i, c in enumerate(children(t)):
            go(c, path + (i,))

    go(t, ())
    return out


def is_normal(t: Term) -> bool:
    return not find_redexes(t)


def _freshen_branch(binder: str, body: Term, q, avoid: Term | tuple[Term, ...]):
    """Rename binder away from the free variables of what moves under it."""
    moved = avoid if isinstance(avoid, tuple) else (avoid,)
    incoming = set()
    for u in moved:
        incoming |= free_vars(u)
    if (binder, q) not in incoming:
        return binder, body
    taken = {n for n, _ in incoming | free_vars(body)} | {binder}
    renamed = fresh_name(binder, taken)
    return renamed, substitute(body, binder, q, Var(renamed, q))


def _push_into_case(c: Case, wrap, pol, avoid: tuple[Term, ...] = ()) -> Case:
    q = c.scrutinee.pol
    x, s1 = _freshen_branch(c.binder1, c.branch1, q, avoid)
    y, s2 = _freshen_branch(c.binder2, c.branch2, q, avoid)
    return Case(c.scrutinee, x, wrap(s1), y, wrap(s2), pol)


def _contract(t: Term, detail: str) -> Term:
    match detail, t:
        case "beta-App", App(Lam(x, body, p), s, _):
            return substitute(body, x, p, s)
        case "beta-Pi1", Pi1(MPair(pos, _, _)):
            return pos
        case "beta-Pi2", Pi2(MPair(_, neg, _)):
            return neg
        case "beta-Fst", Fst(Pair(left, _, _), _):
            return left
        case "beta-Snd", Snd(Pair(_, right, _), _):
            return right
        case "beta-CaseInl", Case(Inl(r, q), x, s1, _, _, _):
            return substitute(s1, x, q, r)
        case "beta-CaseInr", Case(Inr(r, q), _, _, y, s2, _):
            return substitute(s2, y, q, r)
        case "perm-App", App(Case() as c, u, p):
            return _push_into_case(c, lambda b: App(b, u, p), p, avoid=(u,))
        case "perm-Pi1", Pi1(Case() as c):
            return _push_into_case(c, Pi1, PLUS)
        case "perm-Pi2", Pi2(Case() as c):
            return _push_into_case(c, Pi2, MINUS)
        case "perm-Fst", Fst(Case() as c, p):
            return _push_into_case(c, lambda b: Fst(b, p), p)
        case "perm-Snd", Snd(Case() as c, p):
            return _push_into_case(c, lambda b: Snd(b, p), p)
        case ("perm-Case+" | "perm-Case-"), Case(Case() as c, z1, u1, z2, u2, p):
            wrap = lambda b: Case(b, z1, u1, z2, u2, p)
            return _push_into_case(c, wrap, p, avoid=(u1, u2))
        case "simp-left", Case(_, _, s1, _, _, _):
            return s1
        case "simp-right", Case(_, _, _, _, s2, _):
            return s2
    raise NotARedex(f"no {detail} redex at this position")


def step(t: Term, pos: RedexPosition) -> Term:
    """Contract the redex at pos; the rest of t is untouched."""
    sub = subterm_at(t, pos.path)
    if (pos.kind, pos.detail) not in _redexes_here(sub):
        raise NotARedex(f"no {pos.detail} redex at {pos.path}")
    return replace_at(t, pos.path, _contract(sub, pos.detail))


@dataclass(frozen=True)
class TraceStep:
    position: RedexPosition
    after: Term


@dataclass
class NormalizeResult:
    term: Term
    steps: list[TraceStep] = field(default_factory=list)
    exhausted: bool = False


DEFAULT_FUEL = 10_000


def _pick(t: Term) -> RedexPosition | None:
    rs = find_redexes(t)
    if not rs:
        return None
    return min(rs, key=lambda r: KINDS.index(r.kind))


def normalize(t: Term, fuel: int = DEFAULT_FUEL) -> NormalizeResult:
    steps: list[TraceStep] = []
    while True:
        pos = _pick(t)
        if pos is None:
            return NormalizeResult(t, steps)
        if len(steps) >= fuel:
            return NormalizeResult(t, steps, exhausted=True)
        t = step(t, pos)
        steps.append(TraceStep(pos, t))
