"""Random well-typed inputs and a brute-force reduction oracle.

gen_derivation grows a derivation top down: starting from a metavariable
goal it repeatedly picks an applicable rule (weighted, seeded), refining
the goal by unification, until the height budget forces assumption
leaves.  Leftover metavariables are pinned to random atoms and the term
is run back through check(), so the result is always a valid derivation
of height at most max_height.  Variable names are globally unique, so
generated terms never shadow and never capture.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .derivation import Derivation
from .rewrite import find_redexes, step
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
    alpha_key,
)
from .typecheck import Substitution, UnifyError, _metavar_order, _unify, check


class GenerationFailed(Exception):
    pass


class _Retry(Exception):
    pass


@dataclass
class GenConfig:
    seed: int = 0
    max_height: int = 6
    atom_pool: tuple[str, ...] = ("a", "b", "c")
    rule_weights: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if not self.atom_pool:
            raise ValueError("atom_pool must not be empty")
        if self.max_height < 0:
            raise ValueError("max_height must be at least 0")


DEFAULT_WEIGHTS = {
    "Hyp+": 3.0, "Hyp-": 3.0,
    "TopI": 0.4, "BotI_d": 0.4,
    "BotE": 0.25, "TopE_d": 0.25,
    "AndI": 1.0, "OrI_d": 1.0,
    "AndE1": 0.7, "AndE2": 0.7, "OrE_d1": 0.7, "OrE_d2": 0.7,
    "OrI1": 0.8, "OrI2": 0.8, "AndI_d1": 0.8, "AndI_d2": 0.8,
    "ImpI": 1.2, "CoImpI_d": 1.2,
    "ImpE": 0.9, "CoImpE_d": 0.9,
    "ImpI_d": 1.0, "CoImpI": 1.0,
    "ImpE_d1": 0.6, "ImpE_d2": 0.6, "CoImpE1": 0.6, "CoImpE2": 0.6,
    "OrE": 0.7, "AndE_d": 0.7,
}

_MAX_NODES = 4000
_ATTEMPTS = 8


class _Gen:
    def __init__(self, cfg: GenConfig, rng: random.Random):
        self.cfg = cfg
        self.rng = rng
        self.subst = Substitution()
        self.free: dict[tuple[str, Polarity], Formula] = {}
        self.names = itertools.count()
        self.metas: list[str] = []
        self.nodes = 0
        self.weights = {**DEFAULT_WEIGHTS, **cfg.rule_weights}

    def fresh_meta(self) -> MetaVar:
        name = f"g{len(self.metas)}"
        self.metas.append(name)
        return MetaVar(name)

    def fresh_name(self) -> str:
        return f"x{next(self.names)}"

    def unify(self, a: Formula, b: Formula) -> None:
        _unify(a, b, self.subst)

    def hyp(self, goal: Formula, pol: Polarity, scope: dict) -> Term:
        candidates = [
            (n, f)
            for (n, p), f in itertools.chain(scope.items(), self.free.items())
            if p is pol
        ]
        self.rng.shuffle(candidates)
        if self.rng.random() < 0.7:
            for name, ty in candidates[:4]:
                snapshot = dict(self.subst.mapping)
                try:
                    self.unify(ty, goal)
                    return Var(name, pol)
                except UnifyError:
                    self.subst.mapping = snapshot
        name = self.fresh_name()
        self.free[(name, pol)] = goal
        return Var(name, pol)

    def go(self, goal: Formula, pol: Polarity, budget: int, scope: dict) -> Term:
        self.nodes += 1
        if self.nodes > _MAX_NODES:
            raise _Retry
        if budget <= 0:
            return self.hyp(goal, pol, scope)
        g = self.subst.walk(goal)

        def matches(cls) -> bool:
            return isinstance(g, MetaVar | cls)

        moves = ["Hyp+" if pol is PLUS else "Hyp-", "BotE", "TopE_d"]
        if pol is PLUS:
            moves += ["AndE1", "AndE2", "ImpE", "ImpE_d1", "CoImpE1", "OrE", "AndE_d"]
            if matches(Verum):
                moves.append("TopI")
            if matches(And):
                moves.append("AndI")
            if matches(Or):
                moves += ["OrI1", "OrI2"]
            if matches(Imp):
                moves.append("ImpI")
            if matches(CoImp):
                moves.append("CoImpI")
        else:
            moves += ["OrE_d1", "OrE_d2", "CoImpE_d", "ImpE_d2", "CoImpE2", "OrE", "AndE_d"]
            if matches(Falsum):
                moves.append("BotI_d")
            if matches(Or):
                moves.append("OrI_d")
            if matches(And):
                moves += ["AndI_d1", "AndI_d2"]
            if matches(Imp):
                moves.append("ImpI_d")
            if matches(CoImp):
                moves.append("CoImpI_d")
        weighted = [(m, self.weights.get(m, 1.0)) for m in moves]
        weighted = [(m, w) for m, w in weighted if w > 0]
        if not weighted:
            return self.hyp(goal, pol, scope)
        total = sum(w for _, w in weighted)
        pick = self.rng.random() * total
        rule = weighted[-1][0]
        for m, w in weighted:
            pick -= w
            if pick <= 0:
                rule = m
                break
        return self.apply_rule(rule, goal, pol, budget, scope)

    def apply_rule(self, rule: str, goal, pol, budget: int, scope: dict) -> Term:
        b = budget - 1
        m = self.fresh_meta
        match rule:
            case "Hyp+" | "Hyp-":
                return self.hyp(goal, pol, scope)
            case "TopI":
                self.unify(goal, Verum())
                return Top()
            case "BotI_d":
                self.unify(goal, Falsum())
                return Bot()
            case "BotE":
                return Abort(self.go(Falsum(), PLUS, b, scope), pol)
            case "TopE_d":
                return Abort(self.go(Verum(), MINUS, b, scope), pol)
            case "AndI":
                a1, a2 = m(), m()
                self.unify(goal, And(a1, a2))
                return Pair(self.go(a1, PLUS, b, scope), self.go(a2, PLUS, b, scope), PLUS)
            case "OrI_d":
                a1, a2 = m(), m()
                self.unify(goal, Or(a1, a2))
                return Pair(self.go(a1, MINUS, b, scope), self.go(a2, MINUS, b, scope), MINUS)
            case "AndE1":
                return Fst(self.go(And(goal, m()), PLUS, b, scope), PLUS)
            case "AndE2":
                return Snd(self.go(And(m(), goal), PLUS, b, scope), PLUS)
            case "OrE_d1":
                return Fst(self.go(Or(goal, m()), MINUS, b, scope), MINUS)
            case "OrE_d2":
                return Snd(self.go(Or(m(), goal), MINUS, b, scope), MINUS)
            case "OrI1":
                a1, a2 = m(), m()
                self.unify(goal, Or(a1, a2))
                return Inl(self.go(a1, PLUS, b, scope), PLUS)
            case "OrI2":
                a1, a2 = m(), m()
                self.unify(goal, Or(a1, a2))
                return Inr(self.go(a2, PLUS, b, scope), PLUS)
            case "AndI_d1":
                a1, a2 = m(), m()
                self.unify(goal, And(a1, a2))
                return Inl(self.go(a1, MINUS, b, scope), MINUS)
            case "AndI_d2":
                a1, a2 = m(), m()
                self.unify(goal, And(a1, a2))
                return Inr(self.go(a2, MINUS, b, scope), MINUS)
            case "ImpI":
                a1, a2 = m(), m()
                self.unify(goal, Imp(a1, a2))
                x = self.fresh_name()
                inner = dict(scope)
                inner[(x, PLUS)] = a1
                return Lam(x, self.go(a2, PLUS, b, inner), PLUS)
            case "CoImpI_d":
                a1, a2 = m(), m()
                self.unify(goal, CoImp(a1, a2))
                x = self.fresh_name()
                inner = dict(scope)
                inner[(x, MINUS)] = a2
                return Lam(x, self.go(a1, MINUS, b, inner), MINUS)
            case "ImpE":
                arg = m()
                fun = self.go(Imp(arg, goal), PLUS, b, scope)
                return App(fun, self.go(arg, PLUS, b, scope), PLUS)
            case "CoImpE_d":
                arg = m()
                fun = self.go(CoImp(goal, arg), MINUS, b, scope)
                return App(fun, self.go(arg, MINUS, b, scope), MINUS)
            case "ImpI_d":
                a1, a2 = m(), m()
                self.unify(goal, Imp(a1, a2))
                return MPair(self.go(a1, PLUS, b, scope), self.go(a2, MINUS, b, scope), MINUS)
            case "CoImpI":
                a1, a2 = m(), m()
                self.unify(goal, CoImp(a1, a2))
                return MPair(self.go(a1, PLUS, b, scope), self.go(a2, MINUS, b, scope), PLUS)
            case "ImpE_d1":
                return Pi1(self.go(Imp(goal, m()), MINUS, b, scope))
            case "ImpE_d2":
                return Pi2(self.go(Imp(m(), goal), MINUS, b, scope))
            case "CoImpE1":
                return Pi1(self.go(CoImp(goal, m()), PLUS, b, scope))
            case "CoImpE2":
                return Pi2(self.go(CoImp(m(), goal), PLUS, b, scope))
            case "OrE" | "AndE_d":
                q = PLUS if rule == "OrE" else MINUS
                a1, a2 = m(), m()
                shape = Or(a1, a2) if rule == "OrE" else And(a1, a2)
                scrutinee = self.go(shape, q, b, scope)
                x, y = self.fresh_name(), self.fresh_name()
                in1 = dict(scope)
                in1[(x, q)] = a1
                branch1 = self.go(goal, pol, b, in1)
                in2 = dict(scope)
                in2[(y, q)] = a2
                branch2 = self.go(goal, pol, b, in2)
                return Case(scrutinee, x, branch1, y, branch2, pol)
        raise GenerationFailed(f"unknown rule {rule!r}")

    def ground(self) -> None:
        for name in self.metas:
            if isinstance(self.subst.walk(MetaVar(name)), MetaVar):
                root = self.subst.walk(MetaVar(name))
                self.subst.mapping[root.name] = Atom(self.rng.choice(self.cfg.atom_pool))


def gen_derivation(cfg: GenConfig) -> Derivation:
    """A valid derivation of height at most cfg.max_height, seeded by cfg."""
    rng = random.Random(cfg.seed)
    for _ in range(_ATTEMPTS):
        try:
            return _generate(cfg, rng, None, None)
        except _Retry:
            continue
    raise GenerationFailed("generated terms kept exceeding the size budget")


def gen_derivation_of(cfg: GenConfig, goal: Formula, pol: Polarity) -> Derivation:
    """Like gen_derivation, but concluding the given formula and polarity."""
    rng = random.Random(cfg.seed)
    for _ in range(_ATTEMPTS):
        try:
            return _generate(cfg, rng, goal, pol)
        except _Retry:
            continue
    raise GenerationFailed("generated terms kept exceeding the size budget")


def _generate(
    cfg: GenConfig, rng: random.Random, goal: Formula | None, pol: Polarity | None
) -> Derivation:
    g = _Gen(cfg, rng)
    if pol is None:
        pol = rng.choice((PLUS, MINUS))
    if goal is None:
        goal = g.fresh_meta()
    budget = rng.randint(0, cfg.max_height)
    term = g.go(goal, pol, budget, {})
    g.ground()
    gamma = {n: g.subst.apply(f) for (n, p), f in g.free.items() if p is PLUS}
    delta = {n: g.subst.apply(f) for (n, p), f in g.free.items() if p is MINUS}
    basis = Basis.make(gamma, delta)
    try:
        return check(basis, pol, term, g.subst.apply(goal))
    except Exception as e:  # a bug, not bad luck; do not retry silently
        raise GenerationFailed(f"generated term failed to check: {e}") from e


def gen_formula(rng: random.Random, max_depth: int = 4, atom_pool=("a", "b", "c")) -> Formula:
    if max_depth <= 0 or rng.random() < 0.35:
        if rng.random() < 0.75:
            return Atom(rng.choice(atom_pool))
        return rng.choice((Verum(), Falsum()))
    ctor = rng.choice((And, Or, Imp, CoImp))
    return ctor(
        gen_formula(rng, max_depth - 1, atom_pool),
        gen_formula(rng, max_depth - 1, atom_pool),
    )


def gen_basis(rng: random.Random, size: int = 4, atom_pool=("a", "b", "c")) -> Basis:
    gamma = {f"x{i}": gen_formula(rng, 3, atom_pool) for i in range(rng.randint(0, size))}
    delta = {f"y{i}": gen_formula(rng, 3, atom_pool) for i in range(rng.randint(0, size))}
    return Basis.make(gamma, delta)


@dataclass
class OracleResult:
    reachable: list[Term]
    normal_forms: list[Term]
    complete: bool


def oracle_reduce_all(t: Term, max_depth: int = 64) -> OracleResult:
    """Breadth-first closure of t under single steps in any position.

    complete=False means the depth ran out with work left, so the listing
    may be missing terms.
    """
    seen = {alpha_key(t): t}
    frontier = [t]
    normal_forms: list[Term] = []
    complete = True
    depth = 0
    while frontier:
        if depth >= max_depth:
            complete = False
            break
        nxt: list[Term] = []
        for u in frontier:
            redexes = find_redexes(u)
            if not redexes:
                normal_forms.append(u)
                continue
            for r in redexes:
                v = step(u, r)
                k = alpha_key(v)
                if k not in seen:
                    seen[k] = v
                    nxt.append(v)
        frontier = nxt
        depth += 1
    return OracleResult(list(seen.values()), normal_forms, complete)
