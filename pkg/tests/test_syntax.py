import hypothesis as hyp
import hypothesis.strategies as st
import pytest

from l2int.syntax import (
    PLUS,
    MINUS,
    Abort,
    App,
    Basis,
    Atom,
    Bot,
    Case,
    Fst,
    Imp,
    Inl,
    Lam,
    MPair,
    Pair,
    Pi1,
    Pi2,
    PolarityMismatch,
    Snd,
    Top,
    Var,
    alpha_eq,
    alpha_key,
    check_polarities,
    free_vars,
    fresh_name,
    replace_at,
    subterm_at,
    substitute,
    term_size,
)
from l2int.testkit import GenConfig, gen_derivation
from l2int.textio import parse_term


def t(src):
    return parse_term(src)


def test_polarity_flip():
    assert PLUS.flip() is MINUS
    assert MINUS.flip() is PLUS
    assert str(PLUS) == "+"


def test_fixed_polarity_nodes():
    assert Top().pol is PLUS
    assert Bot().pol is MINUS
    assert Pi1(Var("x", MINUS)).pol is PLUS
    assert Pi2(Var("x", PLUS)).pol is MINUS


def test_free_vars_binding():
    term = t("(\\x+. app+(x+, y+))+")
    assert free_vars(term) == {("y", PLUS)}
    case = t("case z+ {x+. x+ | y+. w+}+")
    assert free_vars(case) == {("z", PLUS), ("w", PLUS)}


def test_free_vars_polarity_distinct():
    # x+ and x- are different variables
    term = MPair(Var("x", PLUS), Var("x", MINUS), PLUS)
    assert free_vars(term) == {("x", PLUS), ("x", MINUS)}
    lam = Lam("x", MPair(Var("x", PLUS), Var("x", MINUS), PLUS), PLUS)
    assert free_vars(lam) == {("x", MINUS)}


def test_substitute_basic():
    term = t("app+(f+, x+)")
    out = substitute(term, "x", PLUS, Top())
    assert out == t("app+(f+, top+)")


def test_substitute_respects_polarity():
    term = MPair(Var("x", PLUS), Var("x", MINUS), PLUS)
    out = substitute(term, "x", PLUS, Top())
    assert out == MPair(Top(), Var("x", MINUS), PLUS)
    with pytest.raises(PolarityMismatch):
        substitute(term, "x", PLUS, Bot())


def test_substitute_shadowed_binder_untouched():
    term = t("(\\x+. x+)+")
    assert substitute(term, "x", PLUS, Top()) == term


def test_substitute_avoids_capture():
    # substituting y+ under a y-binder must rename the binder
    term = t("(\\y+. app+(y+, x+))+")
    out = substitute(term, "x", PLUS, Var("y", PLUS))
    assert isinstance(out, Lam)
    assert out.binder == "y1"
    assert out.body == App(Var("y1", PLUS), Var("y", PLUS), PLUS)
    assert alpha_eq(term, substitute(term, "x", PLUS, Var("z", PLUS))) is False


def test_substitute_avoids_capture_in_case():
    term = t("case s+ {y+. app+(y+, x+) | z+. z+}+")
    out = substitute(term, "x", PLUS, Var("y", PLUS))
    assert out.binder1 == "y1"
    assert out.branch1 == App(Var("y1", PLUS), Var("y", PLUS), PLUS)
    assert out.binder2 == "z"


def test_fresh_name_minimal_suffix():
    assert fresh_name("y", set()) == "y"
    assert fresh_name("y", {"y"}) == "y1"
    assert fresh_name("y", {"y", "y1", "y2"}) == "y3"


def test_alpha_eq_renames_bound_only():
    assert alpha_eq(t("(\\x+. x+)+"), t("(\\y+. y+)+"))
    assert not alpha_eq(Var("x", PLUS), Var("y", PLUS))
    assert not alpha_eq(t("(\\x+. x+)+"), t("(\\x-. x-)-"))
    assert alpha_eq(
        t("case z+ {a+. a+ | b+. b+}+"),
        t("case z+ {u+. u+ | v+. v+}+"),
    )
    assert not alpha_eq(t("(\\x+. y+)+"), t("(\\x+. z+)+"))


def test_alpha_eq_distinguishes_shadowing():
    outer_free = App(Var("x", PLUS), Lam("x", Var("x", PLUS), PLUS), PLUS)
    inner_free = App(Var("x", PLUS), Lam("y", Var("x", PLUS), PLUS), PLUS)
    assert not alpha_eq(outer_free, inner_free)


def test_alpha_key_matches_alpha_eq():
    a, b = t("(\\x+. x+)+"), t("(\\y+. y+)+")
    assert alpha_key(a) == alpha_key(b)
    assert alpha_key(a) != alpha_key(t("(\\x-. x-)-"))


def test_check_polarities_accepts_good_terms():
    for src in [
        "(\\x+. x+)+",
        "{top+, bot-}-",
        "case z- {x-. <x-, x-> - | y-. <y-, y-> -}-",
        "abort+(x+)",
        "abort-(x+)",
    ]:
        assert check_polarities(t(src)) == []


def test_check_polarities_reports_paths():
    bad = Pair(Top(), Bot(), PLUS)
    violations = check_polarities(bad)
    assert len(violations) == 1
    assert violations[0].path == ()
    nested = Inl(Pair(Top(), Bot(), PLUS), PLUS)
    assert check_polarities(nested)[0].path == (0,)


def test_check_polarities_mixed_pair_order():
    assert check_polarities(MPair(Var("a", PLUS), Var("b", MINUS), MINUS)) == []
    bad = MPair(Var("a", MINUS), Var("b", PLUS), MINUS)
    assert len(check_polarities(bad)) == 2


def test_check_polarities_app_and_case():
    bad_app = App(Var("f", PLUS), Var("a", MINUS), PLUS)
    assert len(check_polarities(bad_app)) == 1
    bad_case = Case(Var("z", PLUS), "x", Var("u", PLUS), "y", Var("v", MINUS), PLUS)
    assert len(check_polarities(bad_case)) == 1


def test_paths():
    term = t("app+(fst+(a+), snd+(b+))")
    assert subterm_at(term, (0,)) == Fst(Var("a", PLUS), PLUS)
    assert subterm_at(term, (1, 0)) == Var("b", PLUS)
    swapped = replace_at(term, (0, 0), Var("c", PLUS))
    assert subterm_at(swapped, (0, 0)) == Var("c", PLUS)
    assert subterm_at(term, (0, 0)) == Var("a", PLUS)


def test_basis_lookup_and_extend():
    b = Basis.make({"x": Atom("a")}, {"y": Atom("b")})
    assert b.lookup("x", PLUS) == Atom("a")
    assert b.lookup("x", MINUS) is None
    b2 = b.extend("z", MINUS, Atom("c"))
    assert b2.lookup("z", MINUS) == Atom("c")
    assert b.lookup("z", MINUS) is None
    assert b.is_sub(b2) and not b2.is_sub(b)


def test_basis_entries_sorted():
    b = Basis.make({"b": Atom("a"), "a": Atom("a")})
    assert [n for n, _ in b.gamma] == ["a", "b"]


@hyp.given(st.integers(0, 2000))
@hyp.settings(max_examples=60, deadline=None)
def test_substitute_self_is_identity(seed):
    term = gen_derivation(GenConfig(seed=seed, max_height=5)).concl.term
    for name, pol in free_vars(term):
        assert substitute(term, name, pol, Var(name, pol)) == term


@hyp.given(st.integers(0, 2000))
@hyp.settings(max_examples=60, deadline=None)
def test_substitute_removes_free_occurrences(seed):
    term = gen_derivation(GenConfig(seed=seed, max_height=5)).concl.term
    for name, pol in free_vars(term):
        replacement = Top() if pol is PLUS else Bot()
        assert (name, pol) not in free_vars(substitute(term, name, pol, replacement))


@hyp.given(st.integers(0, 2000))
@hyp.settings(max_examples=60, deadline=None)
def test_alpha_eq_reflexive_and_size_stable(seed):
    term = gen_derivation(GenConfig(seed=seed, max_height=5)).concl.term
    assert alpha_eq(term, term)
    assert term_size(term) == term_size(substitute(term, "nonexistent", PLUS, Top()))
