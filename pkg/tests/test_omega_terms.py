import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mvw import catalog
from mvw.errors import AssignmentBudgetExceeded, ParseError, UnboundVariable
from mvw.monoid_core import is_aperiodic, is_l_trivial, is_r_trivial
from mvw.omega_terms import (
    L_IDENTITY,
    R_IDENTITY,
    W_IDENTITY,
    Concat,
    Identity,
    OmegaPower,
    One,
    Var,
    check_lemma3,
    check_lemma4,
    eval_term,
    in_L,
    in_R,
    in_W,
    parse_identity,
    parse_term,
    resolve_identity,
    satisfies_identity,
)
from mvw.oracles import naive_satisfies

XY = Concat(Var("x"), Var("y"))
ZX = Concat(Var("z"), Var("x"))


def test_parse_variable():
    assert parse_term("x") == Var("x")


def test_parse_w_lhs():
    assert parse_term("(xy)^w x (zx)^w") == Concat(Concat(OmegaPower(XY), Var("x")), OmegaPower(ZX))


def test_parse_nested_omega():
    assert parse_term("((x)^w)^w") == OmegaPower(OmegaPower(Var("x")))
    assert parse_term("x^w^w") == OmegaPower(OmegaPower(Var("x")))


def test_parse_empty_word():
    assert parse_term("") == One()
    assert parse_term("   ") == One()


def test_parse_unicode_omega():
    assert parse_term("(xy)^ω") == OmegaPower(XY)


@pytest.mark.parametrize("text, position", [
    ("(xy", 3),
    ("xy)", 2),
    ("x^v", 2),
    ("x+y", 1),
    ("()", 1),
])
def test_parse_errors(text, position):
    with pytest.raises(ParseError) as err:
        parse_term(text)
    assert err.value.position == position


def test_printing_round_trips():
    for text in ("(xy)^wx(zx)^w", "x^w", "((xy)^wz)^w", "xyz"):
        assert parse_term(str(parse_term(text))) == parse_term(text)


def test_eval_examples(z2, b2):
    assert eval_term(parse_term("x^w"), z2, {"x": 1}) == z2.identity
    env = {"x": b2.index("a"), "y": b2.index("b"), "z": b2.index("b")}
    assert eval_term(W_IDENTITY.lhs, b2, env) == b2.index("a")
    assert eval_term(W_IDENTITY.rhs, b2, env) == b2.index("0")
    t = catalog.trivial()
    assert eval_term(W_IDENTITY.lhs, t, {"x": 0, "y": 0, "z": 0}) == 0


def test_eval_unbound(u1):
    with pytest.raises(UnboundVariable):
        eval_term(parse_term("xy"), u1, {"x": 0})


def test_eval_empty_word(b2):
    assert eval_term(One(), b2, {}) == b2.identity


terms = st.deferred(lambda: st.one_of(
    st.sampled_from([Var("x"), Var("y"), Var("z")]),
    st.builds(Concat, terms, terms),
    st.builds(OmegaPower, terms),
))


@settings(max_examples=200, deadline=None)
@given(terms, terms, st.data())
def test_eval_is_compositional(s, t, data):
    m = data.draw(st.sampled_from([catalog.b2(), catalog.lz_times_rz(), catalog.cyclic_group(3)]))
    env = {v: data.draw(st.integers(0, m.size - 1)) for v in "xyz"}
    assert eval_term(Concat(s, t), m, env) == m.table[eval_term(s, m, env)][eval_term(t, m, env)]
    e = eval_term(OmegaPower(t), m, env)
    assert m.table[e][e] == e


def test_satisfies_examples(u1, b2):
    assert satisfies_identity(b2, parse_identity("x = x")).holds
    verdict = satisfies_identity(b2, W_IDENTITY)
    assert not verdict.holds
    assert {k: b2.label(v) for k, v in verdict.counterexample.items()} == {"x": "a", "y": "b", "z": "b"}
    assert satisfies_identity(u1, W_IDENTITY).holds


def test_satisfaction_is_symmetric(small_monoids):
    for ident in (R_IDENTITY, L_IDENTITY, W_IDENTITY, parse_identity("xy = yx")):
        for m in small_monoids:
            assert satisfies_identity(m, ident).holds == satisfies_identity(m, ident.reversed()).holds


def test_agrees_with_factorial_exponent_oracle(small_monoids):
    idents = [R_IDENTITY, L_IDENTITY, W_IDENTITY, parse_identity("x^w = x^w x"),
              parse_identity("(xy)^w = (yx)^w")]
    for m in small_monoids + [catalog.b2()]:
        for ident in idents:
            assert satisfies_identity(m, ident).holds == naive_satisfies(
                m, ident.lhs, ident.rhs, ident.variables)


def test_assignment_budget(b2):
    with pytest.raises(AssignmentBudgetExceeded):
        satisfies_identity(b2, W_IDENTITY, cap=100)


def test_identity_resolution():
    assert resolve_identity("W") is W_IDENTITY
    assert resolve_identity("x(zx)^w = (zx)^w") == Identity(L_IDENTITY.lhs, L_IDENTITY.rhs)
    with pytest.raises(ParseError):
        parse_identity("xy")
    with pytest.raises(ParseError) as err:
        parse_identity("x = (y")
    assert err.value.position == 6


def test_variety_examples(rz, b2):
    assert (in_R(rz), in_L(rz), in_W(rz)) == (False, True, True)
    assert not in_W(b2)
    t = catalog.trivial()
    assert in_R(t) and in_L(t) and in_W(t)


def test_triviality_matches_identities(small_monoids):
    for m in small_monoids:
        assert is_r_trivial(m) == in_R(m)
        assert is_l_trivial(m) == in_L(m)


def test_r_and_l_inside_w(small_monoids):
    for m in small_monoids:
        if in_R(m) or in_L(m):
            assert in_W(m)


def test_w_members_are_aperiodic(small_monoids):
    for m in small_monoids:
        if in_W(m):
            assert is_aperiodic(m)


def test_lemma3_examples(u1, b2, z2):
    assert check_lemma3(u1) == []
    ab, a, ba = b2.index("ab"), b2.index("a"), b2.index("ba")
    assert (ab, a, ba) in check_lemma3(b2)
    assert b2.table[b2.table[ab][a]][ba] == a and b2.table[ab][ba] == b2.index("0")
    assert check_lemma3(z2)
    assert check_lemma3(catalog.trivial()) == []


def test_lemma4_examples(u1):
    assert check_lemma4(u1) == []
    assert check_lemma4(catalog.lz_times_rz()) == []
    assert check_lemma4(catalog.trivial()) == []


def test_lemma4_fails_outside_w(b2):
    sides = {v.side for v in check_lemma4(b2)}
    assert sides == {"R", "L"}


def test_lemmas_hold_in_w(small_monoids):
    for m in small_monoids:
        if in_W(m):
            assert check_lemma3(m) == [] and check_lemma4(m) == []
