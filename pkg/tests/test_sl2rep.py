import random
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from abelsl2.abvar import PolarizedContext, fourier, theta
from abelsl2.action import act_closed_form, build_action
from abelsl2.errors import BracketViolation, NegativeLambda
from abelsl2.exactla import LinearMap, kernel_basis, rank
from abelsl2.sl2rep import (GroupElement, Sl2Triple, act, act_matrix, build_free_module,
                            check_bracket, decompose, demazure_check, exp_nilpotent,
                            factor_elementary, primitive_subspace, torus_operator, word_product)

STANDARD = Sl2Triple(LinearMap.from_rows([[0, 0], [1, 0]]), LinearMap.from_rows([[0, 1], [0, 0]]),
                     LinearMap.diagonal([-1, 1]))

lams = st.lists(st.integers(0, 6), min_size=1, max_size=4)
rationals = st.builds(Fraction, st.integers(-4, 4), st.integers(1, 3))


@st.composite
def group_elements(draw):
    return GroupElement.random(random.Random(draw(st.integers(0, 10 ** 6))))


def test_check_bracket_examples():
    assert check_bracket(STANDARD).ok
    assert check_bracket(build_action(PolarizedContext(1)).triple).ok
    bad = Sl2Triple(STANDARD.X, STANDARD.Y, STANDARD.H + LinearMap.identity(2))
    rep = check_bracket(bad)
    assert not rep.ok
    assert [c.name for c in rep.failures()] == ["[X,Y] = H"]
    assert "entry" in rep.failures()[0].detail


def test_primitive_examples():
    _, t = build_free_module(1, [4])
    assert {k: len(v) for k, v in primitive_subspace(t).items()} == {4: 1}
    prims = primitive_subspace(build_action(PolarizedContext(1)).triple)
    assert {k: len(v) for k, v in prims.items()} == {1: 1, 0: 2}
    assert prims[1] == [[1, 0, 0, 0]]          # the class 1, weight -1
    empty = Sl2Triple(LinearMap.zero(0), LinearMap.zero(0), LinearMap.zero(0))
    assert primitive_subspace(empty) == {}


def test_primitive_requires_brackets():
    bad = Sl2Triple(STANDARD.X, STANDARD.Y, STANDARD.H * 2)
    with pytest.raises(BracketViolation):
        primitive_subspace(bad)


def test_decompose_examples():
    assert [b.lam for b in decompose(STANDARD)] == [1]
    blocks = decompose(build_action(PolarizedContext(1)).triple)
    assert sorted(b.lam for b in blocks) == [0, 0, 1]
    _, t = build_free_module(3, [3, 0])
    assert sorted(b.lam + 1 for b in decompose(t)) == [1, 4]


def test_build_free_module_examples():
    module, t = build_free_module(2, [0])
    assert module.dim == 1 and t.X.is_zero() and t.Y.is_zero() and t.H.is_zero()
    module, t = build_free_module(2, [2])
    z = module.basis_vector(0, 0)
    assert t.Y.apply(t.X.apply(z)) == [2 * x for x in z]
    module, t = build_free_module(1, [1, 1, 1])
    assert module.dim == 6 and check_bracket(t).ok
    with pytest.raises(NegativeLambda):
        build_free_module(1, [{"p": 2, "s": 0}])


def test_bidegree_annotation():
    module, _ = build_free_module(3, [{"p": Fraction(1, 2), "s": 0, "label": "z"}])
    assert module.generators[0].lam == 2
    assert module.bidegree(0, 1) == (Fraction(3, 2), 0)
    with pytest.raises(ValueError):
        build_free_module(3, [{"p": 1, "s": 0, "lam": 5}])


def test_factor_examples():
    assert factor_elementary(GroupElement.identity()) == []
    assert factor_elementary(GroupElement.w()) == [("u", -1), ("v", 1), ("u", -1)]
    rng = random.Random(3)
    for _ in range(50):
        m = GroupElement.random(rng)
        for form in ("uvu", "vuv"):
            word = factor_elementary(m, form)
            assert word_product(word) == m and len(word) <= 4


def test_group_element_determinant():
    with pytest.raises(ValueError):
        GroupElement(1, 1, 1, 1)


def test_act_examples():
    module, t = build_free_module(3, [3, 1])
    vec = [Fraction(k + 1) for k in range(module.dim)]
    assert act(GroupElement.identity(), t, vec) == vec
    w = GroupElement.w()
    for j, gen in enumerate(module.generators):
        lam = gen.lam
        for q in range(lam + 1):
            r = lam - q
            src = module.basis_vector(j, q, Fraction(1, factorial(q)))
            want = module.basis_vector(j, r, Fraction((-1) ** r, factorial(r)))
            assert act(w, t, src) == want
    for n in (2, Fraction(1, 3), -1):
        torus = GroupElement.torus(n)
        for j, gen in enumerate(module.generators):
            for q in range(gen.lam + 1):
                v = module.basis_vector(j, q)
                assert act(torus, t, v) == [x * Fraction(n) ** (2 * q - gen.lam) for x in v]


def test_demazure_examples():
    _, t = build_free_module(2, [3, 0, 2])
    assert demazure_check(exp_nilpotent(t.X), lambda n: torus_operator(t, n),
                          act_matrix(GroupElement.w(), t)).ok
    action = build_action(PolarizedContext(1))
    th = theta(action.variety)
    rep = demazure_check(action.operator(lambda z: th.exp() * z),
                         lambda n: action.operator(lambda z: act_closed_form(GroupElement.torus(n), z)),
                         action.operator(fourier))
    assert rep.ok
    ident = LinearMap.identity(t.dim)
    rep = demazure_check(exp_nilpotent(t.X), lambda n: torus_operator(t, n), ident)
    assert any(c.anchor == "demazure (ii)" for c in rep.failures())


@given(lams)
def test_decompose_round_trip(ls):
    _, t = build_free_module(3, ls)
    assert sorted(b.lam for b in decompose(t)) == sorted(ls)
    assert len(kernel_basis(t.Y)) == len(ls)


@given(lams)
def test_sl2z_relations_on_free_modules(ls):
    _, t = build_free_module(3, ls)
    w = act_matrix(GroupElement.w(), t)
    u = act_matrix(GroupElement.u(1), t)
    ident = LinearMap.identity(t.dim)
    assert w @ w @ w @ w == ident
    uw = u @ w
    assert uw @ uw @ uw == w @ w


@given(lams, group_elements(), st.data())
def test_two_factorizations_agree(ls, m, data):
    module, t = build_free_module(2, ls)
    vec = data.draw(st.lists(rationals, min_size=module.dim, max_size=module.dim))
    assert act(m, t, vec, "uvu") == act(m, t, vec, "vuv")


@given(lams, group_elements(), group_elements(), st.data())
def test_action_is_a_homomorphism(ls, m, n, data):
    module, t = build_free_module(2, ls)
    vec = data.draw(st.lists(rationals, min_size=module.dim, max_size=module.dim))
    assert act(m @ n, t, vec) == act(m, t, act(n, t, vec))


@given(lams)
def test_top_power_injective_on_lowest_weight(ls):
    _, t = build_free_module(2, ls)
    for lam, basis in primitive_subspace(t).items():
        images = basis
        for _ in range(lam):
            images = [t.X.apply(v) for v in images]
        assert rank(LinearMap.from_rows(images)) == len(basis)
