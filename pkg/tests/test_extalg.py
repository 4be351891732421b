from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from abelsl2.errors import (ConstantTerm, ContextMismatch, MissingImage, NonLinearImage,
                            OddDegreeTerm)
from abelsl2.extalg import (AlgebraContext, ExtClass, algebra_map, degree, exp_even, integral,
                            star, wedge)

CTX = AlgebraContext(("x1", "y1", "x2", "y2"))
PAIR = AlgebraContext(("x1", "y1", "x2", "y2"))
x1, y1, x2, y2 = (CTX.gen(k) for k in ("x1", "y1", "x2", "y2"))


@st.composite
def ext_classes(draw, ctx=CTX, degrees=None, max_terms=5):
    masks = [m for m in range(1 << ctx.n) if degrees is None or degree(m) in degrees]
    terms = draw(st.dictionaries(st.sampled_from(masks),
                                 st.builds(Fraction, st.integers(-4, 4).filter(bool),
                                           st.sampled_from([1, 2, 3])), max_size=max_terms))
    return ExtClass(ctx, terms)


@st.composite
def homogeneous_classes(draw):
    k = draw(st.integers(0, CTX.n))
    return draw(ext_classes(degrees={k}))


def test_wedge_examples():
    assert wedge(x1, x1) == 0
    assert wedge(x1, y1) == ExtClass(CTX, {0b0011: 1})
    assert wedge(y1, x1) == ExtClass(CTX, {0b0011: -1})
    a = wedge(x1, y2) + wedge(x2, y1)
    assert wedge(a, a) == ExtClass(CTX, {0b1111: -2})


def test_wedge_context_mismatch():
    other = AlgebraContext(("a", "b"))
    with pytest.raises(ContextMismatch):
        wedge(x1, other.gen("a"))


def test_algebra_map_examples():
    images = {k: CTX.gen(k) for k in CTX.generators}
    cls = wedge(x1, y1) + x2 * 3
    assert algebra_map(CTX, CTX, images, cls) == cls
    n = 3
    scaled = {k: CTX.gen(k) * n for k in CTX.generators}
    mono = wedge(wedge(x1, y1), x2)
    assert algebra_map(CTX, CTX, scaled, mono) == mono * n ** 3
    # g = 1 addition map: x -> x1 + x2, y -> y1 + y2 (factor-major order x1,y1,x2,y2)
    E = AlgebraContext(("x", "y"))
    add = {"x": x1 + x2, "y": y1 + y2}
    got = algebra_map(E, PAIR, add, wedge(E.gen("x"), E.gen("y")))
    want = ExtClass(PAIR, {0b0011: 1, 0b1100: 1, 0b1001: 1, 0b0110: -1})
    assert got == want and len(got.terms) == 4


def test_algebra_map_errors():
    E = AlgebraContext(("x", "y"))
    with pytest.raises(MissingImage):
        algebra_map(E, CTX, {"x": x1}, E.gen("x"))
    with pytest.raises(NonLinearImage):
        algebra_map(E, CTX, {"x": wedge(x1, y1), "y": y1}, E.gen("x"))


def test_integral_examples():
    assert integral(ExtClass(CTX, {CTX.full_mask: 1})) == 1
    assert integral(CTX.one()) == 0
    theta = wedge(x1, y1) + wedge(x2, y2) * 2
    assert integral(theta ** 2 / 2) == 2


def test_exp_even_examples():
    assert exp_even(CTX.zero()) == CTX.one()
    E = AlgebraContext(("x", "y"))
    th = wedge(E.gen("x"), E.gen("y"))
    assert exp_even(th) == E.one() + th
    P = -(wedge(x1, y2) + wedge(x2, y1))
    assert exp_even(P) == PAIR.one() + P - ExtClass(PAIR, {0b1111: 1})


def test_exp_even_errors():
    with pytest.raises(ConstantTerm):
        exp_even(CTX.one())
    with pytest.raises(OddDegreeTerm):
        exp_even(x1)


def test_labels_and_degree_parts():
    assert CTX.monomial_label(0b1011) == "x1*y1*y2"
    cls = CTX.one() + x1 + wedge(x1, y1)
    assert sorted(cls.graded_parts()) == [0, 1, 2]
    assert not cls.is_homogeneous()


@given(homogeneous_classes(), homogeneous_classes())
def test_graded_commutativity(a, b):
    da = a.degrees()[0] if a else 0
    db = b.degrees()[0] if b else 0
    assert wedge(a, b) == wedge(b, a) * (-1) ** (da * db)


@given(ext_classes(), ext_classes(), ext_classes())
def test_associativity(a, b, c):
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


@given(ext_classes(), ext_classes(), st.lists(ext_classes(ctx=PAIR, degrees={1}), min_size=4,
                                               max_size=4))
def test_algebra_map_multiplicative(a, b, imgs):
    images = dict(zip(CTX.generators, imgs))
    f = lambda c: algebra_map(CTX, PAIR, images, c)
    assert f(wedge(a, b)) == wedge(f(a), f(b))


@given(ext_classes(degrees={2, 4}), ext_classes(degrees={2, 4}))
def test_exp_even_additive(a, b):
    assert wedge(exp_even(a), exp_even(b)) == exp_even(a + b)


@given(ext_classes())
def test_graded_parts_lossless(a):
    total = CTX.zero()
    for part in a.graded_parts().values():
        total = total + part
    assert total == a


@given(ext_classes())
def test_star_round_trip(a):
    assert star(star(a), inverse=True) == a
