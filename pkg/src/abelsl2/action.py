"""The SL2 action on the cohomology model and its correspondence lifts.

On ``H^*(A)``: ``X = theta . -``, ``Y = (theta^(g-1) / (d (g-1)!)) * -``
(Pontryagin), ``H = i - g`` on degree ``i``.  The lifts to ``Corr(A)`` are

* ``u(a) -> Delta_* e^(a theta)``
* ``v(a) -> d^-1 a^g e^(delta^* theta / a)``
* ``w -> d^-1 e^P``
* ``diag(n, 1/n) -> n^-g Gamma'_n``
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

from abelsl2 import abvar, corr
from abelsl2.abvar import (fourier, pontryagin, pullback, pushforward,
                           scale_by_weight, theta, variety)
from abelsl2.corr import Correspondence, compose
from abelsl2.errors import DimensionGuard, UnsupportedShape, VarietyMismatch
from abelsl2.exactla import LinearMap, as_rational
from abelsl2.extalg import degree
from abelsl2.report import Report
from abelsl2.sl2rep import (GroupElement, Sl2Triple, act, check_bracket,
                            factor_elementary)

TRIPLE_MAX_G = 4
LIFT_MAX_G = 3
RELATIONS_MAX_G = 2


@dataclass(frozen=True)
class ChowAction:
    """sl2 triple on ``H^*(A)`` (basis: monomials indexed by mask) plus lifts."""

    context: abvar.PolarizedContext
    triple: Sl2Triple = field(repr=False)

    @property
    def variety(self):
        return variety(self.context, 1)

    @property
    def dim(self):
        return self.triple.dim

    def to_vector(self, z):
        if z.variety != self.variety:
            raise VarietyMismatch("class does not live on this action's variety")
        vec = [Fraction(0)] * self.dim
        for m, c in z.terms.items():
            vec[m] = c
        return vec

    def to_class(self, vec):
        return self.variety.cls({m: c for m, c in enumerate(vec) if c})

    def X(self, z):
        return self.to_class(self.triple.X.apply(self.to_vector(z)))

    def Y(self, z):
        return self.to_class(self.triple.Y.apply(self.to_vector(z)))

    def H(self, z):
        return self.to_class(self.triple.H.apply(self.to_vector(z)))

    def operator(self, fn):
        """Matrix of a linear map on classes, column by column."""
        cols = [fn(b).terms for b in self.variety.basis()]
        return LinearMap.from_columns(cols, self.dim)

    # correspondence lifts

    def _lift_guard(self):
        if self.context.g > LIFT_MAX_G:
            raise DimensionGuard("correspondence lifts", self.context.g, LIFT_MAX_G)

    def phi_u(self, a):
        self._lift_guard()
        return corr.diagonal_push((theta(self.variety) * as_rational(a)).exp())

    def phi_v(self, a):
        self._lift_guard()
        a = as_rational(a)
        ctx = self.context
        if not a:
            return corr.diagonal_class(ctx)
        cls = pullback(abvar.difference(ctx), theta(self.variety) / a).exp()
        return Correspondence(cls * (a ** ctx.g / ctx.d))

    def phi_w(self):
        self._lift_guard()
        return Correspondence(abvar._exp_poincare(self.context) / self.context.d)

    def phi_t(self, n):
        """``n^-g Gamma'_n`` for a nonzero integer ``n``."""
        self._lift_guard()
        n = int(n)
        return corr.transpose_graph(self.context, n) * Fraction(1, n) ** self.context.g

    def phi(self, m):
        """Lift of an arbitrary element through its elementary factorization."""
        result = corr.diagonal_class(self.context)
        for kind, x in factor_elementary(m):
            result = compose(result, self.phi_u(x) if kind == "u" else self.phi_v(x))
        return result

    def lie_X(self):
        return corr.diagonal_push(theta(self.variety))

    def lie_Y(self):
        g, d = self.context.g, self.context.d
        th = theta(self.variety) ** (g - 1) / (d * factorial(g - 1))
        return Correspondence(pullback(abvar.difference(self.context), th))

    def lie_H(self):
        g = self.context.g
        pis = corr.kunneth_idempotents(self.context)
        total = pis[0] * (0 - g)
        for i, p in enumerate(pis[1:], start=1):
            total = total + p * (i - g)
        return total


@lru_cache(maxsize=None)
def build_action(ctx):
    """Operators X, Y, H on ``H^*(A)``; brackets are verified before returning."""
    if ctx.g > TRIPLE_MAX_G:
        raise DimensionGuard("operator triple", ctx.g, TRIPLE_MAX_G)
    g, d = ctx.g, ctx.d
    A = variety(ctx, 1)
    th = theta(A)
    y_kernel = th ** (g - 1) / (d * factorial(g - 1))
    n = 1 << A.dim
    xcols, ycols = [], []
    for b in A.basis():
        xcols.append((th * b).terms)
        ycols.append(pontryagin(y_kernel, b).terms)
    X = LinearMap.from_columns(xcols, n)
    Y = LinearMap.from_columns(ycols, n)
    H = LinearMap.diagonal([degree(m) - g for m in range(n)])
    labels = tuple(A.algebra.monomial_label(m) for m in range(n))
    triple = Sl2Triple(X, Y, H, labels)
    rep = check_bracket(triple)
    if not rep.ok:
        raise AssertionError(f"brackets fail on the cohomology model: {rep.to_text()}")
    return ChowAction(ctx, triple)


def _shape(m):
    if m.b == 0 and m.c == 0:
        return "torus"
    if m == GroupElement.w():
        return "w"
    if m == -GroupElement.w():
        return "-w"
    if m.a == 1 and m.d == 1 and m.c == 0:
        return "upper"
    if m.a == 1 and m.d == 1 and m.b == 0:
        return "lower"
    return None


def act_closed_form(m, z):
    """Geometric formula for diagonal, +-w and unipotent elements."""
    ctx = z.variety.context
    A = variety(ctx, 1)
    if z.variety != A:
        raise VarietyMismatch("class must live on the single-factor variety")
    g = ctx.g
    shape = _shape(m)
    if shape == "torus":
        n = m.a
        if n.denominator == 1:
            return pullback(abvar.multiplication(A, int(n)), z) * n ** -g
        return scale_by_weight(z, lambda i: n ** (i - g))
    if shape == "w":
        return fourier(z)
    if shape == "-w":
        minus = pullback(abvar.multiplication(A, -1), z) * (-1) ** g
        return fourier(minus)
    if shape == "upper":
        return (theta(A) * m.b).exp() * z
    if shape == "lower":
        a = m.c
        return pontryagin((theta(A) / a).exp(), z) * (a ** g / ctx.d)
    raise UnsupportedShape(f"no closed form for {m}")


def act_by_closed_forms(m, z, form="vuv"):
    """Apply ``m`` as a product of unipotent closed forms."""
    for kind, x in reversed(factor_elementary(m, form)):
        z = act_closed_form(GroupElement.u(x) if kind == "u" else GroupElement.v(x), z)
    return z


def act_general(m, z):
    """Action of any element of SL2(Q) through the operator triple."""
    action = build_action(z.variety.context)
    return action.to_class(act(m, action.triple, action.to_vector(z)))


def _check_ctx(ctx, limit, what):
    if ctx.g > limit:
        raise DimensionGuard(what, ctx.g, limit)


def sl2z_relations_check(ctx):
    """``phi(w)^4 = [Delta]``, ``(phi(u) phi(w))^3 = phi(w)^2``, ``phi(w)^2 = (-1)^g Gamma'_-1``."""
    _check_ctx(ctx, RELATIONS_MAX_G, "SL2(Z) relations")
    action = build_action(ctx)
    w = action.phi_w()
    u = action.phi_u(1)
    unit = corr.diagonal_class(ctx)
    w2 = compose(w, w)
    uw = compose(u, w)
    tag = f"g={ctx.g} type={','.join(map(str, ctx.type))}"
    rep = Report("SL2(Z) relations in Corr(A)")
    rep.add("SL2(Z) relations", "φ(w)⁴ = [Δ]", compose(w2, w2) == unit, inputs=tag)
    rep.add("SL2(Z) relations", "(φ(u)φ(w))³ = φ(w)²", compose(uw, compose(uw, uw)) == w2, inputs=tag)
    rep.add("SL2(Z) relations", "φ(w)² = (−1)^g Γ′₋₁",
            w2 == corr.transpose_graph(ctx, -1) * (-1) ** ctx.g, inputs=tag)
    return rep


def sigma_identity_check(ctx, a, classes):
    """``(e^(delta^* theta / a))_* z = e^(theta/a) * z``, also through ``sigma``."""
    _check_ctx(ctx, LIFT_MAX_G, "sigma identity")
    a = as_rational(a)
    A = variety(ctx, 1)
    kernel = pullback(abvar.difference(ctx), theta(A) / a).exp()
    rep = Report("sigma identity")
    s = abvar.sigma(ctx)
    for k, z in enumerate(classes):
        lhs = corr.apply(Correspondence(kernel), z)
        rhs = pontryagin((theta(A) / a).exp(), z)
        inner = kernel * pullback(abvar.proj_p(ctx), z)
        mid = pushforward(abvar.proj_q(ctx), pushforward(s, pullback(s, inner)))
        rep.add("sigma", "(e^{δ*θ/a})_* z = e^{θ/a} ∗ z", lhs == rhs == mid,
                inputs=f"a={a} z#{k}")
    return rep
