"""The correspondence algebra ``Corr(A)`` in the cohomology model.

Composition is ``beta . alpha = (p13)_*(p23^* beta . p12^* alpha)`` on
``A x A x A``; a correspondence acts on classes by ``alpha_* z =
q_*(alpha . p^* z)``.  The factor order only matters for odd classes; this
one makes ``alpha -> alpha_*`` and ``z -> Delta_* z`` multiplicative.
"""

from fractions import Fraction
from functools import lru_cache

from abelsl2 import abvar
from abelsl2.abvar import pullback, pushforward, variety
from abelsl2.errors import (DimensionGuard, NotInvertible, NotTwoFactors,
                            VarietyMismatch)
from abelsl2.exactla import LinearMap, solve

COMPOSE_MAX_G = 3
INVERT_MAX_G = 2


class Correspondence:
    """A class on ``A x A`` viewed as an element of ``Corr(A)``."""

    __slots__ = ("value",)

    def __init__(self, value):
        if value.variety.m != 2:
            raise NotTwoFactors("a correspondence lives on A x A")
        self.value = value

    @property
    def context(self):
        return self.value.variety.context

    @property
    def terms(self):
        return self.value.terms

    def __eq__(self, other):
        if not isinstance(other, Correspondence):
            return NotImplemented
        return self.value == other.value

    def __hash__(self):
        return hash(self.value)

    def __add__(self, other):
        return Correspondence(self.value + other.value)

    def __sub__(self, other):
        return Correspondence(self.value - other.value)

    def __neg__(self):
        return Correspondence(-self.value)

    def __mul__(self, scalar):
        return Correspondence(self.value * scalar)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return Correspondence(self.value / scalar)

    def __matmul__(self, other):
        return compose(self, other)

    def __pow__(self, k):
        result = diagonal_class(self.context)
        for _ in range(k):
            result = compose(self, result)
        return result

    def __call__(self, z):
        return apply(self, z)

    def __repr__(self):
        return f"Correspondence({self.value.value!r})"


def _guard(ctx, limit, what):
    if ctx.g > limit:
        raise DimensionGuard(what, ctx.g, limit)


@lru_cache(maxsize=None)
def _triple_maps(ctx):
    return (abvar.projection(ctx, 3, [0, 1]), abvar.projection(ctx, 3, [1, 2]),
            abvar.projection(ctx, 3, [0, 2]))


def compose(beta, alpha):
    """``beta . alpha``; the unit is the diagonal class."""
    ctx = alpha.context
    if beta.context != ctx:
        raise VarietyMismatch("correspondences on different varieties")
    _guard(ctx, COMPOSE_MAX_G, "compose")
    p12, p23, p13 = _triple_maps(ctx)
    return Correspondence(pushforward(p13, pullback(p23, beta.value) * pullback(p12, alpha.value)))


def apply(alpha, z):
    """``alpha_* z = q_*(alpha . p^* z)``."""
    ctx = alpha.context
    if z.variety != variety(ctx, 1):
        raise VarietyMismatch("class must live on the single-factor variety")
    return pushforward(abvar.proj_q(ctx), alpha.value * pullback(abvar.proj_p(ctx), z))


def diagonal_push(z):
    if z.variety.m != 1:
        raise VarietyMismatch("diagonal pushforward takes a class on A")
    return Correspondence(pushforward(abvar.diagonal(z.variety.context), z))


def diagonal_class(ctx):
    return diagonal_push(variety(ctx, 1).one())


def graph(ctx, n):
    """``Gamma_n``: class of ``{(a, n a)}``."""
    return Correspondence(pushforward(abvar.graph_map(ctx, n), variety(ctx, 1).one()))


def transpose_graph(ctx, n):
    """``Gamma'_n``: class of ``{(n a, a)}``."""
    return Correspondence(pushforward(abvar.transpose_graph_map(ctx, n), variety(ctx, 1).one()))


def kunneth_idempotents(ctx):
    """``[pi_0, ..., pi_2g]``: parts of the diagonal by second-factor degree."""
    v2 = variety(ctx, 2)
    delta = diagonal_class(ctx)
    half = 2 * ctx.g
    second = ((1 << half) - 1) << half
    parts = [{} for _ in range(2 * ctx.g + 1)]
    for m, c in delta.terms.items():
        parts[bin(m & second).count("1")][m] = c
    return [Correspondence(v2.cls(t)) for t in parts]


def pair_pullback(alpha, a, b):
    """``(a, b)^* alpha`` for integers ``a, b``."""
    return Correspondence(pullback(abvar.pair_map(alpha.context, a, b), alpha.value))


def pair_pushforward(alpha, a, b):
    return Correspondence(pushforward(abvar.pair_map(alpha.context, a, b), alpha.value))


def _composition_matrix(alpha, left):
    """Matrix of ``beta -> beta . alpha`` (or ``alpha . beta`` when ``left``)."""
    v2 = variety(alpha.context, 2)
    size = 1 << v2.dim
    cols = []
    for mask in range(size):
        beta = Correspondence(v2.cls({mask: 1}))
        prod = compose(alpha, beta) if left else compose(beta, alpha)
        cols.append(prod.terms)
    return LinearMap.from_columns(cols, size)


def invert(alpha):
    """Two-sided inverse in ``Corr(A)`` by an exact linear solve."""
    ctx = alpha.context
    _guard(ctx, INVERT_MAX_G, "invert")
    unit = diagonal_class(ctx)
    v2 = variety(ctx, 2)
    size = 1 << v2.dim
    rhs = [unit.terms.get(m, Fraction(0)) for m in range(size)]
    x = solve(_composition_matrix(alpha, left=False), rhs)
    if x is None:
        raise NotInvertible("no left inverse exists")
    beta = Correspondence(v2.cls({m: c for m, c in enumerate(x) if c}))
    if compose(alpha, beta) != unit or compose(beta, alpha) != unit:
        raise NotInvertible("solution is not a two-sided inverse")
    return beta


def isogeny_transfer(pi, alpha0):
    """``deg(pi)^-1 (pi, pi)^* alpha0``: transports ``Corr(A0)`` to ``Corr(A)``."""
    if alpha0.context != pi.target:
        raise VarietyMismatch("correspondence does not live on the isogeny's target")
    return Correspondence(pi.pullback(alpha0.value) / pi.degree)
