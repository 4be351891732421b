"""Cohomology model of a polarized abelian variety and its self-products.

``H^*(A^m)`` is the exterior algebra on ``2gm`` degree-1 generators
``x_i^(k), y_i^(k)`` ordered factor-major, then ``x1, y1, ..., xg, yg``.
The polarization is ``theta = sum c_i x_i y_i`` and the orientation is the
product of all generators in order, so ``integral(theta^g / g!) = prod c_i``.

Homomorphisms ``A^m -> A^n`` are integer ``n x m`` matrices.  Pullback is the
induced algebra map; pushforward is its adjoint for the Poincare pairing,
computed as ``star^-1 . Lambda(P^T) . star``.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import prod

from abelsl2 import kernels
from abelsl2.errors import (NotIsogeny, NotSingleFactor, NotTwoFactors,
                            PolarizationMismatch, VarietyMismatch)
from abelsl2.exactla import LinearMap, as_rational
from abelsl2.extalg import AlgebraContext, ExtClass, degree, exp_even, integral, star


@dataclass(frozen=True)
class PolarizedContext:
    g: int
    type: tuple = None

    def __post_init__(self):
        if self.g < 1:
            raise ValueError("dimension g must be positive")
        t = tuple(self.type) if self.type is not None else (1,) * self.g
        if len(t) != self.g:
            raise ValueError(f"polarization type needs {self.g} entries, got {len(t)}")
        if any(int(c) != c or c < 1 for c in t):
            raise ValueError("polarization type entries must be positive integers")
        object.__setattr__(self, "type", tuple(int(c) for c in t))

    @property
    def d(self):
        return Fraction(prod(self.type))

    def variety(self, m=1):
        return variety(self, m)


@dataclass(frozen=True)
class ProductVariety:
    context: PolarizedContext
    m: int
    algebra: AlgebraContext = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("a product needs at least one factor")
        g = self.context.g
        labels = []
        for k in range(1, self.m + 1):
            for i in range(1, g + 1):
                for s in "xy":
                    labels.append(f"{s}{i}" if self.m == 1 else f"{s}{i}_{k}")
        object.__setattr__(self, "algebra", AlgebraContext(tuple(labels)))

    @property
    def g(self):
        return self.context.g

    @property
    def dim(self):
        return 2 * self.context.g * self.m

    def bit(self, factor, i, kind):
        """Bit index of ``x_i`` (kind 0) or ``y_i`` (kind 1) on ``factor`` (0-based)."""
        return factor * 2 * self.g + 2 * i + kind

    def cls(self, terms):
        return CohClass(self, ExtClass(self.algebra, terms))

    def one(self):
        return CohClass(self, self.algebra.one())

    def zero(self):
        return CohClass(self, self.algebra.zero())

    def point(self):
        """Class of a point: the orientation monomial (integral 1)."""
        return CohClass(self, self.algebra.orientation())

    def basis(self):
        """All monomial classes, indexed by mask."""
        return [self.cls({m: 1}) for m in range(1 << self.dim)]


@lru_cache(maxsize=None)
def variety(context, m=1):
    return ProductVariety(context, m)


class CohClass:
    """A cohomology class on a product variety."""

    __slots__ = ("variety", "value")

    def __init__(self, variety, value):
        if value.context != variety.algebra:
            raise VarietyMismatch("class value does not match the variety's algebra")
        self.variety = variety
        self.value = value

    @property
    def terms(self):
        return self.value.terms

    def _wrap(self, value):
        return CohClass(self.variety, value)

    def _check(self, other):
        if not isinstance(other, CohClass) or other.variety != self.variety:
            raise VarietyMismatch("classes live on different varieties")

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.value == other
        if not isinstance(other, CohClass):
            return NotImplemented
        return self.variety == other.variety and self.value == other.value

    def __hash__(self):
        return hash((self.variety, self.value))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._wrap(self.value + other)
        self._check(other)
        return self._wrap(self.value + other.value)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return self._wrap(-self.value)

    def __mul__(self, other):
        if isinstance(other, CohClass):
            self._check(other)
            return self._wrap(self.value * other.value)
        return self._wrap(self.value * other)

    def __rmul__(self, other):
        return self._wrap(self.value * other)

    def __truediv__(self, other):
        return self._wrap(self.value / other)

    def __pow__(self, k):
        return self._wrap(self.value ** k)

    def __bool__(self):
        return bool(self.value)

    def is_zero(self):
        return not self.value

    def degrees(self):
        return self.value.degrees()

    def part(self, k):
        return self._wrap(self.value.part(k))

    def integral(self):
        return integral(self.value)

    def exp(self):
        return self._wrap(exp_even(self.value))

    def __repr__(self):
        return f"CohClass(m={self.variety.m}, {self.value!r})"


def _single(v):
    if v.m != 1:
        raise NotSingleFactor(f"expected a single-factor variety, got m = {v.m}")


class HomMorphism:
    """Homomorphism ``A^m -> A^n`` given by an integer ``n x m`` matrix.

    Coordinate ``j`` of the image is ``sum_i M[j][i] a_i``, so pullback sends
    each generator on target factor ``j`` to ``sum_i M[j][i]`` times the same
    generator on source factor ``i``.
    """

    __slots__ = ("source", "target", "matrix", "_pull", "_push")

    def __init__(self, source, target, matrix):
        matrix = tuple(tuple(int(x) for x in row) for row in matrix)
        if source.context != target.context:
            raise VarietyMismatch("source and target must share the polarized context")
        if len(matrix) != target.m or any(len(r) != source.m for r in matrix):
            raise ValueError(f"matrix must be {target.m}x{source.m}")
        self.source = source
        self.target = target
        self.matrix = matrix
        self._pull = None
        self._push = None

    @classmethod
    def of(cls, context, matrix):
        matrix = [list(r) for r in matrix]
        return cls(variety(context, len(matrix[0])), variety(context, len(matrix)), matrix)

    def __eq__(self, other):
        return (isinstance(other, HomMorphism) and self.matrix == other.matrix
                and self.source == other.source)

    def __hash__(self):
        return hash((self.source, self.matrix))

    def __matmul__(self, other):
        """Composite ``self . other``."""
        if other.target != self.source:
            raise VarietyMismatch("morphisms are not composable")
        n, k, m = self.target.m, self.source.m, other.source.m
        mat = [[sum(self.matrix[j][l] * other.matrix[l][i] for l in range(k)) for i in range(m)]
               for j in range(n)]
        return HomMorphism(other.source, self.target, mat)

    def pullback_table(self):
        if self._pull is None:
            src, tgt, g = self.source, self.target, self.source.g
            table = []
            for j in range(tgt.m):
                for l in range(2 * g):
                    table.append({1 << src.bit(i, 0, 0) + l: Fraction(self.matrix[j][i])
                                  for i in range(src.m) if self.matrix[j][i]})
            self._pull = table
        return self._pull

    def transpose_table(self):
        if self._push is None:
            src, tgt, g = self.source, self.target, self.source.g
            table = []
            for i in range(src.m):
                for l in range(2 * g):
                    table.append({1 << tgt.bit(j, 0, 0) + l: Fraction(self.matrix[j][i])
                                  for j in range(tgt.m) if self.matrix[j][i]})
            self._push = table
        return self._push

    def pullback_matrix(self):
        """Matrix of the pullback on the full monomial bases (target -> source)."""
        cols = []
        for mask in range(1 << self.target.dim):
            cols.append(kernels.map_terms({mask: Fraction(1)}, self.pullback_table()))
        return LinearMap.from_columns(cols, 1 << self.source.dim)

    def __repr__(self):
        return f"HomMorphism({self.source.m}->{self.target.m}, {self.matrix})"


def pullback(f, z):
    if z.variety != f.target:
        raise VarietyMismatch("class does not live on the morphism's target")
    return CohClass(f.source, ExtClass(f.source.algebra,
                                       kernels.map_terms(z.terms, f.pullback_table()), True))


def pushforward(f, z):
    """Poincare-pairing adjoint of pullback.

    Raises the degree by ``2g(n - m)``; classes that would land in negative
    degree push forward to zero.
    """
    if z.variety != f.source:
        raise VarietyMismatch("class does not live on the morphism's source")
    src, tgt = f.source, f.target
    starred = kernels.star_terms(z.terms, src.algebra.full_mask)
    mapped = kernels.map_terms(starred, f.transpose_table())
    back = kernels.star_terms(mapped, tgt.algebra.full_mask, True)
    return CohClass(tgt, ExtClass(tgt.algebra, back, True))


# structural morphisms


def identity(v):
    return HomMorphism(v, v, [[int(i == j) for i in range(v.m)] for j in range(v.m)])


def multiplication(v, n):
    """``n_A`` acting diagonally on every factor of ``v``."""
    return HomMorphism(v, v, [[n * int(i == j) for i in range(v.m)] for j in range(v.m)])


def projection(ctx, m, factors):
    """Projection ``A^m -> A^len(factors)`` onto the listed (0-based) factors."""
    mat = [[int(i == f) for i in range(m)] for f in factors]
    return HomMorphism(variety(ctx, m), variety(ctx, len(factors)), mat)


def proj_p(ctx):
    return projection(ctx, 2, [0])


def proj_q(ctx):
    return projection(ctx, 2, [1])


def addition(ctx):
    """``m(a, b) = a + b``."""
    return HomMorphism.of(ctx, [[1, 1]])


def difference(ctx):
    """``delta(a, b) = b - a``."""
    return HomMorphism.of(ctx, [[-1, 1]])


def diagonal(ctx):
    return HomMorphism.of(ctx, [[1], [1]])


def sigma(ctx):
    """``sigma(a, b) = (b, a + b)``."""
    return HomMorphism.of(ctx, [[0, 1], [1, 1]])


def swap(ctx):
    return HomMorphism.of(ctx, [[0, 1], [1, 0]])


def pair_map(ctx, a, b):
    """``(a, b): A x A -> A x A``, i.e. ``(x, y) -> (a x, b y)``."""
    return HomMorphism.of(ctx, [[a, 0], [0, b]])


def graph_map(ctx, n):
    """``x -> (x, n x)``."""
    return HomMorphism.of(ctx, [[1], [n]])


def transpose_graph_map(ctx, n):
    """``x -> (n x, x)``."""
    return HomMorphism.of(ctx, [[n], [1]])


# classes


def theta(v):
    _single(v)
    t = {}
    for i, c in enumerate(v.context.type):
        t[(1 << v.bit(0, i, 0)) | (1 << v.bit(0, i, 1))] = Fraction(c)
    return v.cls(t)


def theta_of(ctx):
    return theta(variety(ctx, 1))


def poincare_class(v):
    """``p^* theta + q^* theta - m^* theta`` on ``A x A``."""
    if v.m != 2:
        raise NotTwoFactors(f"Poincare class lives on A x A, got m = {v.m}")
    ctx = v.context
    th = theta_of(ctx)
    return (pullback(proj_p(ctx), th) + pullback(proj_q(ctx), th)
            - pullback(addition(ctx), th))


def pontryagin(a, b):
    """``a * b = m_*(p^* a . q^* b)``."""
    a._check(b)
    _single(a.variety)
    ctx = a.variety.context
    return pushforward(addition(ctx), pullback(proj_p(ctx), a) * pullback(proj_q(ctx), b))


@lru_cache(maxsize=None)
def _exp_poincare(ctx):
    return poincare_class(variety(ctx, 2)).exp()


def fourier(z):
    """``F(z) = d^-1 q_*(e^P . p^* z)``."""
    _single(z.variety)
    ctx = z.variety.context
    kernel = _exp_poincare(ctx)
    return pushforward(proj_q(ctx), kernel * pullback(proj_p(ctx), z)) / ctx.d


def weight_components(z):
    """Split ``z`` into pieces on which ``n^*`` acts by ``n^i``."""
    return {i: z._wrap(part) for i, part in z.value.graded_parts().items()}


def scale_by_weight(z, fn):
    """Multiply the degree-``i`` part of ``z`` by ``fn(i)``."""
    t = {m: fn(degree(m)) * v for m, v in z.terms.items()}
    return z._wrap(ExtClass(z.value.context, t))


def point_class(ctx):
    return variety(ctx, 1).point()


class Isogeny:
    """Isogeny ``pi: A -> A0`` given by its pullback on ``H^1``.

    ``lattice[j]`` lists the coefficients of ``pi^*`` of the ``j``-th
    generator of ``A0`` in the generators of ``A`` (both in the order
    ``x1, y1, ..., xg, yg``).
    """

    def __init__(self, source, target, lattice):
        if source.g != target.g:
            raise NotIsogeny("source and target must have the same dimension")
        n = 2 * source.g
        lattice = tuple(tuple(int(x) for x in row) for row in lattice)
        if len(lattice) != n or any(len(r) != n for r in lattice):
            raise ValueError(f"lattice matrix must be {n}x{n}")
        det = _int_det([list(r) for r in lattice])
        if det == 0:
            raise NotIsogeny("lattice matrix is singular")
        self.source = source
        self.target = target
        self.lattice = lattice
        self.degree = abs(det)
        if self.pullback(theta_of(target)) != theta_of(source):
            raise PolarizationMismatch("pi^* theta_0 differs from theta")

    @classmethod
    def from_type(cls, context):
        """Isogeny onto a principally polarized variety with ``x_i -> c_i x_i``."""
        g = context.g
        lattice = [[0] * 2 * g for _ in range(2 * g)]
        for i, c in enumerate(context.type):
            lattice[2 * i][2 * i] = c
            lattice[2 * i + 1][2 * i + 1] = 1
        return cls(context, PolarizedContext(g), lattice)

    def table(self, m):
        src = variety(self.source, m)
        g = self.source.g
        out = []
        for k in range(m):
            for j in range(2 * g):
                out.append({1 << src.bit(k, 0, 0) + l: Fraction(c)
                            for l, c in enumerate(self.lattice[j]) if c})
        return out

    def pullback(self, z):
        """``(pi, ..., pi)^*`` on a class of ``A0^m``."""
        v = z.variety
        if v.context != self.target:
            raise VarietyMismatch("class does not live on the isogeny's target")
        src = variety(self.source, v.m)
        return CohClass(src, ExtClass(src.algebra, kernels.map_terms(z.terms, self.table(v.m)), True))


def _int_det(a):
    n = len(a)
    a = [row[:] for row in a]
    sign, prev = 1, 1
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k]), None)
        if p is None:
            return 0
        if p != k:
            a[k], a[p] = a[p], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def random_class(v, rng, nterms=6, degrees=None, max_coeff=3, denominators=(1, 1, 2, 3)):
    """Random sparse class with small rational coefficients."""
    masks = [m for m in range(1 << v.dim) if degrees is None or degree(m) in degrees]
    t = {}
    for _ in range(nterms):
        c = Fraction(rng.randint(-max_coeff, max_coeff), rng.choice(denominators))
        t[rng.choice(masks)] = c
    return v.cls(t)


def as_class(v, x):
    if isinstance(x, CohClass):
        return x
    return CohClass(v, ExtClass.scalar(v.algebra, as_rational(x)))
