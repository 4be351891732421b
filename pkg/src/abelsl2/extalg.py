"""Exterior algebra over Q on degree-1 generators.

A monomial is a bitmask over the context's generators; bit ``i`` is the
``i``-th generator in the context's fixed order, and the monomial denotes the
wedge of its generators in increasing order.  Degree-0 scalars live on the
empty mask.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from abelsl2 import kernels
from abelsl2.errors import (ConstantTerm, ContextMismatch, MissingImage,
                            NonLinearImage, OddDegreeTerm)
from abelsl2.exactla import as_rational


@dataclass(frozen=True)
class AlgebraContext:
    generators: tuple

    def __post_init__(self):
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("generator labels must be unique")

    @property
    def n(self):
        return len(self.generators)

    @property
    def full_mask(self):
        return (1 << self.n) - 1

    def index(self, label):
        return self.generators.index(label)

    def gen(self, label_or_index):
        i = label_or_index if isinstance(label_or_index, int) else self.index(label_or_index)
        return ExtClass(self, {1 << i: Fraction(1)})

    def one(self):
        return ExtClass(self, {0: Fraction(1)})

    def zero(self):
        return ExtClass(self, {})

    def orientation(self):
        return ExtClass(self, {self.full_mask: Fraction(1)})

    def monomial_label(self, mask, sep="*"):
        if not mask:
            return "1"
        return sep.join(self.generators[i] for i in range(self.n) if mask >> i & 1)


def degree(mask):
    return bin(mask).count("1")


class ExtClass:
    """Element of the exterior algebra: ``{mask: Fraction}`` with nonzero values."""

    __slots__ = ("context", "terms")

    def __init__(self, context, terms=None, _trusted=False):
        self.context = context
        if _trusted:
            self.terms = terms
        else:
            self.terms = {m: v for m, v in ((m, as_rational(v)) for m, v in (terms or {}).items()) if v}

    @classmethod
    def scalar(cls, context, value):
        return cls(context, {0: value})

    # structure

    def degrees(self):
        return sorted({degree(m) for m in self.terms})

    def part(self, k):
        return ExtClass(self.context, {m: v for m, v in self.terms.items() if degree(m) == k}, True)

    def graded_parts(self):
        out = {}
        for m, v in self.terms.items():
            out.setdefault(degree(m), {})[m] = v
        return {k: ExtClass(self.context, t, True) for k, t in sorted(out.items())}

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def coefficient(self, mask):
        return self.terms.get(mask, Fraction(0))

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    # arithmetic

    def _check(self, other):
        if self.context != other.context:
            raise ContextMismatch("classes live in different algebras")

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.terms == ({0: Fraction(other)} if other else {})
        if not isinstance(other, ExtClass):
            return NotImplemented
        return self.context == other.context and self.terms == other.terms

    def __hash__(self):
        return hash((self.context, frozenset(self.terms.items())))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExtClass.scalar(self.context, other)
        self._check(other)
        t = dict(self.terms)
        for m, v in other.terms.items():
            t[m] = t.get(m, 0) + v
        return ExtClass(self.context, {m: v for m, v in t.items() if v}, True)

    __radd__ = __add__

    def __neg__(self):
        return ExtClass(self.context, {m: -v for m, v in self.terms.items()}, True)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, ExtClass):
            return wedge(self, other)
        s = as_rational(other)
        if not s:
            return ExtClass(self.context, {}, True)
        return ExtClass(self.context, {m: s * v for m, v in self.terms.items()}, True)

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, other):
        return self * (1 / as_rational(other))

    def __pow__(self, k):
        result = self.context.one()
        for _ in range(k):
            result = wedge(result, self)
        return result

    def __repr__(self):
        return f"ExtClass({format_terms(self)})"


def format_terms(cls):
    if not cls.terms:
        return "0"
    parts = []
    for m in sorted(cls.terms, key=lambda m: (degree(m), m)):
        parts.append(f"{cls.terms[m]}*{cls.context.monomial_label(m)}")
    return " + ".join(parts)


def wedge(a, b):
    a._check(b)
    return ExtClass(a.context, kernels.wedge_terms(a.terms, b.terms), True)


def algebra_map(ctx_from, ctx_to, images, cls):
    """Apply the algebra homomorphism extending ``images`` to ``cls``.

    ``images`` maps each generator of ``ctx_from`` (label or index) to a
    degree-1 class of ``ctx_to``.
    """
    if cls.context != ctx_from:
        raise ContextMismatch("class does not live in the source algebra")
    table = [None] * ctx_from.n
    for key, img in images.items():
        i = key if isinstance(key, int) else ctx_from.index(key)
        if img.context != ctx_to:
            raise ContextMismatch("image does not live in the target algebra")
        if any(degree(m) != 1 for m in img.terms):
            raise NonLinearImage(f"image of {ctx_from.generators[i]} is not of pure degree 1")
        table[i] = img.terms
    missing = [ctx_from.generators[i] for i, t in enumerate(table) if t is None]
    if missing:
        raise MissingImage(f"no image for generators {missing}")
    return ExtClass(ctx_to, kernels.map_terms(cls.terms, table), True)


def linear_map_terms(cls_terms, table, ctx_to):
    """Raw variant of :func:`algebra_map` on term dicts (no validation)."""
    return ExtClass(ctx_to, kernels.map_terms(cls_terms, table), True)


def integral(cls, orientation=None):
    """Coefficient of the orientation monomial (the full mask)."""
    full = cls.context.full_mask
    if orientation is not None:
        mask = orientation if isinstance(orientation, int) else next(iter(orientation.terms), None)
        if mask != full:
            raise ValueError("orientation must be the full monomial")
    return cls.terms.get(full, Fraction(0))


def exp_even(cls):
    """``sum cls^k / k!`` for a nilpotent class with even positive degrees."""
    for m in cls.terms:
        if m == 0:
            raise ConstantTerm("exp_even needs a class without constant term")
        if degree(m) & 1:
            raise OddDegreeTerm("exp_even needs even-degree terms only")
    result = {0: Fraction(1)}
    power = {0: Fraction(1)}
    k = 0
    while True:
        k += 1
        power = kernels.wedge_terms(power, cls.terms)
        if not power:
            break
        f = Fraction(1, factorial(k))
        for m, v in power.items():
            result[m] = result.get(m, 0) + f * v
    return ExtClass(cls.context, {m: v for m, v in result.items() if v}, True)


def star(cls, inverse=False):
    """Poincare-duality star on the exterior algebra."""
    return ExtClass(cls.context, kernels.star_terms(cls.terms, cls.context.full_mask, inverse), True)
