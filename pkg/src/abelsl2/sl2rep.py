"""sl2 triples, lowest-weight decompositions, free modules and the SL2(Q) action.

Conventions: ``[H, X] = 2X``, ``[H, Y] = -2Y``, ``[X, Y] = H``.  Group
elements act through elementary factorizations ``u(a) = exp(aX)``,
``v(b) = exp(bY)``.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from abelsl2.errors import BracketViolation, NegativeLambda, NotDecomposable
from abelsl2.exactla import LinearMap, as_rational, kernel_basis, rank, solve
from abelsl2.report import Report


@dataclass(frozen=True)
class Sl2Triple:
    X: LinearMap
    Y: LinearMap
    H: LinearMap
    labels: tuple = None

    def __post_init__(self):
        n = self.X.rows
        for name in "XYH":
            if getattr(self, name).shape != (n, n):
                raise ValueError(f"{name} must be {n}x{n}")

    @property
    def dim(self):
        return self.X.rows


def _first_entry(m):
    if m.is_zero():
        return None
    (r, c), v = next(iter(m.entries.items()))
    return f"entry ({r}, {c}) off by {v}"


def check_bracket(t):
    """Exact verification of the three sl2 relations."""
    X, Y, H = t.X, t.Y, t.H
    rep = Report("sl2 brackets")
    for name, lhs, rhs in (("[H,X] = 2X", H @ X - X @ H, X * 2),
                           ("[H,Y] = -2Y", H @ Y - Y @ H, Y * -2),
                           ("[X,Y] = H", X @ Y - Y @ X, H)):
        diff = lhs - rhs
        rep.add("sl2", name, diff.is_zero(), _first_entry(diff) or "")
    return rep


def _require(t):
    rep = check_bracket(t)
    if not rep.ok:
        raise BracketViolation("; ".join(f"{c.name}: {c.detail}" for c in rep.failures()))


def weight_spaces(t):
    """``{mu: basis}`` for the eigenspaces of H (nonzero ones only)."""
    H = t.H
    n = t.dim
    if all(r == c for r, c in H.entries):
        spaces = {}
        for i in range(n):
            mu = H.entries.get((i, i), Fraction(0))
            vec = [Fraction(0)] * n
            vec[i] = Fraction(1)
            spaces.setdefault(int(mu) if mu.denominator == 1 else mu, []).append(vec)
        return dict(sorted(spaces.items()))
    spaces = {}
    found = 0
    for mu in sorted(range(-n, n + 1), key=abs):
        basis = kernel_basis(H - LinearMap.identity(n) * mu)
        if basis:
            spaces[mu] = basis
            found += len(basis)
        if found == n:
            break
    if found != n:
        raise NotDecomposable("H is not diagonalizable with integer eigenvalues")
    return dict(sorted(spaces.items()))


def _combine(basis, coeffs):
    n = len(basis[0])
    out = [Fraction(0)] * n
    for b, c in zip(basis, coeffs):
        if c:
            for i, x in enumerate(b):
                if x:
                    out[i] += c * x
    return out


def primitive_subspace(t):
    """``{lam: basis}`` of vectors with ``Y v = 0`` and ``H v = -lam v``."""
    _require(t)
    out = {}
    for mu, basis in weight_spaces(t).items():
        if mu > 0:
            continue
        cols = [t.Y.apply(b) for b in basis]
        restricted = LinearMap.from_rows(list(zip(*cols))) if cols else None
        kern = kernel_basis(restricted)
        if kern:
            out[-mu] = [_combine(basis, k) for k in kern]
    return out


@dataclass(frozen=True)
class Block:
    lam: int
    lowest: list
    basis: list = field(repr=False)


def decompose(t):
    """Split into irreducible blocks ``(z, Xz, ..., X^lam z)``."""
    blocks = []
    for lam, prims in sorted(primitive_subspace(t).items()):
        for z in prims:
            chain = [z]
            for _ in range(lam):
                chain.append(t.X.apply(chain[-1]))
            if any(t.X.apply(chain[-1])):
                raise NotDecomposable(f"X^{lam + 1} does not kill a lowest vector of weight {-lam}")
            blocks.append(Block(lam, z, chain))
    vectors = [v for b in blocks for v in b.basis]
    if len(vectors) != t.dim or (vectors and rank(LinearMap.from_rows(vectors)) != t.dim):
        raise NotDecomposable("blocks do not span the module")
    return blocks


def coordinates(blocks, vec):
    """Coefficients of ``vec`` in the concatenated block bases."""
    vectors = [v for b in blocks for v in b.basis]
    m = LinearMap.from_rows(list(zip(*vectors)))
    x = solve(m, vec)
    if x is None:
        raise NotDecomposable("vector outside the span of the blocks")
    return x


@dataclass(frozen=True)
class Generator:
    label: str
    lam: int
    p: Fraction = None
    s: int = None


@dataclass(frozen=True)
class FreeBeauvilleModule:
    """Direct sum of irreducibles with lowest vectors ``z_j`` and basis ``X^q z_j``."""

    g: int
    generators: tuple

    @property
    def dim(self):
        return sum(gen.lam + 1 for gen in self.generators)

    def offsets(self):
        out, k = [], 0
        for gen in self.generators:
            out.append(k)
            k += gen.lam + 1
        return out

    def index(self, j, q):
        gen = self.generators[j]
        if not 0 <= q <= gen.lam:
            raise IndexError(f"X^{q} z_{j} is outside a block of length {gen.lam + 1}")
        return self.offsets()[j] + q

    def basis_vector(self, j, q, coeff=1):
        vec = [Fraction(0)] * self.dim
        vec[self.index(j, q)] = Fraction(coeff)
        return vec

    def bidegree(self, j, q):
        gen = self.generators[j]
        if gen.p is None:
            return None
        return gen.p + q, gen.s

    def labels(self):
        out = []
        for gen in self.generators:
            for q in range(gen.lam + 1):
                out.append(gen.label if q == 0 else f"X^{q} {gen.label}")
        return tuple(out)


def _as_generator(g, spec, j):
    if isinstance(spec, Generator):
        gen = spec
    elif isinstance(spec, int):
        gen = Generator(f"z{j}", spec)
    elif isinstance(spec, dict):
        spec = dict(spec)
        p, s = spec.get("p"), spec.get("s")
        lam = spec.get("lam")
        if lam is None:
            if p is None or s is None:
                raise ValueError("a generator needs lam or both p and s")
            lam = g + s - 2 * as_rational(p)
        gen = Generator(spec.get("label", f"z{j}"), lam, None if p is None else as_rational(p), s)
    else:
        raise TypeError(f"cannot build a generator from {spec!r}")
    lam = as_rational(gen.lam)
    if gen.p is not None and lam != g + gen.s - 2 * gen.p:
        raise ValueError(f"lam = {lam} disagrees with g + s - 2p for {gen.label}")
    if lam < 0:
        raise NegativeLambda(f"generator {gen.label} has lam = {lam} < 0")
    if lam.denominator != 1:
        raise ValueError(f"generator {gen.label} has non-integral lam = {lam}")
    return Generator(gen.label, int(lam), gen.p, gen.s)


def build_free_module(g, generators):
    """Free module on lowest-weight generators and its sl2 triple.

    ``Y X^q z = q (lam - q + 1) X^(q-1) z`` is forced by the brackets.
    """
    gens = tuple(_as_generator(g, s, j) for j, s in enumerate(generators))
    module = FreeBeauvilleModule(g, gens)
    X, Y, H = {}, {}, {}
    for j, gen in enumerate(gens):
        base = module.offsets()[j]
        lam = gen.lam
        for q in range(lam + 1):
            i = base + q
            H[i, i] = 2 * q - lam
            if q < lam:
                X[i + 1, i] = 1
            if q > 0:
                Y[i - 1, i] = q * (lam - q + 1)
    n = module.dim
    triple = Sl2Triple(LinearMap(n, n, X), LinearMap(n, n, Y), LinearMap(n, n, H), module.labels())
    return module, triple


@dataclass(frozen=True)
class GroupElement:
    """Element of SL2(Q), ``((a, b), (c, d))``."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        for k in "abcd":
            object.__setattr__(self, k, as_rational(getattr(self, k)))
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"determinant is {self.a * self.d - self.b * self.c}, not 1")

    @classmethod
    def from_rows(cls, rows):
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    @classmethod
    def u(cls, a):
        return cls(1, a, 0, 1)

    @classmethod
    def v(cls, b):
        return cls(1, 0, b, 1)

    @classmethod
    def w(cls):
        return cls(0, -1, 1, 0)

    @classmethod
    def torus(cls, n):
        n = as_rational(n)
        return cls(n, 0, 0, 1 / n)

    @classmethod
    def random(cls, rng, size=3):
        """Random element as a product of a few elementary matrices."""
        m = cls.identity()
        for _ in range(rng.randint(1, 4)):
            x = Fraction(rng.randint(-size, size), rng.randint(1, size))
            m = m @ (cls.u(x) if rng.random() < 0.5 else cls.v(x))
        if rng.random() < 0.3:
            m = m @ cls.torus(Fraction(rng.choice([-3, -2, -1, 2, 3]), rng.choice([1, 2])))
        return m

    def rows(self):
        return ((self.a, self.b), (self.c, self.d))

    def __matmul__(self, o):
        return GroupElement(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                            self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def inverse(self):
        return GroupElement(self.d, -self.b, -self.c, self.a)

    def __neg__(self):
        return GroupElement(-self.a, -self.b, -self.c, -self.d)

    def __str__(self):
        return f"({self.a} {self.b}; {self.c} {self.d})"


def _uvu(m):
    a, b, c, d = m.a, m.b, m.c, m.d
    word = [("u", (a - 1) / c), ("v", c), ("u", (d - 1) / c)]
    return [(k, x) for k, x in word if x]


def _vuv(m):
    a, b, c, d = m.a, m.b, m.c, m.d
    word = [("v", (d - 1) / b), ("u", b), ("v", (a - 1) / b)]
    return [(k, x) for k, x in word if x]


def factor_elementary(m, form="uvu"):
    """Word ``[(kind, x), ...]`` in ``u(x)``, ``v(x)`` whose product is ``m``.

    ``form="uvu"`` pivots on the lower-left entry, ``"vuv"`` on the upper
    right; when the pivot vanishes the word is prefixed by one extra factor.
    Words have length at most 4.
    """
    if form not in ("uvu", "vuv"):
        raise ValueError(f"unknown factorization form {form!r}")
    if m == GroupElement.identity():
        return []
    if form == "uvu":
        if m.c:
            return _uvu(m)
        if m.a == 1:
            return [("u", m.b)]
        return [("v", Fraction(1))] + _uvu(GroupElement.v(-1) @ m)
    if m.b:
        return _vuv(m)
    if m.a == 1:
        return [("v", m.c)]
    return [("u", Fraction(1))] + _vuv(GroupElement.u(-1) @ m)


def word_product(word):
    m = GroupElement.identity()
    for kind, x in word:
        m = m @ (GroupElement.u(x) if kind == "u" else GroupElement.v(x))
    return m


def exp_nilpotent_apply(N, a, vec):
    """``exp(a N) vec`` for nilpotent ``N`` (exact truncated series)."""
    a = as_rational(a)
    out = list(vec)
    term = list(vec)
    k = 0
    while True:
        k += 1
        term = [x * a / k for x in N.apply(term)]
        if not any(term):
            return out
        if k > N.rows:
            raise ValueError("operator is not nilpotent")
        out = [x + y for x, y in zip(out, term)]


def exp_nilpotent(N, a=1):
    a = as_rational(a)
    n = N.rows
    result = LinearMap.identity(n)
    power = LinearMap.identity(n)
    for k in range(1, n + 2):
        power = power @ N * (a / k)
        if power.is_zero():
            return result
        result = result + power
    raise ValueError("operator is not nilpotent")


def act(m, t, vec, form="uvu"):
    """Action of ``m`` on ``vec`` through the triple's exponentials."""
    for kind, x in reversed(factor_elementary(m, form)):
        vec = exp_nilpotent_apply(t.X if kind == "u" else t.Y, x, vec)
    return vec


def act_matrix(m, t, form="uvu"):
    result = LinearMap.identity(t.dim)
    for kind, x in factor_elementary(m, form):
        result = result @ exp_nilpotent(t.X if kind == "u" else t.Y, x)
    return result


def torus_operator(t, n):
    """``n^H`` as a map."""
    n = as_rational(n)
    if all(r == c for r, c in t.H.entries):
        return LinearMap.diagonal([n ** int(t.H.entries.get((i, i), 0)) for i in range(t.dim)])
    return act_matrix(GroupElement.torus(n), t)


def demazure_check(beta_u, beta_t, h, torus_values=(2, 3, -1)):
    """Check ``h beta(t) h^-1 = beta(t^-1)`` and ``h^2 = (beta(u) h)^3 = beta(-I)``.

    ``beta_u`` is the operator of ``u = (1 1; 0 1)``, ``beta_t(t)`` the operator
    of ``diag(t, 1/t)`` and ``h`` the candidate image of ``w``.  Condition
    (i) is tested as ``h beta(t) = beta(1/t) h``.
    """
    rep = Report("Demazure presentation")
    for t in torus_values:
        t = as_rational(t)
        ok = h @ beta_t(t) == beta_t(1 / t) @ h
        rep.add("demazure (i)", f"h beta(t) h^-1 = beta(1/t), t = {t}", ok, inputs=f"t={t}")
    h2 = h @ h
    uh = beta_u @ h
    rep.add("demazure (ii)", "h^2 = (beta(u) h)^3", h2 == uh @ uh @ uh)
    rep.add("demazure (ii)", "h^2 = beta(-I)", h2 == beta_t(Fraction(-1)))
    return rep
