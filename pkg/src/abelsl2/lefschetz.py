"""Primitive classes and Lefschetz-type statements for both model families.

A *model* is either a :class:`~abelsl2.action.ChowAction` (the cohomology
model, where only ``i = 2p - s`` is intrinsic) or a pair
``(FreeBeauvilleModule, Sl2Triple)`` as returned by ``build_free_module``.
In both, ``H`` acts on bidegree ``(p, s)`` by ``2p - g - s``.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

from abelsl2 import abvar
from abelsl2.abvar import CohClass
from abelsl2.action import ChowAction, build_action
from abelsl2.errors import InvalidBidegree, NotHomogeneous
from abelsl2.exactla import LinearMap, as_rational, rank
from abelsl2.report import Report
from abelsl2.sl2rep import (FreeBeauvilleModule, GroupElement, act, build_free_module,
                            coordinates, decompose)


def _unpack(model):
    if isinstance(model, ChowAction):
        return model, model.triple
    module, triple = model
    if not isinstance(module, FreeBeauvilleModule):
        raise TypeError("model must be a ChowAction or (FreeBeauvilleModule, Sl2Triple)")
    return module, triple


def _g(module):
    return module.context.g if isinstance(module, ChowAction) else module.g


@lru_cache(maxsize=64)
def _blocks(triple):
    return decompose(triple)


def _vector(z, model):
    if isinstance(z, CohClass):
        action = model if isinstance(model, ChowAction) else build_action(z.variety.context)
        return action, action.to_vector(z)
    if model is None:
        raise ValueError("a plain vector needs its model")
    return model, list(z)


def _wrap(model, vec, like):
    if isinstance(like, CohClass):
        return model.to_class(vec)
    return vec


def is_primitive(z, model=None):
    """True iff ``Y z = 0``."""
    model, vec = _vector(z, model)
    _, triple = _unpack(model)
    return not any(triple.Y.apply(vec))


@dataclass(frozen=True)
class LefschetzComponent:
    power: int
    lam: int
    q: Fraction
    primitive: object
    term: object


def primitive_decomposition(z, model=None):
    """Write an H-homogeneous ``z`` as ``sum_k theta^k z_k`` with ``z_k`` primitive."""
    model, vec = _vector(z, model)
    module, triple = _unpack(model)
    if not any(vec):
        return []
    hv = triple.H.apply(vec)
    i = next(k for k, x in enumerate(vec) if x)
    mu = hv[i] / vec[i]
    if any(h != mu * x for h, x in zip(hv, vec)):
        raise NotHomogeneous("class is not an H-eigenvector")
    blocks = _blocks(triple)
    coords = coordinates(blocks, vec)
    grouped = {}
    pos = 0
    for b in blocks:
        chunk = coords[pos:pos + b.lam + 1]
        pos += b.lam + 1
        for k, c in enumerate(chunk):
            if c:
                prim = grouped.setdefault((b.lam, k), [Fraction(0)] * triple.dim)
                for j, x in enumerate(b.lowest):
                    if x:
                        prim[j] += c * x
    g = _g(module)
    out = []
    for (lam, k), prim in sorted(grouped.items(), key=lambda kv: kv[0][1]):
        term = prim
        for _ in range(k):
            term = triple.X.apply(term)
        # a primitive of weight -lam sits in bidegree with 2q - s = g - lam
        q = Fraction(g - lam, 2) if isinstance(module, ChowAction) else None
        out.append(LefschetzComponent(k, lam, q, _wrap(model, prim, z), _wrap(model, term, z)))
    return out


def fourier_primitive_check(model, q, fourier=None):
    """``F(X^q z / q!) = (-1)^r X^r z / r!`` with ``r = lam - q`` on every block.

    ``F`` defaults to the geometric Fourier transform on the cohomology model
    and to the action of ``w`` on free modules.
    """
    module, triple = _unpack(model)
    if fourier is None:
        if isinstance(module, ChowAction):
            def fourier(vec):
                return module.to_vector(abvar.fourier(module.to_class(vec)))
        else:
            w = GroupElement.w()

            def fourier(vec):
                return act(w, triple, vec)
    rep = Report("Fourier on primitives")
    for n, b in enumerate(_blocks(triple)):
        if q > b.lam:
            continue
        r = b.lam - q
        lhs = fourier([x / factorial(q) for x in b.basis[q]])
        rhs = [x * (-1) ** r / factorial(r) for x in b.basis[r]]
        rep.add("fourier-primitive", f"F(θ^{q}/{q}! z) = (−θ)^{r}/{r}! z", lhs == rhs,
                inputs=f"block#{n} lam={b.lam}")
    return rep


@dataclass(frozen=True)
class MultiplicationResult:
    p: object
    q: object
    s: object
    source_dim: int
    target_dim: int
    rank: int
    injective: bool
    surjective: bool
    predicts_injective: bool
    predicts_surjective: bool
    note: str = ""

    @property
    def consistent(self):
        return ((not self.predicts_injective or self.injective)
                and (not self.predicts_surjective or self.surjective))


def _piece_indices(model, p, s):
    """Basis indices spanning the bidegree-(p, s) piece."""
    module, triple = _unpack(model)
    g = _g(module)
    if isinstance(module, ChowAction):
        i = 2 * as_rational(p) - as_rational(s)
        return [m for m in range(triple.dim) if bin(m).count("1") == i]
    annotated = all(gen.p is not None for gen in module.generators)
    out = []
    mu = 2 * as_rational(p) - g - as_rational(s)
    for j, gen in enumerate(module.generators):
        for k in range(gen.lam + 1):
            if annotated:
                if gen.s == s and gen.p + k == p:
                    out.append(module.index(j, k))
            elif 2 * k - gen.lam == mu:
                out.append(module.index(j, k))
    return out


def _power_rank(triple, src, tgt, k):
    power = LinearMap.identity(triple.dim)
    for _ in range(k):
        power = triple.X @ power
    sub = power.restrict_cols(src).restrict_rows(tgt)
    return rank(sub)


def hard_lefschetz_check(model, p, q, s):
    """Rank of ``x theta^(q-p)`` from bidegree ``(p, s)`` to ``(q, s)``.

    Injectivity is predicted for ``p + q <= g + s`` and surjectivity for
    ``p + q >= g + s``.  On the cohomology model only ``i = 2p - s`` matters.
    """
    p, q, s = as_rational(p), as_rational(q), as_rational(s)
    if q < p:
        raise ValueError("need q >= p")
    module, triple = _unpack(model)
    g = _g(module)
    if (q - p).denominator != 1:
        raise ValueError("q - p must be an integer")
    src = _piece_indices(model, p, s)
    tgt = _piece_indices(model, q, s)
    r = _power_rank(triple, src, tgt, int(q - p)) if src and tgt else 0
    note = ""
    if isinstance(module, ChowAction):
        note = f"cohomology model: degree {2 * p - s} -> {2 * q - s}"
    return MultiplicationResult(p, q, s, len(src), len(tgt), r, r == len(src), r == len(tgt),
                                p + q <= g + s, p + q >= g + s, note)


def hard_lefschetz_sweep(model):
    """Run :func:`hard_lefschetz_check` on every bidegree pair carried by the model."""
    module, triple = _unpack(model)
    g = _g(module)
    rep = Report("hard Lefschetz")
    if isinstance(module, ChowAction):
        pairs = [(Fraction(i, 2), Fraction(j, 2), 0) for i in range(2 * g + 1)
                 for j in range(i, 2 * g + 1, 2)]
    elif all(gen.p is not None for gen in module.generators):
        pairs = []
        for s in sorted({gen.s for gen in module.generators}):
            ps = sorted({gen.p + k for gen in module.generators if gen.s == s
                         for k in range(gen.lam + 1)})
            pairs += [(a, b, s) for a in ps for b in ps if b >= a and (b - a).denominator == 1]
    else:
        weights = sorted({2 * k - gen.lam for gen in module.generators for k in range(gen.lam + 1)})
        pairs = [(Fraction(mu + g, 2), Fraction(nu + g, 2), 0) for mu in weights for nu in weights
                 if nu >= mu and (nu - mu) % 2 == 0]
    for p, q, s in pairs:
        res = hard_lefschetz_check(model, p, q, s)
        rep.add("hard Lefschetz", f"x θ^{q - p}: ({p},{s}) -> ({q},{s})", res.consistent,
                detail=f"rank {res.rank}, dims {res.source_dim}->{res.target_dim}",
                inputs=f"p={p} q={q} s={s}")
    return rep


def negative_s_annihilation_check(g, p, s):
    """On one generator of bidegree ``(p, s)``: is ``X^(g - 2p) z = 0``?"""
    p = as_rational(p)
    lam = g + s - 2 * p
    if lam < 0:
        raise InvalidBidegree(f"g + s - 2p = {lam} < 0")
    module, triple = build_free_module(g, [{"p": p, "s": s, "label": "z"}])
    vec = module.basis_vector(0, 0)
    k = g - 2 * p
    if k.denominator != 1 or k < 0:
        raise InvalidBidegree(f"g - 2p = {k} is not a nonnegative integer")
    for _ in range(int(k)):
        vec = triple.X.apply(vec)
    annihilated = not any(vec)
    rep = Report("negative-s annihilation")
    rep.add("annihilation", f"θ^{k} z = 0 for z in bidegree ({p},{s})",
            annihilated == (s < 0), detail=f"annihilated={annihilated}",
            inputs=f"g={g} p={p} s={s}")
    return rep, annihilated


def filtration_lefschetz_check(model, p, q):
    """Injectivity of ``x theta^(q-p)`` on the pieces with ``s >= p + q - g``."""
    module, triple = _unpack(model)
    if isinstance(module, ChowAction):
        raise TypeError("the filtration needs the (p, s) grading of a free module")
    if not all(gen.p is not None for gen in module.generators):
        raise ValueError("filtration check needs (p, s) annotations on every generator")
    p, q = as_rational(p), as_rational(q)
    g = module.g
    floor = p + q - g
    s_values = sorted({gen.s for gen in module.generators if gen.s >= floor})
    src = [i for s in s_values for i in _piece_indices(model, p, s)]
    tgt = [i for s in s_values for i in _piece_indices(model, q, s)]
    r = _power_rank(triple, src, tgt, int(q - p)) if src and tgt else 0
    return MultiplicationResult(p, q, floor, len(src), len(tgt), r, r == len(src),
                                r == len(tgt), True, False, f"filtration level s >= {floor}")


@dataclass
class LefschetzReport:
    primitive_dims: dict
    bidegree_dims: dict = field(default_factory=dict)
    rank_table: list = field(default_factory=list)
    checks: Report = None

    @property
    def ok(self):
        return self.checks.ok


def lefschetz_report(model):
    """Primitive dimensions, multiplication ranks and pass/fail per identity."""
    from abelsl2.sl2rep import primitive_subspace
    module, triple = _unpack(model)
    prims = primitive_subspace(triple)
    blocks = _blocks(triple)
    checks = Report("Lefschetz")
    dims = {lam: len(v) for lam, v in sorted(prims.items())}
    counts = {}
    for b in blocks:
        counts[b.lam] = counts.get(b.lam, 0) + 1
    checks.add("primitive", "blocks per weight = primitive dimension", counts == dims)
    checks.add("primitive", "block dimensions sum to the module dimension",
               sum(b.lam + 1 for b in blocks) == triple.dim)
    sweep = hard_lefschetz_sweep(model)
    checks.extend(sweep)
    bidegrees = {}
    if isinstance(module, FreeBeauvilleModule) and all(gen.p is not None for gen in module.generators):
        for gen in module.generators:
            bidegrees[gen.p, gen.s] = bidegrees.get((gen.p, gen.s), 0) + 1
    table = [(c.inputs, c.detail) for c in sweep.checks]
    return LefschetzReport(dims, bidegrees, table, checks)
