"""Named verification suites.

Each suite expands into independent tasks returning a :class:`Report`; the
tasks may run on worker threads (``ABELSL2_WORKERS``) and the merged report
is sorted by anchor, so the output does not depend on scheduling.
"""

import os
import random
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from math import factorial

from abelsl2 import abvar, corr
from abelsl2.abvar import (Isogeny, PolarizedContext, fourier, pullback, random_class, theta,
                           variety)
from abelsl2.action import (act_by_closed_forms, act_closed_form, act_general, build_action,
                            sigma_identity_check, sl2z_relations_check)
from abelsl2.corr import Correspondence, compose
from abelsl2.errors import DimensionGuard
from abelsl2.lefschetz import (filtration_lefschetz_check, fourier_primitive_check,
                               lefschetz_report, negative_s_annihilation_check)
from abelsl2.report import Report
from abelsl2.sl2rep import (GroupElement, act_matrix, build_free_module, check_bracket,
                            exp_nilpotent, torus_operator, demazure_check)

WORKERS_ENV = "ABELSL2_WORKERS"

LIMITS = {
    "brackets": 4,
    "sl2z": 2,
    "formulas12": 2,
    "kunneth": 3,
    "fourier": 3,
    "lefschetz": 4,
    "demazure": 3,
    "isogeny": 2,
}
SUITES = tuple(LIMITS) + ("all",)


def _rng(seed, *tags):
    return random.Random(":".join(str(t) for t in (seed,) + tags))


def _tag(ctx):
    return f"g={ctx.g} type={','.join(map(str, ctx.type))}"


def random_free_generators(g, rng, max_lam=10, count=(1, 4)):
    """Random ``(p, s)``-annotated generators with ``0 <= lam <= max_lam``."""
    gens = []
    for j in range(rng.randint(*count)):
        lam = rng.randint(0, max_lam)
        s = rng.randint(-2, 2)
        if (g + s - lam) % 2:
            s += 1 if s < 2 else -1
        gens.append({"p": Fraction(g + s - lam, 2), "s": s, "label": f"z{j}"})
    return gens


# -- suites ---------------------------------------------------------------

def _brackets(ctx, seed):
    def triple_task():
        rep = Report("brackets")
        action = build_action(ctx)
        for c in check_bracket(action.triple).checks:
            rep.add("sl2-triple", c.name, c.passed, c.detail, _tag(ctx))
        return rep

    def lift_task():
        rep = Report("brackets")
        action = build_action(ctx)
        X, Y, H = action.lie_X(), action.lie_Y(), action.lie_H()
        rng = _rng(seed, "brackets", "lift")
        A = action.variety
        for k in range(4):
            z = random_class(A, rng)
            rep.add("sl2-lift", "Lφ(X)_*, Lφ(Y)_*, Lφ(H)_* match X, Y, H",
                    X(z) == action.X(z) and Y(z) == action.Y(z) and H(z) == action.H(z),
                    inputs=f"{_tag(ctx)} z#{k}")
        rep.add("sl2-lift", "[Lφ(H), Lφ(X)] = 2Lφ(X)", H @ X - X @ H == X * 2, inputs=_tag(ctx))
        rep.add("sl2-lift", "[Lφ(H), Lφ(Y)] = −2Lφ(Y)", H @ Y - Y @ H == Y * -2, inputs=_tag(ctx))
        rep.add("sl2-lift", "[Lφ(X), Lφ(Y)] = Lφ(H)", X @ Y - Y @ X == H, inputs=_tag(ctx))
        return rep

    return [triple_task, lift_task] if ctx.g <= 2 else [triple_task]


def _sl2z(ctx, seed):
    def relations():
        return sl2z_relations_check(ctx)

    def lifts():
        rep = Report("sl2z")
        action = build_action(ctx)
        rng = _rng(seed, "sl2z")
        A = action.variety
        elements = {"u": GroupElement.u(1), "v": GroupElement.v(1), "w": GroupElement.w(),
                    "diag(2,1/2)": GroupElement.torus(2), "-1": GroupElement.torus(-1)}
        for name, m in elements.items():
            phi = action.phi(m)
            for k in range(3):
                z = random_class(A, rng)
                rep.add("sl2z-lift", f"φ({name})_* z = {name}·z", phi(z) == act_general(m, z),
                        inputs=f"{_tag(ctx)} z#{k}")
        z = random_class(A, rng)
        rep.extend(sigma_identity_check(ctx, 2, [z]))
        return rep

    def two_paths(k):
        rng = _rng(seed, "two-paths", k)
        A = variety(ctx, 1)
        m = GroupElement.random(rng)
        z = random_class(A, rng)
        rep = Report("sl2z")
        rep.add("action-two-paths", "closed forms agree with the operator action",
                act_by_closed_forms(m, z) == act_general(m, z), inputs=f"{_tag(ctx)} M={m} z#{k}")
        return rep

    return [relations, lifts] + [lambda k=k: two_paths(k) for k in range(20)]


def _formulas12(ctx, seed, samples=20):
    v2 = variety(ctx, 2)
    A = variety(ctx, 1)
    p, q = abvar.proj_p(ctx), abvar.proj_q(ctx)

    def task(k):
        rng = _rng(seed, "formulas12", k)
        rep = Report("formulas12")
        alpha = Correspondence(random_class(v2, rng, nterms=10))
        z = random_class(A, rng)
        dz = corr.diagonal_push(z)
        tag = f"{_tag(ctx)} alpha#{k}"
        # graded order: q^*z.alpha and alpha.q^*z differ by a sign when both are odd
        rep.add("corr-formulas-a", "Δ_*z∘α = q^*z·α",
                compose(dz, alpha).value == pullback(q, z) * alpha.value, inputs=tag)
        rep.add("corr-formulas-a", "α∘Δ_*z = α·p^*z",
                compose(alpha, dz).value == alpha.value * pullback(p, z), inputs=tag)
        for n in (-1, 2, 3):
            gu, gt = corr.graph(ctx, n), corr.transpose_graph(ctx, n)
            t = f"{tag} n={n}"
            rep.add("corr-formulas-b", "Γ_u∘α = (1,u)_*α",
                    compose(gu, alpha) == corr.pair_pushforward(alpha, 1, n), inputs=t)
            rep.add("corr-formulas-b", "Γ′_u∘α = (1,u)^*α",
                    compose(gt, alpha) == corr.pair_pullback(alpha, 1, n), inputs=t)
            rep.add("corr-formulas-b", "α∘Γ_u = (u,1)^*α",
                    compose(alpha, gu) == corr.pair_pullback(alpha, n, 1), inputs=t)
            rep.add("corr-formulas-b", "α∘Γ′_u = (u,1)_*α",
                    compose(alpha, gt) == corr.pair_pushforward(alpha, n, 1), inputs=t)
        return rep

    return [lambda k=k: task(k) for k in range(samples)]


def _kunneth(ctx, seed):
    def task():
        rep = Report("kunneth")
        pis = corr.kunneth_idempotents(ctx)
        tag = _tag(ctx)
        total = pis[0]
        for pi in pis[1:]:
            total = total + pi
        rep.add("kunneth", "Σπᵢ = [Δ]", total == corr.diagonal_class(ctx), inputs=tag)
        for i, a in enumerate(pis):
            for j, b in enumerate(pis):
                expected = a if i == j else a * 0
                rep.add("kunneth", "πᵢ∘πⱼ = δᵢⱼπᵢ", compose(a, b) == expected,
                        inputs=f"{tag} i={i} j={j}")
            for k in (2, 3):
                rep.add("kunneth", "(1,k)^*πᵢ = kⁱπᵢ", corr.pair_pullback(a, 1, k) == a * k ** i,
                        inputs=f"{tag} i={i} k={k}")
        return rep

    return [task]


def _fourier(ctx, seed, samples=50):
    A = variety(ctx, 1)
    sign = (-1) ** ctx.g
    minus = abvar.multiplication(A, -1)

    def inversion(chunk):
        rng = _rng(seed, "fourier", chunk)
        rep = Report("fourier")
        for k in range(chunk * 10, chunk * 10 + 10):
            z = random_class(A, rng)
            rep.add("fourier-inversion", "F(F(z)) = (−1)^g (−1)^*z",
                    fourier(fourier(z)) == pullback(minus, z) * sign, inputs=f"{_tag(ctx)} z#{k}")
        return rep

    def fixed():
        rep = Report("fourier")
        th = theta(A)
        g = ctx.g
        rep.add("fourier-unit", "F(1) = (−θ)^g/g!",
                fourier(A.one()) == (-th) ** g / factorial(g), inputs=_tag(ctx))
        rep.add("fourier-unit", "F([pt]) = 1/d", fourier(A.point()) == A.one() / ctx.d,
                inputs=_tag(ctx))
        rep.add("fourier-closed-form", "w·z = F(z)",
                all(act_general(GroupElement.w(), b) == fourier(b) for b in A.basis()),
                inputs=_tag(ctx))
        action = build_action(ctx)
        for q in range(g + 1):
            rep.extend(fourier_primitive_check(action, q))
        return rep

    return [lambda c=c: inversion(c) for c in range(samples // 10)] + [fixed]


def _lefschetz(ctx, seed, modules=10):
    def cohomology():
        rep = lefschetz_report(build_action(ctx)).checks
        return Report("lefschetz", [c for c in rep.checks])

    def free(k):
        rng = _rng(seed, "lefschetz", k)
        g = ctx.g
        gens = random_free_generators(g, rng)
        model = build_free_module(g, gens)
        rep = Report("lefschetz")
        tag = f"g={g} module#{k}"
        for c in lefschetz_report(model).checks.checks:
            rep.add(c.anchor, c.name, c.passed, c.detail, f"{tag} {c.inputs}")
        top = max(gen.lam for gen in model[0].generators)
        for q in range(top + 1):
            for c in fourier_primitive_check(model, q).checks:
                rep.add(c.anchor, c.name, c.passed, c.detail, f"{tag} {c.inputs}")
        ps = sorted({gen.p + j for gen in model[0].generators for j in range(gen.lam + 1)})
        for a in ps:
            for b in ps:
                if b >= a and (b - a).denominator == 1:
                    res = filtration_lefschetz_check(model, a, b)
                    rep.add("filtration-lefschetz", f"x θ^{b - a} injective on s >= {res.s}",
                            res.consistent, f"rank {res.rank}, dims {res.source_dim}->{res.target_dim}",
                            f"{tag} p={a} q={b}")
        return rep

    def annihilation():
        g = ctx.g
        rep = Report("lefschetz")
        for s in range(-2, 3):
            for twice_p in range(0, g + s + 1):
                p = Fraction(twice_p, 2)
                if (g - 2 * p) >= 0 and (g - 2 * p).denominator == 1:
                    rep.extend(negative_s_annihilation_check(g, p, s)[0])
        return rep

    return [cohomology, annihilation] + [lambda k=k: free(k) for k in range(modules)]


def _demazure(ctx, seed, modules=3):
    def cohomology():
        action = build_action(ctx)
        A = action.variety
        th = theta(A)
        beta_u = action.operator(lambda z: th.exp() * z)
        h = action.operator(fourier)

        def beta_t(t):
            return action.operator(lambda z: act_closed_form(GroupElement.torus(t), z))

        rep = Report("demazure")
        for c in demazure_check(beta_u, beta_t, h).checks:
            rep.add(c.anchor, c.name, c.passed, c.detail, f"cohomology {_tag(ctx)} {c.inputs}")
        return rep

    def free(k):
        rng = _rng(seed, "demazure", k)
        _, t = build_free_module(ctx.g, random_free_generators(ctx.g, rng, max_lam=6))
        rep = Report("demazure")
        for c in demazure_check(exp_nilpotent(t.X), lambda n: torus_operator(t, n),
                                act_matrix(GroupElement.w(), t)).checks:
            rep.add(c.anchor, c.name, c.passed, c.detail, f"free module#{k} {c.inputs}")
        return rep

    return [cohomology] + [lambda k=k: free(k) for k in range(modules)]


def _isogeny(ctx, seed):
    def task():
        rep = Report("isogeny")
        pi = Isogeny.from_type(ctx)
        A0 = variety(pi.target, 1)
        A0_2 = variety(pi.target, 2)
        A_2 = variety(ctx, 2)
        tag = f"{_tag(ctx)} deg={pi.degree}"
        lhs = pi.pullback(corr.diagonal_push(theta(A0).exp()).value)
        rhs = corr.diagonal_push(theta(variety(ctx, 1)).exp()).value * pi.degree
        rep.add("isogeny-transfer", "(π,π)^*Δ_*e^{θ₀} = deg π · Δ_*e^θ", lhs == rhs, inputs=tag)
        rep.add("isogeny-transfer", "(π,π)^*e^{℘₀} = e^℘",
                pi.pullback(abvar.poincare_class(A0_2).exp()) == abvar.poincare_class(A_2).exp(),
                inputs=tag)
        rng = _rng(seed, "isogeny")
        for k in range(3):
            a0 = Correspondence(random_class(A0_2, rng, nterms=8))
            b0 = Correspondence(random_class(A0_2, rng, nterms=8))
            lhs = corr.isogeny_transfer(pi, compose(b0, a0))
            rhs = compose(corr.isogeny_transfer(pi, b0), corr.isogeny_transfer(pi, a0))
            rep.add("isogeny-transfer", "transfer respects composition", lhs == rhs,
                    inputs=f"{tag} pair#{k}")
        rep.add("isogeny-transfer", "transfer sends [Δ₀] to [Δ]",
                corr.isogeny_transfer(pi, corr.diagonal_class(pi.target))
                == corr.diagonal_class(ctx), inputs=tag)
        return rep

    return [task]


_BUILDERS = {
    "brackets": _brackets,
    "sl2z": _sl2z,
    "formulas12": _formulas12,
    "kunneth": _kunneth,
    "fourier": _fourier,
    "lefschetz": _lefschetz,
    "demazure": _demazure,
    "isogeny": _isogeny,
}


def worker_count():
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValueError(f"{WORKERS_ENV} must be a positive integer, got {raw!r}") from None


def run_suite(name, g, type=None, seed=0, workers=None):
    """Run suite ``name`` on the polarized variety of dimension ``g`` and ``type``."""
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    names = list(LIMITS) if name == "all" else [name]
    limit = min(LIMITS[n] for n in names)
    if g > limit:
        raise DimensionGuard(f"suite {name}", g, limit)
    ctx = PolarizedContext(g, type)
    tasks = [t for n in names for t in _BUILDERS[n](ctx, seed)]
    workers = worker_count() if workers is None else workers
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda t: t(), tasks))
    else:
        parts = [t() for t in tasks]
    rep = Report(f"suite {name} {_tag(ctx)} seed={seed}")
    for part in parts:
        rep.extend(part)
    return rep.sorted()
