"""Pure-Python monomial kernels.

Monomials are bitmasks over the generators of an exterior algebra; a class
is a dict ``{mask: coefficient}``.  ``_ckernels`` (Cython) implements the
same functions with identical semantics.
"""

BACKEND = "python"


def merge_sign(a, b):
    """Sign of ``e_a ^ e_b`` relative to ``e_{a|b}``; 0 when the masks meet."""
    if a & b:
        return 0
    inv = 0
    while b:
        low = b & -b
        inv += bin(a >> low.bit_length()).count("1")
        b ^= low
    return -1 if inv & 1 else 1


def wedge_terms(a, b):
    out = {}
    get = out.get
    for ma, ca in a.items():
        for mb, cb in b.items():
            if ma & mb:
                continue
            v = ca * cb
            if merge_sign(ma, mb) < 0:
                v = -v
            m = ma | mb
            out[m] = get(m, 0) + v
    return {m: c for m, c in out.items() if c}


def map_terms(terms, images):
    """Apply the algebra map sending generator ``i`` to ``images[i]``.

    ``images[i]`` is a dict of degree-1 terms.  Products of images are
    memoised per monomial: ``prod(S) = images[min S] ^ prod(S - min S)``.
    """
    memo = {0: {0: 1}}

    def prod(mask):
        r = memo.get(mask)
        if r is None:
            low = mask & -mask
            r = wedge_terms(images[low.bit_length() - 1], prod(mask ^ low))
            memo[mask] = r
        return r

    out = {}
    get = out.get
    for mask, c in terms.items():
        for m, v in prod(mask).items():
            out[m] = get(m, 0) + c * v
    return {m: c for m, c in out.items() if c}


def star_terms(terms, full, inverse=False):
    """Poincare-duality star ``e_S -> sign(S, S^c) e_{S^c}`` (or its inverse)."""
    out = {}
    for m, c in terms.items():
        comp = full ^ m
        s = merge_sign(comp, m) if inverse else merge_sign(m, comp)
        out[comp] = c if s > 0 else -c
    return out
