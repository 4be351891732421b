# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled monomial kernels; semantics identical to ``_pykernels``."""

ctypedef unsigned long long u64

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil

BACKEND = "cython"


cdef inline int _sign(u64 a, u64 b) nogil:
    cdef int inv = 0
    cdef int j
    if a & b:
        return 0
    while b:
        j = __builtin_ctzll(b)
        if j < 63:
            inv += __builtin_popcountll(a >> (j + 1))
        b &= b - 1
    return -1 if inv & 1 else 1


def merge_sign(u64 a, u64 b):
    return _sign(a, b)


cpdef dict wedge_terms(dict a, dict b):
    cdef dict out = {}
    cdef u64 ma, mb, m
    cdef int s
    cdef list bl = [(int(k), v) for k, v in b.items()]
    cdef Py_ssize_t i, nb = len(bl)
    for ka, ca in a.items():
        ma = ka
        for i in range(nb):
            kb, cb = <tuple>bl[i]
            mb = kb
            if ma & mb:
                continue
            s = _sign(ma, mb)
            v = ca * cb
            if s < 0:
                v = -v
            m = ma | mb
            prev = out.get(m)
            out[m] = v if prev is None else prev + v
    return {k: c for k, c in out.items() if c}


def map_terms(dict terms, list images):
    cdef dict memo = {0: {0: 1}}
    cdef dict out = {}


    def prod(u64 mask):
        cdef u64 low
        r = memo.get(mask)
        if r is None:
            low = mask & (~mask + 1)
            r = wedge_terms(images[__builtin_ctzll(low)], prod(mask ^ low))
            memo[mask] = r
        return r

    for k, c in terms.items():
        for m, v in (<dict>prod(k)).items():
            prev = out.get(m)
            out[m] = c * v if prev is None else prev + c * v
    return {k: c for k, c in out.items() if c}


def star_terms(dict terms, u64 full, bint inverse=False):
    cdef dict out = {}
    cdef u64 m, comp
    cdef int s
    for k, c in terms.items():
        m = k
        comp = full ^ m
        s = _sign(comp, m) if inverse else _sign(m, comp)
        out[comp] = c if s > 0 else -c
    return out
