"""Exact sparse linear algebra over the rationals.

Scalars are :class:`fractions.Fraction`.  Vectors are plain lists of
Fractions; maps are :class:`LinearMap` with sparse triplet storage.
"""

from fractions import Fraction
from math import lcm

from abelsl2.errors import DegeneratePairing, NotDiagonalizable

Rational = Fraction


def as_rational(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


class LinearMap:
    """A linear map ``Q^cols -> Q^rows`` stored as ``{(row, col): value}``.

    Zero entries are never stored.  Instances are treated as immutable.
    """

    __slots__ = ("rows", "cols", "entries", "_hash")

    def __init__(self, rows, cols, entries=None):
        self.rows = rows
        self.cols = cols
        clean = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry ({r}, {c}) outside {rows}x{cols}")
            v = as_rational(v)
            if v:
                clean[r, c] = v
        self.entries = dict(sorted(clean.items()))
        self._hash = None

    # constructors

    @classmethod
    def zero(cls, rows, cols=None):
        return cls(rows, rows if cols is None else cols)

    @classmethod
    def identity(cls, n):
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def diagonal(cls, values):
        return cls(len(values), len(values), {(i, i): v for i, v in enumerate(values)})

    @classmethod
    def from_rows(cls, rows):
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, {(i, j): v for i, r in enumerate(rows)
                                      for j, v in enumerate(r) if v})

    @classmethod
    def from_columns(cls, columns, rows):
        """Build from sparse columns given as ``{row: value}`` dicts."""
        return cls(rows, len(columns), {(r, j): v for j, col in enumerate(columns)
                                        for r, v in col.items()})

    # views

    @property
    def shape(self):
        return self.rows, self.cols

    def to_rows(self):
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def column(self, j):
        return [self.entries.get((i, j), Fraction(0)) for i in range(self.rows)]

    def is_zero(self):
        return not self.entries

    def transpose(self):
        return LinearMap(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()})

    T = property(transpose)

    # arithmetic

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, tuple(self.entries.items())))
        return self._hash

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        e = dict(self.entries)
        for k, v in other.entries.items():
            e[k] = e.get(k, 0) + v
        return LinearMap(self.rows, self.cols, e)

    def __neg__(self):
        return LinearMap(self.rows, self.cols, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        s = as_rational(scalar)
        return LinearMap(self.rows, self.cols, {k: s * v for k, v in self.entries.items()})

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, LinearMap):
            if self.cols != other.rows:
                raise ValueError(f"cannot compose {self.shape} with {other.shape}")
            by_row = {}
            for (r, c), v in other.entries.items():
                by_row.setdefault(r, []).append((c, v))
            out = {}
            for (i, k), a in self.entries.items():
                for j, b in by_row.get(k, ()):
                    out[i, j] = out.get((i, j), 0) + a * b
            return LinearMap(self.rows, other.cols, out)
        return self.apply(other)

    def apply(self, vec):
        if len(vec) != self.cols:
            raise ValueError(f"vector of length {len(vec)} for map with {self.cols} columns")
        out = [Fraction(0)] * self.rows
        for (r, c), v in self.entries.items():
            x = vec[c]
            if x:
                out[r] += v * x
        return out

    def __pow__(self, k):
        if self.rows != self.cols:
            raise ValueError("power of a non-square map")
        result = LinearMap.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def restrict_rows(self, rows):
        """Submatrix keeping the given rows (in order)."""
        index = {r: i for i, r in enumerate(rows)}
        return LinearMap(len(rows), self.cols, {(index[r], c): v for (r, c), v in self.entries.items()
                                                if r in index})

    def restrict_cols(self, cols):
        index = {c: i for i, c in enumerate(cols)}
        return LinearMap(self.rows, len(cols), {(r, index[c]): v for (r, c), v in self.entries.items()
                                                if c in index})

    def __repr__(self):
        return f"LinearMap({self.rows}x{self.cols}, nnz={len(self.entries)})"


def _integer_rows(m):
    """Rows of ``m`` scaled by the lcm of their denominators."""
    rows = [[0] * m.cols for _ in range(m.rows)]
    dens = [1] * m.rows
    for (r, _), v in m.entries.items():
        dens[r] = lcm(dens[r], v.denominator)
    for (r, c), v in m.entries.items():
        rows[r][c] = v.numerator * (dens[r] // v.denominator)
    return [row for row in rows if any(row)]


def echelon(m):
    """Fraction-free (Bareiss) row echelon form.

    Returns ``(rows, pivots)``: integer rows in echelon form and the pivot
    column of each.  Every division is exact.
    """
    a = _integer_rows(m)
    ncols = m.cols
    pivots = []
    prev = 1
    r = 0
    nrows = len(a)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c]), None)
        if p is None:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        prow = a[r]
        for i in range(r + 1, nrows):
            row = a[i]
            f = row[c]
            if f:
                for j in range(c + 1, ncols):
                    row[j] = (piv * row[j] - f * prow[j]) // prev
            else:
                for j in range(c + 1, ncols):
                    if row[j]:
                        row[j] = (piv * row[j]) // prev
            row[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(m):
    return len(echelon(m)[1])


def _reduced(m):
    rows, pivots = echelon(m)
    red = [[Fraction(x) for x in row] for row in rows]
    for i in range(len(red) - 1, -1, -1):
        pc = pivots[i]
        pv = red[i][pc]
        red[i] = [x / pv for x in red[i]]
        for k in range(i):
            f = red[k][pc]
            if f:
                red[k] = [x - f * y for x, y in zip(red[k], red[i])]
    return red, pivots


def kernel_basis(m):
    """Exact basis of ``{v : m v = 0}``; empty iff ``m`` is injective."""
    red, pivots = _reduced(m)
    pivset = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivset:
            continue
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -red[i][f]
        basis.append(v)
    return basis


def solve(m, b):
    """One exact solution of ``m x = b``, or None when inconsistent."""
    aug = LinearMap(m.rows, m.cols + 1, {**m.entries, **{(i, m.cols): v for i, v in enumerate(b) if v}})
    red, pivots = _reduced(aug)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [Fraction(0)] * m.cols
    for i, pc in enumerate(pivots):
        x[pc] = red[i][m.cols]
    return x


def inverse(m):
    """Exact inverse of a square map, or None when singular."""
    n = m.rows
    if n != m.cols:
        raise ValueError("inverse of a non-square map")
    aug = LinearMap(n, 2 * n, {**m.entries, **{(i, n + i): 1 for i in range(n)}})
    red, pivots = _reduced(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        return None
    return LinearMap(n, n, {(i, j): red[i][n + j] for i in range(n) for j in range(n) if red[i][n + j]})


def eigenspace_split(m, eigenvalues):
    """Bases of the eigenspaces of ``m`` for the given eigenvalues.

    Raises NotDiagonalizable unless the eigenspaces fill the whole space.
    """
    if m.rows != m.cols:
        raise ValueError("eigenspace_split needs a square map")
    n = m.rows
    spaces = []
    for lam in eigenvalues:
        spaces.append(kernel_basis(m - LinearMap.identity(n) * lam))
    total = sum(len(s) for s in spaces)
    if total != n:
        raise NotDiagonalizable(f"eigenspaces span {total} of {n} dimensions")
    return spaces


def adjoint_wrt_pairing(m, pairing_dom, pairing_cod):
    """Adjoint ``f*`` of ``m`` with ``<f* a, b>_cod = <a, m b>_dom``.

    ``m`` maps the ``cod`` space to the ``dom`` space; ``<x, y> = x^T P y``.
    """
    if pairing_dom.shape != (m.rows, m.rows) or pairing_cod.shape != (m.cols, m.cols):
        raise ValueError("pairing shapes do not match the map")
    inv_cod = inverse(pairing_cod.T)
    if inv_cod is None or inverse(pairing_dom) is None:
        raise DegeneratePairing("pairing matrix is singular")
    return inv_cod @ m.T @ pairing_dom.T


def span_rank(vectors):
    if not vectors:
        return 0
    return rank(LinearMap.from_rows(vectors))
