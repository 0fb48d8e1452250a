"""Exact rational lattice arithmetic.

All lattices here contain Z^d (d = 2 or 3) and are stored by a canonical
basis in column Hermite normal form, so two equal lattices are syntactically
equal.  Every predicate is decided in exact rational arithmetic; no floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd


# ---------------------------------------------------------------------------
# small exact-vector helpers (vectors are plain tuples of Fractions)

def vec(*coords):
    return tuple(Fraction(c) for c in coords)


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vscale(k, v):
    k = Fraction(k)
    return tuple(k * a for a in v)


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def cross2(u, v):
    return u[0] * v[1] - u[1] * v[0]


def cross3(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def det3(u, v, w):
    return dot(u, cross3(v, w))


def rat_str(q) -> str:
    """Serialize a rational exactly, e.g. '3/8', '-1/2', '1'."""
    return str(Fraction(q))


def parse_rat(s) -> Fraction:
    return Fraction(s)


# ---------------------------------------------------------------------------
# Hermite normal form

def _column_hnf(cols, dim):
    """Canonical column-style HNF of an integer matrix of full row rank.

    Returns dim columns forming an upper-triangular matrix with positive
    diagonal and each entry right of a pivot reduced into [0, pivot).
    """
    work = [list(c) for c in cols if any(c)]
    pivots = []
    for row in range(dim - 1, -1, -1):
        while True:
            nz = [c for c in work if c[row] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda c: abs(c[row]))
            a = nz[0]
            for b in nz[1:]:
                q = b[row] // a[row]
                if q:
                    for i in range(dim):
                        b[i] -= q * a[i]
        nz = [c for c in work if c[row] != 0]
        if not nz:
            raise ValueError("generators do not span the ambient space")
        p = nz[0]
        work.remove(p)
        if p[row] < 0:
            p[:] = [-x for x in p]
        pivots.append(p)
    pivots.reverse()  # column j now has its pivot in row j and zeros below
    for j in range(dim):
        col = pivots[j]
        for i in range(j - 1, -1, -1):
            q = col[i] // pivots[i][i]
            if q:
                for r in range(dim):
                    col[r] -= q * pivots[i][r]
    return pivots


@dataclass(frozen=True)
class Lattice:
    """A lattice Z^dim <= L < Q^dim, stored by canonical HNF basis columns."""

    dim: int
    basis: tuple  # tuple of columns, each a tuple of Fractions

    @property
    def index(self) -> Fraction:
        """|det(basis)|; equals 1/[L : Z^dim]."""
        d = Fraction(1)
        for j in range(self.dim):
            d *= self.basis[j][j]
        return d

    def denominator_bound(self) -> int:
        """N such that L is contained in (1/N) Z^dim; N = [L : Z^dim]."""
        inv = 1 / self.index
        assert inv.denominator == 1
        return inv.numerator


def lattice_from_generators(dim, gens) -> Lattice:
    """The lattice Z^dim + sum_i Z*g_i, with canonical HNF basis."""
    if dim not in (2, 3):
        raise ValueError("only dimensions 2 and 3 are supported")
    gens = [tuple(Fraction(x) for x in g) for g in gens]
    for g in gens:
        if len(g) != dim:
            raise ValueError("generator has wrong dimension")
    den = 1
    for g in gens:
        for x in g:
            den = den * x.denominator // gcd(den, x.denominator)
    cols = []
    for i in range(dim):
        e = [0] * dim
        e[i] = den
        cols.append(e)
    for g in gens:
        cols.append([int(x * den) for x in g])
    H = _column_hnf(cols, dim)
    basis = tuple(
        tuple(Fraction(H[j][i], den) for i in range(dim)) for j in range(dim)
    )
    lat = Lattice(dim, basis)
    assert (1 / lat.index).denominator == 1  # Z^dim <= L forces integer index
    return lat


def _solve_basis(L: Lattice, v):
    """Coordinates x with sum_j x_j * basis_j = v (basis upper triangular)."""
    if len(v) != L.dim:
        raise ValueError("dimension mismatch")
    x = [Fraction(0)] * L.dim
    for i in range(L.dim - 1, -1, -1):
        s = v[i] - sum(L.basis[j][i] * x[j] for j in range(i + 1, L.dim))
        x[i] = s / L.basis[i][i]
    return tuple(x)


def is_member(L: Lattice, v) -> bool:
    """True iff v lies in L."""
    v = tuple(Fraction(c) for c in v)
    return all(c.denominator == 1 for c in _solve_basis(L, v))


@lru_cache(maxsize=None)
def _residues(L: Lattice) -> frozenset:
    """Residue classes of L modulo Z^dim, scaled by N = [L : Z^dim]."""
    N = L.denominator_bound()
    out = set()
    for idx in range(N ** L.dim):
        r = []
        k = idx
        for _ in range(L.dim):
            r.append(k % N)
            k //= N
        if is_member(L, tuple(Fraction(p, N) for p in r)):
            out.add(tuple(r))
    return frozenset(out)


def _is_member_scaled(L: Lattice, scaled, N) -> bool:
    # scaled integer coordinates relative to (1/N) Z^dim, N = [L:Z^dim]
    return tuple(p % N for p in scaled) in _residues(L)


def primitive_in_lattice(L: Lattice, v):
    """The primitive point of L on the ray R_{>=0} * v."""
    v = tuple(Fraction(c) for c in v)
    if all(c == 0 for c in v):
        raise ValueError("zero vector has no primitive multiple")
    x = _solve_basis(L, v)
    # {t > 0 : t*x integral} is generated by lcm_i(q_i/|p_i|) over x_i = p_i/q_i,
    # where lcm of reduced fractions = lcm(numerators)/gcd(denominators)
    num, den = 1, 0
    for c in x:
        if c == 0:
            continue
        ci = Fraction(c.denominator, abs(c.numerator))
        num = num * ci.numerator // gcd(num, ci.numerator)
        den = ci.denominator if den == 0 else gcd(den, ci.denominator)
    t = Fraction(num, den)
    w = vscale(t, v)
    assert is_member(L, w)
    return w


def pair_determinant(L: Lattice, u, v) -> Fraction:
    """det[u v] / det(L basis); the pair is an L-basis iff this is +-1."""
    if L.dim != 2 or len(u) != 2 or len(v) != 2:
        raise ValueError("pair_determinant requires dimension 2")
    u = tuple(Fraction(c) for c in u)
    v = tuple(Fraction(c) for c in v)
    return cross2(u, v) / L.index


def lattice_points_in_triangle(L: Lattice, a, b, c):
    """All points of L in the closed triangle abc, in lexicographic order.

    In dimension 3 the three vertices must be affinely independent points of
    a common rational plane (the junior-plane case).
    """
    a = tuple(Fraction(x) for x in a)
    b = tuple(Fraction(x) for x in b)
    c = tuple(Fraction(x) for x in c)
    if L.dim == 2:
        pts = _points_triangle_2d(L, a, b, c)
    else:
        pts = _points_triangle_planar_3d(L, a, b, c)
    return tuple(sorted(pts))


def _points_triangle_2d(L, a, b, c):
    ab, ac = vsub(b, a), vsub(c, a)
    area = cross2(ab, ac)
    if area == 0:
        raise ValueError("degenerate triangle")
    N = L.denominator_bound()
    xs = [a[0], b[0], c[0]]
    ys = [a[1], b[1], c[1]]
    out = []
    from math import ceil, floor
    for p in range(ceil(min(xs) * N), floor(max(xs) * N) + 1):
        for q in range(ceil(min(ys) * N), floor(max(ys) * N) + 1):
            if not _is_member_scaled(L, (p, q), N):
                continue
            pt = (Fraction(p, N), Fraction(q, N))
            ap = vsub(pt, a)
            s = cross2(ap, ac) / area
            t = cross2(ab, ap) / area
            if s >= 0 and t >= 0 and s + t <= 1:
                out.append(pt)
    return out


def _points_triangle_planar_3d(L, a, b, c):
    ab, ac = vsub(b, a), vsub(c, a)
    n = cross3(ab, ac)
    if all(x == 0 for x in n):
        raise ValueError("degenerate triangle")
    k = max(range(3), key=lambda i: abs(n[i]))  # axis solved from plane eqn
    i1, i2 = [i for i in range(3) if i != k]
    offset = dot(n, a)
    N = L.denominator_bound()
    # barycentric test via projection to the (i1, i2) coordinate plane
    denom = ab[i1] * ac[i2] - ab[i2] * ac[i1]
    assert denom != 0
    from math import ceil, floor
    lo1 = ceil(min(a[i1], b[i1], c[i1]) * N)
    hi1 = floor(max(a[i1], b[i1], c[i1]) * N)
    lo2 = ceil(min(a[i2], b[i2], c[i2]) * N)
    hi2 = floor(max(a[i2], b[i2], c[i2]) * N)
    out = []
    for p in range(lo1, hi1 + 1):
        for q in range(lo2, hi2 + 1):
            x1 = Fraction(p, N)
            x2 = Fraction(q, N)
            xk = (offset - n[i1] * x1 - n[i2] * x2) / n[k]
            if (xk * N).denominator != 1:
                continue
            pt = [None, None, None]
            pt[i1], pt[i2], pt[k] = x1, x2, xk
            pt = tuple(pt)
            scaled = tuple(int(x * N) for x in pt)
            if not _is_member_scaled(L, scaled, N):
                continue
            d1 = vsub(pt, a)
            s = (d1[i1] * ac[i2] - d1[i2] * ac[i1]) / denom
            t = (ab[i1] * d1[i2] - ab[i2] * d1[i1]) / denom
            if s >= 0 and t >= 0 and s + t <= 1:
                out.append(pt)
    return out


def lattice_points_on_segment(L: Lattice, a, b):
    """Points of L on the closed segment [a, b]; endpoints must lie in L."""
    a = tuple(Fraction(x) for x in a)
    b = tuple(Fraction(x) for x in b)
    if a == b:
        return (a,)
    if not (is_member(L, a) and is_member(L, b)):
        raise ValueError("segment endpoints must be lattice points")
    d = vsub(b, a)
    step = primitive_in_lattice(L, d)
    i = next(i for i in range(len(d)) if d[i] != 0)
    count = d[i] / step[i]
    assert count.denominator == 1 and count > 0
    return tuple(vadd(a, vscale(j, step)) for j in range(count.numerator + 1))
