"""Finite abelian diagonal actions on C^2 and the surface-side toric pipeline:
boundary divisor, minimal resolution, discrepancies, maximal resolution and
the admissible resolutions in between.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from math import gcd

from .lattice import (
    Lattice,
    _is_member_scaled,
    cross2,
    lattice_from_generators,
    lattice_points_in_triangle,
    pair_determinant,
    primitive_in_lattice,
    rat_str,
    vec,
)

E1 = vec(1, 0)
E2 = vec(0, 1)


@dataclass(frozen=True)
class AbelianAction:
    """A finite abelian subgroup of GL(2,C), diagonalized: each element is a
    weight pair (a, b) mod n, acting as diag(zeta_n^a, zeta_n^b).

    Equality is equality of subgroups: the generator presentation is kept for
    reporting but ignored by comparisons."""

    n: int
    gens: tuple = field(compare=False)
    elements: tuple  # closure of gens under addition mod n, sorted

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def exponent(self) -> int:
        e = 1
        for a, b in self.elements:
            oa = self.n // gcd(self.n, a) if a else 1
            ob = self.n // gcd(self.n, b) if b else 1
            o = oa * ob // gcd(oa, ob)
            e = e * o // gcd(e, o)
        return e

    def to_json(self):
        return {"n": self.n, "gens": [list(g) for g in self.gens]}


def build_action(n, gens) -> AbelianAction:
    if n < 1:
        raise ValueError("n must be a positive integer")
    gens = tuple((int(a) % n, int(b) % n) for a, b in gens)
    elems = {(0, 0)}
    frontier = [(0, 0)]
    while frontier:
        ca, cb = frontier.pop()
        for a, b in gens:
            nxt = ((ca + a) % n, (cb + b) % n)
            if nxt not in elems:
                elems.add(nxt)
                frontier.append(nxt)
    return AbelianAction(n, gens, tuple(sorted(elems)))


def action_from_json(obj) -> AbelianAction:
    return build_action(int(obj["n"]), [tuple(g) for g in obj["gens"]])


def is_small(A: AbelianAction) -> bool:
    """True iff the action is free off the origin: no g != id with an
    eigenvalue 1, i.e. with a_g = 0 or b_g = 0 (mod n)."""
    return all(a % A.n != 0 and b % A.n != 0
               for a, b in A.elements if (a, b) != (0, 0))


def build_N2(A: AbelianAction) -> Lattice:
    L = lattice_from_generators(
        2, [(Fraction(a, A.n), Fraction(b, A.n)) for a, b in A.elements]
    )
    assert L.index == Fraction(1, A.order)
    return L


@dataclass(frozen=True)
class BoundaryDivisor:
    """B = (m1-1)/m1 * B1 + (m2-1)/m2 * B2 with m_i defined by e_i = m_i e_i'."""

    m1: int
    m2: int

    @property
    def coefficients(self):
        return (Fraction(self.m1 - 1, self.m1), Fraction(self.m2 - 1, self.m2))

    @property
    def is_zero(self) -> bool:
        return self.m1 == 1 and self.m2 == 1


def boundary_divisor(A: AbelianAction) -> BoundaryDivisor:
    N2 = build_N2(A)
    e1p = primitive_in_lattice(N2, E1)
    e2p = primitive_in_lattice(N2, E2)
    m1 = 1 / e1p[0]
    m2 = 1 / e2p[1]
    assert m1.denominator == 1 and m2.denominator == 1
    m1, m2 = m1.numerator, m2.numerator
    assert A.order % m1 == 0 and A.order % m2 == 0
    return BoundaryDivisor(m1, m2)


# ---------------------------------------------------------------------------
# resolutions of C^2/G as primitive ray sequences in N2


@dataclass(frozen=True)
class Resolution:
    """A toric resolution: primitive rays v_0 .. v_s in N2, angle ordered,
    with v_0 on the x-axis, v_s on the y-axis, and consecutive pairs forming
    N2-bases.  Equality is equality of ray sequences."""

    rays: tuple
    lattice: Lattice = field(compare=False, repr=False)
    discrepancies: tuple = field(compare=False)  # for rays[1:-1]

    @property
    def exceptional_rays(self):
        return self.rays[1:-1]

    def to_json(self):
        return {
            "rays": [[rat_str(c) for c in r] for r in self.exceptional_rays],
            "discrepancies": [rat_str(d) for d in self.discrepancies],
            "v0": [rat_str(c) for c in self.rays[0]],
            "vs": [rat_str(c) for c in self.rays[-1]],
        }


def make_resolution(lattice: Lattice, rays) -> Resolution:
    rays = tuple(tuple(Fraction(x) for x in r) for r in rays)
    if len(rays) < 2:
        raise ValueError("a resolution needs at least the two boundary rays")
    if not (rays[0][1] == 0 and rays[0][0] > 0):
        raise ValueError("v0 must lie on the positive x-axis")
    if not (rays[-1][0] == 0 and rays[-1][1] > 0):
        raise ValueError("v_s must lie on the positive y-axis")
    for r in rays:
        if r[0] < 0 or r[1] < 0:
            raise ValueError("rays must lie in the nonnegative quadrant")
        if r != primitive_in_lattice(lattice, r):
            raise ValueError(f"ray {r} is not primitive in the lattice")
    for u, v in itertools.pairwise(rays):
        if cross2(u, v) <= 0:
            raise ValueError("rays must be strictly ordered by angle")
        if pair_determinant(lattice, u, v) not in (1, -1):
            raise ValueError(f"consecutive rays {u}, {v} are not a lattice basis")
    disc = tuple(r[0] + r[1] - 1 for r in rays[1:-1])
    return Resolution(rays, lattice, disc)


def resolution_from_json(lattice: Lattice, obj) -> Resolution:
    rays = [tuple(Fraction(c) for c in obj["v0"])]
    rays += [tuple(Fraction(c) for c in r) for r in obj["rays"]]
    rays.append(tuple(Fraction(c) for c in obj["vs"]))
    return make_resolution(lattice, rays)


def _angle_cmp(u, v):
    c = cross2(u, v)
    return -1 if c > 0 else (1 if c < 0 else 0)


def sort_rays_by_angle(rays):
    return tuple(sorted(rays, key=cmp_to_key(_angle_cmp)))


def minimal_resolution(N2: Lattice) -> Resolution:
    """Hirzebruch-Jung: the rays are all lattice points on the boundary of
    conv((N2 \\ 0) cap quadrant), walked from e_2' down to e_1'."""
    e1p = primitive_in_lattice(N2, E1)
    e2p = primitive_in_lattice(N2, E2)
    N = N2.denominator_bound()
    X = int(e1p[0] * N)
    Y = int(e2p[1] * N)
    pts = [
        (p, q)
        for p in range(X + 1)
        for q in range(Y + 1)
        if (p, q) != (0, 0) and _is_member_scaled(N2, (p, q), N)
    ]
    pts.sort()  # x ascending, then y ascending; pts[0] is e2p scaled
    assert pts[0] == (0, Y)
    # monotone-chain lower hull keeping collinear boundary points
    chain = []
    for p in pts:
        while len(chain) >= 2:
            ux, uy = chain[-1][0] - chain[-2][0], chain[-1][1] - chain[-2][1]
            vx, vy = p[0] - chain[-1][0], p[1] - chain[-1][1]
            if ux * vy - uy * vx < 0:
                chain.pop()
            else:
                break
        chain.append(p)
    chain = chain[: chain.index((X, 0)) + 1]
    rays = [vec(Fraction(p, N), Fraction(q, N)) for p, q in reversed(chain)]
    return make_resolution(N2, rays)


def maximal_resolution(N2: Lattice) -> Resolution:
    """All primitive points of N2 in the closed triangle
    Delta' = {a, b >= 0, a + b <= 1}, ordered by angle."""
    pts = lattice_points_in_triangle(N2, (0, 0), (1, 0), (0, 1))
    rays = [
        p for p in pts
        if p != (0, 0) and p == primitive_in_lattice(N2, p)
    ]
    return make_resolution(N2, sort_rays_by_angle(rays))


MAX_OPTIONAL_RAYS = 20  # subset enumeration guard, desk scale


def enumerate_admissible_resolutions(N2: Lattice):
    """All resolutions Y with rays(minimal) <= rays(Y) <= rays(maximal) whose
    consecutive ray pairs are unimodular; includes the minimal and maximal."""
    rmin = minimal_resolution(N2)
    rmax = maximal_resolution(N2)
    base = set(rmin.rays)
    optional = [r for r in rmax.rays if r not in base]
    if len(optional) > MAX_OPTIONAL_RAYS:
        raise ValueError(
            f"too many optional rays ({len(optional)}) for subset enumeration"
        )
    out = []
    for k in range(len(optional) + 1):
        for combo in itertools.combinations(optional, k):
            rays = sort_rays_by_angle(tuple(base) + combo)
            try:
                out.append(make_resolution(N2, rays))
            except ValueError:
                continue
    out.sort(key=lambda r: (len(r.rays), r.rays))
    assert rmin in out and rmax in out
    return tuple(out)


def is_dominated_by_max(Y: Resolution) -> bool:
    """True iff every exceptional ray (a, b) has a + b <= 1, i.e. every
    discrepancy is <= 0."""
    return all(d <= 0 for d in Y.discrepancies)
