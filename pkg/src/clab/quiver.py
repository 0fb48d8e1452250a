"""McKay quivers of abelian actions, torus-fixed stable constellations,
one-parameter-subgroup limits and the toric fan of the moduli space.

Vertices are the characters of G.  A torus-fixed support is encoded by the
cells it occupies in the character/degree plane: weight-consistency amounts
to a Z^2-valued potential on the vertices, which normalizes to a connected
set of cells with the trivial character at the origin.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .lattice import Lattice, cross2, is_member, primitive_in_lattice, rat_str
from .linprog import project, solve_feasibility
from .surface import AbelianAction, Resolution, make_resolution


class NonGenericThetaError(ValueError):
    """The stability parameter sits on a wall."""


class NoLimitSupportError(RuntimeError):
    """No stable support is feasible: u lies on a fan ray or theta on a wall."""


class ModuliFanError(RuntimeError):
    """The stable cones fail to tile the quadrant (internal consistency)."""


@dataclass(frozen=True)
class McKayQuiver:
    """Vertices are characters of G (cosets of (Z/n)^2 by the annihilator of
    the element pairing); each vertex carries an x-arrow shifting by the
    class of (1,0) and a y-arrow shifting by the class of (0,1)."""

    action: AbelianAction
    vertices: tuple  # canonical (min-lex) coset representatives, sorted

    @property
    def order(self):
        return len(self.vertices)

    def _canon(self, u, v):
        n = self.action.n
        ann = _annihilator(self.action)
        return min(((u + p) % n, (v + q) % n) for p, q in ann)

    def vertex_index(self, u, v):
        return self.vertices.index(self._canon(u, v))

    def arrow_head(self, tail: int, kind: str) -> int:
        u, v = self.vertices[tail]
        if kind == "x":
            return self.vertex_index(u + 1, v)
        if kind == "y":
            return self.vertex_index(u, v + 1)
        raise ValueError(kind)

    @property
    def trivial_vertex(self) -> int:
        return self.vertices.index(self._canon(0, 0))

    def arrows(self):
        return tuple(
            (kind, i) for i in range(self.order) for kind in ("x", "y")
        )


@lru_cache(maxsize=None)
def _annihilator(A: AbelianAction):
    n = A.n
    return tuple(
        (u, v)
        for u in range(n)
        for v in range(n)
        if all((u * a + v * b) % n == 0 for a, b in A.elements)
    )


def build_mckay_quiver(A: AbelianAction) -> McKayQuiver:
    n = A.n
    ann = set(_annihilator(A))
    reps = set()
    for u in range(n):
        for v in range(n):
            reps.add(min(((u + p) % n, (v + q) % n) for p, q in ann))
    vertices = tuple(sorted(reps))
    assert len(vertices) == A.order
    Q = McKayQuiver(A, vertices)
    assert Q.trivial_vertex == 0
    return Q


ARROW_STEP = {"x": (1, 0), "y": (0, 1)}


@dataclass(frozen=True)
class FixedConstellation:
    """A torus-fixed support: arrows (kind, tail-vertex) with a Z^2 potential
    `degrees` per vertex (the cell each character occupies, trivial character
    at the origin)."""

    quiver: McKayQuiver = field(compare=False, repr=False)
    arrows: tuple  # sorted (kind, tail) pairs
    degrees: tuple = field(compare=False)  # cell per vertex index

    def arrow_ids(self):
        return [f"{kind}@{tail}" for kind, tail in self.arrows]

    def to_json(self):
        return {"arrows": self.arrow_ids()}


def _cell_char(Q: McKayQuiver, i, j):
    return Q.vertex_index(i % Q.action.n, j % Q.action.n)


@lru_cache(maxsize=None)
def fixed_candidates(Q: McKayQuiver):
    """All supports satisfying square-compatibility, acyclicity and
    weight-consistency that are connected (disconnected supports are never
    stable: both halves of a split would be arrow-closed with positive
    theta-sum, contradicting theta(C[G]) = 0).

    Enumerated as connected cell sets S with the trivial character at (0,0)
    and pairwise distinct characters, carrying all degree-compatible arrows;
    acyclicity is automatic since arrows increase i + j.
    """
    m = Q.order
    out = []

    def neighbors(cell):
        i, j = cell
        return [(i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)]

    def grow(cells, chars, frontier, banned):
        if len(cells) == m:
            out.append(frozenset(cells))
            return
        if not frontier:
            return
        head, rest = frontier[0], frontier[1:]
        ch = _cell_char(Q, *head)
        if ch not in chars:
            new_nb = [
                nb for nb in neighbors(head)
                if nb not in cells and nb not in banned and nb not in rest
                and nb != head
            ]
            grow(cells | {head}, chars | {ch}, rest + sorted(set(new_nb)),
                 banned)
        grow(cells, chars, rest, banned | {head})

    grow({(0, 0)}, {_cell_char(Q, 0, 0)}, sorted(set(neighbors((0, 0)))),
         frozenset())

    result = []
    for cells in sorted(out, key=sorted):
        cand = _constellation_from_cells(Q, cells)
        if cand is not None:
            result.append(cand)
    return tuple(result)


def _constellation_from_cells(Q, cells):
    m = Q.order
    cell_of = {}
    for cell in cells:
        cell_of[_cell_char(Q, *cell)] = cell
    if len(cell_of) != m:
        return None
    arrows = []
    for cell in cells:
        for kind, (di, dj) in ARROW_STEP.items():
            if (cell[0] + di, cell[1] + dj) in cells:
                arrows.append((kind, _cell_char(Q, *cell)))
    # square-compatibility: the two length-2 paths around each cell square
    # are present together or not at all
    aset = set(arrows)
    for cell in cells:
        i, j = cell
        chi = _cell_char(Q, i, j)
        left = ("x", chi) in aset and ("y", _cell_char(Q, i + 1, j)) in aset
        right = ("y", chi) in aset and ("x", _cell_char(Q, i, j + 1)) in aset
        if left != right:
            return None
    degrees = tuple(cell_of[v] for v in range(m))
    return FixedConstellation(Q, tuple(sorted(arrows)), degrees)


@lru_cache(maxsize=None)
def _principal_closures(Q: McKayQuiver, arrows: tuple):
    """Up-closure bitmask of each single vertex (reachability along arrows)."""
    m = Q.order
    succ = [0] * m
    for kind, tail in arrows:
        succ[tail] |= 1 << Q.arrow_head(tail, kind)
    out = []
    for v in range(m):
        mask = 1 << v
        stack = [v]
        while stack:
            w = stack.pop()
            for x in range(m):
                if succ[w] & (1 << x) and not mask & (1 << x):
                    mask |= 1 << x
                    stack.append(x)
        out.append(mask)
    return tuple(out)


@lru_cache(maxsize=None)
def _upclosed_masks(Q: McKayQuiver, arrows: tuple):
    """Bitmasks of the nonempty proper arrow-closed vertex subsets (tail in S
    implies head in S)."""
    m = Q.order
    succ = [0] * m
    for kind, tail in arrows:
        succ[tail] |= 1 << Q.arrow_head(tail, kind)
    # fixpoint generation: grow closed sets one admissible vertex at a time
    closed = {0}
    frontier = [0]
    while frontier:
        s = frontier.pop()
        for v in range(m):
            if s & (1 << v):
                continue
            if succ[v] & ~s:
                continue
            t = s | (1 << v)
            if t not in closed:
                closed.add(t)
                frontier.append(t)
    full = (1 << m) - 1
    return tuple(sorted(s for s in closed if s not in (0, full)))


@dataclass(frozen=True)
class Theta:
    """A stability parameter: one rational per character, summing to zero."""

    values: tuple

    def __post_init__(self):
        vals = tuple(Fraction(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if sum(vals) != 0:
            raise ValueError("theta must pair to zero with the regular representation")

    def to_json(self):
        return [rat_str(v) for v in self.values]


def make_theta(values) -> Theta:
    return Theta(tuple(Fraction(v) for v in values))


def _subset_sums(values):
    """table[mask] = sum of values over the bits of mask."""
    m = len(values)
    table = [values[0] * 0] * (1 << m)
    for mask in range(1, 1 << m):
        low = mask & (-mask)
        table[mask] = table[mask ^ low] + values[low.bit_length() - 1]
    return table


def genericity_witness(theta: Theta):
    """None if conservatively generic, else a vertex subset with zero sum
    (smallest, then lexicographic)."""
    vals = theta.values
    m = len(vals)
    table = _subset_sums(vals)
    hits = [mask for mask in range(1, (1 << m) - 1) if table[mask] == 0]
    if not hits:
        return None
    best = min(hits, key=lambda s: (s.bit_count(), s))
    return tuple(v for v in range(m) if best & (1 << v))


def is_generic(theta: Theta) -> bool:
    """Conservative certificate: theta(S) != 0 for every nonempty proper
    subset of characters."""
    vals = theta.values
    m = len(vals)
    table = _subset_sums(vals)
    return all(table[mask] != 0 for mask in range(1, (1 << m) - 1))


def is_stable(c: FixedConstellation, theta: Theta, _table=None) -> bool:
    table = _subset_sums(theta.values) if _table is None else _table
    full = (1 << c.quiver.order) - 1
    # cheap necessary condition first: principal up-closures
    for mask in _principal_closures(c.quiver, c.arrows):
        if mask != full and table[mask] <= 0:
            return False
    return all(table[mask] > 0 for mask in _upclosed_masks(c.quiver, c.arrows))


@lru_cache(maxsize=4096)
def enumerate_fixed_stable(Q: McKayQuiver, theta: Theta):
    """All torus-fixed theta-stable supports."""
    if len(theta.values) != Q.order:
        raise ValueError("theta has the wrong number of characters")
    table = _subset_sums(theta.values)
    return tuple(
        c for c in fixed_candidates(Q) if is_stable(c, theta, _table=table)
    )


# ---------------------------------------------------------------------------
# limits and the moduli fan


def _limit_system(c: FixedConstellation):
    """Rows of e(a) = <u, w(a)> + c(head) - c(tail) over variables
    (u1, u2, c_0 .. c_{m-1}): equality rows for supported arrows, weak
    inequality rows otherwise."""
    Q = c.quiver
    m = Q.order
    aset = set(c.arrows)
    eqs, ges = [], []
    for kind, tail in Q.arrows():
        head = Q.arrow_head(tail, kind)
        w = ARROW_STEP[kind]
        row = [Fraction(w[0]), Fraction(w[1])] + [Fraction(0)] * m
        row[2 + head] += 1
        row[2 + tail] -= 1
        (eqs if (kind, tail) in aset else ges).append((row, Fraction(0)))
    return eqs, ges


def _limit_feasible(c: FixedConstellation, u) -> bool:
    """LP feasibility: gauge potentials with e(a) = 0 on the support and
    e(a) > 0 off it (strictness via a unit slack t >= 1).

    The support is connected, so its equality rows determine the potentials
    up to the global gauge; presolving them leaves e(a) = <u, w(a) +
    deg(tail) - deg(head)> for the off-support arrows and a one-variable LP
    in the slack."""
    Q = c.quiver
    aset = set(c.arrows)
    deg = c.degrees
    ges = []
    for kind, tail in Q.arrows():
        if (kind, tail) in aset:
            continue
        head = Q.arrow_head(tail, kind)
        w = ARROW_STEP[kind]
        val = (u[0] * (w[0] + deg[tail][0] - deg[head][0])
               + u[1] * (w[1] + deg[tail][1] - deg[head][1]))
        ges.append(([Fraction(-1)], -val))  # t <= e(a)
    ges.append(([Fraction(1)], Fraction(1)))  # t >= 1
    return solve_feasibility(1, [], ges).feasible


def ps_limit(Q: McKayQuiver, theta: Theta, u, N2: Lattice) -> FixedConstellation:
    """The limit constellation along the one-parameter subgroup u: the unique
    stable support whose gauge-potential LP is feasible at u."""
    u = tuple(Fraction(x) for x in u)
    if u[0] <= 0 or u[1] <= 0:
        raise ValueError("u must lie in the open quadrant")
    if not is_member(N2, u):
        raise ValueError("u must be a lattice point of N2")
    if not is_generic(theta):
        raise NonGenericThetaError("theta is on a wall")
    feas = [c for c in enumerate_fixed_stable(Q, theta) if _limit_feasible(c, u)]
    if not feas:
        raise NoLimitSupportError(
            "no feasible stable support: u on a fan ray or theta on a wall"
        )
    if len(feas) > 1:
        raise ModuliFanError("multiple feasible supports at one u")
    return feas[0]


def _cone_of_support(c: FixedConstellation, N2: Lattice):
    """The closed cone C_A in the u-plane, by Fourier-Motzkin elimination of
    the gauge potentials; returns primitive boundary rays (lo, hi) in N2, or
    None when the cone is not full-dimensional."""
    Q = c.quiver
    m = Q.order
    eqs, ges = _limit_system(c)
    _, proj = project(2 + m, eqs, ges, keep=[0, 1])
    lo, hi = (Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))
    for row, rhs in proj:
        assert rhs == 0 and all(x == 0 for x in row[2:])
        d = (row[0], row[1])
        vlo = d[0] * lo[0] + d[1] * lo[1]
        vhi = d[0] * hi[0] + d[1] * hi[1]
        if vlo >= 0 and vhi >= 0:
            continue
        if vlo < 0 and vhi < 0:
            return None
        w = (-d[1], d[0])
        for cand in (w, (d[1], -d[0])):
            c1 = lo[0] * cand[1] - lo[1] * cand[0]
            c2 = cand[0] * hi[1] - cand[1] * hi[0]
            if c1 >= 0 and c2 >= 0:
                if vlo < 0:
                    lo = cand
                else:
                    hi = cand
                break
        else:
            return None
    if lo[0] * hi[1] - lo[1] * hi[0] <= 0:
        return None
    return (primitive_in_lattice(N2, lo), primitive_in_lattice(N2, hi))


def moduli_fan_cones(Q: McKayQuiver, theta: Theta, N2: Lattice):
    """The full-dimensional cones C_A of the stable supports, angle ordered,
    with their bounding primitive rays; raises if they fail to tile the
    quadrant."""
    if not is_generic(theta):
        raise NonGenericThetaError("theta is on a wall")
    cones = []
    for c in enumerate_fixed_stable(Q, theta):
        span = _cone_of_support(c, N2)
        if span is not None:
            cones.append((c, span[0], span[1]))
    if not cones:
        raise ModuliFanError("no full-dimensional stable cones")
    cones.sort(key=functools.cmp_to_key(
        lambda s, t: -1 if cross2(s[1], t[1]) > 0 else 1
    ))  # by angle of the lower bounding ray
    e1p = primitive_in_lattice(N2, (1, 0))
    e2p = primitive_in_lattice(N2, (0, 1))
    if cones[0][1] != e1p or cones[-1][2] != e2p:
        raise ModuliFanError("stable cones do not span the quadrant")
    for (c1, _, hi), (c2, lo, _) in itertools.pairwise(cones):
        if hi != lo:
            raise ModuliFanError("stable cones do not tile the quadrant")
    return tuple(cones)


def moduli_fan(Q: McKayQuiver, theta: Theta, N2: Lattice) -> Resolution:
    """The toric fan of the moduli space of theta-stable constellations."""
    cones = moduli_fan_cones(Q, theta, N2)
    rays = [cones[0][1]] + [hi for _, _, hi in cones]
    return make_resolution(N2, rays)
