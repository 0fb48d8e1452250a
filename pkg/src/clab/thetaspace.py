"""The stability parameter space: walls, seeded generic sampling, and the
realization search that checks which resolutions arise as moduli of stable
constellations."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .quiver import (
    Theta,
    build_mckay_quiver,
    is_generic,
    make_theta,
    moduli_fan,
)
from .surface import (
    AbelianAction,
    Resolution,
    build_N2,
    enumerate_admissible_resolutions,
    is_dominated_by_max,
    maximal_resolution,
)


class RetryBudgetError(RuntimeError):
    """Generic sampling failed repeatedly (pathological)."""


@dataclass(frozen=True)
class Wall:
    """The hyperplane theta(S) = 0; S is canonically the representative not
    containing the trivial character (its complement defines the same wall)."""

    subset: tuple

    def contains(self, theta: Theta) -> bool:
        return sum(theta.values[i] for i in self.subset) == 0

    def sign(self, theta: Theta) -> int:
        s = sum(theta.values[i] for i in self.subset)
        return 0 if s == 0 else (1 if s > 0 else -1)


def walls(A: AbelianAction):
    """All distinct walls: one per nonempty subset of the nontrivial
    characters (complements are deduplicated by the canonical choice)."""
    Q = build_mckay_quiver(A)
    m = Q.order
    nontrivial = [v for v in range(m) if v != Q.trivial_vertex]
    out = []
    for size in range(1, m):
        for combo in itertools.combinations(nontrivial, size):
            out.append(Wall(combo))
    return tuple(out)


def wall_sign_vector(A: AbelianAction, theta: Theta):
    return tuple(w.sign(theta) for w in walls(A))


def derive_seed(seed: int, k: int) -> int:
    return seed * 1_000_003 + k


_SAMPLE_ATTEMPTS = 1000


def sample_generic(A: AbelianAction, seed: int) -> Theta:
    """Deterministic integer-valued zero-sum theta passing the genericity
    certificate; draws are retried with the same stream until certified."""
    m = A.order
    if m == 1:
        return make_theta([0])
    rng = random.Random(seed)
    bound = 20 * m
    for _ in range(_SAMPLE_ATTEMPTS):
        vals = [rng.randint(-bound, bound) for _ in range(m - 1)]
        vals.append(-sum(vals))
        theta = make_theta(vals)
        if is_generic(theta):
            return theta
    raise RetryBudgetError(f"no generic theta found in {_SAMPLE_ATTEMPTS} draws")


@dataclass(frozen=True)
class RealizeOutcome:
    """Result of a realization search; exhaustion is a value, not a failure
    of the theorem (it only means the budget was too small)."""

    resolution: Resolution
    theta: Theta | None
    samples_tried: int
    distinct_fans: tuple

    @property
    def realized(self) -> bool:
        return self.theta is not None

    def to_json(self):
        return {
            "resolution": self.resolution.to_json(),
            "theta": self.theta.to_json() if self.theta else None,
            "generic": bool(self.theta and is_generic(self.theta)),
            "realized": self.realized,
            "samples_tried": self.samples_tried,
            "distinct_fans_seen": len(self.distinct_fans),
        }


def realize_resolution(A: AbelianAction, Y: Resolution, budget: int,
                       seed: int = 0) -> RealizeOutcome:
    """Search for a certified-generic theta with moduli_fan(theta) = Y by
    seeded sampling.  Y must be dominated by the maximal resolution."""
    if budget < 1:
        raise ValueError("budget must be at least 1")
    if not is_dominated_by_max(Y):
        raise ValueError("resolution is not admissible (not dominated by the "
                         "maximal resolution)")
    Q = build_mckay_quiver(A)
    N2 = build_N2(A)
    fans = set()
    for k in range(budget):
        theta = sample_generic(A, derive_seed(seed, k))
        fan = moduli_fan(Q, theta, N2)
        fans.add(fan.rays)
        if fan == Y:
            assert moduli_fan(Q, theta, N2) == Y  # reproducible on re-run
            return RealizeOutcome(Y, theta, k + 1, tuple(sorted(fans)))
    return RealizeOutcome(Y, None, budget, tuple(sorted(fans)))


@dataclass(frozen=True)
class RealizationReport:
    """Desk-scale audit of the main equivalence: sampled fans stay under the
    maximal resolution, and every admissible resolution is realized."""

    action: AbelianAction
    seed: int
    samples: int
    budget: int
    containment_violations: tuple
    sampled_fans: tuple  # distinct ray tuples seen in the only-if audit
    outcomes: tuple  # one RealizeOutcome per admissible resolution
    fixed_point_counts: tuple = field(default=())

    @property
    def all_realized(self) -> bool:
        return all(o.realized for o in self.outcomes)

    @property
    def passed(self) -> bool:
        return self.all_realized and not self.containment_violations

    def to_json(self):
        return {
            "schema": 1,
            "action": self.action.to_json(),
            "seed": self.seed,
            "samples": self.samples,
            "budget": self.budget,
            "only_if": {
                "samples": self.samples,
                "violations": len(self.containment_violations),
                "distinct_fans_seen": len(self.sampled_fans),
            },
            "realizations": [o.to_json() for o in self.outcomes],
            "all_realized": self.all_realized,
            "verdict": "pass" if self.passed else "fail",
        }


def _audit_sample(args):
    Q, N2, max_rays, A, seed = args
    theta = sample_generic(A, seed)
    fan = moduli_fan(Q, theta, N2)
    violation = None
    if not set(fan.rays) <= max_rays:
        violation = (theta.to_json(), fan.to_json())
    return fan.rays, len(fan.rays) - 1, violation


def verify_main_theorem(A: AbelianAction, samples: int, budget: int,
                        seed: int = 0, threads: int = 1) -> RealizationReport:
    """(i) only-if audit: every sampled generic fan uses only rays of the
    maximal resolution; (ii) if audit: every admissible resolution is
    realized by some sampled generic theta within the budget."""
    Q = build_mckay_quiver(A)
    N2 = build_N2(A)
    max_rays = set(maximal_resolution(N2).rays)
    tasks = [(Q, N2, max_rays, A, derive_seed(seed, k)) for k in range(samples)]
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_audit_sample, tasks))
    else:
        results = [_audit_sample(t) for t in tasks]
    fans = set()
    violations = []
    counts = []
    for rays, npts, violation in results:
        fans.add(rays)
        counts.append(npts)
        if violation is not None:
            violations.append(violation)
    outcomes = []
    for j, Y in enumerate(enumerate_admissible_resolutions(N2)):
        outcomes.append(
            realize_resolution(A, Y, budget, seed=derive_seed(seed, 10 ** 6 + j))
        )
    return RealizationReport(
        action=A,
        seed=seed,
        samples=samples,
        budget=budget,
        containment_violations=tuple(violations),
        sampled_fans=tuple(sorted(fans)),
        outcomes=tuple(outcomes),
        fixed_point_counts=tuple(counts),
    )
