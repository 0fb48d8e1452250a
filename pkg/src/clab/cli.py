"""Command-line front end.

Every command is a pure function of its RunConfig: re-running a persisted
config reproduces the same JSON up to the generated_at timestamp.  Exit codes:
0 success, 1 audit failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from fractions import Fraction

from . import draw
from .junior import (
    InadmissibleResolutionError,
    PLSupportFunction,
    amp_restriction_surjective,
    build_containing_triangulation,
    build_junior,
    is_basic,
    regularity_certificate,
)
from .lattice import rat_str
from .quiver import (
    NonGenericThetaError,
    build_mckay_quiver,
    enumerate_fixed_stable,
    genericity_witness,
    make_theta,
    moduli_fan,
)
from .surface import (
    boundary_divisor,
    build_action,
    build_N2,
    enumerate_admissible_resolutions,
    is_small,
    maximal_resolution,
    minimal_resolution,
)
from .thetaspace import sample_generic, verify_main_theorem

COMMANDS = ("group", "minres", "maxres", "resolutions", "triangulate",
            "moduli", "verify")


@dataclass
class RunConfig:
    command: str
    n: int = 1
    gens: tuple = ()
    theta: tuple | None = None
    seed: int = 0
    samples: int = 50
    budget: int = 10000
    format: str = "text"
    out: str | None = None
    resolution: str = "max"

    def to_json(self):
        d = asdict(self)
        d["gens"] = [list(g) for g in self.gens]
        d["theta"] = None if self.theta is None else [str(t) for t in self.theta]
        return d

    @classmethod
    def from_json(cls, obj):
        obj = dict(obj)
        obj["gens"] = tuple(tuple(g) for g in obj.get("gens", []))
        th = obj.get("theta")
        obj["theta"] = None if th is None else tuple(Fraction(t) for t in th)
        return cls(**obj)


class UsageError(Exception):
    pass


def _parse_gens(text):
    if not text:
        return ()
    out = []
    for part in text.split(";"):
        bits = part.split(",")
        if len(bits) != 2:
            raise UsageError(f"bad generator {part!r}; expected 'a,b'")
        out.append((int(bits[0]), int(bits[1])))
    return tuple(out)


def _build_parser():
    p = argparse.ArgumentParser(
        prog="clab",
        description="Toric resolutions of C^2/G and moduli of torus-fixed "
                    "constellations, in exact rational arithmetic.",
    )
    p.add_argument("--n", type=int, default=1, help="common order of the weights")
    p.add_argument("--gens", default="", help="generator weights 'a,b[;a,b...]'")
    p.add_argument("--theta", default=None,
                   help="stability parameter as comma-separated rationals")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--budget", type=int, default=10000)
    p.add_argument("--format", choices=("text", "json", "svg", "dot"),
                   default="text")
    p.add_argument("--out", default=None, help="write the report to this path")
    p.add_argument("--resolution", default="max",
                   help="resolution selector for triangulate: min, max or an "
                        "index into the admissible list")
    p.add_argument("--config", default=None,
                   help="replay a persisted RunConfig JSON file")
    p.add_argument("command", choices=COMMANDS, nargs="?")
    return p


def _emit(cfg: RunConfig, payload: dict, drawing: str | None = None) -> str:
    if cfg.format in ("svg", "dot"):
        if drawing is None:
            raise UsageError(f"format {cfg.format!r} not supported for "
                             f"command {cfg.command!r}")
        return drawing
    if cfg.format == "json":
        body = dict(payload)
        body["schema"] = 1
        body["config"] = cfg.to_json()
        body["generated_at"] = datetime.now(timezone.utc).isoformat()
        return json.dumps(body, sort_keys=True, indent=2) + "\n"
    return payload["text"] + "\n"


def _group_facts(A):
    B = boundary_divisor(A)
    c1, c2 = B.coefficients
    return {
        "action": A.to_json(),
        "order": A.order,
        "exponent": A.exponent,
        "small": is_small(A),
        "boundary": {"m1": B.m1, "m2": B.m2,
                     "coefficients": [rat_str(c1), rat_str(c2)]},
    }


def _resolution_payload(Y):
    return Y.to_json()


def _fmt_resolution(Y):
    rays = ", ".join(f"({rat_str(r[0])},{rat_str(r[1])})"
                     for r in Y.exceptional_rays) or "none"
    disc = ", ".join(rat_str(d) for d in Y.discrepancies) or "none"
    return f"exceptional rays: {rays}\ndiscrepancies: {disc}"


def _select_resolution(cfg, N2):
    admissible = enumerate_admissible_resolutions(N2)
    if cfg.resolution == "min":
        return minimal_resolution(N2)
    if cfg.resolution == "max":
        return maximal_resolution(N2)
    try:
        idx = int(cfg.resolution)
        return admissible[idx]
    except (ValueError, IndexError):
        raise UsageError(f"bad resolution selector {cfg.resolution!r}")


def run(cfg: RunConfig):
    """Execute a config; returns (exit_code, output_text)."""
    A = build_action(cfg.n, cfg.gens)
    N2 = build_N2(A)

    if cfg.command == "group":
        facts = _group_facts(A)
        b = facts["boundary"]
        text = (f"G of order {facts['order']} (exponent {facts['exponent']}), "
                f"small={str(facts['small']).lower()}\n"
                f"B = {b['coefficients'][0]}*B1 + {b['coefficients'][1]}*B2 "
                f"(m1={b['m1']}, m2={b['m2']})")
        facts["text"] = text
        return 0, _emit(cfg, facts)

    if cfg.command in ("minres", "maxres"):
        Y = minimal_resolution(N2) if cfg.command == "minres" else maximal_resolution(N2)
        payload = _group_facts(A)
        payload["resolution"] = _resolution_payload(Y)
        payload["text"] = _fmt_resolution(Y)
        return 0, _emit(cfg, payload,
                        drawing=draw.svg_resolution(Y) if cfg.format == "svg"
                        else draw.dot_resolution(Y) if cfg.format == "dot" else None)

    if cfg.command == "resolutions":
        res = enumerate_admissible_resolutions(N2)
        payload = _group_facts(A)
        payload["count"] = len(res)
        payload["resolutions"] = [_resolution_payload(Y) for Y in res]
        payload["text"] = "\n".join(
            [f"{len(res)} admissible resolutions"]
            + [f"[{i}] {len(Y.exceptional_rays)} exceptional rays"
               for i, Y in enumerate(res)]
        )
        return 0, _emit(cfg, payload)

    if cfg.command == "triangulate":
        Y = _select_resolution(cfg, N2)
        J = build_junior(A)
        try:
            T = build_containing_triangulation(J, Y)
        except InadmissibleResolutionError as e:
            raise UsageError(str(e))
        cert = regularity_certificate(T)
        regular = isinstance(cert, PLSupportFunction)
        payload = {
            "action": A.to_json(),
            "resolution": _resolution_payload(Y),
            "triangulation": T.to_json(),
            "triangles": len(T.triangles),
            "basic": is_basic(T),
            "regular": regular,
            "amp_restriction_surjective": amp_restriction_surjective(T, A),
            "svg": draw.svg_triangulation(T),
            "dot": draw.dot_triangulation(T),
        }
        payload["text"] = (
            f"{payload['triangles']} triangles, basic={payload['basic']}, "
            f"regular={payload['regular']}, "
            f"amp restriction surjective={payload['amp_restriction_surjective']}"
        )
        return 0, _emit(cfg, payload,
                        drawing=draw.svg_triangulation(T) if cfg.format == "svg"
                        else draw.dot_triangulation(T) if cfg.format == "dot"
                        else None)

    if cfg.command == "moduli":
        Q = build_mckay_quiver(A)
        if cfg.theta is not None:
            if len(cfg.theta) != A.order:
                raise UsageError(
                    f"theta needs {A.order} entries, got {len(cfg.theta)}")
            theta = make_theta(cfg.theta)
            witness = genericity_witness(theta)
            if witness is not None:
                raise UsageError(
                    f"theta is not generic: characters {list(witness)} sum to zero")
        else:
            theta = sample_generic(A, cfg.seed)
        fan = moduli_fan(Q, theta, N2)
        fixed = enumerate_fixed_stable(Q, theta)
        contained = set(fan.rays) <= set(maximal_resolution(N2).rays)
        payload = {
            "action": A.to_json(),
            "theta": theta.to_json(),
            "fan": _resolution_payload(fan),
            "fixed_points": [c.to_json() for c in fixed],
            "fixed_point_count": len(fixed),
            "delta_prime_containment": contained,
        }
        payload["text"] = (
            f"theta = ({', '.join(theta.to_json())})\n"
            + _fmt_resolution(fan)
            + f"\nfixed points: {len(fixed)}, containment "
            + ("pass" if contained else "FAIL")
        )
        code = 0 if contained else 1
        return code, _emit(cfg, payload,
                           drawing=draw.svg_resolution(fan) if cfg.format == "svg"
                           else draw.dot_resolution(fan) if cfg.format == "dot"
                           else None)

    if cfg.command == "verify":
        threads = max(1, int(os.environ.get("CLAB_THREADS", "1")))
        rep = verify_main_theorem(A, cfg.samples, cfg.budget, seed=cfg.seed,
                                  threads=threads)
        payload = rep.to_json()
        lines = [
            f"only-if audit: {cfg.samples} samples, "
            f"{payload['only_if']['violations']} containment violations",
            f"realized {sum(o.realized for o in rep.outcomes)}/{len(rep.outcomes)}"
            " admissible resolutions",
            f"verdict: {payload['verdict']}",
        ]
        payload["text"] = "\n".join(lines)
        return (0 if rep.passed else 1), _emit(cfg, payload)

    raise UsageError(f"unknown command {cfg.command!r}")


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.config:
            with open(args.config, "r", encoding="utf-8") as fh:
                cfg = RunConfig.from_json(json.load(fh))
        else:
            if args.command is None:
                raise UsageError("a command is required")
            theta = None
            if args.theta is not None:
                theta = tuple(Fraction(t) for t in args.theta.split(","))
            cfg = RunConfig(
                command=args.command,
                n=args.n,
                gens=_parse_gens(args.gens),
                theta=theta,
                seed=args.seed,
                samples=args.samples,
                budget=args.budget,
                format=args.format,
                out=args.out,
                resolution=args.resolution,
            )
        code, output = run(cfg)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (ValueError, NonGenericThetaError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(output)
    else:
        sys.stdout.write(output)
    return code


if __name__ == "__main__":
    sys.exit(main())
