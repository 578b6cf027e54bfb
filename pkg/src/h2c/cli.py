"""Command-line front end.

Exit codes: 0 success, 1 a verification check failed, 2 malformed input,
3 geometric domain violation (for example a point outside the ball).
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

import numpy as np

from h2c.bisectors import bisector_crossing, bisector_from_spine, membership_residual
from h2c.classifier import HullTag, closure_oracle, hull_classify, hull_to_dict
from h2c.errors import GeometryError
from h2c.geodesics import distance, geodesic_from_vertices, project_to_geodesic
from h2c.hermitian import DEFAULT_TOL, PointKind, Tolerance, canonicalize
from h2c.serialize import MalformedInput, fmt, vector_from_json, vector_to_json
from h2c.verify import run_all

EXIT_OK, EXIT_FAILED, EXIT_MALFORMED, EXIT_DOMAIN = 0, 1, 2, 3

STANDARD_VERTICES = ("[1, 1, 0]", "[1, -1, 0]")


def tolerance_from_flag(value: Optional[float]) -> Tolerance:
    """``--tolerance`` sets the membership threshold; the other two are
    widened or tightened only as far as needed to keep them ordered."""
    if value is None:
        return DEFAULT_TOL
    if not value > 0:
        raise MalformedInput("--tolerance must be positive")
    return Tolerance(eps_iso=max(DEFAULT_TOL.eps_iso, value), eps_mem=value,
                     eps_alg=min(DEFAULT_TOL.eps_alg, value))


def _parse_vector(text: str) -> np.ndarray:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"not JSON: {text!r}") from exc
    v = vector_from_json(obj)
    if not np.any(v):
        raise MalformedInput("the zero vector is not a point")
    return v


def _point(text: str, tol: Tolerance):
    return canonicalize(_parse_vector(text), tol)


def load_scene(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            scene = json.load(fh)
    except OSError as exc:
        raise MalformedInput(f"cannot read scene: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"scene is not JSON: {exc}") from exc
    if not isinstance(scene, dict) or not isinstance(scene.get("points", []), list):
        raise MalformedInput("scene must be an object with a list of points")
    seed = scene.get("seed")
    if seed is not None and (not isinstance(seed, int) or isinstance(seed, bool)):
        raise MalformedInput("scene seed must be an integer")
    points = [vector_from_json(v) for v in scene.get("points", [])]
    if any(not np.any(v) for v in points):
        raise MalformedInput("the zero vector is not a point")
    return {"points": points, "seed": seed}


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=False, separators=(", ", ": "))


def cmd_classify(args, tol: Tolerance) -> int:
    scene = load_scene(args.scene)
    seed = args.seed if args.seed is not None else (scene["seed"] or 0)
    points = [canonicalize(v, tol) for v in scene["points"]]
    for k, x in enumerate(points):
        if x.kind is not PointKind.NEGATIVE:
            raise GeometryError(f"point {k} is {x.kind.value}, not in the ball")
    hull = hull_classify(points, tol, with_trace=True)
    report = hull_to_dict(hull)
    if hull.tag in (HullTag.EMPTY, HullTag.WHOLE):
        report["oracle"] = None
    else:
        o = closure_oracle(points, hull, samples=args.samples, seed=seed, tol=tol)
        report["oracle"] = {"samples": o.samples, "max_residual": fmt(o.max_residual),
                            "refuted": o.refuted, "seed": o.seed}
    if hull.tag is HullTag.WHOLE:
        report["reason"] = hull.reason
    print(_dump(report))
    return EXIT_OK


def cmd_verify(args, tol: Tolerance) -> int:
    checks = run_all(seed=args.seed or 0, samples=args.samples, tol=tol)
    for c in checks:
        print(_dump(c.to_dict()))
    return EXIT_OK if all(c.passed for c in checks) else EXIT_FAILED


def _spine(args, tol: Tolerance):
    a, b = (_point(v, tol) for v in args.vertices)
    return geodesic_from_vertices(a, b, tol)


def cmd_distance(args, tol: Tolerance) -> int:
    print(_dump({"distance": fmt(distance(_point(args.p, tol), _point(args.q, tol)))}))
    return EXIT_OK


def cmd_project(args, tol: Tolerance) -> int:
    x = project_to_geodesic(_spine(args, tol), _point(args.p, tol), tol)
    print(_dump({"point": vector_to_json(x.rep)}))
    return EXIT_OK


def cmd_crossing(args, tol: Tolerance) -> int:
    b = bisector_from_spine(_spine(args, tol), tol)
    x = bisector_crossing(b, _point(args.p, tol), _point(args.q, tol), tol)
    print(_dump({"point": vector_to_json(x.rep), "residual": fmt(membership_residual(b, x))}))
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_MALFORMED, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tolerance", type=float, default=None,
                        help="membership tolerance (default 1e-9)")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--samples", type=int, default=None)

    parser = _Parser(prog="h2c", description="Complex hyperbolic plane geometry kernel.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", parents=[common], help="totally geodesic hull of a scene")
    p.add_argument("--scene", required=True, help="JSON file {\"points\": [...], \"seed\": n}")
    p.set_defaults(func=cmd_classify, default_samples=10_000)

    p = sub.add_parser("verify", parents=[common], help="run the reproduction checks")
    p.set_defaults(func=cmd_verify, default_samples=1000)

    vertex_help = "two isotropic vectors spanning the spine (default: standard spine)"
    p = sub.add_parser("distance", parents=[common], help="distance between two points")
    p.add_argument("p")
    p.add_argument("q")
    p.set_defaults(func=cmd_distance, default_samples=0)

    p = sub.add_parser("project", parents=[common], help="closest point on a geodesic")
    p.add_argument("p")
    p.add_argument("--vertices", nargs=2, default=STANDARD_VERTICES, help=vertex_help)
    p.set_defaults(func=cmd_project, default_samples=0)

    p = sub.add_parser("crossing", parents=[common],
                       help="where the geodesic from p toward q meets a bisector")
    p.add_argument("p")
    p.add_argument("q", help="a point of the ball or an isotropic endpoint")
    p.add_argument("--vertices", nargs=2, default=STANDARD_VERTICES, help=vertex_help)
    p.set_defaults(func=cmd_crossing, default_samples=0)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.samples is None:
        args.samples = args.default_samples
    try:
        if args.samples < 0:
            raise MalformedInput("--samples must be nonnegative")
        return args.func(args, tolerance_from_flag(args.tolerance))
    except MalformedInput as exc:
        print(f"h2c: malformed input: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except GeometryError as exc:
        print(f"h2c: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
