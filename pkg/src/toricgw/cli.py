"""Command-line interface.

Subcommands: ``check`` validates a fan/brane spec, ``construct`` prints
the derived geometries, ``invariants`` computes invariants for one class,
``verify`` sweeps all effective classes up to a certificate-degree bound
and checks the correspondence identities.

Exit codes: 0 success, 2 validation error, 3 computation error, 4 a
correspondence check failed under ``verify``.  Identical inputs produce
byte-identical output; rationals are printed exactly unless ``--decimal``
asks for an approximation column.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import build, fan as fanmod, gw
from .build import GeometrySet
from .errors import ComputationError, FanSpecError, ValidationError

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_COMPUTATION = 3
EXIT_CHECK_FAILED = 4


def rat_to_json(q: Fraction) -> dict:
    return {"num": str(q.numerator), "den": str(q.denominator)}


def rat_from_json(obj: dict) -> Fraction:
    return Fraction(int(obj["num"]), int(obj["den"]))


def _fmt_rat(q: Fraction, decimal: int | None) -> str:
    base = str(q)
    if decimal is None:
        return base
    scaled = q * 10**decimal
    approx = (scaled.numerator + (scaled.denominator // 2) * (1 if scaled >= 0 else -1))
    approx //= scaled.denominator
    whole, frac = divmod(abs(approx), 10**decimal)
    sign = "-" if approx < 0 else ""
    return f"{base} ({sign}{whole}.{str(frac).zfill(decimal)})"


def _load_spec(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise FanSpecError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FanSpecError(f"{path} is not valid JSON: {exc}") from exc


def _vec(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def _wall_table(g: GeometrySet):
    return [(i, tuple(sorted(w.rays)), fanmod.wall_relation(g.x, w.rays))
            for i, w in enumerate(fanmod.compact_walls(g.x))]


def _parse_class(g: GeometrySet, beta: str | None, edges: str | None) -> tuple[int, ...]:
    charges = build.charge_vectors(g)["x"]
    if (beta is None) == (edges is None):
        raise FanSpecError("give exactly one of --beta or --edges")
    coords = [0] * g.x.nrays
    if beta is not None:
        parts = [p.strip() for p in beta.split(",")] if beta.strip() else []
        if len(parts) != len(charges):
            raise FanSpecError(f"--beta needs {len(charges)} coefficients "
                               f"(one per charge vector)")
        try:
            coeffs = [int(p) for p in parts]
        except ValueError as exc:
            raise FanSpecError("--beta coefficients must be integers") from exc
        for c, vec in zip(coeffs, charges):
            coords = [a + c * b for a, b in zip(coords, vec)]
        return tuple(coords)
    walls = _wall_table(g)
    for item in edges.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            idx_s, mult_s = item.split(":")
            idx, mult = int(idx_s), int(mult_s)
        except ValueError as exc:
            raise FanSpecError(f"bad --edges item {item!r}, expected wallId:mult") from exc
        if not 0 <= idx < len(walls) or mult < 0:
            raise FanSpecError(f"bad --edges item {item!r}")
        coords = [a + mult * b for a, b in zip(coords, walls[idx][2])]
    return tuple(coords)


def cmd_check(args) -> int:
    g = build.make_geometry(_load_spec(args.spec))
    print(f"ok: smooth Calabi-Yau 3-fold with outer brane, framing {g.f}")
    print("normalized rays:")
    for i, ray in enumerate(g.x.rays):
        print(f"  b{i} = {_vec(ray)}")
    charges = build.charge_vectors(g)["x"]
    if charges:
        print("charge vectors:")
        for vec in charges:
            print(f"  {_vec(vec)}")
    else:
        print("charge vectors: none (rays span a unimodular cone)")
    walls = _wall_table(g)
    if walls:
        print("compact walls:")
        for idx, rays, cls in walls:
            print(f"  w{idx}: rays {_vec(rays)} class {_vec(cls)}")
        kappa = fanmod.kahler_certificate(g.x)
        print(f"certificate: kappa = {_vec(kappa)}")
    else:
        print("compact walls: none")
    return EXIT_OK


def _print_fan(name: str, fan, charges) -> None:
    print(f"{name} rays:")
    for i, ray in enumerate(fan.rays):
        print(f"  b{i} = {_vec(ray)}")
    print(f"{name} maximal cones:")
    for cone in fan.max_cones:
        print(f"  {_vec(sorted(cone))}")
    print(f"{name} charge vectors:")
    for vec in charges:
        print(f"  {_vec(vec)}")


def cmd_construct(args) -> int:
    g = build.make_geometry(_load_spec(args.spec))
    charges = build.charge_vectors(g)
    _print_fan("Y", g.y, charges["y"])
    _print_fan("X4", g.x4, charges["x4"])
    return EXIT_OK


def cmd_invariants(args) -> int:
    g = build.make_geometry(_load_spec(args.spec))
    beta_prime = _parse_class(g, args.beta, args.edges)
    d = args.winding
    beta_hat = build.class_X_to_Y(g, beta_prime, d)
    beta_tilde = build.class_Y_to_X4(g, beta_hat)
    wanted = (("disk", "relative", "closed0", "closed1") if args.which == "all"
              else (args.which,))
    values: dict[str, Fraction] = {}
    for which in wanted:
        if which == "disk":
            values[which] = gw.disk_invariant(g, beta_prime, d)
        elif which == "relative":
            values[which] = gw.relative_invariant(g, beta_hat)
        elif which == "closed0":
            values[which] = gw.closed_invariant(g, beta_tilde, 0)
        else:
            values[which] = gw.closed_invariant(g, beta_tilde, 1)
    rows = [(name, values[name]) for name in wanted]
    if args.format == "json":
        doc = [{"invariant": name, "beta_prime": list(beta_prime), "winding": d,
                "value": rat_to_json(val)} for name, val in rows]
        print(json.dumps(doc, indent=2, sort_keys=True))
    elif args.format == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["invariant", "beta_prime", "winding", "value"])
        for name, val in rows:
            writer.writerow([name, _vec(beta_prime), d, str(val)])
        sys.stdout.write(out.getvalue())
    else:
        print(f"class beta' = {_vec(beta_prime)}, winding d = {d}")
        for name, val in rows:
            print(f"  {name:<8} = {_fmt_rat(val, args.decimal)}")
    return EXIT_OK


def _effective_pairs(g: GeometrySet, max_kdeg: int):
    """All effective (beta', d) with certificate degree at most max_kdeg."""
    walls = _wall_table(g)
    kappa = fanmod.kahler_certificate(g.x)
    values = [sum((k * c for k, c in zip(kappa, cls)), Fraction(0))
              for _, _, cls in walls]
    betas: set[tuple[int, ...]] = set()

    def rec(idx, coords, budget):
        if idx == len(walls):
            betas.add(tuple(coords))
            return
        cls = walls[idx][2]
        top = int(budget / values[idx]) if values[idx] > 0 else 0
        for m in range(top + 1):
            rec(idx + 1, [a + m * b for a, b in zip(coords, cls)],
                budget - m * values[idx])

    rec(0, [0] * g.x.nrays, Fraction(max_kdeg))
    pairs = []
    for beta in betas:
        d = 1
        while True:
            kdeg = fanmod.kappa_degree(g.y, build.class_X_to_Y(g, beta, d))
            if kdeg > max_kdeg:
                break
            pairs.append((kdeg, beta, d))
            d += 1
    pairs.sort()
    return [(beta, d) for _, beta, d in pairs]


def cmd_verify(args) -> int:
    g = build.make_geometry(_load_spec(args.spec))
    reports = [gw.verify(g, beta, d) for beta, d in _effective_pairs(g, args.max_kdeg)]
    check_names = ("open_relative", "relative_local", "divisor_relation", "open_closed")
    if args.format == "json":
        doc = [{"beta_prime": list(r.beta_prime), "winding": r.d,
                "disk": rat_to_json(r.disk), "relative": rat_to_json(r.relative),
                "closed0": rat_to_json(r.closed0), "closed1": rat_to_json(r.closed1),
                "checks": r.checks} for r in reports]
        print(json.dumps(doc, indent=2, sort_keys=True))
    elif args.format == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["beta_prime", "winding", "disk", "relative",
                         "closed0", "closed1", *check_names])
        for r in reports:
            writer.writerow([_vec(r.beta_prime), r.d, r.disk, r.relative,
                             r.closed0, r.closed1,
                             *(str(r.checks[c]).lower() for c in check_names)])
        sys.stdout.write(out.getvalue())
    else:
        header = (f"{'beta_prime':<18} {'d':>2} {'disk':>12} {'relative':>12} "
                  f"{'closed0':>12} {'closed1':>12}  checks")
        print(header)
        for r in reports:
            marks = "".join("P" if r.checks[c] else "F" for c in check_names)
            print(f"{_vec(r.beta_prime):<18} {r.d:>2} {str(r.disk):>12} "
                  f"{str(r.relative):>12} {str(r.closed0):>12} {str(r.closed1):>12}  {marks}")
        print(f"{len(reports)} classes verified")
    if any(not r.all_pass for r in reports):
        return EXIT_CHECK_FAILED
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toricgw",
        description="Exact open/relative/local Gromov-Witten invariants of "
                    "toric Calabi-Yau 3-folds with a framed outer brane.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate a fan/brane spec")
    p.add_argument("spec")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("construct", help="print the relative 3-fold and local 4-fold")
    p.add_argument("spec")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("invariants", help="compute invariants for one class")
    p.add_argument("spec")
    p.add_argument("--beta", help="comma-separated coefficients in the charge basis")
    p.add_argument("--edges", help="wallId:mult,... combination of compact wall classes")
    p.add_argument("--winding", type=int, required=True, metavar="D")
    p.add_argument("--which", choices=["disk", "relative", "closed0", "closed1", "all"],
                   default="all")
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")
    p.add_argument("--decimal", type=int, default=None, metavar="K",
                   help="append K-digit decimal approximations (text format)")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("verify", help="check the correspondences for all small classes")
    p.add_argument("spec")
    p.add_argument("--max-kdeg", type=int, required=True, metavar="K")
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ComputationError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTATION


if __name__ == "__main__":
    sys.exit(main())
