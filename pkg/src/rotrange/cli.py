"""Command-line front end: ``rotrange check|boundary|family|resultant|scan``."""

from __future__ import annotations

import argparse
import itertools
import math
import sys

import numpy as np

from . import io
from .boundary import (boundary_curve, detect_flat_parts, polar_radius, validate_geometry)
from .certify import certify, extract_P, symmetry_phase
from .errors import (InvalidSpec, NoConvergence, OriginOutside, OutOfDomain, RotRangeError,
                     UnsupportedDimension)
from .families import (D4_VARIANTS, D4FamilySpec, d4_family, disk_counterexample,
                       oracle_sign, perm_family, resultant_closed)
from .linalg import mat_power, norm
from .svg import render_boundary

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_SOLVER = 0, 1, 2, 3


def _err(msg: str) -> None:
    print(f"rotrange: error: {msg}", file=sys.stderr)


def _emit(obj, path: str | None) -> None:
    text = io.dumps_json(io.sanitize(obj))
    sys.stdout.write(text)
    if path:
        with open(path, "w") as fh:
            fh.write(text)


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise InvalidSpec(f"cannot parse number list {text!r}") from exc


def _complexes(text: str) -> list[complex]:
    try:
        return [complex(x.strip().replace(" ", "")) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise InvalidSpec(f"cannot parse number list {text!r}") from exc


# ---------------------------------------------------------------- check

def check_report(A, tol: float) -> dict:
    cert = certify(A, tol)
    d = cert.d
    report = {"certificate": cert.to_dict(), "passes": cert.passes,
              "max_residual": cert.max_residual}
    if cert.disk_regime:
        Ad = mat_power(A, d)
        report["disk_regime"] = {
            "det_zero": True,
            "power_is_zero": bool(np.max(np.abs(Ad)) <= tol * max(1.0, norm(A)) ** d),
        }
    elif cert.passes:
        ext = extract_P(A, tol)
        report["P"] = {"coefficients_ascending": [float(c) for c in ext.P.coef],
                       "amplitude": ext.amplitude, "convention_sign": ext.convention_sign,
                       "symmetry_phase": symmetry_phase(A, cert.det)}
    return report


def cmd_check(args) -> int:
    try:
        mf = io.read_matrix(args.file)
        report = check_report(mf.matrix, args.tol)
    except RotRangeError as exc:
        _err(str(exc))
        return EXIT_INPUT
    if mf.label:
        report["label"] = mf.label
    _emit(report, args.json)
    return EXIT_OK if report["passes"] else EXIT_FAIL


# ---------------------------------------------------------------- boundary

def cmd_boundary(args) -> int:
    try:
        mf = io.read_matrix(args.file)
        A = mf.matrix
        d = mf.d
        if d < 3:
            raise InvalidSpec("boundary analysis needs d >= 3")
        if args.samples < 8 * d:
            raise InvalidSpec(f"--samples must be >= 8d = {8 * d}")
    except RotRangeError as exc:
        _err(str(exc))
        return EXIT_INPUT
    try:
        cert = certify(A)
        bnd = boundary_curve(A, args.samples)
        flats = []
        if cert.passes and not cert.disk_regime:
            flats = detect_flat_parts(A)
        geom = validate_geometry(A, bnd)
        polar = None
        if args.polar:
            polar = [(2 * math.pi * j / args.samples,
                      polar_radius(A, 2 * math.pi * j / args.samples, bnd))
                     for j in range(args.samples)]
    except NoConvergence as exc:
        _err(str(exc))
        return EXIT_SOLVER
    except OriginOutside as exc:
        _err(str(exc))
        return EXIT_INPUT

    if args.csv:
        io.write_csv(args.csv, ["theta", "wM", "dwM", "re_zeta", "im_zeta", "flag"],
                     ((b.theta, b.wM, b.dwM, b.zeta.real, b.zeta.imag, b.flag) for b in bnd))
    if args.svg:
        phi = symmetry_phase(A, cert.det) if not cert.disk_regime else 0.0
        with open(args.svg, "w") as fh:
            fh.write(render_boundary([b.zeta for b in bnd], flat_segments=flats,
                                     d=d if cert.passes else None, phi=phi, title=mf.label))
    if polar is not None:
        io.write_csv(args.polar, ["psi", "r"], polar)

    report = geom.to_dict()
    report["flat_segments"] = [
        {"sector": s.sector, "normal_angle": s.normal_angle, "w1": s.w1, "gamma1": s.gamma1,
         "half_length": s.half_length, "endpoint_minus": s.endpoint_minus,
         "endpoint_plus": s.endpoint_plus} for s in flats]
    if not cert.passes:
        report["warning"] = "matrix is not certified symmetric"
    _emit(report, None)
    return EXIT_OK


# ---------------------------------------------------------------- family

def build_family(args) -> tuple[np.ndarray, str]:
    if args.kind == "perm":
        if not args.alphas:
            raise InvalidSpec("perm needs --alphas")
        alphas = _complexes(args.alphas)
        return perm_family(alphas), f"M({args.alphas})"
    if args.kind == "d4":
        if not args.variant:
            raise InvalidSpec("d4 needs --variant")
        spec = D4FamilySpec(args.variant, a=args.a, b=args.b, alpha=args.alpha,
                            gamma=args.gamma, rho=args.rho, theta=args.theta)
        return d4_family(spec), f"d4 {args.variant}"
    if args.a is None:
        raise InvalidSpec("disk needs --a")
    return disk_counterexample(args.a), f"disk a={args.a!r}"


def cmd_family(args) -> int:
    try:
        A, label = build_family(args)
    except (InvalidSpec, OutOfDomain) as exc:
        _err(str(exc))
        return EXIT_INPUT
    io.write_matrix(args.out, A, label=args.label or label)
    return EXIT_OK


# ---------------------------------------------------------------- resultant

def cmd_resultant(args) -> int:
    try:
        rep = resultant_closed(args.d, _floats(args.alphas), args.tol)
    except (UnsupportedDimension, InvalidSpec) as exc:
        _err(str(exc))
        return EXIT_INPUT
    _emit(rep.to_dict(), None)
    return EXIT_OK


# ---------------------------------------------------------------- scan

def parse_grid(spec: str) -> np.ndarray:
    """``start:stop:count`` (inclusive endpoints) or a comma list of values."""
    try:
        if ":" in spec:
            start, stop, count = spec.split(":")
            count = int(count)
            if count < 0:
                raise ValueError
            return np.linspace(float(start), float(stop), count)
        return np.array(_floats(spec))
    except ValueError as exc:
        raise InvalidSpec(f"bad grid spec {spec!r}; use start:stop:count") from exc


def scan_rows(d: int, grid: np.ndarray, exclude_diagonal: bool = False):
    """Yield ``(alphas, oracle, sign, flat_detected)`` in lexicographic grid order."""
    for alphas in itertools.product(grid, repeat=d):
        if exclude_diagonal and len(set(alphas)) == 1:
            continue
        oracle, sign = oracle_sign(alphas)
        flat = bool(detect_flat_parts(perm_family(alphas)))
        yield alphas, oracle, sign, flat


def cmd_scan(args) -> int:
    try:
        if args.d not in (3, 5, 7):
            raise UnsupportedDimension("scan supports d in {3, 5, 7}")
        grid = parse_grid(args.grid)
        if np.any(grid <= 0) or not np.all(np.isfinite(grid)):
            raise InvalidSpec("grid values must be finite and positive")
    except RotRangeError as exc:
        _err(str(exc))
        return EXIT_INPUT
    header = [f"alpha{k + 1}" for k in range(args.d)] + ["oracle", "sign", "flat_detected"]
    rows = ([*map(float, al), orc, sg, int(fl)]
            for al, orc, sg, fl in scan_rows(args.d, grid, args.exclude_diagonal))
    io.write_csv(args.out, header, rows)
    return EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rotrange",
                                description="Rotational symmetry of numerical ranges.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="certify 2pi/d rotational symmetry")
    c.add_argument("file")
    c.add_argument("--tol", type=float, default=1e-10)
    c.add_argument("--json", metavar="OUT")
    c.set_defaults(func=cmd_check)

    b = sub.add_parser("boundary", help="sample the boundary and validate its geometry")
    b.add_argument("file")
    b.add_argument("--samples", type=int, default=720)
    b.add_argument("--csv", metavar="OUT")
    b.add_argument("--svg", metavar="OUT")
    b.add_argument("--polar", metavar="OUT")
    b.set_defaults(func=cmd_boundary)

    f = sub.add_parser("family", help="write a matrix from a known family")
    f.add_argument("kind", choices=("perm", "d4", "disk"))
    f.add_argument("--alphas", help="comma list, complex allowed (1+2j)")
    f.add_argument("--variant", choices=D4_VARIANTS)
    for name in ("a", "b", "alpha", "gamma", "rho", "theta"):
        f.add_argument(f"--{name}", type=float)
    f.add_argument("--label")
    f.add_argument("--out", required=True)
    f.set_defaults(func=cmd_family)

    r = sub.add_parser("resultant", help="closed-form resultant against the oracle")
    r.add_argument("--d", type=int, required=True)
    r.add_argument("--alphas", required=True)
    r.add_argument("--tol", type=float, default=1e-9)
    r.set_defaults(func=cmd_resultant)

    s = sub.add_parser("scan", help="sweep the oracle resultant over a grid of alphas")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--grid", required=True, help="start:stop:count")
    s.add_argument("--exclude-diagonal", action="store_true")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_scan)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "tol", 1.0) <= 0:
        _err("--tol must be positive")
        return EXIT_INPUT
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
