"""Command-line front end: ``cmc-kit {catalog,report,profile,verify}``.

Exit codes: 0 success, 1 verification or computation failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager

from . import __version__, acceptance, boundary, hopf, identities, surfaces
from .errors import CMCKitError, DomainError, InvalidInputError


def _complex_list(text):
    try:
        return [complex(part.replace(" ", "")) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad coefficient list {text!r}: {exc}")


def _positive(text):
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_surface(args) -> surfaces.ConformalImmersion:
    if args.surface_file:
        with open(args.surface_file) as fh:
            return surfaces.from_record(fh.read())
    name = args.surface
    rho = args.rho
    if name == "sphere-cap":
        return surfaces.sphere_cap(args.H if args.H is not None else 1.0, rho or 1.0)
    if name == "plane":
        return surfaces.plane_disc(rho or 1.0)
    if name == "enneper":
        return surfaces.enneper(rho or 1.0)
    if name == "cylinder":
        return surfaces.cylinder_annulus(args.R, args.half_height, rho or 1.0)
    if name == "weierstrass":
        data = surfaces.WeierstrassData(args.fpoly or [1], args.gpoly or [0, 1])
        return surfaces.weierstrass_minimal(data, rho or 1.0)
    raise InvalidInputError(f"unknown surface {name!r}")


@contextmanager
def _output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def cmd_catalog(args):
    if args.json:
        print(json.dumps(surfaces.CATALOG, indent=2, sort_keys=True))
        return 0
    for name, info in surfaces.CATALOG.items():
        params = ", ".join(f"{k}: {v}" for k, v in info["params"].items()) or "none"
        print(f"{name:12s} {info['kind']:20s} [{info['topology']}] {params}")
    return 0


def report_document(s, n, grid_n, tol):
    rep = identities.identity_report(s, None, n, tol)
    p = boundary.boundary_profile(s, None, n)
    extra = {
        "surface": s.to_record(),
        "boundary_hopf_residual": hopf.boundary_hopf_identity(p, s.nominal_H),
        "cr_residual": hopf.cr_residual(s, grid_n),
        "umbilics": hopf.umbilic_scan(s, grid_n).summary(),
        "warnings": rep.warnings,
        "metadata": {"package": "cmc_kit", "version": __version__, "n": n, "grid_n": grid_n, "tol": tol},
    }
    return rep, extra


def cmd_report(args):
    s = build_surface(args)
    rep, extra = report_document(s, args.n, args.grid_n, args.tol)
    for w in rep.warnings:
        print(f"warning: {w}", file=sys.stderr)
    with _output(args.out) as fh:
        if args.format == "json":
            fh.write(rep.to_json(**extra) + "\n")
        else:
            fh.write("field,value\n")
            for key, value in _flatten(json.loads(rep.to_json(**extra))):
                fh.write(f"{key},{value}\n")
    return 0


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k in sorted(obj):
            yield from _flatten(obj[k], f"{prefix}{k}.")
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}{i}.")
    else:
        yield prefix[:-1], obj


def cmd_profile(args):
    s = build_surface(args)
    p = boundary.boundary_profile(s, None, args.n)
    with _output(args.out) as fh:
        if args.format == "csv":
            p.to_csv(fh)
        else:
            cols = dict(zip(boundary.CSV_COLUMNS,
                            (p.t, *p.gamma.T, p.nu2, p.ds_dt, p.kappa_g, p.kappa_n, p.tau_g)))
            fh.write(json.dumps({k: v.tolist() for k, v in cols.items()}) + "\n")
    return 0


def cmd_verify(args):
    results = acceptance.run_all(args.filter)
    if not results:
        print(f"no criteria match filter {args.filter!r}", file=sys.stderr)
        return 2
    for r in results:
        print(r.line())
        if args.verbose:
            for c in r.checks:
                print(f"    {c}")
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return 1 if failed else 0


def make_parser():
    parser = argparse.ArgumentParser(prog="cmc-kit", description="Boundary-curve identities of CMC discs.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="list surface kinds")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_catalog)

    def surface_opts(p, default_format):
        p.add_argument("--surface", choices=sorted(surfaces.CATALOG), default="enneper")
        p.add_argument("--surface-file", help="read a surface record written by ConformalImmersion.to_text")
        p.add_argument("--H", type=_positive, help="sphere-cap mean curvature")
        p.add_argument("--R", type=_positive, default=1.0, help="cylinder radius")
        p.add_argument("--half-height", type=_positive, default=1.0)
        p.add_argument("--rho", type=_positive, help="domain radius (discs) or boundary circle (cylinder)")
        p.add_argument("--fpoly", type=_complex_list, help="Weierstrass f coefficients, e.g. '1,0,0.1j'")
        p.add_argument("--gpoly", type=_complex_list, help="Weierstrass g coefficients")
        p.add_argument("--n", type=int, default=512, help="boundary samples")
        p.add_argument("--grid-n", type=int, default=32)
        p.add_argument("--tol", type=_positive, default=1e-6)
        p.add_argument("--out", help="output path (default stdout)")
        p.add_argument("--format", choices=("json", "csv"), default=default_format)

    p = sub.add_parser("report", help="identity report for one surface")
    surface_opts(p, "json")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("profile", help="boundary profile table")
    surface_opts(p, "csv")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("verify", help="run the acceptance criteria")
    p.add_argument("--filter", help="substring of criterion group or name")
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InvalidInputError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CMCKitError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
