"""Command-line entry point.

    hk4verify verify {all,lattice,sym2,charclass,cubic} [--json] [--seed N] [--box R] [--truncation K]
    hk4verify lattice "U + U + E8(-1) + <-2>" [--json]
    hk4verify cubic {adapt,lines-surface,two-node-quartic,duval-check,yg-fit} FILE [options]

Exit codes: 0 success, 1 check failure or precondition violation, 2 usage or
parse error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from importlib import metadata
from pathlib import Path
from typing import Sequence

from . import cubic4fold as c4
from . import polygeom as pg
from .checks import SCOPES, Options, render, run
from .lattice import parse_lattice

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "0.1.0"


def _emit_json(obj: dict, out) -> None:
    out.write(json.dumps(obj, sort_keys=True, ensure_ascii=False) + "\n")


def _read_text(path: str) -> str:
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    lines = [ln.split("#", 1)[0].strip() for ln in raw.splitlines()]
    return "\n".join(ln for ln in lines if ln)


def _read_poly(path: str, nvars: int) -> pg.MultiPoly:
    text = " ".join(_read_text(path).splitlines())
    return pg.MultiPoly.parse(text, nvars)


# -- verify ----------------------------------------------------------------------


def cmd_verify(args, out) -> int:
    opts = Options(seed=args.seed, box=args.box, truncation=args.truncation)
    records = run(args.scope, opts)
    failed = [r for r in records if not r.passed]
    meta = {"version": _version(), "scope": args.scope, "seed": args.seed, "box": args.box, "truncation": args.truncation}
    if args.json:
        _emit_json({"type": "meta", **meta}, out)
        for r in records:
            _emit_json({"type": "check", **r.as_dict()}, out)
        _emit_json({"type": "summary", "total": len(records), "failed": len(failed)}, out)
    else:
        out.write(f"hk4verify {meta['version']}  scope={args.scope} seed={args.seed} box={args.box} truncation={args.truncation}\n")
        w = max(len(r.check_id) for r in records)
        for r in records:
            out.write(f"{r.status.upper():4}  {r.check_id:<{w}}  [{r.anchor}]  expected {r.expected}  computed {r.computed}\n")
        out.write(f"{len(records) - len(failed)}/{len(records)} checks passed\n")
    return EXIT_OK if not failed else EXIT_FAIL


# -- lattice -----------------------------------------------------------------------


def cmd_lattice(args, out) -> int:
    try:
        L = parse_lattice(args.expr)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    factors = L.invariant_factors()
    info = {
        "rank": L.rank,
        "det": L.det(),
        "signature": list(L.signature()),
        "invariant_factors": factors,
        "even": all(L.gram[i][i] % 2 == 0 for i in range(L.rank)),
    }
    if args.json:
        _emit_json({"type": "lattice", "expr": args.expr, **info}, out)
    else:
        for k, v in info.items():
            out.write(f"{k}: {render(v)}\n")
    return EXIT_OK


# -- cubic -------------------------------------------------------------------------


def _report(args, out, fields: dict) -> None:
    if args.json:
        _emit_json({"type": "cubic", "command": args.cubic_cmd, **fields}, out)
    else:
        for k, v in fields.items():
            out.write(f"{k}: {v}\n")


def cmd_cubic(args, out) -> int:
    cmd = args.cubic_cmd
    if cmd in ("adapt", "lines-surface"):
        cubic = _read_poly(args.file, 6)
        node = c4.adapt_to_node(cubic, pg.ProjPoint.parse(args.point))
        fields = {"F": str(node.F), "G": str(node.G)}
        if cmd == "adapt":
            fields["transform"] = render(node.transform)
        else:
            fields["S_p"] = f"V({node.F}, {node.G})"
        _report(args, out, fields)
    elif cmd == "two-node-quartic":
        data = c4.two_node_discriminant(_read_poly(args.file, 6))
        _report(args, out, {
            "b": str(data.b), "c": str(data.c), "d": str(data.d), "f": str(data.f),
            "P": str(data.P), "deg_P": data.P.degree(), "omega": f"V({data.f})",
            "det_M_equals_f_P": render(data.det_M == data.f * data.P),
        })
    elif cmd == "duval-check":
        curve = _read_poly(args.file, 3)
        v = pg.ProjPoint.parse(args.point)
        r = pg.du_val_plane_criterion(curve, v, args.truncation)
        _report(args, out, {
            "verdict": r.label, "multiplicity": r.multiplicity,
            "distinct_tangents": r.distinct_tangents,
            "reduced_certificate": render(r.reduced_certificate),
            "truncation": r.truncation,
        })
    elif cmd == "yg-fit":
        net = c4.NetOnQuinticRNC.parse(_read_text(args.file))
        fit = c4.y_g_fit(net, samples=args.samples)
        text = str(fit.cubic)
        _report(args, out, {
            "cubic": text,
            "sha256": hashlib.sha256(text.encode()).hexdigest(),
            "samples": fit.samples, "planes": fit.planes,
            "doubly_vanishing_on_rnc": render(fit.doubly_vanishing),
            "cone_vertices": render(c4.vertex_space(fit.cubic)),
        })
    return EXIT_OK


# -- parser ------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit with 2, as argparse does, but via our handler
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hk4verify", description="Exact checks for lattice, Chern-class and cubic-fourfold identities.")
    p.add_argument("--version", action="version", version=f"%(prog)s {_version()}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run registered checks")
    v.add_argument("scope", choices=("all",) + SCOPES)
    v.add_argument("--json", action="store_true", help="JSON lines output")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--box", type=int, default=3, help="lattice search radius")
    v.add_argument("--truncation", type=int, default=6, help="local expansion degree")
    v.set_defaults(func=cmd_verify)

    la = sub.add_parser("lattice", help="invariants of a lattice expression")
    la.add_argument("expr")
    la.add_argument("--json", action="store_true")
    la.set_defaults(func=cmd_lattice)

    cu = sub.add_parser("cubic", help="cubic fourfold pipeline on polynomial files")
    csub = cu.add_subparsers(dest="cubic_cmd", required=True, parser_class=_Parser)
    for name, needs_point, default_point in (
        ("adapt", True, "0,0,0,0,0,1"),
        ("lines-surface", True, "0,0,0,0,0,1"),
        ("two-node-quartic", False, None),
        ("duval-check", True, "0,0,1"),
        ("yg-fit", False, None),
    ):
        c = csub.add_parser(name)
        c.add_argument("file")
        c.add_argument("--json", action="store_true")
        if needs_point:
            c.add_argument("--point", default=default_point, help="comma-separated coordinates")
        if name == "duval-check":
            c.add_argument("--truncation", type=int, default=6)
        if name == "yg-fit":
            c.add_argument("--samples", type=int, default=64)
    cu.set_defaults(func=cmd_cubic)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        sys.stderr.write(f"hk4verify: usage error: {exc}\n")
        return EXIT_USAGE
    except (pg.PolyParseError, pg.DimensionError) as exc:
        sys.stderr.write(f"hk4verify: parse error: {exc}\n")
        return EXIT_USAGE
    except ValueError as exc:
        sys.stderr.write(f"hk4verify: {exc}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
