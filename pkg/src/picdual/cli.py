"""Command line front end.

Every command reads JSON (inline or ``@path``) and writes sorted JSON to
stdout.  ``--out`` also writes the report to a file; without it, reports go to
``$PICDUAL_OUT_DIR/<command>.json`` when that variable is set.

Exit status: 0 on success, 1 when an invariant fails (a check, a ring axiom,
an unsupported duality), 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Any

from . import acceptance
from .fgab import FgAb, ext1, hom, smith_normal_form, tensor, tor
from .groupcohomology import cohomology_table, kcomplex_cohomology, verify_23_extension, verify_weight
from .lca import FtLca, admissible, dual
from .picard import ExtBackend, PicClass, UnsupportedDuality, dual_pic, is_dualizable
from .simplicial import (
    CohRing,
    RingError,
    SimplicialComplex,
    cp2_ring,
    exterior_ring,
    point_ring,
    ring_of,
    rp2,
    sphere,
    torus,
)
from .tduality import ChernClass, HFlux, check_exactness, classify

SCHEMA_VERSION = 1
OUT_ENV = "PICDUAL_OUT_DIR"


class InvariantError(Exception):
    """Computation finished but a required property does not hold."""


class InputError(Exception):
    """Input could not be parsed or does not describe a valid object."""


BUILTIN_BASES = {
    "point": point_ring,
    "S2": lambda: ring_of(sphere(2), "S2"),
    "RP2": lambda: ring_of(rp2(), "RP2"),
    "torus": lambda: ring_of(torus(), "torus"),
    "CP2": cp2_ring,
    "T3": lambda: exterior_ring(3),
}


def _load(text: str) -> Any:
    """Inline JSON, or the contents of ``@path`` / an existing file path."""
    try:
        if text.startswith("@"):
            text = Path(text[1:]).read_text()
        elif not text.lstrip().startswith(("{", "[")) and Path(text).is_file():
            text = Path(text).read_text()
        return json.loads(text)
    except OSError as e:
        raise InputError(f"cannot read {text!r}: {e}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON: {e}") from None


def _group(data: Any) -> FgAb:
    """``{"free_rank", "factors"}`` or a list of cyclic orders (0 for Z)."""
    if isinstance(data, list):
        if not all(isinstance(d, int) and d >= 0 for d in data):
            raise InputError("cyclic orders must be nonnegative integers")
        return FgAb.of(*data)
    return FgAb.from_json(data)


def _base(source: str | None) -> CohRing:
    if source is None:
        return point_ring()
    if source in BUILTIN_BASES:
        return BUILTIN_BASES[source]()
    data = _load(source)
    if isinstance(data, dict) and "simplices" in data:
        return ring_of(SimplicialComplex.from_json(data), str(data.get("name", "")))
    return CohRing.from_json(data)


# ---------------------------------------------------------------------------
# commands


def cmd_snf(args) -> dict:
    M = _load(args.matrix)
    if not isinstance(M, list) or not all(isinstance(r, list) and all(isinstance(x, int) for x in r) for r in M):
        raise InputError("matrix must be a list of integer rows")
    if len({len(r) for r in M}) > 1:
        raise InputError("matrix rows have different lengths")
    U, D, V = smith_normal_form(M, len(M[0]) if M else 0)
    diag = [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i]]
    return {"U": U, "D": D, "V": V, "invariant_factors": diag}


def cmd_ext(args) -> dict:
    G, H = _group(_load(args.G)), _group(_load(args.H))
    return {
        "G": str(G),
        "H": str(H),
        "hom": str(hom(G, H)),
        "ext1": str(ext1(G, H)),
        "tensor": str(tensor(G, H)),
        "tor": str(tor(G, H)),
    }


def cmd_lca_dual(args) -> dict:
    return dual(FtLca.from_json(_load(args.group))).to_json()


def _weight_label(G: FgAb, i: int, p: int) -> Any:
    """Weight of ``H^i``; on ``Z/p``-modules it is only defined modulo ``p - 1``, so ``i // 2`` is tried first."""
    H = cohomology_table(G, i)[i]
    if H.is_trivial:
        return None
    ms = tuple(range(2, p)) or (1,)
    for k in [i // 2, *range(i + 1)]:
        if verify_weight(G, i, k, ms):
            return k
    if verify_23_extension(G, i, ms):
        return "2-3"
    return "unknown"


def cmd_group_cohomology(args) -> dict:
    if args.p < 2 or any(args.p % q == 0 for q in range(2, args.p)):
        raise InputError("--p must be a prime")
    G = FgAb.of(*([args.p] * args.n))
    table = cohomology_table(G, args.max)
    rows = []
    for i, H in enumerate(table):
        row = {"degree": i, "group": str(H)}
        if args.weights:
            row["weight"] = _weight_label(G, i, args.p)
        rows.append(row)
    return {"group": str(G), "coefficients": "Z", "table": rows}


def cmd_kcomplex(args) -> dict:
    H = kcomplex_cohomology(args.qmax)
    return {"cohomology": {str(q): str(g) for q, g in enumerate(H, start=1)}}


def cmd_picard_dual(args) -> dict:
    backend = ExtBackend(_base(args.base))
    P = PicClass.from_json(_load(args.pic), backend)
    cert = is_dualizable(P)
    if not cert:
        raise InvariantError("; ".join(cert.reasons))
    D = dual_pic(P)
    return {
        "input": P.to_json(),
        "dual": D.to_json(),
        "admissibility": admissible(P.H0).to_json(),
        "certificate": cert.to_json(),
    }


def _chern(base: CohRing, source: str) -> ChernClass:
    return ChernClass.from_json(base, _load(source))


def cmd_tduality_classify(args) -> dict:
    base = _base(args.base)
    c = _chern(base, args.chern)
    h = HFlux.from_json(_load(args.h)) if args.h else HFlux()
    d3 = _load(args.d3) if args.d3 else None
    return classify(base, c, h, window=args.window, d3=d3)


def cmd_tduality_exactness(args) -> dict:
    base = _base(args.base)
    rep = check_exactness(_chern(base, args.chern), seed=args.seed)
    if not rep["ok"]:
        raise InvariantError(f"exactness fails: {rep}")
    return rep


def cmd_check_all(args) -> dict:
    results = acceptance.run_all(args.seed)
    for r in results:
        print(r.line(), file=sys.stderr)
    report = {"results": [r.to_json() for r in results], "passed": sum(r.ok for r in results), "total": len(results)}
    if report["passed"] != report["total"]:
        _emit("check-all", {"schema": SCHEMA_VERSION, "command": "check-all", **report}, args)
        raise InvariantError(f"{report['total'] - report['passed']} acceptance checks failed")
    return report


# ---------------------------------------------------------------------------
# plumbing


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="also write the report to this file")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized sweeps")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="picdual", description="Exact duality and T-duality computations.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("snf", help="Smith normal form of an integer matrix")
    p.add_argument("matrix", help="JSON list of rows, or @file")
    p.set_defaults(fn=cmd_snf, name="snf", raw=False)

    p = sub.add_parser("ext", help="Hom, Ext, tensor and Tor of two groups")
    p.add_argument("G", help='group as {"free_rank","factors"} or list of cyclic orders')
    p.add_argument("H")
    p.set_defaults(fn=cmd_ext, name="ext", raw=False)

    p = sub.add_parser("lca-dual", help="Pontrjagin dual of a finite-type group")
    p.add_argument("group", help='e.g. {"z":1,"t":2,"finite":[2,6]}')
    p.set_defaults(fn=cmd_lca_dual, name="lca-dual", raw=True)

    p = sub.add_parser("group-cohomology-tables", help="H^i((Z/p)^n; Z) from the bar complex")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, default=1, choices=(1, 2))
    p.add_argument("--max", type=int, default=6)
    p.add_argument("--weights", action="store_true", help="also determine the weight of each group")
    p.set_defaults(fn=cmd_group_cohomology, name="group-cohomology-tables", raw=False)

    p = sub.add_parser("kcomplex", help="cohomology of the complex K^q = Z^q")
    p.add_argument("--qmax", type=int, default=8)
    p.set_defaults(fn=cmd_kcomplex, name="kcomplex", raw=False)

    p = sub.add_parser("picard-dual", help="dual of a Picard class (H^-1, H^0, phi)")
    p.add_argument("pic")
    p.add_argument("--base", help="built-in base name or ring/complex JSON")
    p.set_defaults(fn=cmd_picard_dual, name="picard-dual", raw=False)

    def tduality_args(q, with_h: bool):
        q.add_argument("--base", required=True, help=f"one of {sorted(BUILTIN_BASES)} or ring/complex JSON")
        q.add_argument("--chern", required=True, help='{"n": .., "components": [[..], ..]}')
        if with_h:
            q.add_argument("--h", help="flux slots {e03, e12, e21, e30}")
            q.add_argument("--d3", help="images of generators of ker iota_c in coker alpha")
            q.add_argument("--window", type=int, default=2)

    p = sub.add_parser("tduality-classify", help="T-duals of a pair (E, h)")
    tduality_args(p, True)
    p.set_defaults(fn=cmd_tduality_classify, name="tduality-classify", raw=False)

    p = sub.add_parser("tduality", help="T-duality subcommands")
    tsub = p.add_subparsers(dest="tcommand", required=True)
    q = tsub.add_parser("classify")
    tduality_args(q, True)
    q.set_defaults(fn=cmd_tduality_classify, name="tduality-classify", raw=False)
    q = tsub.add_parser("check-exactness")
    tduality_args(q, False)
    q.set_defaults(fn=cmd_tduality_exactness, name="tduality-check-exactness", raw=False)

    p = sub.add_parser("check-all", help="run the acceptance suite")
    p.set_defaults(fn=cmd_check_all, name="check-all", raw=False)

    for action in sub.choices.values():
        if action is not sub.choices["tduality"]:
            _common(action)
    for action in tsub.choices.values():
        _common(action)
    return ap


def _emit(name: str, report: Any, args) -> str:
    text = json.dumps(report, sort_keys=True, separators=(",", ":"))
    print(text)
    out = args.out
    if out is None and os.environ.get(OUT_ENV):
        out = str(Path(os.environ[OUT_ENV]) / f"{name}.json")
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text + "\n")
    return text


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        report = args.fn(args)
    except (InvariantError, RingError, UnsupportedDuality) as e:
        print(f"picdual: invariant violated: {e}", file=sys.stderr)
        return 1
    except (InputError, ValueError, KeyError, TypeError) as e:
        print(f"picdual: malformed input: {e}", file=sys.stderr)
        return 2
    if not args.raw:
        report = {"schema": SCHEMA_VERSION, "command": args.name, **report}
    _emit(args.name, report, args)
    return 0


if __name__ == "__main__":
    sys.exit(main())
