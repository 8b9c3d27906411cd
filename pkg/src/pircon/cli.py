"""Command-line front end. JSON output is the stable contract; text output is for reading."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import fixtures
from .coxeter import (CoxeterError, coxeter_group, enumerate_h_special,
                      parabolic_interval, project_mh)
from .hecke import verify_diagrams, verify_hecke_relations
from .kernel import (DegreeObstruction, KernelError, kernel_defect,
                     kls_polynomials)
from .klpoly import (NotAPirconSystem, RefinedPircon, RefinementIncomplete,
                     RTable, klv_polynomials, parabolic_p, parabolic_r,
                     r_polynomials)
from .matching import (DEFAULT_BUDGET, MatchingError, OrbitClassificationError,
                       SizeLimitExceeded, coherence_classes, enumerate_spms,
                       is_dircon, is_pircon, is_zircon, matching_from_json,
                       strictly_coherent)
from .polynomial import X_VALUES
from .poset import GradedPoset, PosetError, order_ideal

DOMAIN_ERRORS = (PosetError, MatchingError, CoxeterError, KernelError, DegreeObstruction,
                 NotAPirconSystem, RefinementIncomplete, SizeLimitExceeded,
                 OrbitClassificationError)


class UsageError(Exception):
    pass


# -- input helpers


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


def _load_poset(path: str) -> GradedPoset:
    data = _load_json(path)
    if "poset" in data:
        data = data["poset"]
    return GradedPoset.from_json(data)


def _load_refinement(p: GradedPoset, path: str) -> RefinedPircon:
    data = _load_json(path)
    if "refinement" in data:
        data = data["refinement"]
    return RefinedPircon.from_json(p, data)


def _load_group_spec(text: str) -> dict:
    data = json.loads(text) if text.lstrip().startswith("{") else _load_json(text)
    return data


def _budget(args) -> int:
    if args.budget is not None:
        if args.budget < 0:
            raise UsageError("--budget must be non-negative")
        return args.budget
    return DEFAULT_BUDGET


def _pair(text: str) -> tuple[str, str]:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError("--pair expects u,w or all")
    return parts[0].strip(), parts[1].strip()


# -- output helpers


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _table_text(table) -> str:
    rows = [(u, w, str(f)) for (u, w), f in table.items()]
    if not rows:
        return ""
    wu = max(len(r[0]) for r in rows)
    ww = max(len(r[1]) for r in rows)
    return "\n".join(f"{u:<{wu}}  {w:<{ww}}  {f}" for u, w, f in rows)


def _emit_table(table, args, out) -> None:
    if args.format == "text":
        print(_table_text(table), file=out)
    else:
        print(_dump(table.to_json()), file=out)


# -- subcommands


def cmd_rpoly(args, out) -> int:
    p = _load_poset(args.poset)
    rp = _load_refinement(p, args.refinement)
    table = r_polynomials(rp, args.x)
    if args.pair and args.pair != "all":
        u, w = _pair(args.pair)
        p.index(u), p.index(w)
        f = table(u, w)
        print(str(f) if args.format == "text" else _dump(f.to_list()), file=out)
    else:
        _emit_table(table, args, out)
    return 0


def _ideal(p: GradedPoset, top: str | None) -> GradedPoset:
    if top is None:
        if p.top is None:
            raise UsageError("poset has no maximum; pass --top")
        return p
    return order_ideal(p, top)


def cmd_spm(args, out) -> int:
    p = _ideal(_load_poset(args.poset), args.top)
    if args.validate:
        data = _load_json(args.validate)
        m = matching_from_json(p, data)
        print(_dump({"valid": True, "fixed": m.fixed_points(), **m.to_json()})
              if args.format == "json" else f"valid: {m!r}", file=out)
        return 0
    spms = enumerate_spms(p, _budget(args), fixed_points=not args.special)
    if args.format == "text":
        print(f"{len(spms)} matchings", file=out)
        for m in spms:
            print(f"  {m!r}", file=out)
    else:
        print(_dump({"count": len(spms), "matchings": [m.to_json() for m in spms]}), file=out)
    return 0


def cmd_coherence(args, out) -> int:
    p = _ideal(_load_poset(args.poset), args.top)
    pool = enumerate_spms(p, _budget(args))
    if args.matchings:
        data = _load_json(args.matchings)
        if "matchings" in data:
            data = data["matchings"]
        names = list(data)
        spms = [matching_from_json(p, data[k]) for k in names]
    else:
        spms = pool
        names = [f"M{i}" for i in range(len(spms))]
    # coherence is measured inside all SPMs of the top element
    cls = {pool[i]: c for c, members in enumerate(coherence_classes(pool)) for i in members}
    strict = [[strictly_coherent(a, b) for b in spms] for a in spms]
    coh = [[cls[a] == cls[b] for b in spms] for a in spms]
    if args.format == "text":
        width = max((len(n) for n in names), default=1)
        print(" " * width + "  " + " ".join(names), file=out)
        for n, srow, crow in zip(names, strict, coh):
            cells = ["S" if s else ("C" if c else ".") for s, c in zip(srow, crow)]
            print(f"{n:<{width}}  " + " ".join(f"{c:<{len(m)}}" for c, m in zip(cells, names)), file=out)
    else:
        print(_dump({"names": names, "matchings": [m.to_json() for m in spms],
                     "strictly_coherent": strict, "coherent": coh}), file=out)
    return 0


def cmd_classify(args, out) -> int:
    p = _load_poset(args.poset)
    b = _budget(args)
    res = {"pircon": is_pircon(p, b), "zircon": is_zircon(p, b)}
    res["dircon"] = res["pircon"] and is_dircon(p, b)
    if args.format == "text":
        print("\n".join(f"{k}: {'yes' if v else 'no'}" for k, v in res.items()), file=out)
    else:
        print(_dump(res), file=out)
    return 0


def _group_inputs(args):
    spec = _load_group_spec(args.group)
    H = spec.get("H", []) if args.H is None else [h for h in args.H.split(",") if h]
    w = spec.get("w") if args.w is None else args.w
    if "group" in spec:
        spec = spec["group"]
    if w is None:
        raise UsageError("no element given; pass --w")
    W = coxeter_group(spec)
    return W, tuple(H), W.parse(w)


def cmd_parabolic(args, out) -> int:
    W, H, w = _group_inputs(args)
    R = parabolic_r(W, H, w, args.x)
    P = parabolic_p(W, H, w, args.x, R)
    if args.format == "text":
        print("R", file=out)
        print(_table_text(R), file=out)
        print("P", file=out)
        print(_table_text(P), file=out)
    else:
        print(_dump({"x": R.x, "H": list(H), "w": W.name(w),
                     "poset": R.base.to_json(),
                     "R": R.to_json()["entries"], "P": P.to_json()["entries"]}), file=out)
    return 0


def cmd_hspecial(args, out) -> int:
    W, H, w = _group_inputs(args)
    ms = enumerate_h_special(W, w, H, _budget(args))
    Q = parabolic_interval(W, w, H)
    proj = [project_mh(W, m, H, Q) for m in ms]
    res = {"count": len(ms), "matchings": [m.to_json() for m in ms],
           "projections": [m.to_json() for m in proj],
           "images_of_top": [m(Q.top) for m in proj]}
    print(_dump(res), file=out)
    return 0


def cmd_klv(args, out) -> int:
    if args.n < 1:
        raise UsageError("--n must be positive")
    _emit_table(klv_polynomials(args.n, args.variant), args, out)
    return 0


def _load_table(args) -> RTable:
    data = _load_json(args.table)
    base = _load_poset(args.poset) if args.poset else None
    return RTable.from_json(data, base)


def cmd_kernel(args, out) -> int:
    table = _load_table(args)
    if args.action == "check":
        bad = kernel_defect(table)
        if args.format == "text":
            print("PASS" if bad is None else f"FAIL at ({bad[0]}, {bad[1]})", file=out)
        else:
            print(_dump({"kernel": bad is None, "first_failure": list(bad) if bad else None}), file=out)
        return 0
    f = kls_polynomials(table)
    if args.format == "text":
        print(_table_text(f), file=out)
    else:
        print(_dump(f.to_json()), file=out)
    return 0


def cmd_hecke(args, out) -> int:
    ok = True
    d, x = args.d, args.x
    if d < 2:
        raise UsageError("--d must be at least 2")
    checks = {"diagrams": verify_diagrams(d, x), **verify_hecke_relations(d, x, detail=True)}
    for name, res in checks.items():
        ok = ok and res
        print(f"{'PASS' if res else 'FAIL'} {name} d={d} x={x}", file=out)
    return 0 if ok else 1


def cmd_fixtures(args, out) -> int:
    if args.name == "list":
        print("\n".join(fixtures.FIXTURE_NAMES), file=out)
        return 0
    if args.name not in fixtures.FIXTURE_NAMES:
        raise UsageError(f"unknown fixture {args.name!r}; choose from {', '.join(fixtures.FIXTURE_NAMES)}")
    data = fixtures.fixture_json(args.name)
    if args.out is None:
        print(_dump(data), file=out)
        return 0
    d = Path(args.out)
    d.mkdir(parents=True, exist_ok=True)
    written = []
    if "poset" in data:
        (d / f"{args.name}.json").write_text(_dump(data["poset"]) + "\n")
        written.append(f"{args.name}.json")
        rest = {k: v for k, v in data.items() if k != "poset"}
        for key, val in rest.items():
            name = f"{args.name}_m.json" if key in ("refinement", "matchings", "matching") else f"{args.name}_{key}.json"
            (d / name).write_text(_dump(val) + "\n")
            written.append(name)
    else:
        (d / f"{args.name}.json").write_text(_dump(data) + "\n")
        written.append(f"{args.name}.json")
    print("\n".join(written), file=out)
    return 0


# -- parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pircon", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--budget", type=int, default=None,
                        help="search-node cap for matching enumeration (default: $PIRCON_BUDGET or 10^7)")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("rpoly", parents=[common], help="R^x table of a refined poset")
    sp.add_argument("--poset", required=True)
    sp.add_argument("--refinement", required=True)
    sp.add_argument("--x", choices=X_VALUES, default="q")
    sp.add_argument("--pair", default="all", help="u,w or all")
    sp.set_defaults(fn=cmd_rpoly)

    sp = sub.add_parser("spm", parents=[common], help="enumerate or validate special partial matchings")
    sp.add_argument("--poset", required=True)
    sp.add_argument("--top", help="work in the ideal below this element")
    sp.add_argument("--validate", metavar="FILE", help="validate a matching instead of enumerating")
    sp.add_argument("--special", action="store_true", help="only fixed-point-free matchings")
    sp.set_defaults(fn=cmd_spm)

    sp = sub.add_parser("coherence", parents=[common], help="pairwise coherence of matchings")
    sp.add_argument("--poset", required=True)
    sp.add_argument("--top")
    sp.add_argument("--matchings", metavar="FILE", help='{"name": {"map": ...}, ...}; default: all SPMs')
    sp.set_defaults(fn=cmd_coherence)

    sp = sub.add_parser("classify", parents=[common], help="pircon / zircon / dircon verdict")
    sp.add_argument("--poset", required=True)
    sp.set_defaults(fn=cmd_classify)

    for name, fn, helptext in (("parabolic", cmd_parabolic, "parabolic R and P tables"),
                               ("hspecial", cmd_hspecial, "H-special matchings and their projections")):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("--group", required=True, help="group JSON file or inline JSON")
        sp.add_argument("--H", default=None, help="comma-separated generators")
        sp.add_argument("--w", default=None, help='element, e.g. "s-t-s" or "3412"')
        sp.add_argument("--x", choices=X_VALUES, default="q")
        sp.set_defaults(fn=fn)

    sp = sub.add_parser("klv", parents=[common], help="R/Q polynomials on twisted identities")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--variant", choices=("R", "Q"), default="R")
    sp.set_defaults(fn=cmd_klv)

    sp = sub.add_parser("kernel", parents=[common], help="P-kernel check or KLS polynomials")
    sp.add_argument("action", choices=("check", "kls"))
    sp.add_argument("--table", required=True)
    sp.add_argument("--poset", help="poset file; inferred from the table entries if omitted")
    sp.set_defaults(fn=cmd_kernel)

    sp = sub.add_parser("hecke", parents=[common], help="verify the dihedral Hecke-module relations")
    sp.add_argument("action", nargs="?", choices=("verify",), default="verify")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--x", choices=X_VALUES, default="q")
    sp.set_defaults(fn=cmd_hecke)

    sp = sub.add_parser("fixtures", parents=[common], help="emit built-in example data as JSON")
    sp.add_argument("name", help="fixture name or 'list'")
    sp.add_argument("--out", help="write files into this directory")
    sp.set_defaults(fn=cmd_fixtures)
    return ap


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.budget is not None and args.budget < 0:
            raise UsageError("--budget must be non-negative")
        return args.fn(args, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return 2
    except DOMAIN_ERRORS as exc:
        print(_dump({"error": type(exc).__name__, "message": str(exc)}), file=err)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
