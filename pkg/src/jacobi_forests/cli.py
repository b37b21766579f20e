"""Command line front end: ``jacobi-forests <command> ...``.

Exit codes: 0 success, 1 verification failure (a witness file is written),
2 usage error, 3 resource cap exceeded (a partial manifest is written).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from . import forests as FG
from . import hopf as H
from . import lie as L
from . import permutograph as P
from . import relations as R
from . import spaces as S
from . import verify as V
from .cache import Cache
from .diagram import Diagram
from .enumeration import ResourceLimitError, enumerate_diagrams
from .linalg import matrix_csv, spans_equal

log = logging.getLogger("jacobi_forests")

SPACES = ("A", "A-chord", "A-all", "F", "L", "P", "G")
RELATION_KINDS = ("1T", "AS", "IHX", "STU", "4T", "STU2", "SQ", "HEX")


# ---- helpers ----------------------------------------------------------------

def _mode(args) -> str:
    return "framed" if getattr(args, "framed", False) else "FI"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _guard(args, m: int, n: int, cls: str = "forest") -> None:
    """Fail early (exit 3) when the ambient basis would exceed the cap."""
    enumerate_diagrams(m, n, cls, limit=args.max_basis)


def _space(name: str, m: int, n: int, k: int | None, fi: bool):
    if name == "A":
        return S.forest_algebra(m, n, fi)
    if name == "A-chord":
        return S.chord_algebra(m, n, fi)
    if name == "A-all":
        return S.full_algebra(m, n, fi)
    if name == "L":
        return S.lie_module(m, n, fi)
    if name in ("F", "G"):
        if k is None:
            raise SystemExit(_usage(f"space {name} needs --k"))
        return S.forest_module(m, n, k, fi) if name == "F" else S.graph_relations_space(m, n, k)
    raise ValueError(name)


def _usage(msg: str) -> int:
    print(f"jacobi-forests: error: {msg}", file=sys.stderr)
    return 2


def _space_key(args) -> str:
    return args.space + (f"k{args.k}" if args.k is not None else "")


# ---- commands ---------------------------------------------------------------

def cmd_enumerate(args) -> int:
    cls = "chord" if args.chords else args.cls
    ds = enumerate_diagrams(args.strands, args.degree, cls, size=args.size, limit=args.max_basis)
    if args.json:
        _emit(json.dumps([d.to_json() for d in ds]) + "\n", args.out)
    else:
        _emit("".join(d.encode() + "\n" for d in ds), args.out)
    return 0


def _dim_value(args, fi: bool) -> dict:
    m, n = args.strands, args.degree
    if args.space == "P":
        return {"dim": len(H.primitive_subspace(m, n, fi))}
    sp = _space(args.space, m, n, args.k, fi)
    return {"dim": sp.dim, "ambient": len(sp.ambient)}


def cmd_dim(args) -> int:
    fi = not args.framed
    _guard(args, args.strands, args.degree, "all" if args.space == "A-all" else "forest")
    value = args.cache.fetch(args.strands, args.degree, "dim-" + _space_key(args), _mode(args),
                             lambda: _dim_value(args, fi))
    print(value["dim"])
    return 0


def cmd_verify(args) -> int:
    names = V.CHECKS if "all" in args.check else args.check
    _guard(args, args.strands, args.degree)
    log.info("verify seed=%d", args.seed)
    failed = []
    for name in names:
        for res in V.run_named(name, args.strands, args.degree, args.seed):
            print(res.line())
            if not res.ok:
                failed.append(res)
    if failed:
        out = Path(args.witness_dir)
        out.mkdir(parents=True, exist_ok=True)
        for res in failed:
            p = out / f"witness-{res.name}-m{args.strands}-n{args.degree}.json"
            p.write_text(json.dumps(res.to_json(), indent=1, default=str) + "\n")
            print(f"witness written to {p}", file=sys.stderr)
        return 1
    return 0


def cmd_bracket(args) -> int:
    fi = not args.framed
    if args.left and args.right:
        t, u = Diagram.decode(args.left), Diagram.decode(args.right)
        if not (t.is_tree() and u.is_tree()):
            return _usage("bracket arguments must be trees")
        v = L.bracket_trees(t, u, fi)
        _emit(json.dumps({d.encode(): str(c) for d, c in sorted(v.items())}, indent=1) + "\n", args.out)
        return 0
    if args.p is None or args.q is None:
        return _usage("give --left/--right trees or --p/--q degrees")
    consts = L.structure_constants(args.strands, args.p, args.q, fi)
    _emit(json.dumps(consts, indent=1) + "\n", args.out)
    return 0


def _filtration_report(m: int, n: int, fi: bool) -> dict:
    A = S.forest_algebra(m, n, fi)
    rows = []
    for k in range(1, n + 1):
        fk = H.size_subspace(m, n, k, fi)
        pk = H.product_filtration(m, n, k, fi)
        rows.append({
            "k": k,
            "size_filtration": len(fk),
            "primitive_products": len(pk),
            "presented": S.forest_module(m, n, k, fi).dim,
            "products_equal_size": spans_equal(pk, fk),
            "killed_by_k_fold_coproduct": H.kills(m, n, k, fk, fi),
        })
    prim = len(H.primitive_subspace(m, n, fi))
    return {"m": m, "n": n, "mode": "FI" if fi else "framed", "dim_algebra": A.dim,
            "dim_primitive": prim, "dim_lie": S.lie_module(m, n, fi).dim, "filtration": rows,
            "ok": all(r["products_equal_size"] and r["killed_by_k_fold_coproduct"]
                      and r["presented"] == r["size_filtration"] for r in rows)
            and rows[-1]["size_filtration"] == A.dim}


def cmd_report(args) -> int:
    fi = not args.framed
    _guard(args, args.strands, args.degree)
    rep = args.cache.fetch(args.strands, args.degree, "report", _mode(args),
                           lambda: _filtration_report(args.strands, args.degree, fi))
    if args.format == "json":
        _emit(json.dumps(rep, indent=1, sort_keys=True) + "\n", args.out)
    else:
        lines = [f"m={rep['m']} n={rep['n']} mode={rep['mode']} dim A={rep['dim_algebra']} "
                 f"dim Prim={rep['dim_primitive']} dim L={rep['dim_lie']}",
                 "k  F^k  P^k  presented  P^k=F^k  killed"]
        for r in rep["filtration"]:
            lines.append(f"{r['k']:<2} {r['size_filtration']:>4} {r['primitive_products']:>4} "
                         f"{r['presented']:>10}  {str(r['products_equal_size']):<7}  "
                         f"{r['killed_by_k_fold_coproduct']}")
        _emit("\n".join(lines) + "\n", args.out)
    return 0 if rep["ok"] else 1


def _relations(kind: str, m: int, n: int, size: int | None, fi: bool):
    if kind == "STU":
        ds = S.forests(m, n)
    elif kind in ("STU2", "SQ", "HEX", "4T"):
        if size is None and kind != "4T":
            raise SystemExit(_usage(f"relations {kind} need --size"))
        ds = S.forests(m, n, n if kind == "4T" else size)
    else:
        ds = S.forests(m, n, size)
    if kind == "1T":
        rels = R.gen_1T(ds)
    elif kind == "AS":
        rels = R.gen_AS(ds)
    elif kind == "IHX":
        rels = R.gen_IHX(ds)
    elif kind == "STU":
        rels = R.gen_STU(ds)
    elif kind == "4T":
        rels = R.gen_4T(ds)
    elif kind == "STU2":
        rels = list(S.stu2_relations(m, n, size))
    elif kind == "SQ":
        rels = list(S.square_relations(m, n, size))
    else:
        rels = list(S.hexagon_relations(m, n, size))
    return S.Ambient(ds), rels


def cmd_export(args) -> int:
    fi = not args.framed
    what = args.what
    if what == "basis":
        if args.space is None:
            return _usage("export basis needs --space")
        _guard(args, args.strands, args.degree, "all" if args.space == "A-all" else "forest")

        def manifest():
            sp = _space(args.space, args.strands, args.degree, args.k, fi)
            return {"space": args.space, "k": args.k, "m": args.strands, "n": args.degree,
                    "mode": _mode(args), "version": __version__, "dim": sp.dim,
                    "basis": [d.encode() for d in sp.basis],
                    "ambient": [d.encode() for d in sp.ambient.diagrams]}

        value = args.cache.fetch(args.strands, args.degree, "basis-" + _space_key(args),
                                 _mode(args), manifest)
        _emit(json.dumps(value, indent=1, sort_keys=True) + "\n", args.out)
        return 0
    if what == "relations":
        _guard(args, args.strands, args.degree)
        amb, rels = _relations(args.kind, args.strands, args.degree, args.size, fi)
        vecs = [amb.vector(r.vector) for r in rels]
        if args.format == "csv":
            _emit(matrix_csv(vecs), args.out)
        else:
            _emit(json.dumps({
                "kind": args.kind, "m": args.strands, "n": args.degree, "size": args.size,
                "columns": [d.encode() for d in amb.diagrams],
                "rows": [{"site": list(r.site), "entries": {str(c): str(x) for c, x in sorted(v.items())}}
                         for r, v in zip(rels, vecs)]}, indent=1) + "\n", args.out)
        return 0
    if what == "permutograph":
        mults = _parse_mults(args.mults)
        vs = P.vertices(mults)
        if len(vs) > args.max_basis:
            raise ResourceLimitError(f"{len(vs)} vertices exceed the cap {args.max_basis}")
        _emit(P.to_dot(vs), args.out)
        return 0
    if what == "forest-graph":
        trees = [Diagram.decode(t) for t in args.trees]
        return _export_forest_graph(trees, args)
    if what == "cycles":
        mults = _parse_mults(args.mults)
        vs = P.vertices(mults)
        trace = []
        for c in P.spanning_tree_cycles(vs):
            trace.append({"cycle": [list(map(list, v)) for v in c],
                          "atoms": [{"kind": a.kind, "cycle": [list(map(list, v)) for v in a.cycle]}
                                    for a in P.decompose_cycle(c)]})
        _emit(json.dumps(trace) + "\n", args.out)
        return 0
    return _usage(f"unknown export target {what}")


def _export_forest_graph(trees, args) -> int:
    m = trees[0].m
    mults = [tuple(t.strands[j] for t in trees) for j in range(m)]
    if P.vertex_count(mults) > args.max_basis:
        raise ResourceLimitError(f"graph exceeds the cap {args.max_basis}")
    vs = P.vertices(mults)
    forests = sorted({FG.assemble(trees, v) for v in vs})
    name = {f: f"F{i}" for i, f in enumerate(forests)}
    lines = ["graph forests {"]
    for f in forests:
        lines.append(f'  {name[f]} [label="{f.encode()}"];')
    seen = set()
    for f in forests:
        for site in R.slide_sites(f):
            g = f.swap(*site)
            e = (min(name[f], name[g]), max(name[f], name[g]), site)
            if e not in seen:
                seen.add(e)
                lines.append(f'  {e[0]} -- {e[1]} [label="{site[0]},{site[1]}"];')
    lines.append("}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _parse_mults(text: str):
    """``2,2,1`` or ``1,1;1,1,1`` (one group per strand)."""
    try:
        return [tuple(int(x) for x in part.split(",")) for part in text.split(";")]
    except ValueError:
        raise SystemExit(_usage(f"bad multiplicities {text!r}"))


# ---- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--strands", "-m", type=int, default=1)
    common.add_argument("--degree", "-n", type=int, default=1)
    common.add_argument("--framed", action="store_true", help="drop the 1T relation")
    common.add_argument("--max-basis", type=int, default=50000, help="basis-size cap")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="write output to this file")
    common.add_argument("--cache-dir", help="cache directory (default: $JACOBI_FORESTS_CACHE)")
    common.add_argument("--no-cache", action="store_true")
    common.add_argument("--log-level", default="WARNING")

    ap = argparse.ArgumentParser(prog="jacobi-forests", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="list diagrams")
    p.add_argument("--chords", action="store_true", help="chord diagrams only")
    p.add_argument("--class", dest="cls", choices=("all", "forest", "tree", "chord"), default="all")
    p.add_argument("--size", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("dim", parents=[common], help="dimension of a quotient space")
    p.add_argument("--space", choices=SPACES, required=True)
    p.add_argument("--k", type=int, help="forest size for spaces F and G")
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("verify", parents=[common], help="run verification checks")
    p.add_argument("--check", action="append", choices=V.CHECKS + ("all",), required=True)
    p.add_argument("--witness-dir", default=".")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bracket", parents=[common], help="Lie bracket of trees")
    p.add_argument("--left")
    p.add_argument("--right")
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("export", parents=[common], help="export bases, matrices, graphs")
    p.add_argument("what", choices=("basis", "relations", "permutograph", "forest-graph", "cycles"))
    p.add_argument("--space", choices=SPACES)
    p.add_argument("--k", type=int)
    p.add_argument("--kind", choices=RELATION_KINDS, default="STU")
    p.add_argument("--size", type=int)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--mults", default="1,1,1")
    p.add_argument("--trees", nargs="+", default=[])
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("report", parents=[common], help="filtration report")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_report)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=args.log_level.upper(), format="%(levelname)s %(name)s: %(message)s")
    if args.strands < 1 or args.degree < 1 or args.max_basis < 1:
        return _usage("--strands, --degree and --max-basis must be positive")
    args.cache = Cache(args.cache_dir, enabled=not args.no_cache)
    try:
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    except ResourceLimitError as exc:
        print(f"jacobi-forests: resource limit: {exc}", file=sys.stderr)
        manifest = {"command": args.command, "m": args.strands, "n": args.degree,
                    "cap": args.max_basis, "error": str(exc),
                    "partial_count": len(exc.partial),
                    "partial": [d.encode() for d in exc.partial]}
        target = Path(args.out).with_suffix(".partial.json") if args.out else Path("partial-manifest.json")
        target.write_text(json.dumps(manifest, indent=1) + "\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
