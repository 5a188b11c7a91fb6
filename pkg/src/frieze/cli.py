"""Command line: a thin layer over the request handlers in ``frieze.api``.

Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import api
from .errors import DomainError, ParseError
from .schemas import (
    CensusRequest,
    EnumerateRequest,
    HalfFriezeRequest,
    MutateRequest,
    PlueckerRequest,
    QuiddityRequest,
)


def _ints(text: str):
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _progress(msg: str):
    print(msg, file=sys.stderr, flush=True)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise ParseError(f"cannot read {path}: {e}") from None


def cmd_quiddity(args) -> int:
    r = api.quiddity(QuiddityRequest(quiddity=args.quiddity))
    if args.format == "json":
        print(_dump(r.frieze.model_dump(exclude={"text"})))
    else:
        print(r.frieze.text)
    return 0


def cmd_validate(args) -> int:
    r = api.check(_read_json(args.file))
    print(_dump(r.model_dump()))
    return 0 if r.ok else 1


def cmd_convert(args) -> int:
    F = api.frieze_in(_read_json(args.file))
    print(F.to_text() if args.to == "text" else F.to_json())
    return 0


def cmd_enumerate(args) -> int:
    req = EnumerateRequest(kind=args.kind, n=args.n, k=args.k, w=args.w, type=args.type, bound=args.bound,
                           count_only=args.count_only, allow_long=args.allow_long, threads=args.threads)
    r = api.enumerate_friezes(req, progress=_progress)
    if r.report:
        print(_dump({"count": r.count, **r.report}), file=sys.stderr)
    if args.count_only:
        print(r.count)
    elif args.format == "json":
        print(_dump(r.model_dump(exclude_none=True)))
    elif r.mesh_friezes is not None:
        for f in r.mesh_friezes:
            print(_dump(f))
    else:
        print("\n\n".join(F.text or api.frieze_in(F.model_dump()).to_text() for F in r.friezes or []))
    return 0


def cmd_mutate(args) -> int:
    seed_json = None
    name = args.seed
    if name not in ("a2", "a3", "gr26", "gr36", "gr37", "gr38"):
        seed_json = _read_json(name)
    r = api.mutate(MutateRequest(seed=name, seed_json=seed_json, path=args.path or [], graph=args.graph))
    if args.format == "json":
        print(_dump(r.model_dump(exclude_none=True)))
    else:
        print(", ".join(r.cluster))
        if args.graph:
            for cid, nbrs in sorted(r.adjacency.items()):
                print(f"{cid}: {' '.join(map(str, nbrs))}")
    return 0


def cmd_halffrieze(args) -> int:
    r = api.halffrieze(HalfFriezeRequest(spec=args.spec, depth=args.depth, diagonal=args.diagonal))
    if args.format == "json":
        print(_dump(r.model_dump(exclude={"text"}, exclude_none=True)))
    else:
        sys.stdout.write(r.text)
        if r.diagonal_bits is not None:
            print(",".join(map(str, r.diagonal_bits)))
    return 0


def cmd_serve(args) -> int:
    try:
        import uvicorn
    except ImportError:
        print("error: uvicorn is not installed", file=sys.stderr)
        return 1
    uvicorn.run("frieze.service:app", host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="frieze", description="Frieze patterns and the cluster structures behind them.")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("quiddity", help="Conway-Coxeter frieze of a quiddity sequence")
    q.add_argument("quiddity", type=_ints)
    q.add_argument("--format", choices=["text", "json"], default="text")
    q.set_defaults(func=cmd_quiddity)

    v = sub.add_parser("validate", help="check a frieze given as JSON (file or -)")
    v.add_argument("file")
    v.set_defaults(func=cmd_validate)

    c = sub.add_parser("convert", help="re-emit a JSON frieze as text or canonical JSON")
    c.add_argument("file")
    c.add_argument("--to", choices=["text", "json"], default="text")
    c.set_defaults(func=cmd_convert)

    e = sub.add_parser("enumerate", help="list or count friezes")
    e.add_argument("--kind", choices=["cc", "sl3", "mesh", "unitary"], required=True)
    e.add_argument("--n", type=int)
    e.add_argument("--k", type=int)
    e.add_argument("--w", type=int)
    e.add_argument("--type")
    e.add_argument("--bound", type=int)
    e.add_argument("--count-only", action="store_true")
    e.add_argument("--allow-long", action="store_true", help="permit the hours-scale cases (E8, Gr(3,8))")
    e.add_argument("--threads", type=int, default=1)
    e.add_argument("--format", choices=["text", "json"], default="text")
    e.set_defaults(func=cmd_enumerate)

    m = sub.add_parser("mutate", help="mutate a seed along a path")
    m.add_argument("--seed", default="a2", help="a2, a3, gr26, gr36, gr37, gr38 or a seed JSON file")
    m.add_argument("--path", type=_ints, help="composition order: 2,1 applies 1 first")
    m.add_argument("--graph", action="store_true", help="also explore the whole exchange graph")
    m.add_argument("--format", choices=["text", "json"], default="text")
    m.set_defaults(func=cmd_mutate)

    h = sub.add_parser("halffrieze", help="half-frieze of a fountain triangulation")
    h.add_argument("--spec", required=True)
    h.add_argument("--depth", type=int, required=True)
    h.add_argument("--diagonal", help="i=<v> or j=<v>; prints its 1-indicator sequence")
    h.add_argument("--format", choices=["text", "json"], default="text")
    h.set_defaults(func=cmd_halffrieze)

    s = sub.add_parser("serve", help="run the HTTP service")
    s.add_argument("--host", default="127.0.0.1")
    s.add_argument("--port", type=int, default=8000)
    s.set_defaults(func=cmd_serve)
    return p


def _run(func, args) -> int:
    try:
        return func(args)
    except DomainError as e:
        print(f"error: {e.code}: {e}", file=sys.stderr)
        if e.code == "WindowTooNarrow":
            print("hint: widen the window= range in the spec", file=sys.stderr)
        return 1


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        print("error: --threads must be positive", file=sys.stderr)
        return 2
    return _run(args.func, args)


def pluecker_main(argv=None) -> int:
    p = argparse.ArgumentParser(prog="pluecker-frieze", description="Pluecker labels of the Gr(k,n) frieze.")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--specialize", action="store_true", help="set consecutive coordinates to 1")
    p.add_argument("--format", choices=["text", "json"], default="text")
    args = p.parse_args(argv)

    def go(a):
        F = api.pluecker(PlueckerRequest(k=a.k, n=a.n, specialize=a.specialize))
        print(F.text if a.format == "text" else _dump(F.model_dump(exclude={"text"})))
        return 0

    return _run(go, args)


def census_main(argv=None) -> int:
    p = argparse.ArgumentParser(prog="unitary-census", description="Unitary friezes of Gr(k,n).")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--allow-long", action="store_true")
    args = p.parse_args(argv)

    def go(a):
        r = api.census(CensusRequest(k=a.k, n=a.n, allow_long=a.allow_long), progress=_progress)
        if a.json:
            print(_dump(r.model_dump()))
        else:
            print(f"clusters {r.clusters}\ndistinct friezes {r.distinct_friezes}")
        return 0

    return _run(go, args)


if __name__ == "__main__":
    sys.exit(main())
