"""Command-line front end.  Every subcommand wraps one library call and
prints JSON (``schema: positroidlab/v1``) unless --dot or --svg is given.

Exit codes: 0 success, 1 domain error, 2 a verification ran and failed,
64 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import analysis, necklace as nk, perm as pm, plabic as pl, positroid as pr, twist as tw, wsc
from .linalg import QMatrix
from .rng import SplitMix64

SCHEMA = "positroidlab/v1"
EX_OK, EX_DOMAIN, EX_VERIFY, EX_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EX_USAGE)


def _default(o):
    if isinstance(o, Fraction):
        return str(o)
    if isinstance(o, (set, frozenset)):
        return sorted(o)
    if hasattr(o, "to_json"):
        return o.to_json()
    raise TypeError(f"cannot serialise {type(o).__name__}")


def _emit(payload: dict, out) -> None:
    out.write(json.dumps({"schema": SCHEMA, **payload}, indent=2, default=_default) + "\n")


# -- argument helpers -------------------------------------------------------

def _perm(s: str) -> pm.Perm:
    return pm.Perm.parse(s)


def _subset(s: str) -> frozenset:
    return nk.parse_subset(s)


def _load_json(path: str):
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def _graph(args) -> pl.PlabicGraph:
    if getattr(args, "example", None):
        ex = pl.example_graphs()
        if args.example not in ex:
            raise UsageError(f"unknown example {args.example}; choose from {sorted(ex)}")
        G = ex[args.example]
    elif getattr(args, "graph", None):
        G = pl.PlabicGraph.from_json(_load_json(args.graph))
    elif getattr(args, "pi", None):
        G = pl.generate_graph(_perm(args.pi))
    else:
        raise UsageError("give a permutation, --graph FILE or --example RHO")
    if getattr(args, "rho", None):
        G = pl.relabel(G, _perm(args.rho))
    return G


def _necklace(args) -> nk.Necklace:
    pi = _perm(args.pi)
    if getattr(args, "iota", None):
        return nk.necklace_of(_perm(args.iota), pi)
    return nk.forward_necklace(pi)


def _neck_json(N: nk.Necklace) -> dict:
    return {**N.to_json(), "labels": [nk.fmt_subset(S, N.n) for S in N.subsets]}


def _labels_json(G: pl.PlabicGraph, lab: dict) -> dict:
    return {str(f): nk.fmt_subset(S, G.n) for f, S in sorted(lab.items())}


def _matrix(args, pi: pm.Perm) -> QMatrix:
    if getattr(args, "matrix", None):
        return QMatrix.from_json(_load_json(args.matrix))
    return tw.sample_point(pi, SplitMix64(args.seed))


# -- perm -------------------------------------------------------------------

def cmd_perm(args, out):
    if args.action == "length":
        if args.window:
            f = pm.AffinePerm(tuple(int(t) for t in args.window.split(",")))
        elif args.pi:
            f = pm.lift(_perm(args.pi))
        else:
            raise UsageError("perm length needs a permutation or --window")
        _emit({"window": list(f.window), "length": pm.length(f)}, out)
        return EX_OK
    pi = _perm(args.pi)
    if args.action == "type":
        k, n = pm.type_of(pi)
        _emit({"pi": str(pi), "k": k, "n": n}, out)
    elif args.action == "lift":
        _emit({"pi": str(pi), "window": list(pm.lift(pi).window)}, out)
    elif args.action == "leq":
        if not args.other:
            raise UsageError("perm leq needs IOTA PI")
        other = _perm(args.other)
        _emit({"iota": str(pi), "pi": str(other), "leq": pm.leq_circ(pi, other)}, out)
    return EX_OK


# -- necklace ---------------------------------------------------------------

def cmd_necklace(args, out):
    a = args.action
    if a == "forward":
        _emit(_neck_json(nk.forward_necklace(_perm(args.pi))), out)
    elif a == "reverse":
        _emit(_neck_json(nk.reverse_necklace(_perm(args.pi), args.shift)), out)
    elif a == "grassmannlike":
        if not args.iota:
            raise UsageError("necklace grassmannlike needs RHO IOTA")
        _emit(_neck_json(nk.grassmannlike(_perm(args.pi), _perm(args.iota))), out)
    elif a == "dual":
        _emit(_neck_json(nk.dual(_necklace(args))), out)
    elif a == "toggle":
        if args.at is None:
            raise UsageError("necklace toggle needs --at POSITION")
        _emit(_neck_json(nk.toggle(_necklace(args), args.at)), out)
    elif a == "classify":
        N = _necklace(args)
        where = [args.at] if args.at else range(1, N.n + 1)
        _emit({"necklace": _neck_json(N), "toggles": {str(p): nk.classify_toggle(N, p).value for p in where}}, out)
    elif a == "units":
        if not args.iota:
            raise UsageError("necklace units needs PI IOTA")
        N, expo = nk.unit_monomial_path(_perm(args.pi), _perm(args.iota))
        mono = [{nk.fmt_subset(S, N.n): c for S, c in sorted(e.items(), key=lambda t: sorted(t[0]))} for e in expo]
        _emit({"necklace": _neck_json(N), "monomials": mono}, out)
    return EX_OK


# -- positroid --------------------------------------------------------------

def cmd_positroid(args, out):
    pi = _perm(args.pi)
    M = pr.positroid_of(pi)
    if args.action == "contains":
        if not args.subset:
            raise UsageError("positroid contains needs a subset")
        S = _subset(args.subset)
        _emit({"pi": str(pi), "subset": nk.fmt_subset(S, pi.n), "contains": pr.contains(M, S)}, out)
    elif args.action == "enumerate":
        B = sorted(M.bases, key=wsc.colex_key)
        _emit({"pi": str(pi), "count": len(B), "bases": [nk.fmt_subset(S, pi.n) for S in B]}, out)
    elif args.action == "dim":
        _emit({"pi": str(pi), "dimension": pr.dimension(pi)}, out)
    return EX_OK


# -- plabic -----------------------------------------------------------------

def cmd_plabic(args, out):
    a = args.action
    G = _graph(args)
    if a == "square-move":
        if args.face_id is None and not args.face:
            raise UsageError("square-move needs --face LABEL or --face-id ID")
        G = pl.square_move(G, args.face_id if args.face_id is not None else _subset(args.face))
    if args.dot and a in ("gen", "relabel", "square-move"):
        out.write(pl.graph_to_dot(G) + "\n")
        return EX_OK
    if a in ("gen", "relabel", "square-move"):
        _emit({"graph": G.to_json(), "trip": str(G.trip_perm),
               "labels": _labels_json(G, G.labels(args.mode, strict=False))}, out)
    elif a == "trips":
        _emit({"trip": str(G.trip_perm), "underlying": str(G.underlying_perm),
               "trips": [{"start": t.start, "end": t.end} for t in G.trips]}, out)
    elif a == "faces":
        lab = G.labels(args.mode, strict=False)
        _emit({"faces": [{"id": f.id, "boundary": f.is_boundary, "label": nk.fmt_subset(lab[f.id], G.n)}
                         for f in G.faces]}, out)
    elif a == "quiver":
        Q = pl.dual_quiver(G)
        lab = G.labels(args.mode, strict=False)
        names = {f: nk.fmt_subset(lab[f], G.n) for f in Q.nodes}
        if args.dot:
            out.write(pl.quiver_to_dot(Q, names) + "\n")
            return EX_OK
        _emit({"nodes": [names[f] for f in Q.nodes], "frozen": [names[f] for f in Q.nodes if f in Q.frozen],
               "arrows": [[names[p], names[q], m] for p, q, m in Q.arrows()]}, out)
    elif a == "reduced":
        rep = pl.reducedness_report(G)
        _emit({"reduced": pl.is_reduced(G), "report": rep}, out)
    return EX_OK


# -- wsc --------------------------------------------------------------------

def cmd_wsc(args, out):
    a = args.action
    subs = [_subset(s) for s in args.subsets]
    if a == "check":
        ok, pair = wsc.is_ws_collection(subs)
        _emit({"weakly_separated": ok, "witness": [nk.fmt_subset(S) for S in pair] if pair else None}, out)
        return EX_OK if ok else EX_VERIFY
    if a == "complete":
        if not subs:
            raise UsageError("wsc complete needs at least one subset")
        n = args.n or max(max(S) for S in subs)
        M = pr.positroid_of(_perm(args.pi)) if args.pi else None
        C = wsc.complete_to_maximal(subs, n, len(subs[0]), M)
        _emit({"n": n, "size": len(C), "subsets": [nk.fmt_subset(S, n) for S in C.sorted()]}, out)
    elif a == "interior":
        if not args.pi:
            raise UsageError("wsc interior needs --pi")
        N = _necklace(args)
        inner = sorted(wsc.necklace_interior(N), key=wsc.colex_key)
        _emit({"necklace": _neck_json(N), "interior": [nk.fmt_subset(S, N.n) for S in inner]}, out)
    elif a == "tiling-svg":
        if not subs:
            raise UsageError("wsc tiling-svg needs subsets")
        n = args.n or max(max(S) for S in subs)
        curve = _necklace(args) if args.pi else None
        svg = wsc.tiling_svg(subs, n, curve)
        if args.svg:
            with open(args.svg, "w") as fh:
                fh.write(svg + "\n")
            _emit({"svg": args.svg}, out)
        else:
            out.write(svg + "\n")
    return EX_OK


# -- seed -------------------------------------------------------------------

def cmd_seed(args, out):
    from . import seed as sd

    a = args.action
    G = _graph(args)
    S = sd.seed_from_graph(G, args.mode)
    if a == "from-graph":
        _emit({"seed": S.to_json()}, out)
    elif a == "mutate":
        for lab in args.at or []:
            S = sd.mutate(S, _subset(lab))
        _emit({"seed": S.to_json()}, out)
    elif a == "closure":
        seeds = sd.mutation_closure(S, limit=args.limit)
        cvars = sd.cluster_variables(seeds)
        _emit({"seeds": len(seeds), "cluster_variables": [str(x) for x in cvars]}, out)
    elif a in ("quasi-check", "quasi-search"):
        other = argparse.Namespace(example=args.other_example, graph=args.other_graph, pi=args.other_pi,
                                   rho=args.other_rho)
        S2 = sd.seed_from_graph(_graph(other), args.other_mode)
        sampler = sd.Sampler(G.trip_perm, args.points, args.seed)
        if a == "quasi-check":
            cert = sd.quasi_equivalent(S, S2, sampler)
            seq = []
        else:
            found = sd.quasi_transformation_search(S, S2, args.depth, sampler)
            seq, cert = found if found else (None, sd.QuasiFailure("no sequence within depth"))
        if cert:
            _emit({"status": "pass", "mutations": seq, "certificate": cert.to_json(S, S2)}, out)
            return EX_OK
        _emit({"status": "fail", "reason": cert.reason, "item": cert.item}, out)
        return EX_VERIFY
    return EX_OK


# -- twist ------------------------------------------------------------------

def cmd_twist(args, out):
    a = args.action
    rng = SplitMix64(args.seed)
    if a == "sample":
        pi = _perm(args.pi)
        G = pl.generate_graph(pi)
        pts = [tw.sample_point(pi, rng, G) for _ in range(args.count)]
        _emit({"pi": str(pi), "points": [M.to_json() for M in pts]}, out)
    elif a == "boundary":
        G = _graph(args)
        w = tw.random_weights(G, rng)
        _emit({"matrix": tw.boundary_measurement(G, w).to_json()}, out)
    elif a in ("right", "left"):
        N = _necklace(args)
        M = _matrix(args, N.trip)
        X = tw.right_twist(N, M) if a == "right" else tw.left_twist(N, M)
        _emit({"necklace": _neck_json(N), "input": M.to_json(), "output": X.to_json()}, out)
    elif a == "roundtrip":
        N = _necklace(args)
        G = pl.generate_graph(N.trip)
        reps = [tw.twist_roundtrip_check(N, tw.sample_point(N.trip, rng, G)) for _ in range(args.count)]
        ok = all(r.ok for r in reps)
        _emit({"status": "pass" if ok else "fail", "reports": [r.to_json() for r in reps]}, out)
        return EX_OK if ok else EX_VERIFY
    elif a == "diagram":
        G = _graph(args)
        base = pl.relabel(G, G.rho.inverse())
        reps = [tw.diagram_check(G, tw.random_weights(base, rng)) for _ in range(args.count)]
        ok = all(r.ok for r in reps)
        _emit({"status": "pass" if ok else "fail", "reports": [r.to_json() for r in reps]}, out)
        return EX_OK if ok else EX_VERIFY
    return EX_OK


# -- analysis ---------------------------------------------------------------

def cmd_analysis(args, out):
    a = args.action
    if a == "sweep":
        rep = analysis.sweep(args.kind, args.n_max, jobs=args.jobs, n_min=args.n_min)
        _emit(rep, out)
        return EX_OK if rep["status"] == "pass" else EX_VERIFY
    pi = _perm(args.pi)
    if a == "sep":
        S = sorted(analysis.sep_set(pi), key=lambda p: p.images)
        _emit({"pi": str(pi), "size": len(S), "sep": [str(p) for p in S]}, out)
    elif a == "toggle-graph":
        TG = analysis.toggle_graph(pi)
        if args.dot:
            out.write(analysis.toggle_graph_dot(TG))
            return EX_OK
        _emit(TG.to_json(), out)
    elif a == "connected":
        _emit({"pi": str(pi), "toggle_connected": analysis.is_toggle_connected(pi)}, out)
    elif a == "schubert":
        _emit({"pi": str(pi), "class": analysis.is_schubert(pi)}, out)
    return EX_OK


# -- parser -----------------------------------------------------------------

def _graph_args(p, positional: bool = True):
    if positional:
        p.add_argument("pi", nargs="?", help="trip permutation; a graph is generated from it")
    p.add_argument("--graph", help="plabic graph JSON file ('-' for stdin)")
    p.add_argument("--example", help="built-in relabelled example, keyed by its boundary permutation")
    p.add_argument("--rho", help="relabel the boundary by this permutation")
    p.add_argument("--mode", choices=["target", "source"], default="target")


def build_parser() -> argparse.ArgumentParser:
    P = _Parser(prog="positroidlab", description="Relabelled plabic graphs, necklaces and twists.")
    P.add_argument("--seed", type=int, default=0, help="PRNG seed for sampled points")
    P.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")
    sub = P.add_subparsers(dest="group", required=True, parser_class=_Parser)

    p = sub.add_parser("perm")
    p.add_argument("action", choices=["type", "lift", "length", "leq"])
    p.add_argument("pi", nargs="?")
    p.add_argument("other", nargs="?")
    p.add_argument("--window", help="comma separated affine window")
    p.set_defaults(func=cmd_perm)

    p = sub.add_parser("necklace")
    p.add_argument("action", choices=["forward", "reverse", "grassmannlike", "toggle", "classify", "dual", "units"])
    p.add_argument("pi", help="trip permutation (removal permutation for grassmannlike)")
    p.add_argument("iota", nargs="?", help="insertion permutation")
    p.add_argument("--at", type=int, help="toggle position")
    p.add_argument("--shift", type=int, default=0)
    p.set_defaults(func=cmd_necklace)

    p = sub.add_parser("positroid")
    p.add_argument("action", choices=["contains", "enumerate", "dim"])
    p.add_argument("pi")
    p.add_argument("subset", nargs="?")
    p.set_defaults(func=cmd_positroid)

    p = sub.add_parser("plabic")
    p.add_argument("action", choices=["gen", "trips", "faces", "quiver", "relabel", "square-move", "reduced"])
    _graph_args(p)
    p.add_argument("--face", help="label of the face for square-move")
    p.add_argument("--face-id", type=int, help="id of the face for square-move")
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=cmd_plabic)

    p = sub.add_parser("wsc")
    p.add_argument("action", choices=["check", "complete", "tiling-svg", "interior"])
    p.add_argument("subsets", nargs="*")
    p.add_argument("--n", type=int)
    p.add_argument("--pi", help="positroid (complete), or necklace trip permutation (interior, tiling-svg)")
    p.add_argument("--iota", help="insertion permutation of the necklace")
    p.add_argument("--svg", help="write SVG to this path instead of stdout")
    p.set_defaults(func=cmd_wsc)

    p = sub.add_parser("seed")
    p.add_argument("action", choices=["from-graph", "mutate", "closure", "quasi-check", "quasi-search"])
    _graph_args(p)
    p.add_argument("--at", action="append", help="mutate at this node label (repeatable)")
    p.add_argument("--limit", type=int, default=10_000)
    p.add_argument("--other-pi")
    p.add_argument("--other-graph")
    p.add_argument("--other-example")
    p.add_argument("--other-rho")
    p.add_argument("--other-mode", choices=["target", "source"], default="target")
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--points", type=int, default=20)
    p.set_defaults(func=cmd_seed)

    p = sub.add_parser("twist")
    p.add_argument("action", choices=["sample", "boundary", "right", "left", "roundtrip", "diagram"])
    _graph_args(p)
    p.add_argument("--iota", help="insertion permutation of the necklace")
    p.add_argument("--matrix", help="matrix JSON file; default is a sampled point")
    p.add_argument("--count", type=int, default=1)
    p.set_defaults(func=cmd_twist)

    p = sub.add_parser("analysis")
    p.add_argument("action", choices=["sep", "toggle-graph", "connected", "schubert", "sweep"])
    p.add_argument("pi", nargs="?")
    p.add_argument("--kind", choices=sorted(analysis.SWEEPS), default="main-2-iff-3")
    p.add_argument("--n-max", type=int, default=5)
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=cmd_analysis)
    return P


def _hoist_globals(argv: list[str]) -> list[str]:
    """Allow --seed/--jobs after the subcommand as well as before it."""
    front, rest = [], []
    it = iter(argv)
    for tok in it:
        if tok in ("--seed", "--jobs"):
            front += [tok, next(it, "")]
        elif tok.startswith(("--seed=", "--jobs=")):
            front.append(tok)
        else:
            rest.append(tok)
    return front + rest


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_hoist_globals(argv))
    except SystemExit as exc:
        return EX_OK if exc.code in (0, None) else EX_USAGE
    try:
        return args.func(args, out)
    except UsageError as exc:
        sys.stderr.write(f"positroidlab: {exc}\n")
        return EX_USAGE
    except (ValueError, ZeroDivisionError, KeyError) as exc:
        sys.stderr.write(json.dumps({"schema": SCHEMA, "error": type(exc).__name__, "message": str(exc)}) + "\n")
        return EX_DOMAIN


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
