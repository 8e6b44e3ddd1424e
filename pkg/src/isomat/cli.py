"""Command-line front end.

Exit codes: 0 verdict true / success, 1 verdict false, 2 usage or input error,
3 a desk-scale cap was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .config import caps
from .errors import CapExceeded, IsomatError
from .gf2 import format_matrix
from .graph import GraphMove, LoopedGraph, are_isomorphic, is_isomorphism, parse_lsg
from .isotropic import (build_ias, classify_parallels, dh_resolution, is_pendant_twin_step,
                        parse_element, transverse_circuit_masks)

EXIT_TRUE, EXIT_FALSE, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _graph(path: str) -> LoopedGraph:
    return parse_lsg(_read(path))


def _emit(args, rep: dict, lines) -> int:
    if args.json:
        print(json.dumps(rep, indent=2, sort_keys=True, default=str))
    else:
        for ln in lines:
            print(ln)
    return EXIT_TRUE if rep.get("verdict", True) else EXIT_FALSE


# commands ------------------------------------------------------------------------------

def cmd_ias(args) -> int:
    G = _graph(args.graph)
    IM = build_ias(G)
    M = IM.matroid
    loops = [str(e) for e in M.loops()]
    coloops = [str(e) for e in M.coloops()]
    pars = [{"pair": [str(a), str(b)], "categories": list(c)} for (a, b), c in classify_parallels(IM)]
    series = [[str(a), str(b)] for a, b in M.series_pairs()]
    rep = {"condition_id": "ias", "verdict": True, "cap_hit": False, "rank": M.rank, "loops": loops,
           "coloops": coloops, "parallels": pars, "series": series,
           "matrix": format_matrix(M.rep, labels=True).splitlines()}
    lines = [format_matrix(M.rep, labels=True).rstrip(), f"rank: {M.rank}",
             "loops: " + (" ".join(loops) or "none"), "coloops: " + (" ".join(coloops) or "none")]
    for p in pars:
        lines.append(f"parallel: {' '.join(p['pair'])} (category {','.join(map(str, p['categories']))})")
    for s in series:
        lines.append(f"series: {' '.join(s)}")
    return _emit(args, rep, lines)


def cmd_loceq(args) -> int:
    from .equivalence import local_equivalence_witness, report
    G, H = _graph(args.g1), _graph(args.g2)
    moves = local_equivalence_witness(G, H, up_to_iso=not args.labeled)
    rep = report("loceq", moves is not None, moves=moves, labeled=args.labeled)
    lines = [f"locally equivalent{'' if not args.labeled else ' (labeled)'}: {'yes' if moves is not None else 'no'}"]
    if moves is not None:
        lines.append("moves: " + ("; ".join(map(str, moves)) or "(none)"))
    return _emit(args, rep, lines)


def cmd_bip(args) -> int:
    from .equivalence import bip_test
    rep = bip_test(_graph(args.graph))
    lines = [f"locally equivalent to a bipartite graph: {'yes' if rep['verdict'] else 'no'}",
             "conditions: " + " ".join(f"{k}={v}" for k, v in rep["conditions"].items())]
    if "witness" in rep:
        w = rep["witness"]
        lines += [f"T1: {' '.join(w['T1'])} (rank {w['ranks'][0]})", f"T2: {' '.join(w['T2'])} (rank {w['ranks'][1]})"]
    return _emit(args, rep, lines)


def cmd_w5(args) -> int:
    from .equivalence import w5_classify
    rep = w5_classify(_graph(args.graph))
    lines = [f"locally equivalent to W5: {'yes' if rep['verdict'] else 'no'}",
             "conditions: " + " ".join(f"{k}={v}" for k, v in rep["conditions"].items()),
             f"min transverse circuit size: {rep['min_transverse_circuit']}",
             f"min transversal rank: {rep['min_transversal_rank']}"]
    return _emit(args, rep, lines)


def cmd_dh(args) -> int:
    from .equivalence import report
    order = dh_resolution(_graph(args.graph))
    rep = report("dh", order is not None, witness=[str(v) for v in order] if order is not None else None)
    lines = ["pendant-twin resolution: " + (" ".join(map(str, order)) if order is not None else "none")]
    return _emit(args, rep, lines)


def cmd_forest_iso(args) -> int:
    from .equivalence import forest_iso, report
    f = forest_iso(_graph(args.f1), _graph(args.f2))
    rep = report("forest-iso", f is not None, witness={str(k): str(v) for k, v in f.items()} if f else None)
    lines = ["isomorphic: " + ("yes " + " ".join(f"{k}->{v}" for k, v in sorted(f.items())) if f is not None else "no")]
    return _emit(args, rep, lines)


def cmd_circuits(args) -> int:
    from .equivalence import report
    G = _graph(args.graph)
    IM = build_ias(G)
    circs = transverse_circuit_masks(IM, args.max)
    sets = [sorted(map(str, IM.matroid.labels(c)), key=lambda s: (s.split(":")[1], s)) for c in circs]
    sizes = sorted({len(s) for s in sets})
    rep = report("circuits", bool(sets), witness=sets, sizes=sizes,
                 min_size=min(sizes) if sizes else None)
    lines = [f"{len(sets)} transverse circuits" + (f" of size <= {args.max}" if args.max else "")]
    lines += ["{" + ", ".join(s) + "}" for s in sets]
    return _emit(args, rep, lines)


def cmd_mm(args) -> int:
    from .multimatroid import (check_3shelt_isotropic, is_sheltering, is_tight, shelter_from_text,
                               strongly_binary_witness)
    Q = shelter_from_text(_read(args.fixture))
    check = args.check
    if check == "sheltering":
        ok, w = is_sheltering(Q.matroid, Q.partition)
        rep = {"condition_id": "mm-sheltering", "verdict": ok, "cap_hit": False}
        if w:
            rep["witness"] = {"independent": sorted(map(str, w[0])), "pair": list(map(str, w[1]))}
        lines = [f"sheltering: {'yes' if ok else 'no'}"]
    elif check == "tight":
        ok = is_tight(Q.multimatroid())
        rep = {"condition_id": "mm-tight", "verdict": ok, "cap_hit": False}
        lines = [f"tight: {'yes' if ok else 'no'}"]
    elif check == "strict":
        ok = Q.is_strict()
        rep = {"condition_id": "mm-strict", "verdict": ok, "cap_hit": False}
        lines = [f"strict: {'yes' if ok else 'no'} (rank {Q.matroid.rank}, {len(Q.partition)} classes)"]
    elif check == "strong":
        res = strongly_binary_witness(Q)
        ok = res["witness"] is not None
        rep = {"condition_id": "mm-strong", "verdict": ok, "cap_hit": False, "bases_scanned": res["bases_scanned"]}
        if ok:
            A, (T1, T2) = res["witness"]
            rep["witness"] = {"T1": list(map(str, T1)), "T2": list(map(str, T2)),
                              "A": format_matrix(A, labels=True).splitlines()}
            lines = [f"strongly binary: yes (symmetric A at basis {' '.join(map(str, T1))})"]
        else:
            lines = [f"strongly binary: no ({res['bases_scanned']} transversal bases scanned, none symmetric)"]
    else:
        res = check_3shelt_isotropic(Q)
        ok = res is not None
        rep = {"condition_id": "mm-isotropic", "verdict": ok, "cap_hit": False}
        if ok:
            G = res["graph"]
            rep["witness"] = {"edges": [list(e) for e in G.edges()],
                              "labeling": {str(k): str(v) for k, v in res["labeling"].items()}}
        lines = [f"isotropic: {'yes' if ok else 'no'}"]
    return _emit(args, rep, lines)


def _verify(rep: dict, graphs: list) -> bool:
    cid = rep.get("condition_id")
    G = graphs[0]
    if cid == "loceq":
        if len(graphs) < 2:
            raise IsomatError("loceq reports need both graphs")
        H = G
        for text in rep.get("move_sequence", []):
            H = GraphMove.parse(text).apply(H)
        target = graphs[1]
        return H == target if rep.get("labeled") else are_isomorphic(H, target) is not None
    if cid == "bip":
        w = rep["witness"]
        IM = build_ias(G)
        T1 = [parse_element(s) for s in w["T1"]]
        T2 = [parse_element(s) for s in w["T2"]]
        if not (IM.is_transversal(T1) and IM.is_transversal(T2)) or set(T1) & set(T2):
            return False
        return IM.rank_of(T1) + IM.rank_of(T2) == G.n
    if cid == "forest-iso":
        if len(graphs) < 2:
            raise IsomatError("forest-iso reports need both graphs")
        f = {int(k): int(v) for k, v in rep["witness"].items()}
        return is_isomorphism(G, graphs[1], f)
    if cid == "dh":
        cur = G
        for s in rep["witness"]:
            v = int(s)
            if not is_pendant_twin_step(cur, v):
                return False
            cur = cur.delete_vertex(v)
        return cur.n <= 1
    if cid == "circuits":
        IM = build_ias(G)
        M = IM.matroid
        for c in rep["witness"]:
            S = [parse_element(s) for s in c]
            if not IM.is_subtransversal(S) or not M.is_circuit(S):
                return False
        return True
    raise IsomatError(f"no verifier for condition {cid!r}")


def cmd_verify(args) -> int:
    rep = json.loads(_read(args.report))
    graphs = [_graph(p) for p in args.graphs]
    ok = _verify(rep, graphs)
    out = {"condition_id": "verify", "verdict": ok, "cap_hit": False, "checked": rep.get("condition_id")}
    return _emit(args, out, [f"witness for {rep.get('condition_id')}: {'valid' if ok else 'INVALID'}"])


# parser ------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--threads", type=int, default=None, help="accepted for compatibility; runs single-threaded")
    common.add_argument("--cap", type=int, default=None, help="orbit-size cap (overrides ISOMAT_CAP)")

    p = argparse.ArgumentParser(prog="isomat", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("ias", parents=[common], help="print IAS(G) with loops, coloops, parallels")
    s.add_argument("graph")
    s.set_defaults(func=cmd_ias)

    s = sub.add_parser("loceq", parents=[common], help="decide local equivalence")
    s.add_argument("g1")
    s.add_argument("g2")
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--labeled", action="store_true", help="same vertex set, no relabeling")
    mode.add_argument("--up-to-iso", dest="labeled", action="store_false", help="up to isomorphism (default)")
    s.set_defaults(func=cmd_loceq)

    for name, func, help_ in (("bip", cmd_bip, "local equivalence to a bipartite graph"),
                              ("w5", cmd_w5, "membership in the local equivalence class of W5"),
                              ("dh", cmd_dh, "pendant-twin resolution")):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.add_argument("graph")
        s.set_defaults(func=func)

    s = sub.add_parser("forest-iso", parents=[common], help="forest isomorphism through isotropic matroids")
    s.add_argument("f1")
    s.add_argument("f2")
    s.set_defaults(func=cmd_forest_iso)

    s = sub.add_parser("circuits", parents=[common], help="list transverse circuits")
    s.add_argument("graph")
    s.add_argument("--max", type=int, default=None, help="largest circuit size to list")
    s.set_defaults(func=cmd_circuits)

    s = sub.add_parser("mm", parents=[common], help="checks on a sheltering-matroid fixture")
    s.add_argument("fixture")
    s.add_argument("--check", choices=["tight", "sheltering", "strict", "strong", "isotropic"], default="sheltering")
    s.set_defaults(func=cmd_mm)

    s = sub.add_parser("verify", parents=[common], help="re-validate the witness in a JSON report")
    s.add_argument("report")
    s.add_argument("graphs", nargs="+")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_TRUE
    try:
        with caps(orbit=args.cap):
            return args.func(args)
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (IsomatError, OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
