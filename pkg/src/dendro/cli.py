"""Command-line entry point: `dendro <command> ...`.

Exit codes: 0 success or a true verdict, 1 a false verdict (witness
printed), 2 bad input.
"""

import argparse
import json
import os
import random
import sys

from . import trees as tr
from .trees import TreeError, ParseError
from .operads import OperadError, operad_from_json, operad_to_json, morphism_from_json, morphism_to_json
from .categories import CategoryError
from .dendsets import DendError, BoundError, Nerve, NerveMap, dendset_to_json, Representable


class InputError(Exception):
    pass


def _read(path):
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError("cannot read %s: %s" % (path, exc.strerror))


def load_tree(path):
    text = _read(path)
    try:
        return tr.parse_tree(text)
    except ParseError as exc:
        raise InputError("%s: %s" % (path, exc))


def load_json(path):
    text = _read(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError("%s: invalid JSON (%s) at line %d, column %d"
                         % (path, exc.msg, exc.lineno, exc.colno))


def _bound(args, default=3):
    if args.bound is not None:
        return args.bound
    env = os.environ.get("DENDRO_BOUND")
    if env:
        try:
            return int(env)
        except ValueError:
            raise InputError("DENDRO_BOUND must be an integer, got %r" % env)
    return default


def _jsonable(x):
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    if isinstance(x, dict):
        return {str(k) if isinstance(k, str) else repr(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x, key=repr) if isinstance(x, (set, frozenset)) else x
        return [_jsonable(v) for v in items]
    if hasattr(x, "to_json"):
        return x.to_json()
    return repr(x)


class Out:
    def __init__(self, fmt, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def emit(self, data, text=None, dot=None):
        if self.fmt == "json" or (self.fmt == "dot" and dot is None) or \
                (self.fmt == "text" and text is None):
            body = json.dumps(_jsonable(data), indent=2, sort_keys=True)
        elif self.fmt == "dot":
            body = dot
        else:
            body = text
        self.stream.write(body + "\n")


def _tree_json(T):
    return {"sexpr": tr.to_sexpr(T), "code": tr.code(T), "root": T.root,
            "edges": sorted(T.edges), "leaves": sorted(T.leaves),
            "inner_edges": sorted(T.inner_edges),
            "vertices": [{"output": v.output, "inputs": sorted(v.inputs)}
                         for v in sorted(T.vertices, key=lambda v: v.output)]}


def _label_json(lab):
    return {"kind": lab.kind, "name": lab.name}


# commands

def cmd_tree(args, out):
    if args.action == "random":
        rng = random.Random(args.seed)
        pool = list(tr.all_trees(args.vertices, min_vertices=args.vertices))
        if not pool:
            raise InputError("no trees with %d vertices" % args.vertices)
        T = rng.choice(pool)
        out.emit(_tree_json(T), text=tr.to_sexpr(T), dot=tr.to_dot(T))
        return 0
    T = load_tree(args.file)
    if args.action in ("parse", "show"):
        out.emit(_tree_json(T), text=tr.to_sexpr(T), dot=tr.to_dot(T))
    elif args.action == "faces":
        rows = [{"label": _label_json(lab), "face": tr.to_sexpr(f.source)} for lab, f in tr.faces(T)]
        out.emit(rows, text="\n".join("%s %s  %s" % (r["label"]["kind"], r["label"]["name"], r["face"])
                                      for r in rows))
    elif args.action == "graft":
        if not args.leaf or not args.other:
            raise InputError("graft needs --leaf and --other")
        S = load_tree(args.other)
        try:
            G = tr.graft(T, args.leaf, S)
        except TreeError as exc:
            raise InputError(str(exc))
        out.emit(_tree_json(G), text=tr.to_sexpr(G), dot=tr.to_dot(G))
    elif args.action == "spine":
        sp = tr.spine(T)
        rows = {"corollas": [tr.to_sexpr(m.source) for m in sp.corollas], "glue": sp.glue}
        out.emit(rows, text="\n".join(rows["corollas"]) + "\nglued along: " + " ".join(sp.glue))
    elif args.action == "auto":
        autos = [dict(sorted(a.edge_map.items())) for a in tr.automorphisms(T)]
        out.emit({"count": len(autos), "automorphisms": autos}, text=str(len(autos)))
    return 0


def cmd_shuffle(args, out):
    from .tensor import shuffles, percolation_poset
    S, T = load_tree(args.left), load_tree(args.right)
    if args.action == "count":
        n = len(shuffles(S, T))
        out.emit({"count": n}, text=str(n))
    elif args.action == "list":
        shs = shuffles(S, T)
        rows = [{"tree": s.sexpr(), "black": s.black_count(),
                 "nullary_percolation": s.has_nullary_percolation()} for s in shs]
        out.emit(rows, text="\n".join(r["tree"] for r in rows))
    else:
        shs, edges = percolation_poset(S, T)
        data = {"shuffles": [s.sexpr() for s in shs], "edges": edges}
        dot = ["digraph percolation {"]
        dot += ['  s%d [label="%d"];' % (k, k) for k in range(len(shs))]
        dot += ["  s%d -> s%d;" % e for e in edges]
        dot.append("}")
        out.emit(data, text="\n".join("%d -> %d" % e for e in edges), dot="\n".join(dot))
    return 0


def _counts(X, bound, max_arity):
    rows = []
    for T in tr.all_trees(bound, max_arity):
        rows.append({"tree": tr.to_sexpr(T), "count": len(X.dendrices(T)),
                     "nondegenerate": len(X.nondegenerate(T))})
    return rows


def cmd_tensor(args, out):
    from .tensor import tensor, maximal_nondegenerate
    S, T = load_tree(args.left), load_tree(args.right)
    X = tensor(Representable(S), Representable(T))
    b = _bound(args, default=len(S.vertices) * len(T.vertices) + 1)
    rows = _counts(X, b, args.max_arity)
    top = maximal_nondegenerate(X, list(tr.all_trees(b, args.max_arity)))
    data = {"bound": b, "shapes": [r for r in rows if r["count"]],
            "maximal": [tr.to_sexpr(T_) for T_, _ in top]}
    out.emit(data, text="\n".join("%s %d" % (r["tree"], r["count"]) for r in data["shapes"]))
    return 0


def cmd_nerve(args, out):
    P = operad_from_json(load_json(args.file), validate=not args.no_validate)
    b = _bound(args)
    out.emit(dendset_to_json(Nerve(P, b), b, args.max_arity))
    return 0


def _load_map(path, validate=True):
    return morphism_from_json(load_json(path), validate)


def cmd_check(args, out):
    from . import lifting as lf
    f = _load_map(args.file, not args.no_validate)
    b = _bound(args, default=4 if args.kind != "marked" else 3)
    p = NerveMap(f, bound=b)
    if args.kind == "inner":
        v = lf.is_inner_fibration(p, b, args.max_arity, jobs=args.jobs)
    elif args.kind == "left":
        v = lf.is_left_fibration(p, b, args.max_arity, jobs=args.jobs)
    elif args.kind == "cocart":
        v = lf.is_cocartesian_fibration(p, b, args.max_arity, cocart_bound=min(b, 3), jobs=args.jobs)
    else:
        cc = lf.cocartesian_corollas(p, b, args.max_arity)
        src = lf.natural_marking(p, b, args.max_arity, cc=cc)
        from .dendsets import sharp
        pm = lf.MarkedMap(src, sharp(p.target, src.max_arity), p)
        rep = lf.marked_rlp_report(pm, b, max_arity=args.max_arity, cc=cc)
        ok = bool(rep.get("agree"))
        out.emit(rep, text="agree: %s" % ok)
        return 0 if ok else 1
    out.emit(v.to_json(), text="%s%s" % ("true" if v else "false",
                                         "" if v else " " + json.dumps(_jsonable(v.witness))))
    return 0 if v else 1


def _algebra_or_map(data):
    from .grothendieck import cat_algebra_from_json
    if "categories" in data:
        return "algebra", cat_algebra_from_json(data)
    if "source" in data and "target" in data:
        return "map", morphism_from_json(data)
    raise InputError("expected an algebra (with 'categories') or a map (with 'source')")


def cmd_groth(args, out):
    from . import grothendieck as gr
    data = load_json(args.file)
    if args.action == "coyoneda":
        if args.colour is None:
            raise InputError("coyoneda needs --colour")
        F = gr.set_algebra_from_json(data)
        if args.colour not in F.operad.colours:
            raise InputError("unknown colour %r" % args.colour)
        res = gr.coyoneda_check(F.operad, args.colour, F)
        out.emit(res, text="%s nat=%d F(s)=%d" % (res["ok"], res["nat"], res["F(s)"]))
        return 0 if res["ok"] else 1
    kind, obj = _algebra_or_map(data)
    if args.action == "build":
        if kind != "algebra":
            raise InputError("build expects a strict algebra")
        G, proj = gr.groth(obj.operad, obj)
        out.emit(morphism_to_json(proj))
        return 0
    if args.action == "straighten":
        if kind != "map":
            raise InputError("straighten expects an operad map")
        out.emit(gr.straighten_set(obj).to_json())
        return 0
    if args.action == "phi":
        if kind != "map":
            raise InputError("phi expects an operad map")
        K = gr.choose_cleavage(obj)
        A = gr.phi(obj, K)
        out.emit({"cleavage": K.to_json(),
                  "fibres": {str(s): C.to_json() for s, C in A.cats.items()}})
        return 0
    # roundtrip
    if kind == "algebra":
        S = obj.operad
        G, proj = gr.groth(S, obj)
        K = gr.choose_cleavage(proj)
        res = {"unit": gr.unit_check(S, obj), "counit": gr.counit_check(proj, K)}
    else:
        K = gr.choose_cleavage(obj)
        K2 = gr.choose_cleavage(obj, prefer="max")
        cmp_ = gr.compare_cleavages(obj, K, K2)
        cmp_.pop("isos", None)
        res = {"counit": gr.counit_check(obj, K), "cleavages": cmp_}
    ok = all(r["ok"] for r in res.values())
    out.emit(res, text=" ".join("%s=%s" % (k, r["ok"]) for k, r in res.items()))
    return 0 if ok else 1


def cmd_wspace(args, out):
    from .homotopy import w_space
    T = load_tree(args.file)
    leaves = tuple(x for x in args.leaves.split(",") if x) if args.leaves else ()
    if args.root not in T.edges:
        raise InputError("unknown edge %r" % args.root)
    cube = w_space(T, leaves, args.root)
    if cube is None:
        out.emit({"empty": True}, text="empty")
    else:
        out.emit({"empty": False, "dim": cube.dim, "coordinates": list(cube.coords)},
                 text="cube of dimension %d on %s" % (cube.dim, " ".join(cube.coords) or "nothing"))
    return 0


def cmd_stcube(args, out):
    from .homotopy import straightening_cube
    T = load_tree(args.file)
    if args.edge not in T.edges:
        raise InputError("unknown edge %r" % args.edge)
    cube = straightening_cube(T, args.edge, op=args.op)
    out.emit({"dim": cube.dim, "coordinates": list(cube.coords), "op": args.op},
             text="cube of dimension %d on %s" % (cube.dim, " ".join(cube.coords) or "nothing"))
    return 0


def cmd_maptree(args, out):
    from .homotopy import tree_algebra_from_json, mapping_tree, fibre_iso_check
    try:
        A = tree_algebra_from_json(load_json(args.file))
    except (KeyError, TypeError) as exc:
        raise InputError("malformed tree algebra: %s" % exc)
    b = _bound(args, default=2)
    M = mapping_tree(A, b)
    fib = {c: fibre_iso_check(A, c, dim=min(b, 2)) for c in sorted(A.tree.edges)}
    data = {"shapes": _counts(M, b, args.max_arity),
            "fibre_iso": {c: v is None for c, v in fib.items()}}
    out.emit(data, text="\n".join("%s %d" % (r["tree"], r["count"]) for r in data["shapes"]))
    return 0 if all(v is None for v in fib.values()) else 1


def build_parser():
    ap = argparse.ArgumentParser(prog="dendro", description="Finite dendroidal combinatorics.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "dot", "text"], default="json")
    common.add_argument("--bound", type=int, default=None,
                        help="vertex bound (default: $DENDRO_BOUND or a per-command default)")
    common.add_argument("--max-arity", type=int, default=3)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=None)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tree", parents=[common])
    p.add_argument("action", choices=["parse", "show", "faces", "graft", "spine", "auto", "random"])
    p.add_argument("file", nargs="?")
    p.add_argument("--leaf")
    p.add_argument("--other")
    p.add_argument("--vertices", type=int, default=3)
    p.set_defaults(fn=cmd_tree)

    p = sub.add_parser("shuffle", parents=[common])
    p.add_argument("action", choices=["list", "count", "poset"])
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(fn=cmd_shuffle)

    p = sub.add_parser("tensor", parents=[common])
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(fn=cmd_tensor)

    p = sub.add_parser("nerve", parents=[common])
    p.add_argument("file")
    p.add_argument("--no-validate", action="store_true")
    p.set_defaults(fn=cmd_nerve)

    p = sub.add_parser("check", parents=[common])
    p.add_argument("kind", choices=["inner", "left", "cocart", "marked"])
    p.add_argument("file")
    p.add_argument("--no-validate", action="store_true")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("groth", parents=[common])
    p.add_argument("action", choices=["build", "straighten", "phi", "roundtrip", "coyoneda"])
    p.add_argument("file")
    p.add_argument("--colour")
    p.set_defaults(fn=cmd_groth)

    p = sub.add_parser("wspace", parents=[common])
    p.add_argument("file")
    p.add_argument("--leaves", default="")
    p.add_argument("--root", required=True)
    p.set_defaults(fn=cmd_wspace)

    p = sub.add_parser("stcube", parents=[common])
    p.add_argument("file")
    p.add_argument("edge")
    p.add_argument("--op", action="store_true")
    p.set_defaults(fn=cmd_stcube)

    p = sub.add_parser("maptree", parents=[common])
    p.add_argument("file")
    p.set_defaults(fn=cmd_maptree)
    return ap


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if args.command == "tree" and args.action != "random" and not args.file:
        stderr.write("dendro: tree %s needs a file\n" % args.action)
        return 2
    out = Out(args.format, stdout)
    try:
        return args.fn(args, out)
    except InputError as exc:
        stderr.write("dendro: %s\n" % exc)
        return 2
    except BoundError as exc:
        stderr.write("dendro: bound exceeded: %s\n" % exc)
        return 2
    except (OperadError, CategoryError, DendError, TreeError, ValueError) as exc:
        stderr.write("dendro: invalid input: %s\n" % exc)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
