"""The operad presented by a dendroidal set: generators are its corollas,
relations come from its two-vertex dendrices.

Words are terms ("G", corolla, children) or ("L", colour, position).  All
words with at most `vertex_bound` generator nodes are enumerated and glued
by single contraction steps; composites that would need longer words raise
BoundError.  Equivalences that only pass through longer words are not seen,
so the result is exact only when the bound covers the relations in play.
"""

import itertools

from . import trees as tr
from .trees import OmegaMorphism, corolla, eta
from .operads import FiniteOperad
from .dendsets import BoundError


def _point(n, k):
    return OmegaMorphism(eta(), corolla(n), {"e0": "e%d" % k}, check=False)


def _leaf_order(n):
    return ["e%d" % k for k in range(1, n + 1)]


def _corolla_map(T, out):
    v = T.producer(out)
    ins = sorted(v.inputs)
    emap = {"e0": out}
    emap.update({"e%d" % (k + 1): e for k, e in enumerate(ins)})
    return OmegaMorphism(corolla(len(ins)), T, emap, check=False)


class _Presentation:
    def __init__(self, X, vertex_bound, max_arity):
        self.X = X
        self.B = vertex_bound
        self.A = max_arity
        E = eta()
        self.colours = list(X.dendrices(E))
        self.gens = {}          # corolla dendrex -> (input colours, output colour)
        self.units = set()
        self.autos = {n: [] for n in range(max_arity + 1)}
        for n in range(max_arity + 1):
            C = corolla(n)
            for a in tr.automorphisms(C):
                perm = tuple(_leaf_order(n).index(a("e%d" % (k + 1))) for k in range(n))
                self.autos[n].append((a, perm))
            for x in X.dendrices(C):
                out = X.restrict(x, _point(n, 0))
                ins = tuple(X.restrict(x, _point(n, k)) for k in range(1, n + 1))
                self.gens[x] = (ins, out)
        deg = OmegaMorphism(corolla(1), E, {"e0": "e0", "e1": "e0"}, check=False)
        for c in self.colours:
            self.units.add(X.restrict(c, deg))
        self._relations()

    def _relations(self):
        X = self.X
        self.rel = {}
        for T in tr.all_trees(2, self.A, min_vertices=2):
            (e,) = T.inner_edges
            root_ins = sorted(T.producer(T.root).inputs)
            top_ins = sorted(T.producer(e).inputs)
            k0 = root_ins.index(e)
            flat = root_ins[:k0] + top_ins + root_ins[k0 + 1:]
            leaves = sorted(T.leaves)
            if len(leaves) > self.A:
                continue
            perm = tuple(flat.index(l) for l in leaves)
            comp = OmegaMorphism(corolla(len(leaves)), T,
                                 dict([("e0", T.root)] + [("e%d" % (j + 1), l) for j, l in enumerate(leaves)]),
                                 check=False)
            mw, mv = _corolla_map(T, T.root), _corolla_map(T, e)
            for y in X.dendrices(T):
                key = (X.restrict(y, mw), k0, X.restrict(y, mv))
                self.rel.setdefault(key, set()).add((X.restrict(y, comp), perm))

    # words

    def canon(self, w):
        if w[0] == "L":
            return w
        x, ch = w[1], tuple(self.canon(c) for c in w[2])
        if x in self.units:
            return ch[0]
        n = len(ch)
        best = None
        for a, perm in self.autos[n]:
            cand = ("G", self.X.restrict(x, a), tuple(ch[perm[k]] for k in range(n)))
            if best is None or repr(cand) < repr(best):
                best = cand
        return best

    @staticmethod
    def size(w):
        return 0 if w[0] == "L" else 1 + sum(_Presentation.size(c) for c in w[2])

    @staticmethod
    def leaves(w):
        if w[0] == "L":
            return [w]
        return [l for c in w[2] for l in _Presentation.leaves(c)]

    def signature(self, w):
        ls = sorted(self.leaves(w), key=lambda l: l[2])
        return tuple(l[1] for l in ls), self.output(w)

    def output(self, w):
        return w[1] if w[0] == "L" else self.gens[w[1]][1]

    def shapes(self, c, budget, room):
        """(word with unnumbered leaves, size, arity) with output colour c."""
        yield ("L", c, None), 0, 1
        if budget == 0:
            return
        for x, (ins, out) in self.gens.items():
            if out != c or x in self.units or len(ins) > room + 1 + budget * self.A:
                continue
            for parts in self._children(ins, budget - 1, room):
                ch = tuple(p[0] for p in parts)
                ar = sum(p[2] for p in parts)
                if ar <= self.A:
                    yield ("G", x, ch), 1 + sum(p[1] for p in parts), ar

    def _children(self, ins, budget, room):
        if not ins:
            yield []
            return
        for first in self.shapes(ins[0], budget, room):
            for rest in self._children(ins[1:], budget - first[1], room):
                yield [first] + rest

    @staticmethod
    def number(w, perm):
        it = iter(perm)

        def go(u):
            if u[0] == "L":
                return ("L", u[1], next(it))
            return ("G", u[1], tuple(go(c) for c in u[2]))
        return go(w)

    def words(self):
        out = set()
        for c in self.colours:
            for w, s, ar in self.shapes(c, self.B, self.A):
                for perm in itertools.permutations(range(ar)):
                    out.add(self.canon(self.number(w, perm)))
        return out

    def contractions(self, w):
        """Words reachable by contracting one inner edge."""
        if w[0] == "L":
            return []
        x, ch = w[1], w[2]
        res = []
        for k, c in enumerate(ch):
            for sub in self.contractions(c):
                res.append(("G", x, ch[:k] + (sub,) + ch[k + 1:]))
        n = len(ch)
        for a, perm in self.autos[n]:
            xa = self.X.restrict(x, a)
            cha = tuple(ch[perm[k]] for k in range(n))
            for k0, c in enumerate(cha):
                if c[0] != "G":
                    continue
                for z, zperm in self.rel.get((xa, k0, c[1]), ()):
                    flat = cha[:k0] + c[2] + cha[k0 + 1:]
                    res.append(("G", z, tuple(flat[j] for j in zperm)))
        return res

    def graft(self, f, i, g):
        m = len(self.leaves(g))

        def shift(u, off, skip):
            if u[0] == "L":
                p = u[2]
                return ("L", u[1], p + off if p > skip else p)
            return ("G", u[1], tuple(shift(c, off, skip) for c in u[2]))

        g2 = shift(g, i, -1)

        def go(u):
            if u[0] == "L":
                if u[2] == i:
                    return g2
                return ("L", u[1], u[2] + m - 1 if u[2] > i else u[2])
            return ("G", u[1], tuple(go(c) for c in u[2]))
        return go(f)

    @staticmethod
    def act(w, perm):
        inv = {old: new for new, old in enumerate(perm)}

        def go(u):
            if u[0] == "L":
                return ("L", u[1], inv[u[2]])
            return ("G", u[1], tuple(go(c) for c in u[2]))
        return go(w)


def tau_d(X, vertex_bound=2, max_arity=3, name=None):
    """The operad generated by the corollas of X modulo its two-vertex dendrices."""
    pr = _Presentation(X, vertex_bound, max_arity)
    words = pr.words()
    parent = {w: w for w in words}

    def find(w):
        while parent[w] != w:
            parent[w] = parent[parent[w]]
            w = parent[w]
        return w

    for w in words:
        for v in pr.contractions(w):
            v = pr.canon(v)
            if v in parent:
                a, b = find(w), find(v)
                if a != b:
                    parent[a] = b
    classes = {}
    for w in words:
        classes.setdefault(find(w), []).append(w)
    key = lambda w: (pr.size(w), repr(w))
    reps = sorted((min(ws, key=key) for ws in classes.values()), key=key)
    ident = {}
    ops = {}
    for k, r in enumerate(reps):
        ops["w%d" % k] = pr.signature(r)
    rep_of = {"w%d" % k: r for k, r in enumerate(reps)}
    for r, ws in classes.items():
        rname = "w%d" % reps.index(min(ws, key=key))
        for w in ws:
            ident[w] = rname
    colour_name = {c: "c%d" % k for k, c in enumerate(pr.colours)}

    def lookup(w):
        w = pr.canon(w)
        if w not in ident:
            if pr.size(w) > pr.B:
                raise BoundError("composite needs %d generators, beyond the bound %d"
                                 % (pr.size(w), pr.B))
            raise BoundError("composite of arity %d lies beyond max_arity"
                             % len(pr.leaves(w)))
        return ident[w]

    def compose(f, i, g):
        return lookup(pr.graft(rep_of[f], i, rep_of[g]))

    def act(f, perm):
        return lookup(pr.act(rep_of[f], perm))

    units = {colour_name[c]: ident[("L", c, 0)] for c in pr.colours}
    sigs = {f: (tuple(colour_name[c] for c in ins), colour_name[out]) for f, (ins, out) in ops.items()}
    P = FiniteOperad([colour_name[c] for c in pr.colours], sigs, units, compose, act,
                     name=name or "tau(%s)" % getattr(X, "name", "X"))
    P.words = rep_of
    P.colour_of = {v: k for k, v in colour_name.items()}
    return P
