"""Bounded dendroidal sets.

A DendSet answers two questions: which dendrices live at a concrete tree T,
and how a dendrex restricts along an Omega-morphism R -> T.  Dendrex sets are
computed lazily and memoized per tree.  Dendrices must be hashable.
"""

import json
from collections import namedtuple

from . import trees as tr
from .trees import Tree, OmegaMorphism, hom, corolla, eta, linear, linear_edge


class BoundError(ValueError):
    pass


class DendError(ValueError):
    pass


class DendSet:
    bound = None
    coskeletal = False
    name = "X"

    def __init__(self):
        self._memo = {}

    def _compute(self, T):
        raise NotImplementedError

    def restrict(self, x, alpha):
        """x lives at alpha.target; returns its restriction at alpha.source."""
        raise NotImplementedError

    def check_bound(self, T):
        if self.bound is not None and len(T.vertices) > self.bound:
            raise BoundError("tree with %d vertices exceeds bound %d of %s"
                             % (len(T.vertices), self.bound, self.name))

    def dendrices(self, T):
        got = self._memo.get(T)
        if got is None:
            self.check_bound(T)
            got = list(self._compute(T))
            # idempotent write; concurrent callers compute the same list
            self._memo[T] = got
        return got

    def dendrex_set(self, T):
        key = ("set", T)
        got = self._memo.get(key)
        if got is None:
            got = frozenset(self.dendrices(T))
            self._memo[key] = got
        return got

    def contains(self, T, x):
        return x in self.dendrex_set(T)

    def colour(self, T, x, e):
        """The eta-dendrex at edge e of x."""
        return self.restrict(x, _edge_inclusion(T, e))

    def colours(self):
        return self.dendrices(eta())

    def corollas(self, n):
        return self.dendrices(corolla(n))

    def is_degenerate(self, T, x):
        for sigma, delta in tr.degeneracies(T):
            if self.restrict(self.restrict(x, delta), sigma) == x:
                return True
        return False

    def nondegenerate(self, T):
        return [x for x in self.dendrices(T) if not self.is_degenerate(T, x)]

    def sigma_orbit(self, T, x):
        return {self.restrict(x, a) for a in tr.automorphisms(T)}

    def __repr__(self):
        return "<%s %s>" % (type(self).__name__, self.name)


def _edge_inclusion(T, e):
    return OmegaMorphism(Tree(e), T, {e: e}, check=False)


def edge_inclusion(T, e):
    return _edge_inclusion(T, e)


def corolla_at(T, v):
    """The inclusion of the corolla of vertex v (given by its output edge)."""
    vert = T.producer(v)
    C = Tree(vert.output, [(vert.output, vert.inputs)])
    return OmegaMorphism(C, T, {e: e for e in C.edges}, check=False)


def standard_corolla_map(C, n=None):
    """An iso corolla(n) -> C, matching leaves in sorted order."""
    (v,) = C.vertices
    ins = sorted(v.inputs)
    m = {"e0": v.output}
    m.update({"e%d" % (k + 1): e for k, e in enumerate(ins)})
    return OmegaMorphism(corolla(len(ins)), C, m, check=False)


# representables

class Representable(DendSet):
    def __init__(self, S, bound=None, name=None):
        super().__init__()
        self.tree = S
        self.bound = bound
        self.name = name or "Omega[%s]" % tr.code(S)

    def _compute(self, T):
        return hom(T, self.tree)

    def restrict(self, x, alpha):
        return x.compose(alpha)

    def contains(self, T, x):
        return x.source == T and x.target == self.tree and x.problem() is None

    def identity(self):
        return tr.identity(self.tree)


def representable(T, bound=None):
    return Representable(T, bound)


# nerves

NerveDendrex = namedtuple("NerveDendrex", ["colours", "ops"])
NerveDendrex.__doc__ = """colours: sorted (edge, colour) pairs; ops: sorted (vertex output, op) pairs.

The op at a vertex takes its inputs in sorted edge-name order."""


def make_dendrex(colours, ops):
    return NerveDendrex(tuple(sorted(colours.items())), tuple(sorted(ops.items())))


def evaluate(P, T, x, root, leaves):
    """The operation of P obtained by composing x over the subtree of T with
    the given root and ordered leaves."""
    cols, ops = dict(x.colours), dict(x.ops)
    leafset = set(leaves)

    def ev(e):
        if e in leafset:
            return P.unit(cols[e]), [e]
        v = T.producer(e)
        if v is None:
            raise DendError("no subtree with root %r and leaves %r" % (root, leaves))
        ins = sorted(v.inputs)
        parts = [ev(i) for i in ins]
        op = P.gamma(ops[e], [p[0] for p in parts])
        order = [l for p in parts for l in p[1]]
        return op, order

    op, order = ev(root)
    if sorted(order) != sorted(leaves):
        raise DendError("leaves %r not reached" % (leaves,))
    perm = tuple(order.index(l) for l in leaves)
    return P.act(op, perm)


class Nerve(DendSet):
    """The dendroidal nerve: dendrices at T are operad maps Omega(T) -> P."""

    coskeletal = True

    def __init__(self, P, bound=None, name=None):
        super().__init__()
        self.operad = P
        self.bound = bound
        self.name = name or "N(%s)" % P.name

    def _compute(self, T):
        return self.extensions(T, {}, {})

    def extensions(self, T, colours, ops, colour_options=None, op_options=None):
        """Dendrices at T extending partial colour/op data.

        colour_options(e) and op_options(v, colour) may restrict choices.
        """
        P = self.operad
        out = []
        verts = []

        def order(e):
            v = T.producer(e)
            if v is not None:
                verts.append(v)
                for i in sorted(v.inputs):
                    order(i)

        order(T.root)

        def root_choices():
            if T.root in colours:
                return [colours[T.root]]
            if colour_options is not None:
                return colour_options(T.root)
            return list(P.colours)

        def search(k, cols, chosen):
            if k == len(verts):
                out.append(make_dendrex(cols, chosen))
                return
            v = verts[k]
            c = cols[v.output]
            ins = sorted(v.inputs)
            if v.output in ops:
                cands = [ops[v.output]]
            elif op_options is not None:
                cands = op_options(v, c)
            else:
                cands = P.ops_with_output(c, len(ins))
            for f in cands:
                fins, fout = P.signature(f)
                if fout != c or len(fins) != len(ins):
                    continue
                ok = True
                new = dict(cols)
                for e, col in zip(ins, fins):
                    if e in colours and colours[e] != col:
                        ok = False
                        break
                    if colour_options is not None and T.producer(e) is None \
                            and col not in colour_options(e):
                        ok = False
                        break
                    new[e] = col
                if not ok:
                    continue
                ch = dict(chosen)
                ch[v.output] = f
                search(k + 1, new, ch)

        for c in root_choices():
            if not verts:
                out.append(make_dendrex({T.root: c}, {}))
                continue
            search(0, {T.root: c}, {})
        return out

    def restrict(self, x, alpha):
        T = alpha.target
        f = alpha.edge_map
        cols = dict(x.colours)
        newc = {e: cols[f[e]] for e in alpha.source.edges}
        newo = {}
        for u in alpha.source.vertices:
            ins = sorted(u.inputs)
            newo[u.output] = evaluate(self.operad, T, x, f[u.output], [f[i] for i in ins])
        return make_dendrex(newc, newo)

    def contains(self, T, x):
        P = self.operad
        cols, ops = dict(x.colours), dict(x.ops)
        if set(cols) != set(T.edges) or set(ops) != {v.output for v in T.vertices}:
            return False
        for v in T.vertices:
            sig = (tuple(cols[i] for i in sorted(v.inputs)), cols[v.output])
            if P.signature(ops[v.output]) != sig:
                return False
        return True

    def op_at(self, x, v):
        return dict(x.ops)[v]

    def colour_at(self, x, e):
        return dict(x.colours)[e]


def nerve(P, bound=None):
    return Nerve(P, bound)


def corolla_dendrex(P, f):
    """The dendrex of the nerve at corolla(n) given by an operation f."""
    ins, out = P.signature(f)
    leaves = sorted("e%d" % k for k in range(1, len(ins) + 1))
    cols = {"e0": out}
    cols.update(zip(leaves, ins))
    return make_dendrex(cols, {"e0": f})


def dendrex_op(x, v="e0"):
    return dict(x.ops)[v]


# subobjects and colimits

class GeneratedSubobject(DendSet):
    """The subpresheaf of `ambient` generated by dendrices (T_g, x_g)."""

    def __init__(self, ambient, generators, name=None, labels=None):
        super().__init__()
        self.ambient = ambient
        self.generators = [(T, x) for T, x in generators]
        self.labels = labels
        self.bound = ambient.bound
        self.coskeletal = False
        self.name = name or "<%d generators in %s>" % (len(self.generators), ambient.name)

    def _compute(self, R):
        seen, out = set(), []
        for T, x in self.generators:
            for beta in hom(R, T):
                y = self.ambient.restrict(x, beta)
                if y not in seen:
                    seen.add(y)
                    out.append(y)
        return out

    def restrict(self, x, alpha):
        return self.ambient.restrict(x, alpha)

    def factorizations(self, R, y):
        """All (generator index, beta) with y = restriction of x_g along beta."""
        out = []
        for k, (T, x) in enumerate(self.generators):
            for beta in hom(R, T):
                if self.ambient.restrict(x, beta) == y:
                    out.append((k, beta))
        return out


def boundary(T, bound=None):
    rep = Representable(T, bound if bound is not None else len(T.vertices))
    gens = [(f.source, f) for _, f in tr.faces(T)]
    labels = [lab for lab, _ in tr.faces(T)]
    return GeneratedSubobject(rep, gens, name="boundary(%s)" % tr.code(T), labels=labels)


def horn(T, omitted, bound=None):
    """Union of all faces of Omega[T] except the omitted one."""
    labels = tr.face_labels(T)
    if omitted not in labels:
        raise DendError("face %r does not exist in %s" % (omitted, tr.to_sexpr(T)))
    if omitted.kind == "leaf" and len(T.vertices) < 2:
        raise DendError("leaf horns need at least two vertices")
    if omitted.kind == "root" and len(T.vertices) < 2:
        raise DendError("root horns need at least two vertices")
    rep = Representable(T, bound if bound is not None else len(T.vertices))
    keep = [(lab, tr.face(T, lab)) for lab in labels if lab != omitted]
    return GeneratedSubobject(rep, [(f.source, f) for _, f in keep],
                              name="horn(%s, %s)" % (tr.code(T), omitted), labels=[l for l, _ in keep])


def spine_subobject(T, bound=None):
    sp = tr.spine(T)
    rep = Representable(T, bound if bound is not None else len(T.vertices))
    return GeneratedSubobject(rep, [(f.source, f) for f in sp.cells], name="spine")


class EmptyDendSet(DendSet):
    name = "empty"

    def _compute(self, T):
        return []

    def restrict(self, x, alpha):
        raise DendError("empty dendroidal set has no dendrices")


class Coproduct(DendSet):
    def __init__(self, parts, name=None):
        super().__init__()
        self.parts = list(parts)
        bounds = [p.bound for p in self.parts if p.bound is not None]
        self.bound = min(bounds) if bounds else None
        self.name = name or " + ".join(p.name for p in self.parts)

    def _compute(self, T):
        return [(k, x) for k, p in enumerate(self.parts) for x in p.dendrices(T)]

    def restrict(self, x, alpha):
        k, y = x
        return (k, self.parts[k].restrict(y, alpha))

    def injection(self, k):
        return DendMap(self.parts[k], self, lambda T, x: (k, x), name="in%d" % k)


def coproduct(*parts):
    return Coproduct(parts)


class Pushout(DendSet):
    """Pushout of f: A -> X along a levelwise injective g: A -> B."""

    def __init__(self, f, g, name=None):
        super().__init__()
        if f.source is not g.source:
            raise DendError("maps must share their source")
        self.f, self.g = f, g
        self.X, self.B = f.target, g.target
        bounds = [b for b in (self.X.bound, self.B.bound) if b is not None]
        self.bound = min(bounds) if bounds else None
        self.name = name or "pushout"

    def _image(self, T):
        A = self.f.source
        img = {}
        for a in A.dendrices(T):
            b = self.g(T, a)
            if b in img:
                raise DendError("attaching map is not injective at %s" % tr.to_sexpr(T))
            img[b] = a
        return img

    def _compute(self, T):
        img = self._image(T)
        return [("X", x) for x in self.X.dendrices(T)] + \
               [("B", b) for b in self.B.dendrices(T) if b not in img]

    def restrict(self, x, alpha):
        side, y = x
        if side == "X":
            return ("X", self.X.restrict(y, alpha))
        z = self.B.restrict(y, alpha)
        img = self._image(alpha.source)
        if z in img:
            return ("X", self.f(alpha.source, img[z]))
        return ("B", z)


def pushout(f, g, check_shapes=()):
    for T in check_shapes:
        vals = [g(T, a) for a in g.source.dendrices(T)]
        if len(set(vals)) != len(vals):
            raise DendError("pushout along a non-injective map")
    return Pushout(f, g)


class Union(DendSet):
    """Union of subobjects of a common ambient DendSet."""

    def __init__(self, ambient, subs, name=None):
        super().__init__()
        self.ambient = ambient
        self.subs = list(subs)
        self.bound = ambient.bound
        self.name = name or "union"

    def _compute(self, T):
        seen, out = set(), []
        for S in self.subs:
            for x in S.dendrices(T):
                if x not in seen:
                    seen.add(x)
                    out.append(x)
        return out

    def restrict(self, x, alpha):
        return self.ambient.restrict(x, alpha)


class Intersection(DendSet):
    def __init__(self, ambient, subs, name=None):
        super().__init__()
        self.ambient = ambient
        self.subs = list(subs)
        self.bound = ambient.bound
        self.name = name or "intersection"

    def _compute(self, T):
        first, rest = self.subs[0], self.subs[1:]
        return [x for x in first.dendrices(T) if all(S.contains(T, x) for S in rest)]

    def restrict(self, x, alpha):
        return self.ambient.restrict(x, alpha)


# maps

class DendMap:
    def __init__(self, source, target, fn, name="f"):
        self.source = source
        self.target = target
        self._fn = fn
        self.name = name

    def __call__(self, T, x):
        return self._fn(T, x)

    def fiber(self, T, y):
        return [x for x in self.source.dendrices(T) if self(T, x) == y]

    def compose(self, other):
        return DendMap(other.source, self.target, lambda T, x: self(T, other(T, x)),
                       name="%s.%s" % (self.name, other.name))

    def check_natural(self, trees_, morphisms=None):
        """Naturality along all morphisms between the given trees."""
        for T in trees_:
            for R in trees_:
                for alpha in (hom(R, T) if morphisms is None else morphisms(R, T)):
                    for x in self.source.dendrices(T):
                        lhs = self(R, self.source.restrict(x, alpha))
                        rhs = self.target.restrict(self(T, x), alpha)
                        if lhs != rhs:
                            return (alpha, x)
        return None

    def is_injective(self, trees_):
        for T in trees_:
            vals = [self(T, x) for x in self.source.dendrices(T)]
            if len(set(vals)) != len(vals):
                return False
        return True

    def __repr__(self):
        return "<DendMap %s: %s -> %s>" % (self.name, self.source.name, self.target.name)


def identity_map(X):
    return DendMap(X, X, lambda T, x: x, name="id")


def inclusion(A, X):
    """Inclusion of a subobject (same dendrex representation)."""
    return DendMap(A, X, lambda T, x: x, name="incl")


class NerveMap(DendMap):
    """N_d(f) for an operad morphism f, with fast fiber enumeration."""

    def __init__(self, f, source=None, target=None, bound=None):
        self.morphism = f
        src = source or Nerve(f.source, bound)
        tgt = target or Nerve(f.target, bound)
        super().__init__(src, tgt, self._apply, name="N(%s)" % f.name)
        self._pre = None

    def _apply(self, T, x):
        f = self.morphism
        return NerveDendrex(tuple((e, f.colour(c)) for e, c in x.colours),
                            tuple((v, f(op)) for v, op in x.ops))

    def _preimages(self):
        if self._pre is None:
            P = self.morphism.source
            pre_c, pre_o = {}, {}
            for c in P.colours:
                pre_c.setdefault(self.morphism.colour(c), []).append(c)
            for op in P.operations():
                pre_o.setdefault((self.morphism(op), P.output(op)), []).append(op)
            self._pre = (pre_c, pre_o)
        return self._pre

    def fiber(self, T, y, colours=None, ops=None):
        pre_c, pre_o = self._preimages()
        ycols, yops = dict(y.colours), dict(y.ops)
        return self.source.extensions(
            T, colours or {}, ops or {},
            colour_options=lambda e: pre_c.get(ycols[e], []),
            op_options=lambda v, c: pre_o.get((yops[v.output], c), []))


def nerve_map(f, bound=None):
    return NerveMap(f, bound=bound)


# markings

class MarkedDendSet:
    """A DendSet with a predicate on corolla dendrices.

    `marked` is a callable (n, x) -> bool on dendrices at corolla(n), or a
    set of (n, x) pairs.
    """

    def __init__(self, X, marked, max_arity=3, check=True, name=None):
        self.underlying = X
        self.max_arity = max_arity
        if callable(marked):
            self._pred = marked
        else:
            marked = frozenset(marked)
            self._pred = lambda n, x: (n, x) in marked
        self.name = name or X.name
        if check:
            prob = self.problem()
            if prob:
                raise DendError(prob)

    def is_marked(self, n, x):
        return bool(self._pred(n, x))

    def marked(self, n):
        return [x for x in self.underlying.corollas(n) if self.is_marked(n, x)]

    def marked_on(self, C, x):
        """Marking test for a dendrex at an arbitrary concrete corolla C."""
        iso = standard_corolla_map(C)
        n = len(C.vertices[0].inputs)
        return self.is_marked(n, self.underlying.restrict(x, iso))

    def problem(self):
        X = self.underlying
        C1 = corolla(1)
        for x in X.corollas(1):
            if X.is_degenerate(C1, x) and not self.is_marked(1, x):
                return "degenerate 1-corolla %r is not marked" % (x,)
        for n in range(self.max_arity + 1):
            C = corolla(n)
            for x in X.corollas(n):
                if self.is_marked(n, x):
                    for y in X.sigma_orbit(C, x):
                        if not self.is_marked(n, y):
                            return "marking not closed under symmetries at %r" % (x,)
        return None

    def __repr__(self):
        return "<MarkedDendSet %s>" % self.name


def flat(X, max_arity=3):
    C1 = corolla(1)
    return MarkedDendSet(X, lambda n, x: n == 1 and X.is_degenerate(C1, x), max_arity,
                         name=X.name + "^flat")


def sharp(X, max_arity=3):
    return MarkedDendSet(X, lambda n, x: True, max_arity, name=X.name + "^sharp")


# normality

def is_normal_mono(f, trees_):
    """Returns (verdict, witness); raises if f is not levelwise injective."""
    for T in trees_:
        src = f.source.dendrices(T)
        img = [f(T, x) for x in src]
        if len(set(img)) != len(img):
            raise DendError("map is not injective at %s" % tr.to_sexpr(T))
        imgset = set(img)
        autos = [a for a in tr.automorphisms(T) if a != tr.identity(T)]
        for y in f.target.dendrices(T):
            if y in imgset:
                continue
            for a in autos:
                if f.target.restrict(y, a) == y:
                    return False, (T, y, a)
    return True, None


# simplicial restriction

class SimplicialRestriction:
    """i^*X: n-simplices are dendrices at the linear tree L_n."""

    def __init__(self, X, max_dim=3):
        if X.bound is not None and max_dim > X.bound:
            raise BoundError("simplicial degree %d exceeds bound %d" % (max_dim, X.bound))
        self.X = X
        self.max_dim = max_dim

    def simplices(self, n):
        return self.X.dendrices(linear(n))

    def face(self, n, i, x):
        theta = tuple(j if j < i else j + 1 for j in range(n))
        return self.X.restrict(x, tr.restrict_linear(theta, n - 1, n))

    def degen(self, n, i, x):
        theta = tuple(j if j <= i else j - 1 for j in range(n + 2))
        return self.X.restrict(x, tr.restrict_linear(theta, n + 1, n))

    def operator(self, x, n, theta):
        return self.X.restrict(x, tr.restrict_linear(tuple(theta), len(theta) - 1, n))


def simplicial_restriction(X, max_dim=3):
    from .simplicial import SimpSet

    class _I(SimplicialRestriction, SimpSet):
        pass

    return _I(X, max_dim)


class LowerShriek(DendSet):
    """i_!K for a simplicial set K: dendrices only on linear trees."""

    def __init__(self, K, name=None):
        super().__init__()
        self.K = K
        self.bound = K.max_dim
        self.name = name or "i_!(K)"

    @staticmethod
    def _linear_order(T):
        # edges of a linear tree from the leaf (vertex 0) to the root
        if any(len(v.inputs) != 1 for v in T.vertices):
            return None
        if not T.vertices:
            return [T.root]
        (leaf,) = T.leaves
        return T.path_to_root(leaf)

    def _compute(self, T):
        order = self._linear_order(T)
        if order is None:
            return []
        return list(self.K.simplices(len(order) - 1))

    def restrict(self, x, alpha):
        src = self._linear_order(alpha.source)
        tgt = self._linear_order(alpha.target)
        theta = tuple(tgt.index(alpha(e)) for e in src)
        return self.K.operator(x, len(tgt) - 1, theta)


# materialization and JSON

class MaterializedDendSet(DendSet):
    """Dendrices stored at canonical trees; other trees by transport."""

    def __init__(self, shapes, restrictions, bound, labels=None, name="X"):
        super().__init__()
        self.shapes = dict(shapes)          # code -> number of dendrices
        self.restrictions = dict(restrictions)  # (src code, tgt code, edge tuple) -> list
        self.bound = bound
        self.labels = labels or {}
        self.name = name

    def _canon(self, T):
        C, rel = tr.canonical_form(T)
        return tr.code(T), rel

    def _compute(self, T):
        code, _ = self._canon(T)
        if code not in self.shapes:
            raise BoundError("shape %s not materialized" % code)
        return list(range(self.shapes[code]))

    def restrict(self, x, alpha):
        sc, srel = self._canon(alpha.source)
        tc, trel = self._canon(alpha.target)
        key = (sc, tc, tuple(sorted((srel[e], trel[alpha(e)]) for e in alpha.source.edges)))
        return self.restrictions[key][x]


def materialize(X, bound, max_arity=2, name=None):
    codes = tr.all_codes(bound, max_arity)
    shapes, lists = {}, {}
    for c in codes:
        C = tr.tree_from_code(c)
        xs = X.dendrices(C)
        lists[c] = {x: k for k, x in enumerate(xs)}
        shapes[c] = len(xs)
    restr = {}
    for sc in codes:
        S = tr.tree_from_code(sc)
        for tc in codes:
            T = tr.tree_from_code(tc)
            for alpha in hom(S, T):
                key = (sc, tc, tuple(sorted(alpha.edge_map.items())))
                restr[key] = [lists[sc][X.restrict(x, alpha)] for x in X.dendrices(T)]
    labels = {c: [repr(x) for x in lists[c]] for c in codes}
    return MaterializedDendSet(shapes, restr, bound, labels, name=name or X.name)


def dendset_to_json(X, bound, max_arity=2):
    M = X if isinstance(X, MaterializedDendSet) else materialize(X, bound, max_arity)
    return {
        "name": M.name,
        "bound": M.bound,
        "shapes": [{"tree": tr.to_sexpr(tr.tree_from_code(c)), "code": c, "count": n,
                    "labels": M.labels.get(c, [])}
                   for c, n in sorted(M.shapes.items())],
        "restrictions": [{"source": s, "target": t, "edges": [list(p) for p in m], "table": tab}
                         for (s, t, m), tab in sorted(M.restrictions.items())],
    }


def dendset_from_json(data):
    if isinstance(data, str):
        data = json.loads(data)
    shapes = {s["code"]: s["count"] for s in data["shapes"]}
    labels = {s["code"]: s.get("labels", []) for s in data["shapes"]}
    restr = {(r["source"], r["target"], tuple(tuple(p) for p in r["edges"])): list(r["table"])
             for r in data["restrictions"]}
    return MaterializedDendSet(shapes, restr, data["bound"], labels, name=data.get("name", "X"))


def diff_dendsets(X, Y, bound, max_arity=2):
    """Shapes at which two dendroidal sets have different dendrex counts."""
    out = []
    for c in tr.all_codes(bound, max_arity):
        T = tr.tree_from_code(c)
        a, b = len(X.dendrices(T)), len(Y.dendrices(T))
        if a != b:
            out.append((c, a, b))
    return out


def check_functoriality(X, trees_):
    """(beta o alpha)^* = alpha^* beta^* and id^* = id on the given trees."""
    for T in trees_:
        ident = tr.identity(T)
        for x in X.dendrices(T):
            if X.restrict(x, ident) != x:
                return ("identity", T, x)
    for T in trees_:
        for S in trees_:
            betas = hom(S, T)
            if not betas:
                continue
            for R in trees_:
                alphas = hom(R, S)
                for x in X.dendrices(T):
                    for b in betas:
                        xb = X.restrict(x, b)
                        for a in alphas:
                            if X.restrict(xb, a) != X.restrict(x, b.compose(a)):
                                return ("composition", a, b, x)
    return None


