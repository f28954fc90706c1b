"""Cubes of the W-construction, straightening cubes and mapping trees.

Simplices of a cube are monotone chains of 0/1 points.  Simplices of a
tree algebra's spaces are whatever its SimpSets use; actions work on
tuples of simplices of a common dimension.
"""

import itertools

from . import trees as tr
from .trees import Tree, OmegaMorphism, hom
from .simplicial import Cube, PosetNerve, TableSimpSet, isomorphic_by
from .dendsets import DendSet, MarkedDendSet, Representable, DendError, BoundError


# W-construction on free tree operads

def spanning_subtree(T, leaves, c):
    if len(set(leaves)) != len(leaves):
        return None
    return T.spanning_subtree(c, leaves)


def w_space(T, leaves, c):
    """The cube on the inner edges of the subtree with the given leaves and
    root, or None when there is no such subtree."""
    S = spanning_subtree(T, tuple(leaves), c)
    if S is None:
        return None
    return Cube(S.inner_edges)


def w_signatures(T):
    """All (leaves, root) pairs of T with a spanning subtree, leaves sorted."""
    out = []
    for c in sorted(T.edges):
        for L in sorted(T.cuts(c), key=lambda s: sorted(s)):
            out.append((tuple(sorted(L)), c))
    return out


class WOp:
    """A point of a W-space: leaves tuple, root and coordinates."""

    __slots__ = ("leaves", "root", "point")

    def __init__(self, leaves, root, point):
        self.leaves = tuple(leaves)
        self.root = root
        self.point = tuple(sorted(point.items())) if isinstance(point, dict) else tuple(point)

    def coords(self):
        return dict(self.point)

    def __eq__(self, other):
        return isinstance(other, WOp) and (self.leaves, self.root, self.point) == \
            (other.leaves, other.root, other.point)

    def __hash__(self):
        return hash((self.leaves, self.root, self.point))

    def __repr__(self):
        return "WOp(%s -> %s @ %s)" % (",".join(self.leaves), self.root,
                                       "".join("%s=%d " % kv for kv in self.point).strip())


def w_points(T, leaves, c):
    cube = w_space(T, leaves, c)
    if cube is None:
        return []
    return [WOp(leaves, c, cube.as_dict(p)) for (p,) in cube.simplices(0)]


def w_unit(c):
    return WOp((c,), c, {})


def w_compose(T, f, i, g):
    """Graft g onto input i of f; the grafting edge gets length 1."""
    if not 0 <= i < len(f.leaves) or f.leaves[i] != g.root:
        raise ValueError("cannot graft %r onto input %d of %r" % (g, i, f))
    leaves = f.leaves[:i] + g.leaves + f.leaves[i + 1:]
    if spanning_subtree(T, leaves, f.root) is None:
        raise ValueError("composite has no spanning subtree in the tree")
    if f.leaves == (f.root,):
        return g
    if g.leaves == (g.root,):
        return f
    pt = dict(f.point)
    pt.update(g.point)
    pt[g.root] = 1
    return WOp(leaves, f.root, pt)


def w_act(f, perm):
    return WOp(tuple(f.leaves[j] for j in perm), f.root, f.point)


def w_compose_simplex(T, fs, i, gs):
    """Pointwise grafting of two chains of equal length."""
    if len(fs) != len(gs):
        raise ValueError("simplices of different dimension")
    return tuple(w_compose(T, f, i, g) for f, g in zip(fs, gs))


# straightening cubes

def straightening_cube(T, c, op=False):
    """Cube on the colours above c, c itself excluded."""
    R = tr.subtree_above(T, c)
    return Cube(set(R.edges) - {c}, op=op)


class CubeMap:
    """A monotone map of cubes given on points."""

    def __init__(self, source, target, fn):
        self.source, self.target = source, target
        self._fn = fn

    def __call__(self, p):
        return self._fn(p)

    def simplex(self, x):
        return tuple(self._fn(p) for p in x)

    def compose(self, other):
        """self after other."""
        return CubeMap(other.source, self.target, lambda p: self(other(p)))

    def table(self):
        return {p: self(p) for (p,) in self.source.simplices(0)}

    def is_monotone(self):
        src = self.source
        for a, b in src.simplices(1):
            if not self.target.leq(self(a), self(b)):
                return False
        return True


def straightening_face_map(f, c, op=False):
    """The cube map induced by an Omega-morphism f: R -> T at the colour c of R.

    Injective maps pad missing coordinates with 0; coordinates identified
    by a degeneracy take the max; coordinates sent to f(c) are dropped.
    """
    R, T = f.source, f.target
    src = straightening_cube(R, c, op)
    tgt = straightening_cube(T, f(c), op)
    fc = f(c)
    pre = {}
    for e in src.coords:
        t = f(e)
        if t != fc:
            pre.setdefault(t, []).append(src.coords.index(e))
    bad = [t for t in pre if t not in tgt.coords]
    if bad:
        raise ValueError("edge %r does not land above %r" % (bad[0], fc))

    def fn(p):
        return tuple(max((p[k] for k in pre.get(t, [])), default=0) for t in tgt.coords)
    return CubeMap(src, tgt, fn)


def cube_maps_equal(a, b):
    return a.source.coords == b.source.coords and a.target.coords == b.target.coords \
        and a.table() == b.table()


def face_functoriality_failures(T):
    """Pairs of composable faces Q -> R -> T whose cube maps do not compose."""
    bad = []
    for _, g in tr.faces(T):
        R = g.source
        for _, f in tr.faces(R):
            gf = g.compose(f)
            for c in sorted(f.source.edges):
                lhs = straightening_face_map(gf, c)
                rhs = straightening_face_map(g, f(c)).compose(straightening_face_map(f, c))
                if not cube_maps_equal(lhs, rhs):
                    bad.append((tr.code(T), c))
    return bad


# tree algebras and mapping trees

class TreeAlgebra:
    """A simplicial set per edge of T and a simplicial action per vertex.

    vertex_maps[out](dim, simplices) takes one dim-simplex per input (in
    sorted input order) and returns a dim-simplex of the output's space.
    A vertex without inputs returns its chosen point, degenerated to dim.
    """

    def __init__(self, T, spaces, vertex_maps, name="A"):
        self.tree = T
        self.spaces = dict(spaces)
        self.vertex_maps = dict(vertex_maps)
        self.name = name
        missing = [e for e in T.edges if e not in self.spaces]
        if missing:
            raise ValueError("no space for edge %r" % (missing[0],))

    def vertex_act(self, out, dim, simplices):
        return self.vertex_maps[out](dim, tuple(simplices))

    def act(self, leaves, root, dim, simplices):
        """Action of the operation (leaves -> root) of the free operad on T."""
        T = self.tree
        val = dict(zip(leaves, simplices))

        def ev(e):
            if e in val:
                return val[e]
            v = T.producer(e)
            if v is None:
                raise ValueError("no operation %r -> %r" % (leaves, root))
            return self.vertex_act(e, dim, [ev(i) for i in sorted(v.inputs)])
        return ev(root)

    def check(self, dim=2):
        """Each vertex map commutes with faces and degeneracies up to dim."""
        T = self.tree
        for v in T.vertices:
            ins = sorted(v.inputs)
            A = self.spaces[v.output]
            for n in range(dim + 1):
                for xs in itertools.product(*[self.spaces[i].simplices(n) for i in ins]):
                    y = self.vertex_act(v.output, n, xs)
                    if y not in set(A.simplices(n)):
                        return "vertex %r sends %r outside its space" % (v.output, xs)
                    for k in range(n + 1):
                        if n > 0:
                            lhs = A.face(n, k, y)
                            rhs = self.vertex_act(v.output, n - 1,
                                                  [self.spaces[i].face(n, k, x) for i, x in zip(ins, xs)])
                            if lhs != rhs:
                                return "vertex %r does not commute with d_%d" % (v.output, k)
                        if n < dim:
                            lhs = A.degen(n, k, y)
                            rhs = self.vertex_act(v.output, n + 1,
                                                  [self.spaces[i].degen(n, k, x) for i, x in zip(ins, xs)])
                            if lhs != rhs:
                                return "vertex %r does not commute with s_%d" % (v.output, k)
        return None

    def to_json(self):
        if not getattr(self, "posets", None):
            raise ValueError("only poset-based tree algebras serialize")
        return {"tree": tr.to_sexpr(self.tree),
                "spaces": {e: {"elements": list(els), "leq": [[a, b] for a in els for b in els if leq(a, b)]}
                           for e, (els, leq) in sorted(self.posets.items())},
                "actions": {out: [[list(k), v] for k, v in sorted(tab.items(), key=repr)]
                            for out, tab in sorted(self.tables.items())}}


def poset_tree_algebra(T, posets, maps, name="A"):
    """Spaces are nerves of finite posets; maps[out] is a monotone function
    on elements (inputs in sorted order).  Simplices act pointwise."""
    spaces = {e: PosetNerve(els, leq, max_dim=len(T.vertices) + 1) for e, (els, leq) in posets.items()}
    tables = {}
    for v in T.vertices:
        ins = sorted(v.inputs)
        fn = maps[v.output]
        tables[v.output] = {xs: fn(*xs) for xs in itertools.product(*[posets[i][0] for i in ins])}

    def vertex_map(out):
        tab = tables[out]

        def act(dim, xs):
            return tuple(tab[tuple(x[j] for x in xs)] for j in range(dim + 1))
        return act

    A = TreeAlgebra(T, spaces, {v.output: vertex_map(v.output) for v in T.vertices}, name=name)
    A.posets = dict(posets)
    A.tables = tables
    return A


def tree_algebra_from_json(data):
    T = tr.parse_tree(data["tree"])
    posets = {}
    for e, sp in data["spaces"].items():
        rel = {(a, b) for a, b in sp["leq"]}
        els = list(sp["elements"])
        posets[e] = (els, lambda a, b, rel=rel: (a, b) in rel)
    tables = {out: {tuple(k): v for k, v in rows} for out, rows in data["actions"].items()}
    maps = {}
    for v in T.vertices:
        if v.output not in tables:
            raise ValueError("no action for vertex %r" % (v.output,))
        maps[v.output] = lambda *xs, tab=tables[v.output]: tab[tuple(xs)]
    A = poset_tree_algebra(T, posets, maps)
    prob = A.check(1)
    if prob:
        raise ValueError(prob)
    return A


def point_algebra(T):
    return poset_tree_algebra(T, {e: (["*"], lambda a, b: True) for e in T.edges},
                              {v.output: (lambda *xs: "*") for v in T.vertices}, name="pt")


def _depths(R):
    """Number of vertices between each edge and the root."""
    return {e: len(R.path_to_root(e)) - 1 for e in R.edges}


class MappingTree(DendSet):
    """R-dendrices are (delta: R -> T, one simplex per leaf of R).

    A dendrex is stored as (sorted edge map, sorted (leaf, simplex) pairs).
    The simplex at a leaf l has dimension nu_l and lives in A(delta(l)).
    """

    def __init__(self, A, bound=None, name=None):
        super().__init__()
        self.algebra = A
        self.bound = bound
        self.name = name or "M(%s)" % A.name

    def _compute(self, R):
        A, T = self.algebra, self.algebra.tree
        leaves = sorted(R.leaves)
        nu = _depths(R)
        out = []
        for d in hom(R, T):
            dm = tuple(sorted((e, d(e)) for e in R.edges))
            choices = [A.spaces[d(l)].simplices(nu[l]) for l in leaves]
            for lam in itertools.product(*choices):
                out.append((dm, tuple(zip(leaves, lam))))
        return out

    def edge_simplices(self, R, x):
        """The simplex over the path from each edge of R to its root."""
        A = self.algebra
        d = dict(x[0])
        lam = dict(x[1])
        nu = _depths(R)
        memo = {}

        def val(e):
            if e in memo:
                return memo[e]
            if e in lam:
                r = lam[e]
            else:
                v = R.producer(e)
                ins = sorted(v.inputs)
                faces = [A.spaces[d[i]].face(nu[i], 0, val(i)) for i in ins]
                leaves = tuple(d[i] for i in ins)
                if len(set(leaves)) != len(leaves):
                    raise DendError("vertex image is not an operation of the tree")
                r = A.act(leaves, d[e], nu[e], faces)
            memo[e] = r
            return r
        return {e: val(e) for e in R.edges}

    def restrict(self, x, alpha):
        Q, R = alpha.source, alpha.target
        d = dict(x[0])
        vals = self.edge_simplices(R, x)
        A = self.algebra
        nu_r = _depths(R)
        new_d = tuple(sorted((e, d[alpha(e)]) for e in Q.edges))
        lam = []
        for q in sorted(Q.leaves):
            path_r = R.path_to_root(alpha(q))
            theta = tuple(path_r.index(alpha(p)) for p in Q.path_to_root(q))
            s = A.spaces[d[alpha(q)]].operator(vals[alpha(q)], nu_r[alpha(q)], theta)
            lam.append((q, s))
        return (new_d, tuple(lam))

    def projection(self, R, x):
        """The underlying dendrex of the representable."""
        return OmegaMorphism(R, self.algebra.tree, dict(x[0]), check=False)


def mapping_tree(A, bound=None):
    return MappingTree(A, bound)


def marked_mapping_tree(A, bound=None, max_arity=None):
    """Corollas whose leaf 1-simplices are all degenerate are marked."""
    M = MappingTree(A, bound)
    k = max_arity if max_arity is not None else max([len(v.inputs) for v in A.tree.vertices] or [0])

    def marked(n, x):
        for l, s in x[1]:
            sp = A.spaces[dict(x[0])[l]]
            if not sp.is_degenerate(1, s):
                return False
        return True
    return MarkedDendSet(M, marked, max_arity=k, check=False, name="M+(%s)" % A.name)


def mapping_tree_fibre(M, c, dim=2):
    """The simplicial set of dendrices on linear trees lying over c."""
    simp = {}
    for n in range(dim + 1):
        L = tr.linear(n)
        simp[n] = [x for x in M.dendrices(L) if all(t == c for _, t in x[0])]

    def face(n, i, x):
        theta = tuple(j if j < i else j + 1 for j in range(n))
        return M.restrict(x, tr.restrict_linear(theta, n - 1, n))

    def degen(n, i, x):
        theta = tuple(j if j <= i else j - 1 for j in range(n + 2))
        return M.restrict(x, tr.restrict_linear(theta, n + 1, n))
    return TableSimpSet(simp, face, degen, dim)


def fibre_iso_check(A, c, dim=2):
    """The leaf simplex gives an isomorphism from the fibre over c to A(c)."""
    M = MappingTree(A)
    F = mapping_tree_fibre(M, c, dim)
    return isomorphic_by(lambda n, x: x[1][0][1], F, A.spaces[c], dim)


def point_iso_check(T, trees_, max_arity=None):
    """For the point algebra, M+(A) agrees with the sharp representable."""
    A = point_algebra(T)
    MP = marked_mapping_tree(A, max_arity=max_arity)
    M = MP.underlying
    Om = Representable(T)
    for R in trees_:
        xs = M.dendrices(R)
        img = [M.projection(R, x) for x in xs]
        ys = Om.dendrices(R)
        if len(set(img)) != len(img) or set(img) != set(ys):
            return "not bijective at %s" % tr.code(R)
        for _, f in tr.faces(R):
            for x in xs:
                if M.projection(f.source, M.restrict(x, f)) != Om.restrict(M.projection(R, x), f):
                    return "faces not preserved at %s" % tr.code(R)
    for n in range(MP.max_arity + 1):
        for x in M.corollas(n):
            if not MP.is_marked(n, x):
                return "unmarked corolla %r" % (x,)
    return None


__all__ = ["w_space", "w_signatures", "WOp", "w_points", "w_unit", "w_compose", "w_act",
           "w_compose_simplex", "straightening_cube", "CubeMap", "straightening_face_map",
           "cube_maps_equal", "face_functoriality_failures", "TreeAlgebra", "poset_tree_algebra",
           "tree_algebra_from_json", "point_algebra", "MappingTree", "mapping_tree",
           "marked_mapping_tree", "mapping_tree_fibre", "fibre_iso_check", "point_iso_check",
           "BoundError"]
