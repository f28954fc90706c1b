"""Boardman-Vogt tensor products of representables via shuffles.

A shuffle of S and T is a tree whose edges carry pairs (s, t).  A black
vertex is a vertex v of S tensored with an edge t of T; a white vertex is an
edge s of S tensored with a vertex w of T.  Labels are injective, so a
shuffle is determined by its set of labelled vertices.
"""

from collections import deque

from . import trees as tr
from .trees import Tree, hom, corolla
from .dendsets import (DendSet, Representable, GeneratedSubobject, Coproduct,
                       MarkedDendSet, DendError)


def edge_name(s, t):
    return repr((s, t))


class Shuffle:
    """A labelled tree; vertices are ('black', v, t) or ('white', s, w)."""

    def __init__(self, S, T, cells):
        self.S, self.T = S, T
        self.cells = frozenset(cells)
        verts, label = [], {}
        for kind, a, b in self.cells:
            if kind == "black":
                v = S.producer(a)
                ins = [(i, b) for i in v.inputs]
                out = (a, b)
            else:
                w = T.producer(b)
                ins = [(a, j) for j in w.inputs]
                out = (a, b)
            for p in ins + [out]:
                label[edge_name(*p)] = p
            verts.append((edge_name(*out), [edge_name(*p) for p in ins]))
        root = (S.root, T.root)
        label[edge_name(*root)] = root
        self.tree = Tree(edge_name(*root), verts)
        self.label = label
        self.colour = {edge_name(a, b): kind for kind, a, b in self.cells}

    @property
    def key(self):
        return tuple(sorted(self.cells))

    def __eq__(self, other):
        return isinstance(other, Shuffle) and self.cells == other.cells

    def __hash__(self):
        return hash(self.cells)

    def __repr__(self):
        return "Shuffle(%s)" % self.sexpr()

    def sexpr(self):
        def name(e):
            s, t = self.label[e]
            return "(pair %s %s)" % (s, t)
        return tr.to_sexpr(self.tree, name)

    def black_count(self):
        return sum(1 for c in self.cells if c[0] == "black")

    def has_nullary_percolation(self):
        """True when some vertex of this shuffle has no inputs."""
        return any(not v.inputs for v in self.tree.vertices)


def _grow(S, T, prefer):
    """Build the shuffle choosing black (prefer='black') or white whenever both
    kinds of vertex are possible."""
    cells = []

    def walk(s, t):
        vs, wt = S.producer(s), T.producer(t)
        if vs is None and wt is None:
            return
        kind = prefer if (vs is not None and wt is not None) else ("black" if vs else "white")
        if kind == "black":
            cells.append(("black", s, t))
            for i in vs.inputs:
                walk(i, t)
        else:
            cells.append(("white", s, t))
            for j in wt.inputs:
                walk(s, j)

    walk(S.root, T.root)
    return Shuffle(S, T, cells)


def minimal_shuffle(S, T):
    """S at the root with copies of T grafted onto its leaves."""
    return _grow(S, T, "black")


def maximal_shuffle(S, T):
    return _grow(S, T, "white")


def percolation_moves(sh):
    """All shuffles obtained from sh by one move pushing a black vertex above
    the white vertices sitting on its inputs."""
    S, T = sh.S, sh.T
    cells = set(sh.cells)
    out = []
    for kind, s, t in sorted(cells):
        if kind != "black":
            continue
        w = T.producer(t)
        if w is None:
            continue
        v = S.producer(s)
        if not all(("white", i, t) in cells for i in v.inputs):
            continue
        new = set(cells)
        new.discard(("black", s, t))
        for i in v.inputs:
            new.discard(("white", i, t))
        new.add(("white", s, t))
        for j in w.inputs:
            new.add(("black", s, j))
        out.append(Shuffle(S, T, new))
    return out


def shuffles(S, T):
    """All shuffles of S and T by breadth-first percolation from the minimal one."""
    start = minimal_shuffle(S, T)
    seen = {start.cells: start}
    queue = deque([start])
    while queue:
        sh = queue.popleft()
        for nxt in percolation_moves(sh):
            if nxt.cells not in seen:
                seen[nxt.cells] = nxt
                queue.append(nxt)
    return sorted(seen.values(), key=lambda s: (-s.black_count(), s.key))


def percolation_poset(S, T):
    """(shuffles, edges) where edges are index pairs (i, j) for single moves."""
    shs = shuffles(S, T)
    index = {s.cells: k for k, s in enumerate(shs)}
    edges = set()
    for k, s in enumerate(shs):
        for nxt in percolation_moves(s):
            edges.add((k, index[nxt.cells]))
    return shs, sorted(edges)


def coherent_labellings(S, T):
    """Independent enumeration of coherently labelled trees.

    Walk down from (root_S, root_T): an edge (s, t) is a leaf exactly when
    s and t are leaves; otherwise it is the output of a black vertex (if s
    has a vertex above it) or of a white vertex (if t has one).
    """
    def walk(s, t):
        vs, wt = S.producer(s), T.producer(t)
        if vs is None and wt is None:
            return [frozenset()]
        options = []
        if vs is not None:
            parts = [frozenset([("black", s, t)])]
            for i in sorted(vs.inputs):
                parts = [a | b for a in parts for b in walk(i, t)]
            options.extend(parts)
        if wt is not None:
            parts = [frozenset([("white", s, t)])]
            for j in sorted(wt.inputs):
                parts = [a | b for a in parts for b in walk(s, j)]
            options.extend(parts)
        return options

    return [Shuffle(S, T, c) for c in walk(S.root, T.root)]


def label_valid(sh):
    """Check the coherence conditions of a labelled tree directly."""
    S, T, R = sh.S, sh.T, sh.tree
    lab = sh.label
    if lab[R.root] != (S.root, T.root):
        return False
    leaves = {lab[e] for e in R.leaves} if R.vertices else {lab[R.root]}
    if R.vertices and leaves != {(a, b) for a in S.leaves for b in T.leaves}:
        return False
    for v in R.vertices:
        s, t = lab[v.output]
        ins = {lab[i] for i in v.inputs}
        if sh.colour[v.output] == "black":
            vs = S.producer(s)
            if vs is None or ins != {(i, t) for i in vs.inputs}:
                return False
        else:
            wt = T.producer(t)
            if wt is None or ins != {(s, j) for j in wt.inputs}:
                return False
    return len(set(lab.values())) == len(lab)


# dendroidal sets

class ShuffleUnion(DendSet):
    """Union of representables on labelled cells, glued by labels.

    A dendrex at U is a sorted tuple of (edge of U, label pair) that factors
    through some cell.
    """

    def __init__(self, cells, bound=None, name="tensor"):
        super().__init__()
        self.cells = list(cells)    # (tree R, label dict edge -> pair)
        self.bound = bound
        self.name = name

    def _compute(self, U):
        seen, out = set(), []
        for R, lab in self.cells:
            for a in hom(U, R):
                x = tuple(sorted((e, lab[a(e)]) for e in U.edges))
                if x not in seen:
                    seen.add(x)
                    out.append(x)
        return out

    def restrict(self, x, alpha):
        d = dict(x)
        return tuple(sorted((e, d[alpha(e)]) for e in alpha.source.edges))

    def factorizations(self, U, x):
        d = dict(x)
        out = []
        for k, (R, lab) in enumerate(self.cells):
            for a in hom(U, R):
                if all(lab[a(e)] == d[e] for e in U.edges):
                    out.append((k, a))
        return out


def _summands(X):
    """Split a cell complex into summands (ambient tree, generator maps)."""
    if isinstance(X, Coproduct):
        out = []
        for p in X.parts:
            out.extend(_summands(p))
        return out
    if isinstance(X, Representable):
        return [(X.tree, [tr.identity(X.tree)])]
    if isinstance(X, GeneratedSubobject) and isinstance(X.ambient, Representable):
        return [(X.ambient.tree, [x for _, x in X.generators])]
    raise DendError("tensor needs representables, their generated subobjects or coproducts")


def _cells(S, gs, T, hs):
    cells = []
    for g in gs:
        for h in hs:
            for sh in shuffles(g.source, h.source):
                lab = {e: (g(p[0]), h(p[1])) for e, p in sh.label.items()}
                cells.append((sh.tree, lab))
    return cells


def tensor(X, Y, bound=None):
    """Tensor of two cell complexes built from representables."""
    xs, ys = _summands(X), _summands(Y)
    parts = []
    for S, gs in xs:
        for T, hs in ys:
            cells = _cells(S, gs, T, hs)
            size = max([len(R.vertices) for R, _ in cells] or [0])
            if bound is not None and size > bound:
                raise DendError("bound %d is below the largest shuffle (%d vertices)" % (bound, size))
            parts.append(ShuffleUnion(cells, bound, name="%s (x) %s" % (X.name, Y.name)))
    if len(parts) == 1:
        return parts[0]
    return Coproduct(parts, name="%s (x) %s" % (X.name, Y.name))


def swap_map(X):
    """Label swap on a tensor of representables."""
    return lambda U, x: tuple((e, (p[1], p[0])) for e, p in x)


def _marked_generators(M):
    """Generators of the subobject spanned by the marked corollas."""
    X = M.underlying
    gens = []
    for n in range(M.max_arity + 1):
        for x in X.corollas(n):
            if M.is_marked(n, x):
                gens.append(x)
    return gens


def marked_tensor(MX, MY, bound=None):
    """Marked corollas are the corollas of (closure of E_X) (x) (closure of E_Y)."""
    X, Y = MX.underlying, MY.underlying
    (S, _), = _summands(X)
    (T, _), = _summands(Y)
    und = tensor(X, Y, bound)
    ex = _marked_generators(MX)
    ey = _marked_generators(MY)
    closure = ShuffleUnion(_cells(S, ex, T, ey), bound, name="marked part")
    arity = MX.max_arity * MY.max_arity if MX.max_arity and MY.max_arity else 1
    arity = max(arity, MX.max_arity, MY.max_arity)
    return MarkedDendSet(und, lambda n, x: closure.contains(corolla(n), x), max_arity=arity,
                         name="%s (x) %s" % (MX.name, MY.name))


def maximal_nondegenerate(X, trees_):
    """Nondegenerate dendrices that are not proper faces of others."""
    nd = {}
    for T in trees_:
        nd[T] = X.nondegenerate(T)
    faces_of = set()
    for T in trees_:
        for lab, f in tr.faces(T):
            F = f.source
            for x in nd[T]:
                faces_of.add((tr.code(F), _canon_dendrex(X, F, X.restrict(x, f))))
    out = []
    for T in trees_:
        for x in nd[T]:
            if (tr.code(T), _canon_dendrex(X, T, x)) not in faces_of:
                out.append((T, x))
    return out


def _canon_dendrex(X, T, x):
    # transport to the canonical tree, then take the orbit minimum
    C, rel = tr.canonical_form(T)
    inv = {v: k for k, v in rel.items()}
    iso = tr.OmegaMorphism(C, T, {e: inv[e] for e in C.edges}, check=False)
    y = X.restrict(x, iso)
    return min(repr(z) for z in X.sigma_orbit(C, y))
