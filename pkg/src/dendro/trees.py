"""Finite rooted trees and the category Omega.

A tree has named edges, a root edge and a set of vertices; each vertex has a
set of input edges and one output edge.  Morphisms are edge maps sending every
vertex to an operation of the free operad on the target tree.
"""

import functools
import itertools
import threading
from collections import namedtuple


class TreeError(ValueError):
    pass


Vertex = namedtuple("Vertex", ["inputs", "output"])


def _vertex(inputs, output):
    return Vertex(frozenset(inputs), output)


class Tree:
    """An unordered rooted tree with string edge names."""

    __slots__ = ("root", "vertices", "edges", "_prod", "_cons", "_hash",
                 "_cuts", "_code")

    def __init__(self, root, vertices=()):
        verts = []
        for v in vertices:
            if isinstance(v, Vertex):
                verts.append(_vertex(v.inputs, v.output))
            else:
                out, ins = v
                verts.append(_vertex(ins, out))
        prod, cons = {}, {}
        for v in verts:
            if v.output in prod:
                raise TreeError("edge %r is the output of two vertices" % (v.output,))
            prod[v.output] = v
            for e in v.inputs:
                if e in cons:
                    raise TreeError("edge %r is the input of two vertices" % (e,))
                if e == v.output:
                    raise TreeError("vertex with output %r feeds itself" % (e,))
                cons[e] = v
        edges = {root} | set(prod) | set(cons)
        if root in cons:
            raise TreeError("root %r is the input of a vertex" % (root,))
        if verts and root not in prod:
            raise TreeError("root %r is not the output of a vertex" % (root,))
        for e in edges:
            if e != root and e not in cons:
                raise TreeError("edge %r is disconnected from the root" % (e,))
        # walk up from the root: every vertex must be reached exactly once
        seen, stack = set(), [root]
        while stack:
            e = stack.pop()
            if e in seen:
                raise TreeError("cycle through edge %r" % (e,))
            seen.add(e)
            if e in prod:
                stack.extend(prod[e].inputs)
        if seen != edges:
            raise TreeError("tree is not connected")
        self.root = root
        self.vertices = tuple(sorted(verts, key=lambda v: v.output))
        self.edges = frozenset(edges)
        self._prod = prod
        self._cons = cons
        self._hash = hash((root, self.vertices))
        self._cuts = None
        self._code = None

    # basic structure
    def __eq__(self, other):
        return (isinstance(other, Tree) and self.root == other.root
                and self.vertices == other.vertices)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "Tree(%s)" % to_sexpr(self)

    def __getstate__(self):
        return (self.root, [(v.output, sorted(v.inputs)) for v in self.vertices])

    def __setstate__(self, state):
        Tree.__init__(self, state[0], state[1])

    @property
    def leaves(self):
        if not self.vertices:
            return frozenset([self.root])
        return frozenset(e for e in self.edges if e not in self._prod)

    @property
    def inner_edges(self):
        return frozenset(e for e in self.edges if e in self._prod and e in self._cons)

    def producer(self, e):
        """The vertex with output e, or None."""
        return self._prod.get(e)

    def consumer(self, e):
        return self._cons.get(e)

    def vertex(self, out):
        return self._prod[out]

    def is_leaf(self, e):
        return e in self.leaves

    def size(self):
        return len(self.vertices)

    def sorted_edges(self):
        return sorted(self.edges)

    def path_to_root(self, e):
        path = [e]
        while path[-1] in self._cons:
            path.append(self._cons[path[-1]].output)
        return path

    def is_above(self, a, b):
        """True when b lies on the path from a to the root."""
        return b in self.path_to_root(a)

    def above(self, c):
        """Edges of the maximal subtree rooted at c."""
        out, stack = set(), [c]
        while stack:
            e = stack.pop()
            out.add(e)
            if e in self._prod:
                stack.extend(self._prod[e].inputs)
        return out

    def spanning_vertices(self, root, leaves):
        """Vertices of the unique subtree with the given root and leaf set.

        Returns None when no such subtree exists.
        """
        leaves = frozenset(leaves)
        if root not in self.edges or not leaves <= self.edges:
            return None
        verts, stack, hit = [], [root], set()
        while stack:
            e = stack.pop()
            if e in leaves:
                hit.add(e)
                continue
            v = self._prod.get(e)
            if v is None:
                return None
            verts.append(v)
            stack.extend(v.inputs)
        if hit != leaves:
            return None
        return verts

    def has_operation(self, root, leaves):
        leaves = list(leaves)
        if len(set(leaves)) != len(leaves):
            return False
        return self.spanning_vertices(root, leaves) is not None

    def spanning_subtree(self, root, leaves):
        verts = self.spanning_vertices(root, leaves)
        if verts is None:
            return None
        if not verts:
            return Tree(root)
        return Tree(root, verts)

    def cuts(self, c):
        """All leaf sets L such that a subtree with root c and leaves L exists."""
        if self._cuts is None:
            table = {}
            for e in sorted(self.edges, key=lambda e: -len(self.path_to_root(e))):
                opts = {frozenset([e])}
                v = self._prod.get(e)
                if v is not None:
                    combos = [frozenset()]
                    for i in v.inputs:
                        combos = [a | b for a in combos for b in table[i]]
                    opts.update(combos)
                table[e] = frozenset(opts)
            self._cuts = table
        return self._cuts[c]

    def rename(self, mapping):
        m = lambda e: mapping.get(e, e)
        return Tree(m(self.root), [(m(v.output), [m(i) for i in v.inputs])
                                   for v in self.vertices])


# standard trees

def eta(name="e0"):
    return Tree(name)


def corolla(n):
    """The n-corolla in canonical naming: root e0, leaves e1..en."""
    return Tree("e0", [("e0", ["e%d" % i for i in range(1, n + 1)])])


def linear(n):
    """The linear tree L_n with n vertices, canonical naming.

    Edge e0 is the root and e_n the leaf; use linear_edge for the simplicial
    vertex order (vertex 0 is the leaf end).
    """
    return Tree("e0", [("e%d" % i, ["e%d" % (i + 1)]) for i in range(n)])


def linear_edge(n, j):
    return "e%d" % (n - j)


def join_corolla(k, n):
    """C_k with a chain of n unary vertices attached below its root.

    Leaves are l1..lk, the corolla root is r0 and the chain runs r0 -> r1 ->
    ... -> rn, so the total root is rn.
    """
    verts = [("r0", ["l%d" % i for i in range(1, k + 1)])]
    verts += [("r%d" % j, ["r%d" % (j - 1)]) for j in range(1, n + 1)]
    return Tree("r%d" % n, verts)


# canonical forms

_cache_lock = threading.Lock()


def _codes(T):
    codes = {}
    for e in sorted(T.edges, key=lambda e: -len(T.path_to_root(e))):
        v = T.producer(e)
        if v is None:
            codes[e] = "|"
        else:
            codes[e] = "(" + "".join(sorted(codes[i] for i in v.inputs)) + ")"
    return codes


def code(T):
    """Isomorphism invariant string encoding (AHU style)."""
    c = T._code
    if c is None:
        c = _codes(T)[T.root]
        with _cache_lock:
            T._code = c
    return c


def _parse_code(s, i):
    if s[i] == "|":
        return None, i + 1
    assert s[i] == "("
    i += 1
    kids = []
    while s[i] != ")":
        k, i = _parse_code(s, i)
        kids.append(k)
    return kids, i + 1


def tree_from_code(s):
    shape, end = _parse_code(s, 0)
    if end != len(s):
        raise TreeError("bad tree code %r" % s)
    verts, counter = [], [0]

    def build(shape):
        name = "e%d" % counter[0]
        counter[0] += 1
        if shape is not None:
            ins = [build(k) for k in shape]
            verts.append((name, ins))
        return name

    root = build(shape)
    return Tree(root, verts)


def _children_sorted(T, e, codes):
    v = T.producer(e)
    if v is None:
        return None
    return sorted(v.inputs, key=lambda i: (codes[i], i))


def canonical_form(T):
    """Return (canonical tree, relabelling dict from T's edges)."""
    codes = _codes(T)
    relabel, counter = {}, [0]

    def walk(e):
        relabel[e] = "e%d" % counter[0]
        counter[0] += 1
        kids = _children_sorted(T, e, codes)
        if kids:
            for k in kids:
                walk(k)

    walk(T.root)
    C = tree_from_code(codes[T.root])
    return C, relabel


def isomorphisms(S, T):
    """All isomorphisms S -> T as edge dicts."""
    cs, ct = _codes(S), _codes(T)
    if cs[S.root] != ct[T.root]:
        return []

    def match(a, b):
        va, vb = S.producer(a), T.producer(b)
        if va is None:
            return [{a: b}]
        groups = {}
        for i in va.inputs:
            groups.setdefault(cs[i], [[], []])[0].append(i)
        for j in vb.inputs:
            groups[ct[j]][1].append(j)
        results = [{a: b}]
        for key in sorted(groups):
            xs, ys = groups[key]
            xs.sort()
            new = []
            for perm in itertools.permutations(sorted(ys)):
                parts = [match(x, y) for x, y in zip(xs, perm)]
                for combo in itertools.product(*parts):
                    d = {}
                    for p in combo:
                        d.update(p)
                    new.append(d)
            results = [dict(r, **n) for r in results for n in new]
        return results

    return match(S.root, T.root)


def are_isomorphic(S, T):
    return code(S) == code(T)


def automorphisms(T):
    return [OmegaMorphism(T, T, m, check=False) for m in isomorphisms(T, T)]


# morphisms

class OmegaMorphism:
    __slots__ = ("source", "target", "edge_map", "_key")

    def __init__(self, source, target, edge_map, check=True):
        self.source = source
        self.target = target
        self.edge_map = dict(edge_map)
        self._key = (source, target, tuple(sorted(self.edge_map.items())))
        if check:
            problem = self.problem()
            if problem:
                raise TreeError(problem)

    def problem(self):
        S, T, f = self.source, self.target, self.edge_map
        if set(f) != set(S.edges):
            return "edge map is not defined on exactly the source edges"
        if not set(f.values()) <= T.edges:
            return "edge map leaves the target"
        for v in S.vertices:
            ins = [f[i] for i in v.inputs]
            if len(set(ins)) != len(ins):
                return "inputs of vertex %r collide" % (v.output,)
            if T.spanning_vertices(f[v.output], ins) is None:
                return "vertex %r has no image subtree" % (v.output,)
        return None

    def __call__(self, e):
        return self.edge_map[e]

    def __eq__(self, other):
        return isinstance(other, OmegaMorphism) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return "OmegaMorphism(%s)" % ", ".join(
            "%s->%s" % kv for kv in sorted(self.edge_map.items()))

    def __getstate__(self):
        return (self.source, self.target, self.edge_map)

    def __setstate__(self, state):
        OmegaMorphism.__init__(self, *state, check=False)

    def compose(self, other):
        """self after other."""
        if other.target != self.source:
            raise TreeError("morphisms are not composable")
        return OmegaMorphism(other.source, self.target,
                             {e: self.edge_map[other.edge_map[e]] for e in other.source.edges},
                             check=False)

    def is_injective(self):
        return len(set(self.edge_map.values())) == len(self.edge_map)

    def is_iso(self):
        return self.is_injective() and set(self.edge_map.values()) == set(self.target.edges)

    def image_tree(self):
        """The target subtree spanned by the image, for a mono."""
        T, f = self.target, self.edge_map
        verts = set()
        for v in self.source.vertices:
            verts.update(T.spanning_vertices(f[v.output], [f[i] for i in v.inputs]))
        if not verts:
            return Tree(f[self.source.root])
        return Tree(f[self.source.root], verts)

    def vertex_image(self, v):
        """The vertices of the target subtree a source vertex is sent to."""
        f = self.edge_map
        return self.target.spanning_vertices(f[v.output], [f[i] for i in v.inputs])


def identity(T):
    return OmegaMorphism(T, T, {e: e for e in T.edges}, check=False)


def hom(S, T, injective=False):
    """All Omega-morphisms S -> T (exhaustive search from the root down)."""
    if injective and (len(S.edges) > len(T.edges) or len(S.vertices) > len(T.vertices)):
        return []
    out = []
    order = []

    def collect(e):
        v = S.producer(e)
        if v is not None:
            order.append(v)
            for i in sorted(v.inputs):
                collect(i)

    collect(S.root)

    def search(k, f):
        if k == len(order):
            out.append(OmegaMorphism(S, T, f, check=False))
            return
        v = order[k]
        ins = sorted(v.inputs)
        c = f[v.output]
        used = set(f.values()) if injective else None
        for L in T.cuts(c):
            if len(L) != len(ins):
                continue
            if injective and not used.isdisjoint(L):
                continue
            for perm in itertools.permutations(sorted(L)):
                g = dict(f)
                g.update(zip(ins, perm))
                search(k + 1, g)

    for r in sorted(T.edges):
        search(0, {S.root: r})
    return out


def monos(S, T):
    return [m for m in hom(S, T, injective=True) if m.is_injective()]


def is_degeneracy(f):
    return len(f.source.vertices) == len(f.target.vertices) + 1 and \
        set(f.edge_map.values()) == set(f.target.edges)


# faces

FaceLabel = namedtuple("FaceLabel", ["kind", "name"])
FaceLabel.__doc__ = """kind is 'inner', 'leaf' or 'root'.

inner: name is the contracted edge; leaf: name is the output edge of the
chopped vertex; root: name is the edge that becomes the new root.
"""


def _inclusion(F, T):
    return OmegaMorphism(F, T, {e: e for e in F.edges}, check=False)


@functools.lru_cache(maxsize=1 << 16)
def face_tree(T, label):
    kind, name = label
    verts = list(T.vertices)
    if kind == "inner":
        if name not in T.inner_edges:
            raise TreeError("%r is not an inner edge" % (name,))
        top, bot = T.producer(name), T.consumer(name)
        merged = _vertex((bot.inputs - {name}) | top.inputs, bot.output)
        rest = [v for v in verts if v not in (top, bot)]
        return Tree(T.root, rest + [merged])
    if kind == "leaf":
        v = T.producer(name)
        if v is None or not all(T.producer(i) is None for i in v.inputs):
            raise TreeError("%r is not a leaf vertex" % (name,))
        if len(verts) == 1:
            return Tree(name)
        if name == T.root:
            raise TreeError("cannot chop the root vertex as a leaf face")
        return Tree(T.root, [u for u in verts if u is not v])
    if kind == "root":
        rv = T.producer(T.root)
        if rv is None:
            raise TreeError("eta has no faces")
        if len(verts) == 1:
            if name not in rv.inputs:
                raise TreeError("%r is not a leaf of the corolla" % (name,))
            return Tree(name)
        inner = [i for i in rv.inputs if T.producer(i) is not None]
        if len(inner) != 1 or inner[0] != name:
            raise TreeError("root face not available at %r" % (name,))
        keep = T.above(name)
        return Tree(name, [u for u in verts if u.output in keep])
    raise TreeError("unknown face kind %r" % (kind,))


def face_labels(T):
    if not T.vertices:
        return []
    if len(T.vertices) == 1:
        v = T.vertices[0]
        return [FaceLabel("leaf", v.output)] + [FaceLabel("root", i) for i in sorted(v.inputs)]
    labels = [FaceLabel("inner", e) for e in sorted(T.inner_edges)]
    for v in T.vertices:
        if v.output != T.root and all(T.producer(i) is None for i in v.inputs):
            labels.append(FaceLabel("leaf", v.output))
    rv = T.producer(T.root)
    inner = [i for i in rv.inputs if T.producer(i) is not None]
    if len(inner) == 1:
        labels.append(FaceLabel("root", inner[0]))
    return labels


def face(T, label):
    return _inclusion(face_tree(T, label), T)


def faces(T):
    return [(lab, face(T, lab)) for lab in face_labels(T)]


def subface_inclusions(T):
    """All monos into T up to reparametrization, as inclusions of subtrees.

    Every mono factors as an iso followed by the inclusion of its image, so
    these inclusions represent all subobjects of T.  T itself is included.
    """
    seen, out, stack = set(), [], [T]
    while stack:
        F = stack.pop()
        if F in seen:
            continue
        seen.add(F)
        out.append(_inclusion(F, T))
        for lab in face_labels(F):
            stack.append(face_tree(F, lab))
    return out


def face_factorization(m):
    """Write a mono as iso followed by a chain of face inclusions.

    Returns (iso, [face labels from T downward]) such that composing the face
    inclusions and then the iso recovers m.
    """
    if not m.is_injective():
        raise TreeError("not a monomorphism")
    T = m.target
    img = m.image_tree()
    labels = []
    cur = T
    while cur != img:
        for lab in face_labels(cur):
            F = face_tree(cur, lab)
            if img.edges <= F.edges and _is_subtree(img, F):
                labels.append(lab)
                cur = F
                break
        else:
            raise TreeError("no face contains the image")
    iso = OmegaMorphism(m.source, img, m.edge_map)
    return iso, labels


def _is_subtree(A, F):
    """A is a subobject of F via the identity on edge names."""
    return OmegaMorphism(A, F, {e: e for e in A.edges}, check=False).problem() is None


# grafting and subtrees

def graft(T, l, S):
    """Graft S onto the leaf l of T, identifying l with the root of S."""
    if l not in T.leaves:
        raise TreeError("%r is not a leaf" % (l,))
    mapping = {S.root: l}
    used = set(T.edges)
    for e in sorted(S.edges):
        if e == S.root:
            continue
        new = e
        while new in used:
            new = new + "'"
        used.add(new)
        mapping[e] = new
    S2 = S.rename(mapping)
    if not T.vertices:
        return S2
    return Tree(T.root, list(T.vertices) + list(S2.vertices))


def subtree_above(T, c):
    if c not in T.edges:
        raise TreeError("unknown edge %r" % (c,))
    keep = T.above(c)
    verts = [v for v in T.vertices if v.output in keep]
    return Tree(c, verts)


class Spine:
    """One corolla per vertex glued along inner edges."""

    def __init__(self, T):
        self.tree = T
        self.corollas = []
        for v in T.vertices:
            C = Tree(v.output, [(v.output, v.inputs)])
            self.corollas.append(_inclusion(C, T))
        self.glue = sorted(T.inner_edges)
        if not T.vertices:
            self.cells = [_inclusion(T, T)]
        else:
            self.cells = list(self.corollas)

    def __repr__(self):
        return "Spine(%d corollas, %d gluings)" % (len(self.corollas), len(self.glue))


def spine(T):
    return Spine(T)


# enumeration of shapes

def all_codes(max_vertices, max_arity=3, min_vertices=0):
    """Codes of all trees up to iso with bounded size and arity."""
    by_size = {0: {"|"}}
    for n in range(1, max_vertices + 1):
        found = set()
        for k in range(0, max_arity + 1):
            # vertex with k children whose sizes sum to n-1
            for sizes in _compositions(n - 1, k):
                pools = [sorted(by_size[s]) for s in sizes]
                for combo in itertools.product(*pools):
                    found.add("(" + "".join(sorted(combo)) + ")")
        by_size[n] = found
    out = []
    for n in range(min_vertices, max_vertices + 1):
        out.extend(sorted(by_size[n]))
    return out


def _compositions(total, parts):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def all_trees(max_vertices, max_arity=3, min_vertices=0):
    return [tree_from_code(c) for c in all_codes(max_vertices, max_arity, min_vertices)]


def max_arity(T):
    return max([len(v.inputs) for v in T.vertices] or [0])


# S-expressions and DOT

class ParseError(TreeError):
    def __init__(self, msg, line, col):
        super().__init__("%s at line %d, column %d" % (msg, line, col))
        self.line = line
        self.col = col


def _tokens(text):
    out = []
    line, col, i = 1, 1, 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line, col, i = line + 1, 1, i + 1
        elif ch.isspace():
            col, i = col + 1, i + 1
        elif ch == ";":
            while i < len(text) and text[i] != "\n":
                i += 1
        elif ch in "()":
            out.append((ch, line, col))
            col, i = col + 1, i + 1
        else:
            j = i
            while j < len(text) and not text[j].isspace() and text[j] not in "();":
                j += 1
            out.append((text[i:j], line, col))
            col, i = col + (j - i), j
    return out


def parse_sexpr_data(text):
    """Parse nested lists of atoms, keeping positions for error messages."""
    toks = _tokens(text)
    if not toks:
        raise ParseError("empty input", 1, 1)
    stack = [[]]
    opens = []
    for tok, line, col in toks:
        if tok == "(":
            new = []
            stack[-1].append((new, line, col))
            stack.append(new)
            opens.append((line, col))
        elif tok == ")":
            if len(stack) == 1:
                raise ParseError("unbalanced ')'", line, col)
            stack.pop()
            opens.pop()
        else:
            stack[-1].append((tok, line, col))
    if len(stack) != 1:
        line, col = opens[-1]
        raise ParseError("unclosed '('", line, col)
    return stack[0]


def parse_tree(text):
    items = parse_sexpr_data(text)
    if len(items) != 1:
        _, line, col = items[1] if len(items) > 1 else items[0]
        raise ParseError("expected exactly one tree", line, col)
    verts = []

    def walk(item):
        body, line, col = item
        if isinstance(body, str):
            return body
        if not body:
            raise ParseError("empty form", line, col)
        head, hl, hc = body[0]
        if head == "edge":
            if len(body) != 2 or not isinstance(body[1][0], str):
                raise ParseError("(edge NAME) expects one name", line, col)
            return body[1][0]
        if head == "node":
            if len(body) < 2 or not isinstance(body[1][0], str):
                raise ParseError("(node OUT ...) expects an output edge name", line, col)
            out = body[1][0]
            ins = [walk(ch) for ch in body[2:]]
            verts.append((out, ins))
            return out
        raise ParseError("unknown form %r" % (head,), hl, hc)

    root = walk(items[0])
    try:
        return Tree(root, verts)
    except TreeError as exc:
        raise ParseError(str(exc), items[0][1], items[0][2])


def to_sexpr(T, label=None):
    """S-expression for T; label(e) may decorate edge names."""
    name = label or (lambda e: e)

    def walk(e):
        v = T.producer(e)
        if v is None:
            return name(e)
        kids = " ".join(walk(i) for i in sorted(v.inputs))
        return "(node %s%s)" % (name(e), " " + kids if kids else "")

    if not T.vertices:
        return "(edge %s)" % name(T.root)
    return walk(T.root)


def to_dot(T, name="T"):
    lines = ["digraph %s {" % name, "  rankdir=BT;"]
    for v in T.vertices:
        lines.append('  "v_%s" [shape=circle,label=""];' % v.output)
    for e in sorted(T.edges):
        src = 'v_%s' % e if T.producer(e) else "in_%s" % e
        if T.producer(e) is None:
            lines.append('  "in_%s" [shape=point];' % e)
        cons = T.consumer(e)
        dst = "v_%s" % cons.output if cons else "out_%s" % e
        if cons is None:
            lines.append('  "out_%s" [shape=point];' % e)
        lines.append('  "%s" -> "%s" [label="%s"];' % (src, dst, e))
    lines.append("}")
    return "\n".join(lines)


def degeneracies(T):
    """For each unary vertex u: (sigma: T -> T', delta: T' -> T) with
    sigma collapsing u and delta a section of sigma."""
    out = []
    for u in T.vertices:
        if len(u.inputs) != 1:
            continue
        (a,) = u.inputs
        b = u.output
        verts = []
        for v in T.vertices:
            if v is u:
                continue
            if v.output == a:
                verts.append((b, v.inputs))
            else:
                verts.append((v.output, v.inputs))
        T2 = Tree(T.root, verts) if verts else Tree(b)
        sigma = OmegaMorphism(T, T2, {e: (b if e == a else e) for e in T.edges}, check=False)
        delta = OmegaMorphism(T2, T, {e: e for e in T2.edges}, check=False)
        out.append((sigma, delta))
    return out


def restrict_linear(theta, m, n):
    """The Omega-morphism L_m -> L_n induced by a monotone map [m] -> [n]."""
    return OmegaMorphism(linear(m), linear(n),
                         {linear_edge(m, j): linear_edge(n, theta[j]) for j in range(m + 1)},
                         check=False)
