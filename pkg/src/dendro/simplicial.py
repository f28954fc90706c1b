"""Finite simplicial sets up to a dimension bound."""

import itertools


class SimpSet:
    """Simplices per degree with face and degeneracy operators.

    Subclasses provide simplices(n), face(n, i, x) and degen(n, i, x).
    """

    max_dim = 0

    def simplices(self, n):
        raise NotImplementedError

    def face(self, n, i, x):
        raise NotImplementedError

    def degen(self, n, i, x):
        raise NotImplementedError

    def operator(self, x, n, theta):
        """Pull an n-simplex back along a monotone map theta: [m] -> [n].

        theta is a tuple of length m+1.  The default splits theta into
        faces and degeneracies.
        """
        theta = tuple(theta)
        m = len(theta) - 1
        img = sorted(set(theta))
        cur, k = x, n
        for i in reversed(range(n + 1)):
            if i not in img:
                cur = self.face(k, i, cur)
                k -= 1
        # theta now factors through a surjection [m] -> [k]; after step j the
        # first j+1 vertices of cur follow theta
        pos = [img.index(t) for t in theta]
        for j in range(1, m + 1):
            if pos[j] == pos[j - 1]:
                cur = self.degen(k, j - 1, cur)
                k += 1
        return cur

    def is_degenerate(self, n, x):
        for i in range(n):
            y = self.face(n, i, x)
            if self.degen(n - 1, i, y) == x:
                return True
        return False

    def nondegenerate(self, n):
        if n == 0:
            return list(self.simplices(0))
        return [x for x in self.simplices(n) if not self.is_degenerate(n, x)]

    def check_identities(self, dim=None):
        """Check the simplicial identities; returns None or a description."""
        top = self.max_dim if dim is None else dim
        for n in range(top + 1):
            S = set(self.simplices(n))
            for x in S:
                for i in range(n + 1):
                    if n > 0:
                        if self.face(n, i, x) not in set(self.simplices(n - 1)):
                            return "d_%d of %r is not a simplex" % (i, x)
                        for j in range(i + 1, n + 1):
                            if n > 1 and self.face(n - 1, i, self.face(n, j, x)) != \
                                    self.face(n - 1, j - 1, self.face(n, i, x)):
                                return "d_i d_j identity fails at %r" % (x,)
                    if n < top:
                        s = self.degen(n, i, x)
                        if self.face(n + 1, i, s) != x or self.face(n + 1, i + 1, s) != x:
                            return "d s identity fails at %r" % (x,)
                        for j in range(n + 2):
                            if j < i and n > 0:
                                if self.face(n + 1, j, s) != self.degen(n - 1, i - 1, self.face(n, j, x)):
                                    return "d_j s_i identity fails at %r" % (x,)
                            if j > i + 1 and n > 0:
                                if self.face(n + 1, j, s) != self.degen(n - 1, i, self.face(n, j - 1, x)):
                                    return "d_j s_i identity fails at %r" % (x,)
                        for j in range(i + 1):
                            if n + 1 <= top:
                                a = self.degen(n + 1, j, s)
                                b = self.degen(n + 1, i + 1, self.degen(n, j, x))
                                if a != b:
                                    return "s_j s_i identity fails at %r" % (x,)
        return None

    def components(self):
        verts = list(self.simplices(0))
        parent = {v: v for v in verts}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        if self.max_dim >= 1:
            for e in self.simplices(1):
                a, b = find(self.face(1, 1, e)), find(self.face(1, 0, e))
                if a != b:
                    parent[a] = b
        groups = {}
        for v in verts:
            groups.setdefault(find(v), []).append(v)
        return list(groups.values())

    def is_connected(self):
        return len(self.components()) == 1

    def counts(self):
        return [len(self.simplices(n)) for n in range(self.max_dim + 1)]


class TableSimpSet(SimpSet):
    """A SimpSet with materialized simplex lists and callable operators."""

    def __init__(self, simplices, face, degen, max_dim):
        self._s = {n: list(v) for n, v in simplices.items()}
        self._face = face
        self._degen = degen
        self.max_dim = max_dim

    def simplices(self, n):
        return self._s.get(n, [])

    def face(self, n, i, x):
        return self._face(n, i, x)

    def degen(self, n, i, x):
        return self._degen(n, i, x)


class CategoryNerve(SimpSet):
    """Nerve of a finite category; an n-simplex is (objects, morphisms)."""

    def __init__(self, C, max_dim=3):
        self.category = C
        self.max_dim = max_dim
        self._cache = {}

    def simplices(self, n):
        if n in self._cache:
            return self._cache[n]
        C = self.category
        if n == 0:
            out = [((x,), ()) for x in C.objects]
        else:
            out = []
            for s in self.simplices(n - 1):
                objs, mors = s
                for m in C.morphisms:
                    if C.dom(m) == objs[-1]:
                        out.append((objs + (C.cod(m),), mors + (m,)))
        self._cache[n] = out
        return out

    def face(self, n, i, x):
        C = self.category
        objs, mors = x
        o = objs[:i] + objs[i + 1:]
        if i == 0:
            m = mors[1:]
        elif i == n:
            m = mors[:-1]
        else:
            m = mors[:i - 1] + (C.compose(mors[i], mors[i - 1]),) + mors[i + 1:]
        return (o, m)

    def degen(self, n, i, x):
        C = self.category
        objs, mors = x
        return (objs[:i + 1] + objs[i:], mors[:i] + (C.identity(objs[i]),) + mors[i:])

    def operator(self, x, n, theta):
        C = self.category
        objs, mors = x
        o = tuple(objs[t] for t in theta)
        ms = []
        for j in range(len(theta) - 1):
            a, b = theta[j], theta[j + 1]
            m = C.identity(objs[a])
            for k in range(a, b):
                m = C.compose(mors[k], m)
            ms.append(m)
        return (o, tuple(ms))

    def constant(self, obj, n):
        C = self.category
        return ((obj,) * (n + 1), (C.identity(obj),) * n)

    def is_degenerate(self, n, x):
        return any(self.category.is_identity(m) for m in x[1])


class PosetNerve(SimpSet):
    """Nerve of a finite poset: simplices are weakly increasing tuples."""

    def __init__(self, elements, leq, max_dim=3):
        self.elements = list(elements)
        self.leq = leq
        self.max_dim = max_dim
        self._cache = {}

    def simplices(self, n):
        if n not in self._cache:
            if n == 0:
                self._cache[n] = [(x,) for x in self.elements]
            else:
                self._cache[n] = [s + (y,) for s in self.simplices(n - 1)
                                  for y in self.elements if self.leq(s[-1], y)]
        return self._cache[n]

    def face(self, n, i, x):
        return x[:i] + x[i + 1:]

    def degen(self, n, i, x):
        return x[:i + 1] + x[i:]

    def operator(self, x, n, theta):
        return tuple(x[t] for t in theta)

    def is_degenerate(self, n, x):
        return any(x[j] == x[j + 1] for j in range(n))


def simplex(n, max_dim=None):
    return PosetNerve(range(n + 1), lambda a, b: a <= b,
                      max_dim=n if max_dim is None else max_dim)


class Cube(PosetNerve):
    """(Delta^1)^C for a finite coordinate set C.

    Points are tuples of 0/1 indexed by the sorted coordinates; simplices
    are monotone paths of points.  With op=True the order on each factor
    is reversed.
    """

    def __init__(self, coords, max_dim=None, op=False):
        self.coords = tuple(sorted(coords))
        self.op = op
        pts = list(itertools.product((0, 1), repeat=len(self.coords)))
        if op:
            leq = lambda a, b: all(x >= y for x, y in zip(a, b))
        else:
            leq = lambda a, b: all(x <= y for x, y in zip(a, b))
        super().__init__(pts, leq, max_dim=len(self.coords) if max_dim is None else max_dim)

    @property
    def dim(self):
        return len(self.coords)

    def point(self, values):
        """Point from a dict coordinate -> 0/1 (missing coordinates are 0)."""
        return tuple(values.get(c, 0) for c in self.coords)

    def as_dict(self, p):
        return dict(zip(self.coords, p))

    def __repr__(self):
        return "Cube(%s)" % (", ".join(self.coords),)


def isomorphic_by(f, X, Y, dim):
    """Check that a degreewise map f(n, x) is a bijection commuting with faces
    and degeneracies up to the given dimension."""
    for n in range(dim + 1):
        xs = list(X.simplices(n))
        ys = set(Y.simplices(n))
        img = [f(n, x) for x in xs]
        if len(set(img)) != len(img) or set(img) != ys:
            return "not bijective in degree %d" % n
        for x in xs:
            for i in range(n + 1):
                if n > 0 and f(n - 1, X.face(n, i, x)) != Y.face(n, i, f(n, x)):
                    return "face %d not preserved at %r" % (i, x)
                if n < dim and f(n + 1, X.degen(n, i, x)) != Y.degen(n, i, f(n, x)):
                    return "degeneracy %d not preserved at %r" % (i, x)
    return None
