"""Small finite categories and functors between them."""

import itertools
import json


class CategoryError(ValueError):
    pass


class FiniteCategory:
    """Objects, morphisms with domain and codomain, identities, composition.

    compose(g, f) is g after f and may be given as a dict keyed by (g, f) or
    as a callable.
    """

    def __init__(self, objects, morphisms, identities, compose, name="C"):
        self.objects = tuple(objects)
        self._dc = {m: tuple(dc) for m, dc in morphisms.items()}
        self._id = dict(identities)
        self._comp = compose
        self.name = name
        self._hom = {}
        for m, (a, b) in self._dc.items():
            self._hom.setdefault((a, b), []).append(m)
        for lst in self._hom.values():
            lst.sort(key=self.morphism_key)
        self.morphisms = tuple(sorted(self._dc, key=self.morphism_key))
        for x in self.objects:
            if self._dc.get(self._id.get(x)) != (x, x):
                raise CategoryError("bad identity at %r" % (x,))

    def morphism_key(self, m):
        # identities sort first so that minimal choices prefer them
        a, b = self._dc[m]
        return (0 if self._id.get(a) == m else 1, repr(m))

    def dom(self, m):
        return self._dc[m][0]

    def cod(self, m):
        return self._dc[m][1]

    def identity(self, x):
        return self._id[x]

    def is_identity(self, m):
        return self._id.get(self._dc[m][0]) == m

    def hom(self, a, b):
        return self._hom.get((a, b), [])

    def compose(self, g, f):
        if self._dc[f][1] != self._dc[g][0]:
            raise CategoryError("cannot compose %r after %r" % (g, f))
        if self.is_identity(f):
            return g
        if self.is_identity(g):
            return f
        if callable(self._comp):
            return self._comp(g, f)
        return self._comp[(g, f)]

    def inverse(self, m):
        a, b = self._dc[m]
        for n in self.hom(b, a):
            if self.is_identity(self.compose(n, m)) and self.is_identity(self.compose(m, n)):
                return n
        return None

    def is_iso(self, m):
        return self.inverse(m) is not None

    def is_groupoid(self):
        return all(self.is_iso(m) for m in self.morphisms)

    def check(self):
        for f in self.morphisms:
            a, b = self._dc[f]
            for g in self.morphisms:
                if self._dc[g][0] != b:
                    continue
                gf = self.compose(g, f)
                if self._dc.get(gf) != (a, self._dc[g][1]):
                    return "composite %r o %r has wrong type" % (g, f)
                for h in self.morphisms:
                    if self._dc[h][0] != self._dc[g][1]:
                        continue
                    if self.compose(h, gf) != self.compose(self.compose(h, g), f):
                        return "associativity fails at %r, %r, %r" % (h, g, f)
        return None

    def __repr__(self):
        return "<FiniteCategory %s: %d objects, %d morphisms>" % (
            self.name, len(self.objects), len(self.morphisms))

    def to_json(self):
        names = {m: m if isinstance(m, str) else json.dumps(m, default=str) for m in self.morphisms}
        comp = []
        for f in self.morphisms:
            for g in self.morphisms:
                if self.cod(f) == self.dom(g):
                    comp.append([names[g], names[f], names[self.compose(g, f)]])
        return {"name": self.name, "objects": [str(x) for x in self.objects],
                "morphisms": [{"name": names[m], "dom": str(self.dom(m)), "cod": str(self.cod(m))}
                              for m in self.morphisms],
                "identities": {str(x): names[self.identity(x)] for x in self.objects},
                "composition": comp}


def category_from_json(data):
    try:
        mors = {m["name"]: (m["dom"], m["cod"]) for m in data["morphisms"]}
        comp = {(g, f): h for g, f, h in data["composition"]}
        C = FiniteCategory(data["objects"], mors, data["identities"], comp,
                           name=data.get("name", "C"))
    except (KeyError, TypeError, ValueError) as exc:
        raise CategoryError("malformed category JSON: %s" % exc)
    prob = C.check()
    if prob:
        raise CategoryError(prob)
    return C


def discrete(objects, name="D"):
    objects = list(objects)
    mors = {("id", x): (x, x) for x in objects}
    return FiniteCategory(objects, mors, {x: ("id", x) for x in objects}, {}, name=name)


def terminal_category():
    return discrete(["*"], name="1")


def poset(elements, leq, name="P"):
    elements = list(elements)
    mors = {(a, b): (a, b) for a in elements for b in elements if leq(a, b)}
    return FiniteCategory(elements, mors, {x: (x, x) for x in elements},
                          lambda g, f: (f[0], g[1]), name=name)


def arrow(n=1):
    """The ordinal [n] as a category."""
    return poset(range(n + 1), lambda a, b: a <= b, name="[%d]" % n)


def one_object(elements, mul, unit, name="BM"):
    """A monoid viewed as a category with one object."""
    mors = {g: ("*", "*") for g in elements}
    return FiniteCategory(["*"], mors, {"*": unit}, lambda g, f: mul(g, f), name=name)


def cyclic_group(n, name=None):
    return one_object(range(n), lambda g, f: (g + f) % n, 0, name=name or "Z%d" % n)


def codiscrete(objects, name="I"):
    """The groupoid with exactly one morphism between any two objects."""
    return poset(objects, lambda a, b: True, name=name)


def product(cats, name=None):
    cats = list(cats)
    objs = list(itertools.product(*[C.objects for C in cats]))
    mors = {}
    for ms in itertools.product(*[C.morphisms for C in cats]):
        mors[ms] = (tuple(C.dom(m) for C, m in zip(cats, ms)),
                    tuple(C.cod(m) for C, m in zip(cats, ms)))
    ids = {x: tuple(C.identity(a) for C, a in zip(cats, x)) for x in objs}
    return FiniteCategory(objs, mors, ids,
                          lambda g, f: tuple(C.compose(a, b) for C, a, b in zip(cats, g, f)),
                          name=name or "x".join(C.name for C in cats))


class Functor:
    def __init__(self, source, target, obj_map, mor_map, name="F"):
        self.source = source
        self.target = target
        self._obj = obj_map
        self._mor = mor_map
        self.name = name

    def obj(self, x):
        return self._obj(x) if callable(self._obj) else self._obj[x]

    def mor(self, m):
        return self._mor(m) if callable(self._mor) else self._mor[m]

    def check(self):
        C, D = self.source, self.target
        for x in C.objects:
            if self.mor(C.identity(x)) != D.identity(self.obj(x)):
                return "identity at %r not preserved" % (x,)
        for m in C.morphisms:
            fm = self.mor(m)
            if (D.dom(fm), D.cod(fm)) != (self.obj(C.dom(m)), self.obj(C.cod(m))):
                return "morphism %r sent to wrong hom set" % (m,)
        for f in C.morphisms:
            for g in C.morphisms:
                if C.cod(f) == C.dom(g):
                    if self.mor(C.compose(g, f)) != D.compose(self.mor(g), self.mor(f)):
                        return "composition %r o %r not preserved" % (g, f)
        return None

    def is_iso(self):
        C, D = self.source, self.target
        objs = [self.obj(x) for x in C.objects]
        mors = [self.mor(m) for m in C.morphisms]
        return (len(set(objs)) == len(objs) == len(D.objects)
                and len(set(mors)) == len(mors) == len(D.morphisms))


def functors(C, D):
    """Enumerate all functors C -> D by backtracking over morphisms."""
    mors = list(C.morphisms)
    out = []

    def search(k, obj, mor):
        if k == len(mors):
            out.append(Functor(C, D, dict(obj), dict(mor)))
            return
        m = mors[k]
        a, b = C.dom(m), C.cod(m)
        if C.is_identity(m):
            for x in ([obj[a]] if a in obj else D.objects):
                o2 = dict(obj)
                o2[a] = x
                m2 = dict(mor)
                m2[m] = D.identity(x)
                if _consistent(C, D, o2, m2):
                    search(k + 1, o2, m2)
            return
        srcs = [obj[a]] if a in obj else D.objects
        for x in srcs:
            tgts = [obj[b]] if b in obj else D.objects
            for y in tgts:
                if a == b and x != y:
                    continue
                for n in D.hom(x, y):
                    o2 = dict(obj)
                    o2[a], o2[b] = x, y
                    m2 = dict(mor)
                    m2[m] = n
                    if _consistent(C, D, o2, m2):
                        search(k + 1, o2, m2)

    # identities first so objects get fixed early
    mors.sort(key=lambda m: (0 if C.is_identity(m) else 1, repr(m)))
    search(0, {}, {})
    return out


def _consistent(C, D, obj, mor):
    for f, ff in mor.items():
        for g, gg in mor.items():
            if C.cod(f) == C.dom(g):
                h = C.compose(g, f)
                if h in mor and mor[h] != D.compose(gg, ff):
                    return False
    return True
