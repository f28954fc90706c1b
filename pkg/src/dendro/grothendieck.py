"""Algebras over finite operads, the Grothendieck construction and its inverse.

Covers corepresentable algebras, straightening p/s, cleavages, the weak
algebra of fibres built from a cleavage, and the round trips between them.
All enumerations are exhaustive over finite data.
"""

import itertools
import json

from .operads import (FiniteOperad, OperadMorphism, OperadError, identity_perm,
                      inverse_perm, operad_to_json, operad_from_json, find_isomorphism,
                      tabulate)
from .categories import FiniteCategory, category_from_json, CategoryError


class AlgebraError(ValueError):
    pass


def _bound(S, max_arity=None, what="construction"):
    b = S.max_arity if max_arity is None else max_arity
    if b is None:
        raise AlgebraError("%s needs an arity bound: %s has operations of every arity"
                           % (what, S.name))
    return b


def _perms(n):
    return list(itertools.permutations(range(n)))


def _permute(xs, perm):
    return tuple(xs[j] for j in perm)


# constraint search shared by the enumerations below

def solve(variables, domains, constraints, limit=None):
    """Backtracking over variables in order.

    constraints is a list of (vars, predicate(assignment)); each is checked
    as soon as its last variable is assigned.  Yields complete assignments.
    """
    pos = {v: k for k, v in enumerate(variables)}
    by_last = [[] for _ in variables]
    for vs, pred in constraints:
        if not vs:
            continue
        by_last[max(pos[v] for v in vs)].append(pred)
    out = []
    assign = {}

    def go(k):
        if limit is not None and len(out) >= limit:
            return
        if k == len(variables):
            out.append(dict(assign))
            return
        v = variables[k]
        dom = domains[v](assign) if callable(domains[v]) else domains[v]
        for val in dom:
            assign[v] = val
            if all(pred(assign) for pred in by_last[k]):
                go(k + 1)
            del assign[v]

    go(0)
    return out


# Set-valued algebras

class SetAlgebra:
    """F(c) a finite list per colour; action(op, elements) -> element."""

    def __init__(self, S, sets, action, name="F", max_arity=None):
        self.operad = S
        self.sets = {c: list(v) for c, v in sets.items()}
        self._action = action
        self.name = name
        self.max_arity = _bound(S, max_arity, "a set algebra")

    def __call__(self, op, elems):
        return self._action(op, tuple(elems))

    def check(self):
        S = self.operad
        ops = S.operations(self.max_arity)
        for c in S.colours:
            for a in self.sets[c]:
                if self(S.unit(c), (a,)) != a:
                    return "unit at %r acts nontrivially" % (c,)
        for f in ops:
            ins, out = S.signature(f)
            for xs in itertools.product(*[self.sets[c] for c in ins]):
                val = self(f, xs)
                if val not in self.sets[out]:
                    return "action of %r leaves F(%r)" % (f, out)
                for p in _perms(len(ins)):
                    if self(S.act(f, p), _permute(xs, p)) != val:
                        return "action of %r not equivariant under %r" % (f, p)
        for f in ops:
            ins, _ = S.signature(f)
            for i, c in enumerate(ins):
                for m in range(0, self.max_arity - len(ins) + 2):
                    for g in S.ops_with_output(c, m):
                        gins, _ = S.signature(g)
                        fg = S.compose(f, i, g)
                        new_in = ins[:i] + gins + ins[i + 1:]
                        for xs in itertools.product(*[self.sets[d] for d in new_in]):
                            inner = self(g, xs[i:i + len(gins)])
                            lhs = self(fg, xs)
                            rhs = self(f, xs[:i] + (inner,) + xs[i + len(gins):])
                            if lhs != rhs:
                                return "composition %r o_%d %r not respected" % (f, i, g)
        return None

    def to_json(self):
        S = self.operad
        oj, names = _operad_names(S, self.max_arity)
        rows = []
        for f in S.operations(self.max_arity):
            ins, _ = S.signature(f)
            for xs in itertools.product(*[self.sets[c] for c in ins]):
                rows.append([names[f], [_s(x) for x in xs], _s(self(f, xs))])
        return {"operad": oj,
                "sets": {str(c): [_s(x) for x in v] for c, v in self.sets.items()},
                "action": rows}


def _s(x):
    return x if isinstance(x, str) else json.dumps(x, default=str)


def _operad_names(S, b):
    oj = operad_to_json(S, b)
    return oj, dict(zip(S.operations(b), [o["name"] for o in oj["operations"]]))


def set_algebra_from_json(data):
    S = operad_from_json(data["operad"])
    table = {(f, tuple(xs)): y for f, xs, y in data["action"]}

    def act(f, xs):
        try:
            return table[(f, tuple(xs))]
        except KeyError:
            raise AlgebraError("action of %r on %r missing" % (f, xs))
    F = SetAlgebra(S, data["sets"], act)
    prob = F.check()
    if prob:
        raise AlgebraError(prob)
    return F


def algebra_from_generators(T, sets, vertex_fns, name="F"):
    """An algebra over the free operad on a tree from one function per vertex.

    vertex_fns maps each vertex output to a function of the inputs taken in
    sorted edge-name order.
    """
    from .operads import FreeOperad
    S = FreeOperad(T)

    def act(op, xs):
        leaves, root = op
        val = dict(zip(leaves, xs))

        def ev(e):
            if e in val:
                return val[e]
            v = T.producer(e)
            return vertex_fns[e](*[ev(i) for i in sorted(v.inputs)])
        return ev(root)
    return SetAlgebra(S, sets, act, name=name)


def corepresentable(S, s, max_arity=None):
    """c -> union over n of S(s, ..., s; c) modulo the symmetric group."""
    b = _bound(S, max_arity, "the corepresentable algebra at %r" % (s,))
    sets = {}
    for c in S.colours:
        seen = set()
        for n in range(b + 1):
            for f in S.ops((s,) * n, c):
                seen.add(_orbit_min(S, f))
        sets[c] = sorted(seen, key=repr)

    def act(op, elems):
        return _orbit_min(S, S.gamma(op, list(elems)))
    return SetAlgebra(S, sets, act, name="%s(-)" % (s,), max_arity=b)


def _orbit_min(S, f):
    n = S.arity(f)
    return min((S.act(f, p) for p in _perms(n)), key=repr)


def corepresentable_times(S, s, X, max_arity=None):
    """c -> union over n of S(s^n; c) x X^n modulo the diagonal symmetric action."""
    b = _bound(S, max_arity, "the corepresentable algebra at %r" % (s,))
    X = list(X)

    def canon(f, xs):
        n = len(xs)
        return min(((S.act(f, p), _permute(xs, p)) for p in _perms(n)), key=repr)

    sets = {}
    for c in S.colours:
        seen = set()
        for n in range(b + 1):
            for f in S.ops((s,) * n, c):
                for xs in itertools.product(X, repeat=n):
                    seen.add(canon(f, xs))
        sets[c] = sorted(seen, key=repr)

    def act(op, elems):
        fs = [e[0] for e in elems]
        xs = tuple(x for e in elems for x in e[1])
        return canon(S.gamma(op, fs), xs)
    return SetAlgebra(S, sets, act, name="%s(-)xX" % (s,), max_arity=b)


def natural_maps(A, B, limit=None):
    """All natural transformations A -> B as dicts {(colour, element): value}."""
    S = A.operad
    variables = [(c, a) for c in S.colours for a in A.sets[c]]
    domains = {(c, a): B.sets[c] for c, a in variables}
    constraints = []
    for f in S.operations(A.max_arity):
        ins, out = S.signature(f)
        for xs in itertools.product(*[A.sets[c] for c in ins]):
            y = A(f, xs)
            vs = [(c, x) for c, x in zip(ins, xs)] + [(out, y)]

            def pred(asg, f=f, ins=ins, xs=xs, out=out, y=y):
                return B(f, [asg[(c, x)] for c, x in zip(ins, xs)]) == asg[(out, y)]
            constraints.append((vs, pred))
    return solve(variables, domains, constraints, limit)


def coyoneda_check(S, s, F, max_arity=None):
    """Evaluation at the class of id_s is a bijection Nat(s(-), F) -> F(s)."""
    A = corepresentable(S, s, max_arity)
    nats = natural_maps(A, F)
    ident = _orbit_min(S, S.unit(s))
    values = [t[(s, ident)] for t in nats]
    ok = len(set(values)) == len(values) and set(values) == set(F.sets[s])
    return {"ok": ok, "nat": len(nats), "F(s)": len(F.sets[s])}


def coyoneda_check_times(S, s, F, X, max_arity=None):
    """Evaluation at [id_s, x] gives a bijection Nat(s(-) x X, F) -> Sets(X, F(s))."""
    A = corepresentable_times(S, s, X, max_arity)
    nats = natural_maps(A, F)
    u = S.unit(s)
    values = [tuple(t[(s, (u, (x,)))] for x in X) for t in nats]
    expected = set(itertools.product(F.sets[s], repeat=len(list(X))))
    ok = len(set(values)) == len(values) and set(values) == expected
    return {"ok": ok, "nat": len(nats), "maps": len(expected)}


# Cat-valued algebras

class CatAlgebra:
    """Per colour a FiniteCategory, per operation a functor on products.

    obj(op, objects) and mor(op, morphisms) give the functor F(op).
    comparison(f, i, g, objects), when given, is an isomorphism from
    F(f o_i g)(objects) to F(f)(..., F(g)(...), ...); strict algebras have
    none.
    """

    def __init__(self, S, cats, obj, mor, comparison=None, name="F", max_arity=None):
        self.operad = S
        self.cats = dict(cats)
        self._obj = obj
        self._mor = mor
        self.comparison = comparison
        self.name = name
        self.max_arity = _bound(S, max_arity, "a Cat-valued algebra")

    def obj(self, op, objs):
        return self._obj(op, tuple(objs))

    def mor(self, op, mors):
        return self._mor(op, tuple(mors))

    @property
    def strict(self):
        return self.comparison is None

    def _tuples(self, ins, kind):
        if kind == "obj":
            return itertools.product(*[self.cats[c].objects for c in ins])
        return itertools.product(*[self.cats[c].morphisms for c in ins])

    def check(self):
        """Functoriality of each F(op); for strict algebras also unit,
        equivariance and composition on the nose."""
        S = self.operad
        ops = S.operations(self.max_arity)
        for f in ops:
            ins, out = S.signature(f)
            D = self.cats[out]
            for os_ in self._tuples(ins, "obj"):
                ids = tuple(self.cats[c].identity(o) for c, o in zip(ins, os_))
                if self.mor(f, ids) != D.identity(self.obj(f, os_)):
                    return "F(%r) does not preserve identities" % (f,)
            for ms in self._tuples(ins, "mor"):
                m = self.mor(f, ms)
                doms = tuple(self.cats[c].dom(x) for c, x in zip(ins, ms))
                cods = tuple(self.cats[c].cod(x) for c, x in zip(ins, ms))
                if D.dom(m) != self.obj(f, doms) or D.cod(m) != self.obj(f, cods):
                    return "F(%r) sends %r to a morphism of the wrong type" % (f, ms)
            for ms in self._tuples(ins, "mor"):
                for ns in self._tuples(ins, "mor"):
                    if all(self.cats[c].cod(a) == self.cats[c].dom(b)
                           for c, a, b in zip(ins, ms, ns)):
                        comp = tuple(self.cats[c].compose(b, a) for c, a, b in zip(ins, ms, ns))
                        if self.mor(f, comp) != D.compose(self.mor(f, ns), self.mor(f, ms)):
                            return "F(%r) does not preserve composition" % (f,)
        if not self.strict:
            return self._check_comparisons()
        for c in S.colours:
            for m in self.cats[c].morphisms:
                if self.mor(S.unit(c), (m,)) != m:
                    return "unit at %r acts nontrivially" % (c,)
        for f in ops:
            ins, out = S.signature(f)
            for p in _perms(len(ins)):
                fp = S.act(f, p)
                for ms in self._tuples(ins, "mor"):
                    if self.mor(fp, _permute(ms, p)) != self.mor(f, ms):
                        return "F not equivariant at %r, %r" % (f, p)
            for i, c in enumerate(ins):
                for n in range(0, self.max_arity - len(ins) + 2):
                    for g in S.ops_with_output(c, n):
                        gins, _ = S.signature(g)
                        new_in = ins[:i] + gins + ins[i + 1:]
                        fg = S.compose(f, i, g)
                        for ms in self._tuples(new_in, "mor"):
                            inner = self.mor(g, ms[i:i + len(gins)])
                            rhs = self.mor(f, ms[:i] + (inner,) + ms[i + len(gins):])
                            if self.mor(fg, ms) != rhs:
                                return "F(%r o_%d %r) differs from the composite functor" % (f, i, g)
        return None

    def _check_comparisons(self):
        """Comparison isos are invertible and natural."""
        S = self.operad
        for f in S.operations(self.max_arity):
            ins, out = S.signature(f)
            D = self.cats[out]
            for i, c in enumerate(ins):
                for n in range(0, self.max_arity - len(ins) + 2):
                    for g in S.ops_with_output(c, n):
                        gins, _ = S.signature(g)
                        new_in = ins[:i] + gins + ins[i + 1:]
                        fg = S.compose(f, i, g)
                        for ms in self._tuples(new_in, "mor"):
                            doms = tuple(self.cats[d].dom(m) for d, m in zip(new_in, ms))
                            cods = tuple(self.cats[d].cod(m) for d, m in zip(new_in, ms))
                            ca = self.comparison(f, i, g, doms)
                            cb = self.comparison(f, i, g, cods)
                            if not D.is_iso(ca):
                                return "comparison at %r, %r is not invertible" % (f, g)
                            inner = self.mor(g, ms[i:i + len(gins)])
                            rhs = self.mor(f, ms[:i] + (inner,) + ms[i + len(gins):])
                            if D.compose(cb, self.mor(fg, ms)) != D.compose(rhs, ca):
                                return "comparison at %r o_%d %r is not natural" % (f, i, g)
        return None

    def objects_algebra(self):
        """The underlying Set-valued algebra of objects (strict case)."""
        return SetAlgebra(self.operad, {c: C.objects for c, C in self.cats.items()},
                          self.obj, name=self.name + ".ob", max_arity=self.max_arity)

    def to_json(self):
        if not self.strict:
            raise AlgebraError("only strict algebras serialize")
        S = self.operad
        oj, names = _operad_names(S, self.max_arity)
        objs, mors = [], []
        for f in S.operations(self.max_arity):
            ins, _ = S.signature(f)
            for os_ in self._tuples(ins, "obj"):
                objs.append([names[f], [str(o) for o in os_], str(self.obj(f, os_))])
            for ms in self._tuples(ins, "mor"):
                mors.append([names[f], [_s(m) for m in ms], _s(self.mor(f, ms))])
        return {"operad": oj,
                "categories": {str(c): C.to_json() for c, C in self.cats.items()},
                "objects": objs, "morphisms": mors}


def cat_algebra_from_json(data):
    try:
        S = operad_from_json(data["operad"])
        cats = {c: category_from_json(C) for c, C in data["categories"].items()}
        ot = {(f, tuple(xs)): y for f, xs, y in data["objects"]}
        mt = {(f, tuple(xs)): y for f, xs, y in data["morphisms"]}
    except (KeyError, TypeError, ValueError, OperadError, CategoryError) as exc:
        raise AlgebraError("malformed algebra JSON: %s" % exc)

    def look(t):
        def fn(f, xs):
            try:
                return t[(f, tuple(xs))]
            except KeyError:
                raise AlgebraError("action of %r on %r missing" % (f, list(xs)))
        return fn
    F = CatAlgebra(S, cats, look(ot), look(mt))
    prob = F.check()
    if prob:
        raise AlgebraError(prob)
    return F


def constant_algebra(S, C, max_arity=None, name=None):
    """Every colour to C; each n-ary op acts by the projection-free rule
    sending everything to a fixed object when n == 0 and to the first
    coordinate's value otherwise is not functorial in general, so only the
    terminal and unary cases are offered here."""
    b = _bound(S, max_arity)
    if len(C.objects) != 1 or len(C.morphisms) != 1:
        if b > 1 or any(S.arity(f) == 0 for f in S.operations(b)):
            raise AlgebraError("constant algebras need the terminal category beyond unary operads")
        return CatAlgebra(S, {c: C for c in S.colours}, lambda f, xs: xs[0],
                          lambda f, ms: ms[0], name=name or "const", max_arity=b)
    (o,), (m,) = C.objects, C.morphisms
    return CatAlgebra(S, {c: C for c in S.colours}, lambda f, xs: o, lambda f, ms: m,
                      name=name or "const", max_arity=b)


def discrete_algebra(A):
    """A Set-valued algebra viewed as a Cat-valued one with discrete fibres."""
    from .categories import discrete
    cats = {c: discrete(A.sets[c], name="%s(%s)" % (A.name, c)) for c in A.operad.colours}
    return CatAlgebra(A.operad, cats, lambda f, xs: A(f, xs),
                      lambda f, ms: ("id", A(f, [m[1] for m in ms])),
                      name=A.name, max_arity=A.max_arity)


# the Grothendieck construction

def _cat_key(C):
    return lambda m: C.morphism_key(m)


def groth(S, F, max_arity=None):
    """(integral of F over S, projection).  Operations are (sigma, inputs, f)."""
    if not F.strict:
        raise AlgebraError("groth expects a strict algebra; use groth_of_cleaved for fibrations")
    b = _bound(S, max_arity if max_arity is not None else F.max_arity)
    colours = [(s, x) for s in S.colours for x in F.cats[s].objects]
    ops = {}
    for sigma in S.operations(b):
        ins, out = S.signature(sigma)
        D = F.cats[out]
        for bs in itertools.product(*[F.cats[c].objects for c in ins]):
            src = F.obj(sigma, bs)
            for f in D.morphisms:
                if D.dom(f) == src:
                    ops[(sigma, bs, f)] = (tuple(zip(ins, bs)), (out, D.cod(f)))
    units = {(s, x): (S.unit(s), (x,), F.cats[s].identity(x)) for s, x in colours}

    def compose(a, i, c):
        sigma, bs, f = a
        tau, cs, g = c
        ins, out = S.signature(sigma)
        D = F.cats[out]
        ids = [F.cats[d].identity(x) for d, x in zip(ins, bs)]
        ids[i] = g
        return (S.compose(sigma, i, tau), bs[:i] + cs + bs[i + 1:],
                D.compose(f, F.mor(sigma, ids)))

    def act(a, perm):
        sigma, bs, f = a
        return (S.act(sigma, perm), _permute(bs, perm), f)

    def key(a):
        sigma, bs, f = a
        out = S.signature(sigma)[1]
        return (repr(sigma), repr(bs), F.cats[out].morphism_key(f))

    G = FiniteOperad(colours, ops, units, compose, act, name="int(%s)" % F.name, sort_key=key)
    proj = OperadMorphism(G, S, {c: c[0] for c in colours}, lambda a: a[0], name="pi")
    return G, proj


# straightening at the Set level

class _Slice:
    """Combinatorics of the categories p/s."""

    def __init__(self, p, max_arity=None):
        self.p = p
        self.X, self.S = p.source, p.target
        self.bound = _bound(self.S, max_arity, "straightening")

    def act_obj(self, o, perm):
        xs, sigma = o
        return (_permute(xs, perm), self.S.act(sigma, perm))

    def canon_obj(self, o):
        """(canonical presentation, perm) with canonical = act_obj(o, perm)."""
        n = len(o[0])
        return min(((self.act_obj(o, q), q) for q in _perms(n)), key=lambda t: repr(t[0]))

    def stabiliser(self, o):
        return [q for q in _perms(len(o[0])) if self.act_obj(o, q) == o]

    def objects(self, s):
        X, S, p = self.X, self.S, self.p
        out = set()
        for n in range(self.bound + 1):
            for xs in itertools.product(X.colours, repeat=n):
                for sigma in S.ops(tuple(p.colour(x) for x in xs), s):
                    out.add(self.canon_obj((xs, sigma))[0])
        return sorted(out, key=repr)

    # morphisms (phi, xis) relative to fixed presentations

    def valid(self, src, tgt, mor):
        X, S, p = self.X, self.S, self.p
        (xs, sigma), (ys, tau) = src, tgt
        phi, xis = mor
        if len(phi) != len(xs) or len(xis) != len(ys):
            return False
        order = []
        for k, xi in enumerate(xis):
            pos = [i for i in range(len(xs)) if phi[i] == k]
            order.extend(pos)
            if X.signature(xi) != (tuple(xs[i] for i in pos), ys[k]):
                return False
        return S.gamma(tau, [p(xi) for xi in xis]) == S.act(sigma, tuple(order))

    def move_source(self, mor, perm):
        """Rewrite relative to the source presentation acted on by perm."""
        phi, xis = mor
        X = self.X
        new_phi = tuple(phi[perm[j]] for j in range(len(phi)))
        new_xis = []
        for k, xi in enumerate(xis):
            old = [i for i in range(len(phi)) if phi[i] == k]
            new = [j for j in range(len(phi)) if new_phi[j] == k]
            q = tuple(old.index(perm[j]) for j in new)
            new_xis.append(X.act(xi, q))
        return (new_phi, tuple(new_xis))

    def move_target(self, mor, perm):
        phi, xis = mor
        inv = inverse_perm(perm)
        return (tuple(inv[k] for k in phi), tuple(xis[perm[k]] for k in range(len(xis))))

    def canon_mor(self, src, tgt, mor):
        cands = []
        for a in self.stabiliser(src):
            m1 = self.move_source(mor, a)
            for b in self.stabiliser(tgt):
                cands.append(self.move_target(m1, b))
        return min(cands, key=repr)

    def morphisms(self, src, tgt):
        X = self.X
        (xs, _), (ys, _) = src, tgt
        n, m = len(xs), len(ys)
        out = set()
        for phi in itertools.product(range(m), repeat=n):
            choices = []
            for k in range(m):
                ins = tuple(xs[i] for i in range(n) if phi[i] == k)
                choices.append(X.ops(ins, ys[k]))
            for xis in itertools.product(*choices):
                mor = (tuple(phi), tuple(xis))
                if self.valid(src, tgt, mor):
                    out.add(self.canon_mor(src, tgt, mor))
        return sorted(out, key=repr)

    def identity(self, o):
        xs, _ = o
        return self.canon_mor(o, o, (tuple(range(len(xs))), tuple(self.X.unit(x) for x in xs)))

    def compose(self, a, b, c, f, g):
        """g o f for f: a -> b and g: b -> c."""
        X = self.X
        phi, xis = f
        psi, zetas = g
        chi = tuple(psi[phi[i]] for i in range(len(phi)))
        out = []
        for l, zeta in enumerate(zetas):
            ks = [k for k in range(len(psi)) if psi[k] == l]
            comp = X.gamma(zeta, [xis[k] for k in ks])
            order = [i for k in ks for i in range(len(phi)) if phi[i] == k]
            target = sorted(order)
            q = tuple(order.index(t) for t in target)
            out.append(X.act(comp, q))
        return self.canon_mor(a, c, (chi, tuple(out)))

    def category(self, s):
        objs = self.objects(s)
        mors = {}
        for a in objs:
            for b in objs:
                for m in self.morphisms(a, b):
                    mors[(a, b, m)] = (a, b)
        ids = {o: (o, o, self.identity(o)) for o in objs}

        def comp(g, f):
            a, b, fm = f
            _, c, gm = g
            return (a, c, self.compose(a, b, c, fm, gm))
        return FiniteCategory(objs, mors, ids, comp, name="p/%s" % (s,))

    # the S-action

    def act_objects(self, sigma, objs):
        xs = tuple(x for o in objs for x in o[0])
        op = self.S.gamma(sigma, [o[1] for o in objs])
        return self.canon_obj((xs, op))[0]

    def act_morphisms(self, sigma, mors):
        srcs = [m[0] for m in mors]
        tgts = [m[1] for m in mors]
        src = (tuple(x for o in srcs for x in o[0]), self.S.gamma(sigma, [o[1] for o in srcs]))
        tgt = (tuple(x for o in tgts for x in o[0]), self.S.gamma(sigma, [o[1] for o in tgts]))
        phi, xis, off = [], [], 0
        for (_, b, (ph, xi)) in mors:
            phi.extend(off + k for k in ph)
            xis.extend(xi)
            off += len(b[0])
        mor = (tuple(phi), tuple(xis))
        csrc, ps = self.canon_obj(src)
        ctgt, pt = self.canon_obj(tgt)
        mor = self.move_target(self.move_source(mor, ps), pt)
        return (csrc, ctgt, self.canon_mor(csrc, ctgt, mor))


def straighten_set(p, max_arity=None):
    """The strict algebra s -> p/s."""
    sl = _Slice(p, max_arity)
    S = p.target
    cats = {s: sl.category(s) for s in S.colours}
    F = CatAlgebra(S, cats, sl.act_objects, sl.act_morphisms,
                   name="St(%s)" % getattr(p, "name", "p"), max_arity=sl.bound)
    F.slice = sl
    return F


# the adjunction

def algebra_maps(A, B, limit=None):
    """Strict natural transformations between strict Cat-valued algebras,
    as dicts keyed by ('o', s, object) and ('m', s, morphism)."""
    S = A.operad
    variables, domains, constraints = [], {}, []
    for s in S.colours:
        C, D = A.cats[s], B.cats[s]
        for o in C.objects:
            variables.append(("o", s, o))
            domains[("o", s, o)] = D.objects
    for s in S.colours:
        C, D = A.cats[s], B.cats[s]
        for m in C.morphisms:
            v = ("m", s, m)
            variables.append(v)
            a, b = C.dom(m), C.cod(m)

            def dom(asg, s=s, a=a, b=b, D=D):
                return D.hom(asg[("o", s, a)], asg[("o", s, b)])
            domains[v] = dom
            if C.is_identity(m):
                constraints.append(([v], lambda asg, v=v, D=D: D.is_identity(asg[v])))
    for s in S.colours:
        C, D = A.cats[s], B.cats[s]
        for f in C.morphisms:
            for g in C.morphisms:
                if C.cod(f) == C.dom(g):
                    h = C.compose(g, f)
                    vs = [("m", s, f), ("m", s, g), ("m", s, h)]
                    constraints.append((vs, lambda asg, vs=vs, D=D:
                                        D.compose(asg[vs[1]], asg[vs[0]]) == asg[vs[2]]))
    for sigma in S.operations(A.max_arity):
        ins, out = S.signature(sigma)
        for os_ in itertools.product(*[A.cats[c].objects for c in ins]):
            y = A.obj(sigma, os_)
            vs = [("o", c, o) for c, o in zip(ins, os_)] + [("o", out, y)]
            constraints.append((vs, lambda asg, vs=vs, sigma=sigma:
                                B.obj(sigma, [asg[v] for v in vs[:-1]]) == asg[vs[-1]]))
        for ms in itertools.product(*[A.cats[c].morphisms for c in ins]):
            y = A.mor(sigma, ms)
            vs = [("m", c, m) for c, m in zip(ins, ms)] + [("m", out, y)]
            constraints.append((vs, lambda asg, vs=vs, sigma=sigma:
                                B.mor(sigma, [asg[v] for v in vs[:-1]]) == asg[vs[-1]]))
    return solve(variables, domains, constraints, limit)


def maps_over(p, q, max_arity=None, limit=None):
    """Operad maps X -> Y with q after the map equal to p, as dicts keyed by
    ('c', colour) and ('o', op)."""
    X, Y = p.source, q.source
    b = _bound(X, max_arity)
    ops = X.operations(b)
    variables, domains, constraints = [], {}, []
    for x in X.colours:
        v = ("c", x)
        variables.append(v)
        domains[v] = [y for y in Y.colours if q.colour(y) == p.colour(x)]
    for xi in ops:
        v = ("o", xi)
        variables.append(v)
        ins, out = X.signature(xi)

        def dom(asg, ins=ins, out=out, xi=xi):
            return [e for e in Y.ops(tuple(asg[("c", c)] for c in ins), asg[("c", out)])
                    if q(e) == p(xi)]
        domains[v] = dom
    for x in X.colours:
        u = X.unit(x)
        constraints.append(([("c", x), ("o", u)],
                            lambda asg, x=x, u=u: asg[("o", u)] == Y.unit(asg[("c", x)])))
    opset = set(ops)
    for xi in ops:
        ins, _ = X.signature(xi)
        for perm in _perms(len(ins)):
            other = X.act(xi, perm)
            constraints.append(([("o", xi), ("o", other)],
                                lambda asg, xi=xi, other=other, perm=perm:
                                Y.act(asg[("o", xi)], perm) == asg[("o", other)]))
        for i, c in enumerate(ins):
            for n in range(0, b - len(ins) + 2):
                for g in X.ops_with_output(c, n):
                    h = X.compose(xi, i, g)
                    if h not in opset:
                        continue
                    vs = [("o", xi), ("o", g), ("o", h)]
                    constraints.append((vs, lambda asg, vs=vs, i=i:
                                        Y.compose(asg[vs[0]], i, asg[vs[1]]) == asg[vs[2]]))
    return solve(variables, domains, constraints, limit)


def _freeze(d):
    return tuple(sorted(((k, v) for k, v in d.items()), key=repr))


def adjunction_check(p, F, max_arity=None):
    """Compare algebra maps St(p) -> F with maps p -> (integral of F) over S."""
    S = p.target
    St = straighten_set(p, max_arity)
    sl = St.slice
    G, proj = groth(S, F, max_arity)
    side_a = algebra_maps(St, F)
    side_b = maps_over(p, proj, max_arity)
    X = p.source
    ops = X.operations(_bound(X, max_arity))

    def gamma(theta):
        out = {}
        for x in X.colours:
            s = p.colour(x)
            o = sl.canon_obj(((x,), S.unit(s)))[0]
            out[("c", x)] = (s, theta[("o", s, o)])
        for xi in ops:
            ins, y = X.signature(xi)
            s = p.colour(y)
            src = sl.canon_obj((tuple(ins), p(xi)))
            tgt = sl.canon_obj(((y,), S.unit(s)))[0]
            mor = sl.move_source((tuple(0 for _ in ins), (xi,)), src[1])
            mor = sl.canon_mor(src[0], tgt, mor)
            f = theta[("m", s, (src[0], tgt, mor))]
            out[("o", xi)] = (p(xi), tuple(out[("c", c)][1] for c in ins), f)
        return out

    images = [_freeze(gamma(t)) for t in side_a]
    targets = set(_freeze(m) for m in side_b)
    injective = len(set(images)) == len(images)
    surjective = set(images) == targets
    return {"ok": injective and surjective and len(side_a) == len(side_b),
            "algebra_maps": len(side_a), "maps_over": len(side_b),
            "injective": injective, "surjective": surjective}


def straightening_is_strict(p, max_arity=None):
    """Check that s -> p/s is a strict algebra (functor laws on the nose)."""
    St = straighten_set(p, max_arity)
    return St.check()


# cleavages

class Cleavage:
    """A choice of coCartesian lift per (operation of S, lifted inputs)."""

    def __init__(self, p, choice, name="K"):
        self.p = p
        self.choice = dict(choice)
        self.name = name

    def __call__(self, sigma, xs):
        try:
            return self.choice[(sigma, tuple(xs))]
        except KeyError:
            raise AlgebraError("cleavage has no lift for %r with inputs %r" % (sigma, tuple(xs)))

    def members(self):
        return set(self.choice.values())

    def check(self, max_arity=None):
        from .lifting import is_cocartesian_op
        X, S, p = self.p.source, self.p.target, self.p
        for (sigma, xs), xi in self.choice.items():
            ins, _ = X.signature(xi)
            if p(xi) != sigma or tuple(ins) != tuple(xs):
                return "lift %r does not match its key" % (xi,)
            for q in _perms(len(xs)):
                if self.choice.get((S.act(sigma, q), _permute(xs, q))) != X.act(xi, q):
                    return "not closed under the symmetric action at %r" % (xi,)
            if not is_cocartesian_op(p, xi, max_arity):
                return "member %r is not coCartesian" % (xi,)
        return None

    def to_json(self):
        return [[_s(s), [_s(x) for x in xs], _s(xi)] for (s, xs), xi in
                sorted(self.choice.items(), key=repr)]


def cleavage_from_json(p, data, max_arity=None):
    """Inverse of Cleavage.to_json, resolving names against p."""
    X, S = p.source, p.target
    b = _bound(X, max_arity)
    sops = {_s(f): f for f in S.operations(b)}
    xops = {_s(f): f for f in X.operations(b)}
    cols = {_s(c): c for c in X.colours}
    choice = {}
    for row in data:
        try:
            s, xs, xi = row
            choice[(sops[s], tuple(cols[x] for x in xs))] = xops[xi]
        except (KeyError, ValueError, TypeError):
            raise AlgebraError("malformed cleavage entry %r" % (row,))
    return Cleavage(p, choice)


def choose_cleavage(p, max_arity=None, prefer="min"):
    """Deterministic Sigma-closed cleavage.

    For each orbit of keys (sigma, xs) the canonical key gets the least (or
    greatest) coCartesian lift fixed by its stabiliser; units are used when
    prefer='min'.
    """
    from .lifting import operation_keys, lifts_of, is_cocartesian_op
    X, S = p.source, p.target
    b = _bound(X, max_arity)
    cc = {}
    choice = {}
    for sigma, xs in operation_keys(p, b):
        if (sigma, xs) in choice:
            continue
        n = len(xs)
        orbit = {(S.act(sigma, q), _permute(xs, q)): q for q in _perms(n)}
        key = min(orbit, key=repr)
        ksig, kxs = key
        stab = [q for q in _perms(n) if (S.act(ksig, q), _permute(kxs, q)) == key]
        cands = []
        for xi in lifts_of(p, ksig, kxs):
            if xi not in cc:
                cc[xi] = is_cocartesian_op(p, xi, b)
            if cc[xi] and all(X.act(xi, q) == xi for q in stab):
                cands.append(xi)
        if not cands:
            raise AlgebraError("no Sigma-compatible coCartesian lift of %r with inputs %r"
                               % (ksig, kxs))
        if prefer == "min" and n == 1 and ksig == S.unit(S.signature(ksig)[1]) \
                and X.unit(kxs[0]) in cands:
            pick = X.unit(kxs[0])
        else:
            ordered = sorted(cands, key=X.sort_key)
            pick = ordered[0] if prefer == "min" else ordered[-1]
        for q in _perms(n):
            choice[(S.act(ksig, q), _permute(kxs, q))] = X.act(pick, q)
    return Cleavage(p, choice, name="K_" + prefer)


# Phi: fibres and pushforward functors

def _fibre(p, s):
    from .lifting import fibre_category
    return fibre_category(p, s)


def phi(p, K, max_arity=None):
    """The weak algebra s -> X_s with sigma acting by pushforward along K."""
    X, S = p.source, p.target
    b = _bound(X, max_arity)
    cats = {s: _fibre(p, s) for s in S.colours}

    def obj(sigma, xs):
        return X.output(K(sigma, xs))

    def mor(sigma, fs):
        ins, out = S.signature(sigma)
        doms = tuple(cats[c].dom(f) for c, f in zip(ins, fs))
        cods = tuple(cats[c].cod(f) for c, f in zip(ins, fs))
        kx, ky = K(sigma, doms), K(sigma, cods)
        target = X.gamma(ky, list(fs))
        D = cats[out]
        sols = [g for g in D.hom(X.output(kx), X.output(ky)) if X.compose(g, 0, kx) == target]
        if len(sols) != 1:
            raise AlgebraError("unique fill fails for %r at %r (%d solutions)"
                               % (sigma, fs, len(sols)))
        return sols[0]

    def comparison(f, i, g, objs):
        fins, out = S.signature(f)
        gins, _ = S.signature(g)
        m = len(gins)
        inner = K(g, objs[i:i + m])
        outer = K(f, objs[:i] + (X.output(inner),) + objs[i + m:])
        both = K(S.compose(f, i, g), objs)
        target = X.compose(outer, i, inner)
        D = cats[out]
        sols = [c for c in D.hom(X.output(both), X.output(outer)) if X.compose(c, 0, both) == target]
        if len(sols) != 1:
            raise AlgebraError("comparison for %r o_%d %r is not unique" % (f, i, g))
        return sols[0]

    A = CatAlgebra(S, cats, obj, mor, comparison=comparison, name="Phi", max_arity=b)
    A.cleavage = K
    return A


def unit_check(S, F, max_arity=None):
    """Phi of the integral of F is isomorphic to F, componentwise and on actions."""
    G, proj = groth(S, F, max_arity)
    K = choose_cleavage(proj, max_arity)
    bad = [k for k, xi in K.choice.items() if xi[2] != F.cats[S.signature(k[0])[1]].identity(
        G.signature(xi)[1][1])]
    P = phi(proj, K, max_arity)
    b = _bound(S, max_arity if max_arity is not None else F.max_arity)
    for s in S.colours:
        C, D = F.cats[s], P.cats[s]
        obj = {x: (s, x) for x in C.objects}
        mor = {m: (S.unit(s), (C.dom(m),), m) for m in C.morphisms}
        if sorted(obj.values(), key=repr) != sorted(D.objects, key=repr) or \
                sorted(mor.values(), key=repr) != sorted(D.morphisms, key=repr):
            return {"ok": False, "where": "fibre at %r" % (s,)}
        for f in C.morphisms:
            for g in C.morphisms:
                if C.cod(f) == C.dom(g) and mor[C.compose(g, f)] != D.compose(mor[g], mor[f]):
                    return {"ok": False, "where": "composition in fibre %r" % (s,)}
    for sigma in S.operations(b):
        ins, out = S.signature(sigma)
        for os_ in itertools.product(*[F.cats[c].objects for c in ins]):
            lifted = tuple((c, o) for c, o in zip(ins, os_))
            if P.obj(sigma, lifted) != (out, F.obj(sigma, os_)):
                return {"ok": False, "where": "objects under %r" % (sigma,)}
        for ms in itertools.product(*[F.cats[c].morphisms for c in ins]):
            lifted = tuple((S.unit(c), (F.cats[c].dom(m),), m) for c, m in zip(ins, ms))
            img = P.mor(sigma, lifted)
            m = F.mor(sigma, ms)
            if img != (S.unit(out), (F.cats[out].dom(m),), m):
                return {"ok": False, "where": "morphisms under %r" % (sigma,)}
    return {"ok": not bad, "cleavage_is_identities": not bad}


def groth_of_cleaved(p, K, max_arity=None):
    """The integral of Phi(p) built from the cleaved data."""
    X, S = p.source, p.target
    A = phi(p, K, max_arity)
    b = A.max_arity
    colours = [(p.colour(x), x) for x in X.colours]
    ops = {}
    for sigma in S.operations(b):
        ins, out = S.signature(sigma)
        D = A.cats[out]
        for xs in itertools.product(*[A.cats[c].objects for c in ins]):
            src = A.obj(sigma, xs)
            for f in D.morphisms:
                if D.dom(f) == src:
                    ops[(sigma, xs, f)] = (tuple(zip(ins, xs)), (out, D.cod(f)))

    def unit(c):
        s, x = c
        kappa = K(S.unit(s), (x,))
        D = A.cats[s]
        (inv,) = [f for f in D.hom(X.output(kappa), x) if X.compose(f, 0, kappa) == X.unit(x)]
        return (S.unit(s), (x,), inv)

    units = {c: unit(c) for c in colours}

    def compose(a, i, c):
        sigma, xs, f = a
        tau, zs, g = c
        ins, out = S.signature(sigma)
        D = A.cats[out]
        ids = [A.cats[d].identity(x) for d, x in zip(ins, xs)]
        ids[i] = g
        new_xs = xs[:i] + zs + xs[i + 1:]
        comp = A.comparison(sigma, i, tau, new_xs)
        return (S.compose(sigma, i, tau), new_xs,
                D.compose(f, D.compose(A.mor(sigma, ids), comp)))

    def act(a, perm):
        sigma, xs, f = a
        return (S.act(sigma, perm), _permute(xs, perm), f)

    G = FiniteOperad(colours, ops, units, compose, act, name="int(Phi)")
    proj = OperadMorphism(G, S, {c: c[0] for c in colours}, lambda a: a[0], name="pi")
    return G, proj


def counit(p, K, max_arity=None):
    """The operad map from the integral of Phi(p) to X: (sigma, xs, f) -> f o lift."""
    X = p.source
    G, proj = groth_of_cleaved(p, K, max_arity)
    return OperadMorphism(G, X, {c: c[1] for c in G.colours},
                          lambda a: X.compose(a[2], 0, K(a[0], a[1])), name="counit")


def counit_check(p, K, max_arity=None, search_iso=False):
    """The counit is an operad isomorphism over S."""
    X = p.source
    eps = counit(p, K, max_arity)
    G = eps.source
    prob = eps.check(max_arity)
    if prob:
        return {"ok": False, "where": prob}
    img = [eps(a) for a in G.operations(max_arity)]
    ops = X.operations(max_arity)
    bij = len(set(img)) == len(img) and set(img) == set(ops)
    over = all(p(eps(a)) == a[0] for a in G.operations(max_arity))
    res = {"ok": bij and over, "bijective": bij, "over_S": over}
    if search_iso:
        res["iso_found"] = find_isomorphism(tabulate(G, max_arity), tabulate(X, max_arity)) is not None
        res["ok"] = res["ok"] and res["iso_found"]
    return res


def compare_cleavages(p, K1, K2, max_arity=None):
    """The canonical vertical isos u with u o K1(sigma, xs) = K2(sigma, xs),
    checked to be natural between the two pushforward functors."""
    X, S = p.source, p.target
    A1, A2 = phi(p, K1, max_arity), phi(p, K2, max_arity)
    b = A1.max_arity
    u = {}
    for key, k1 in K1.choice.items():
        k2 = K2(*key)
        D = A1.cats[S.signature(key[0])[1]]
        sols = [m for m in D.hom(X.output(k1), X.output(k2)) if X.compose(m, 0, k1) == k2]
        if len(sols) != 1 or not D.is_iso(sols[0]):
            return {"ok": False, "where": "no unique iso at %r" % (key,)}
        u[key] = sols[0]
    for sigma in S.operations(b):
        ins, out = S.signature(sigma)
        D = A1.cats[out]
        for ms in itertools.product(*[A1.cats[c].morphisms for c in ins]):
            doms = tuple(A1.cats[c].dom(m) for c, m in zip(ins, ms))
            cods = tuple(A1.cats[c].cod(m) for c, m in zip(ins, ms))
            lhs = D.compose(u[(sigma, cods)], A1.mor(sigma, ms))
            rhs = D.compose(A2.mor(sigma, ms), u[(sigma, doms)])
            if lhs != rhs:
                return {"ok": False, "where": "naturality at %r" % (sigma,)}
    nontrivial = sum(1 for k, m in u.items() if not X.is_unit(m))
    return {"ok": True, "isos": u, "nonidentity_components": nontrivial}


def groupoid_restriction_check(S=None, F=None, p=None, max_arity=None):
    """F in groupoids gives an integral opfibered in groupoids; a groupoid
    opfibration gives groupoid fibres under Phi."""
    from .lifting import is_opfibered_in_groupoids
    out = {}
    if F is not None:
        G, proj = groth(S, F, max_arity)
        grp = all(C.is_groupoid() for C in F.cats.values())
        v = is_opfibered_in_groupoids(proj, max_arity)
        out["algebra_in_groupoids"] = grp
        out["integral_opfibered_in_groupoids"] = bool(v)
        out["ok_integral"] = (not grp) or bool(v)
    if p is not None:
        v = is_opfibered_in_groupoids(p, max_arity)
        out["map_opfibered_in_groupoids"] = bool(v)
        if v:
            A = phi(p, choose_cleavage(p, max_arity), max_arity)
            out["fibres_groupoids"] = all(C.is_groupoid() for C in A.cats.values())
            out["ok_phi"] = out["fibres_groupoids"]
    out["ok"] = out.get("ok_integral", True) and out.get("ok_phi", True)
    return out
