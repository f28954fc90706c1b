"""Finite coloured symmetric operads in Sets.

Operations are stored per ordered signature.  The action of a permutation
`perm` (a tuple) sends an operation with inputs c_0..c_{n-1} to one with
inputs c_{perm[0]}..c_{perm[n-1]}; with this convention
act(act(f, s), t) == act(f, compose_perm(s, t)) where
compose_perm(s, t)[j] == s[t[j]].
"""

import itertools
import json
from collections import namedtuple

from .trees import Tree


class OperadError(ValueError):
    pass


def compose_perm(s, t):
    return tuple(s[j] for j in t)


def inverse_perm(s):
    inv = [0] * len(s)
    for j, k in enumerate(s):
        inv[k] = j
    return tuple(inv)


def identity_perm(n):
    return tuple(range(n))


def adjacent_transpositions(n):
    out = []
    for k in range(n - 1):
        p = list(range(n))
        p[k], p[k + 1] = p[k + 1], p[k]
        out.append(tuple(p))
    return out


def _key(x):
    return repr(x)


class Operad:
    """Interface shared by table-backed and computed operads."""

    colours = ()
    max_arity = None
    name = "P"

    def signature(self, op):
        raise NotImplementedError

    def ops(self, inputs, output):
        raise NotImplementedError

    def ops_with_output(self, c, arity):
        """All ops with output c and the given arity (any input colours)."""
        raise NotImplementedError

    def unit(self, c):
        raise NotImplementedError

    def compose(self, f, i, g):
        raise NotImplementedError

    def act(self, f, perm):
        raise NotImplementedError

    def operations(self, max_arity=None):
        bound = self.max_arity if max_arity is None else max_arity
        if bound is None:
            raise OperadError("operad has unbounded arity; pass max_arity")
        out = []
        for c in self.colours:
            for n in range(bound + 1):
                out.extend(self.ops_with_output(c, n))
        return out

    def sort_key(self, op):
        return _key(op)

    def arity(self, op):
        return len(self.signature(op)[0])

    def inputs(self, op):
        return self.signature(op)[0]

    def output(self, op):
        return self.signature(op)[1]

    def gamma(self, f, gs):
        """Full composition f(g_0, ..., g_{n-1})."""
        gs = list(gs)
        if len(gs) != self.arity(f):
            raise OperadError("wrong number of operations to plug in")
        h = f
        for i in reversed(range(len(gs))):
            h = self.compose(h, i, gs[i])
        return h

    def orbit_representatives(self, max_arity=None):
        seen, reps = set(), []
        for f in sorted(self.operations(max_arity), key=self.sort_key):
            if f in seen:
                continue
            n = self.arity(f)
            orbit = {self.act(f, p) for p in itertools.permutations(range(n))}
            seen |= orbit
            reps.append(min(orbit, key=self.sort_key))
        return reps

    def is_unit(self, f):
        ins, out = self.signature(f)
        return len(ins) == 1 and f == self.unit(out)

    def __repr__(self):
        return "<%s %s: %d colours>" % (type(self).__name__, self.name, len(self.colours))


class FiniteOperad(Operad):
    """An operad given by explicit operation sets and composition data.

    `ops` maps each operation id to (inputs tuple, output).  `compose` and
    `act` may be dicts keyed by (f, i, g) and (f, perm) or callables.
    Actions by the identity permutation are implicit.
    """

    def __init__(self, colours, ops, units, compose, act=None, name="P", sort_key=None):
        self.colours = tuple(colours)
        self._sig = {f: (tuple(s[0]), s[1]) for f, s in ops.items()}
        self._units = dict(units)
        self._compose = compose
        self._act = act
        self.name = name
        self._sort_key = sort_key
        self._by_sig = {}
        self._by_out = {}
        for f, (ins, out) in self._sig.items():
            self._by_sig.setdefault((ins, out), []).append(f)
            self._by_out.setdefault((out, len(ins)), []).append(f)
        for lst in list(self._by_sig.values()) + list(self._by_out.values()):
            lst.sort(key=self.sort_key)
        self.max_arity = max([len(s[0]) for s in self._sig.values()] or [0])
        for c in self.colours:
            u = self._units.get(c)
            if u is None or self._sig.get(u) != ((c,), c):
                raise OperadError("missing or malformed unit at colour %r" % (c,))

    def sort_key(self, op):
        if self._sort_key is not None:
            return self._sort_key(op)
        return _key(op)

    def signature(self, op):
        try:
            return self._sig[op]
        except KeyError:
            raise OperadError("unknown operation %r" % (op,))

    def ops(self, inputs, output):
        return self._by_sig.get((tuple(inputs), output), [])

    def ops_with_output(self, c, arity):
        return self._by_out.get((c, arity), [])

    def operations(self, max_arity=None):
        ops = list(self._sig)
        if max_arity is not None:
            ops = [f for f in ops if len(self._sig[f][0]) <= max_arity]
        return sorted(ops, key=self.sort_key)

    def unit(self, c):
        return self._units[c]

    def compose(self, f, i, g):
        ins, _ = self.signature(f)
        gins, gout = self.signature(g)
        if not 0 <= i < len(ins) or ins[i] != gout:
            raise OperadError("cannot compose %r at %d with %r" % (f, i, g))
        if f == self._units.get(gout) and i == 0:
            return g
        if g == self._units.get(gout):
            return f
        if callable(self._compose):
            return self._compose(f, i, g)
        try:
            return self._compose[(f, i, g)]
        except KeyError:
            raise OperadError("composition %r o_%d %r not tabulated" % (f, i, g))

    def act(self, f, perm):
        perm = tuple(perm)
        if perm == identity_perm(len(perm)):
            if len(perm) != self.arity(f):
                raise OperadError("permutation of wrong size")
            return f
        if self._act is None:
            raise OperadError("no symmetric action given")
        if callable(self._act):
            return self._act(f, perm)
        try:
            return self._act[(f, perm)]
        except KeyError:
            raise OperadError("action of %r on %r not tabulated" % (perm, f))


def tabulate(P, max_arity=None, name=None):
    """Copy any finite-arity operad into explicit tables."""
    ops = {f: P.signature(f) for f in P.operations(max_arity)}
    comp, act = {}, {}
    for f in ops:
        ins, _ = ops[f]
        for i, c in enumerate(ins):
            for n in range(0, (max_arity or P.max_arity) - len(ins) + 2):
                for g in P.ops_with_output(c, n):
                    if g in ops:
                        comp[(f, i, g)] = P.compose(f, i, g)
        for p in itertools.permutations(range(len(ins))):
            act[(f, p)] = P.act(f, p)
    units = {c: P.unit(c) for c in P.colours}
    return FiniteOperad(P.colours, ops, units, comp, act, name=name or P.name,
                        sort_key=P.sort_key)


class FreeOperad(Operad):
    """The operad Omega(T): operations are (ordered leaves, root) of subtrees."""

    def __init__(self, T):
        self.tree = T
        self.colours = tuple(sorted(T.edges))
        self.name = "Omega(%s)" % T.root
        self.max_arity = max(len(L) for c in T.edges for L in T.cuts(c))

    def signature(self, op):
        leaves, root = op
        return tuple(leaves), root

    def ops(self, inputs, output):
        op = (tuple(inputs), output)
        return [op] if self.tree.has_operation(output, inputs) else []

    def ops_with_output(self, c, arity):
        out = []
        for L in sorted(self.tree.cuts(c), key=sorted):
            if len(L) == arity:
                out.extend((p, c) for p in itertools.permutations(sorted(L)))
        return out

    def orbit_representatives(self, max_arity=None):
        out = []
        for c in self.colours:
            for L in sorted(self.tree.cuts(c), key=sorted):
                if max_arity is None or len(L) <= max_arity:
                    out.append((tuple(sorted(L)), c))
        return out

    def unit(self, c):
        return ((c,), c)

    def compose(self, f, i, g):
        (L1, c), (L2, d) = f, g
        if L1[i] != d:
            raise OperadError("cannot compose")
        return (L1[:i] + L2 + L1[i + 1:], c)

    def act(self, f, perm):
        L, c = f
        return (tuple(L[j] for j in perm), c)


def free_operad(T):
    return FreeOperad(T)


class TerminalOperad(Operad):
    """One colour '*' and exactly one operation (its arity) in each arity."""

    colours = ("*",)
    name = "Comm"

    def __init__(self, max_arity=None):
        self.max_arity = max_arity

    def signature(self, op):
        return ("*",) * op, "*"

    def ops(self, inputs, output):
        if output != "*" or any(c != "*" for c in inputs):
            return []
        if self.max_arity is not None and len(inputs) > self.max_arity:
            return []
        return [len(inputs)]

    def ops_with_output(self, c, arity):
        return self.ops(("*",) * arity, c)

    def unit(self, c):
        return 1

    def compose(self, f, i, g):
        return f + g - 1

    def act(self, f, perm):
        return f


def terminal_operad():
    return TerminalOperad()


def operad_from_category(C, name=None):
    """View a finite category as an operad with only unary operations."""
    ops = {m: ((C.dom(m),), C.cod(m)) for m in C.morphisms}
    units = {x: C.identity(x) for x in C.objects}
    return FiniteOperad(C.objects, ops, units,
                        lambda f, i, g: C.compose(f, g),
                        name=name or getattr(C, "name", "C"))


# axioms

AxiomReport = namedtuple("AxiomReport", ["ok", "violation", "witness"])


def _ins_after_compose(ins, i, gins):
    return ins[:i] + tuple(gins) + ins[i + 1:]


def _perm_matching(new_tags, old_tags):
    pos = {t: k for k, t in enumerate(old_tags)}
    return tuple(pos[t] for t in new_tags)


def check_axioms(P, max_arity=None, orbit_reps=False):
    """Exhaustively check unit, associativity and equivariance laws.

    With orbit_reps=True the composition laws are checked on Sigma-orbit
    representatives only and equivariance on adjacent transpositions; given
    the group action law this implies the full set of axioms.
    Returns an AxiomReport naming the first violated law.
    """
    bound = P.max_arity if max_arity is None else max_arity
    if bound is None:
        raise OperadError("pass max_arity for an operad of unbounded arity")
    if orbit_reps:
        ops = P.orbit_representatives(bound)
    else:
        ops = P.operations(bound)

    def fail(name, *wit):
        return AxiomReport(False, name, wit)

    for c in P.colours:
        u = P.unit(c)
        if P.signature(u) != ((c,), c):
            return fail("unit signature", c, u)
    by_out = {}

    def partners(c, room):
        key = (c, room)
        if key not in by_out:
            lst = []
            for n in range(0, room + 1):
                if orbit_reps:
                    lst.extend(g for g in ops if P.output(g) == c and P.arity(g) == n)
                else:
                    lst.extend(P.ops_with_output(c, n))
            by_out[key] = lst
        return by_out[key]

    def room_for(f):
        return bound - P.arity(f) + 1

    for f in ops:
        ins, out = P.signature(f)
        try:
            if P.compose(P.unit(out), 0, f) != f:
                return fail("left unit", f)
            for i, c in enumerate(ins):
                if P.compose(f, i, P.unit(c)) != f:
                    return fail("right unit", f, i)
        except OperadError as exc:
            return fail("unit composition undefined: %s" % exc, f)
        # signatures of composites and associativity
        for i, c in enumerate(ins):
            for g in partners(c, room_for(f)):
                try:
                    fg = P.compose(f, i, g)
                except OperadError as exc:
                    return fail("composition undefined: %s" % exc, f, i, g)
                gins = P.inputs(g)
                if P.signature(fg) != (_ins_after_compose(ins, i, gins), out):
                    return fail("composite signature", f, i, g)
                m = len(gins)
                # sequential associativity
                for j, d in enumerate(gins):
                    for h in partners(d, bound - P.arity(fg) + 1):
                        lhs = P.compose(fg, i + j, h)
                        rhs = P.compose(f, i, P.compose(g, j, h))
                        if lhs != rhs:
                            return fail("sequential associativity", f, i, g, j, h)
                # parallel associativity
                for k, e in enumerate(ins):
                    if k <= i:
                        continue
                    for h in partners(e, bound - P.arity(fg) + 1):
                        lhs = P.compose(fg, k + m - 1, h)
                        rhs = P.compose(P.compose(f, k, h), i, g)
                        if lhs != rhs:
                            return fail("parallel associativity", f, i, g, k, h)
        # action laws
        n = len(ins)
        perms = adjacent_transpositions(n) if orbit_reps else list(itertools.permutations(range(n)))
        for s in perms:
            try:
                fs = P.act(f, s)
            except OperadError as exc:
                return fail("action undefined: %s" % exc, f, s)
            if P.signature(fs) != (tuple(ins[s[j]] for j in range(n)), out):
                return fail("action signature", f, s)
            if not orbit_reps:
                for t in perms:
                    if P.act(fs, t) != P.act(f, compose_perm(s, t)):
                        return fail("action is not a group action", f, s, t)
            # equivariance in the outer operation
            for j in range(n):
                for g in partners(ins[s[j]], room_for(f)):
                    m = P.arity(g)
                    lhs = P.compose(fs, j, g)
                    base = P.compose(f, s[j], g)
                    old = [("f", q) for q in range(n) if q < s[j]] + \
                          [("g", t) for t in range(m)] + \
                          [("f", q) for q in range(n) if q > s[j]]
                    new = []
                    for k in range(n):
                        if k == j:
                            new.extend(("g", t) for t in range(m))
                        else:
                            new.append(("f", s[k]))
                    if lhs != P.act(base, _perm_matching(new, old)):
                        return fail("equivariance (outer)", f, s, j, g)
        # equivariance in the inner operation
        for i, c in enumerate(ins):
            for g in partners(c, room_for(f)):
                m = P.arity(g)
                gperms = adjacent_transpositions(m) if orbit_reps else \
                    list(itertools.permutations(range(m)))
                for t in gperms:
                    lhs = P.compose(f, i, P.act(g, t))
                    perm = tuple(range(i)) + tuple(i + t[k] for k in range(m)) + \
                        tuple(range(i + m, n + m - 1))
                    if lhs != P.act(P.compose(f, i, g), perm):
                        return fail("equivariance (inner)", f, i, g, t)
    if orbit_reps:
        # group action law on generators for representatives
        for f in ops:
            n = P.arity(f)
            for s in adjacent_transpositions(n):
                if P.act(P.act(f, s), s) != f:
                    return fail("action is not a group action", f, s, s)
    return AxiomReport(True, None, ())


# morphisms

class OperadMorphism:
    def __init__(self, source, target, colour_map, op_map, name="f"):
        self.source = source
        self.target = target
        self.colour_map = dict(colour_map)
        self._op_map = op_map
        self.name = name

    def colour(self, c):
        return self.colour_map[c]

    def __call__(self, op):
        if callable(self._op_map):
            return self._op_map(op)
        return self._op_map[op]

    def compose(self, other):
        """self after other."""
        return OperadMorphism(other.source, self.target,
                              {c: self.colour_map[other.colour_map[c]] for c in other.source.colours},
                              lambda op: self(other(op)),
                              name="%s.%s" % (self.name, other.name))

    def check(self, max_arity=None):
        """Return None when the map is a morphism, else a description."""
        P, Q = self.source, self.target
        for c in P.colours:
            if self.colour_map.get(c) not in Q.colours:
                return "colour %r not mapped into target" % (c,)
            if self(P.unit(c)) != Q.unit(self.colour_map[c]):
                return "unit at %r not preserved" % (c,)
        ops = P.operations(max_arity)
        for f in ops:
            ins, out = P.signature(f)
            img = self(f)
            if Q.signature(img) != (tuple(self.colour_map[c] for c in ins), self.colour_map[out]):
                return "signature of %r not preserved" % (f,)
            for p in itertools.permutations(range(len(ins))):
                if self(P.act(f, p)) != Q.act(img, p):
                    return "action on %r by %r not preserved" % (f, p)
        bound = P.max_arity if max_arity is None else max_arity
        for f in ops:
            ins, _ = P.signature(f)
            for i, c in enumerate(ins):
                for n in range(0, bound - len(ins) + 2):
                    for g in P.ops_with_output(c, n):
                        if self(P.compose(f, i, g)) != Q.compose(self(f), i, self(g)):
                            return "composition %r o_%d %r not preserved" % (f, i, g)
        return None

    def __repr__(self):
        return "<OperadMorphism %s: %s -> %s>" % (self.name, self.source.name, self.target.name)


def identity_morphism(P):
    return OperadMorphism(P, P, {c: c for c in P.colours}, lambda op: op, name="id")


def free_operad_map(alpha):
    """The operad map Omega(S) -> Omega(T) induced by an Omega-morphism."""
    P, Q = FreeOperad(alpha.source), FreeOperad(alpha.target)
    f = alpha.edge_map
    return OperadMorphism(P, Q, dict(f),
                          lambda op: (tuple(f[c] for c in op[0]), f[op[1]]))


def to_terminal(P):
    T = TerminalOperad()
    return OperadMorphism(P, T, {c: "*" for c in P.colours},
                          lambda op: P.arity(op), name="!")


def find_isomorphism(P, Q, max_arity=None):
    """Search for an operad isomorphism P -> Q; returns an OperadMorphism or None."""
    bound = max(P.max_arity or 0, Q.max_arity or 0) if max_arity is None else max_arity
    pops, qops = P.operations(bound), Q.operations(bound)
    if len(P.colours) != len(Q.colours) or len(pops) != len(qops):
        return None

    def profile(R, ops):
        prof = {}
        for c in R.colours:
            counts = {}
            for f in ops:
                ins, out = R.signature(f)
                if out == c:
                    counts[("out", len(ins))] = counts.get(("out", len(ins)), 0) + 1
                for x in ins:
                    if x == c:
                        counts[("in", len(ins))] = counts.get(("in", len(ins)), 0) + 1
            prof[c] = tuple(sorted(counts.items()))
        return prof

    pp, qp = profile(P, pops), profile(Q, qops)
    pcols = sorted(P.colours, key=_key)
    for image in itertools.permutations(sorted(Q.colours, key=_key)):
        cmap = dict(zip(pcols, image))
        if any(pp[c] != qp[cmap[c]] for c in pcols):
            continue
        sig_ok = True
        for f in pops:
            ins, out = P.signature(f)
            if len(P.ops(ins, out)) != len(Q.ops(tuple(cmap[c] for c in ins), cmap[out])):
                sig_ok = False
                break
        if not sig_ok:
            continue
        found = _match_ops(P, Q, cmap, pops, bound)
        if found is not None:
            return OperadMorphism(P, Q, cmap, dict(found), name="iso")
    return None


def _match_ops(P, Q, cmap, pops, bound):
    order = sorted(pops, key=lambda f: (P.arity(f), P.sort_key(f)))

    def propagate(assign, inv, todo):
        while todo:
            f = todo.pop()
            g = assign[f]
            new = []
            for p in itertools.permutations(range(P.arity(f))):
                new.append((P.act(f, p), Q.act(g, p)))
            for f2 in list(assign):
                g2 = assign[f2]
                for a, b, x, y in ((f, g, f2, g2), (f2, g2, f, g)):
                    ins = P.inputs(a)
                    for i, c in enumerate(ins):
                        if P.output(x) == c and P.arity(a) + P.arity(x) - 1 <= bound:
                            new.append((P.compose(a, i, x), Q.compose(b, i, y)))
            for a, b in new:
                if a in assign:
                    if assign[a] != b:
                        return False
                elif b in inv:
                    return False
                else:
                    assign[a] = b
                    inv[b] = a
                    todo.append(a)
        return True

    def search(assign, inv):
        rest = [f for f in order if f not in assign]
        if not rest:
            return assign
        f = rest[0]
        ins, out = P.signature(f)
        for g in Q.ops(tuple(cmap[c] for c in ins), cmap[out]):
            if g in inv:
                continue
            a2, i2 = dict(assign), dict(inv)
            a2[f] = g
            i2[g] = f
            if propagate(a2, i2, [f]):
                res = search(a2, i2)
                if res is not None:
                    return res
        return None

    start, inv = {}, {}
    for c in P.colours:
        start[P.unit(c)] = Q.unit(cmap[c])
        inv[Q.unit(cmap[c])] = P.unit(c)
    if not propagate(start, inv, list(start)):
        return None
    return search(start, inv)


# JSON

def _name(op):
    return op if isinstance(op, str) else json.dumps(op, default=str)


def operad_to_json(P, max_arity=None):
    ops = P.operations(max_arity)
    names = {f: _name(f) for f in ops}
    if len(set(names.values())) != len(names):
        names = {f: "op%d" % k for k, f in enumerate(ops)}
    comp = {}
    act = {}
    bound = P.max_arity if max_arity is None else max_arity
    for f in ops:
        ins, _ = P.signature(f)
        for i, c in enumerate(ins):
            for n in range(0, bound - len(ins) + 2):
                for g in P.ops_with_output(c, n):
                    if g in names:
                        h = P.compose(f, i, g)
                        if h in names:
                            comp.setdefault(names[f], {}).setdefault(str(i), {})[names[g]] = names[h]
        for p in itertools.permutations(range(len(ins))):
            if p != identity_perm(len(ins)):
                act.setdefault(names[f], []).append([list(p), names[P.act(f, p)]])
    return {
        "name": P.name,
        "colours": [str(c) for c in P.colours],
        "operations": [{"name": names[f], "inputs": [str(c) for c in P.inputs(f)],
                        "output": str(P.output(f))} for f in ops],
        "units": {str(c): names[P.unit(c)] for c in P.colours},
        "composition": comp,
        "action": act,
    }


def operad_from_json(data, validate=True):
    if isinstance(data, str):
        data = json.loads(data)
    try:
        colours = list(data["colours"])
        ops = {o["name"]: (tuple(o["inputs"]), o["output"]) for o in data["operations"]}
        units = dict(data["units"])
        comp = {}
        for f, row in data.get("composition", {}).items():
            for i, col in row.items():
                for g, h in col.items():
                    comp[(f, int(i), g)] = h
        act = {}
        for f, rows in data.get("action", {}).items():
            for p, g in rows:
                act[(f, tuple(p))] = g
    except (KeyError, TypeError) as exc:
        raise OperadError("malformed operad JSON: %s" % exc)
    P = FiniteOperad(colours, ops, units, comp, act, name=data.get("name", "P"))
    if validate:
        rep = check_axioms(P)
        if not rep.ok:
            raise OperadError("operad axioms fail: %s at %r" % (rep.violation, rep.witness))
    return P


def morphism_to_json(f, max_arity=None):
    P, Q = f.source, f.target
    pj, qj = operad_to_json(P, max_arity), operad_to_json(Q, max_arity)
    pops = P.operations(max_arity)
    qops = Q.operations(max_arity)
    pn = dict(zip(pops, [o["name"] for o in pj["operations"]]))
    qn = dict(zip(qops, [o["name"] for o in qj["operations"]]))
    return {"source": pj, "target": qj,
            "colours": {str(c): str(f.colour(c)) for c in P.colours},
            "operations": {pn[op]: qn[f(op)] for op in pops}}


def morphism_from_json(data, validate=True):
    if isinstance(data, str):
        data = json.loads(data)
    P = operad_from_json(data["source"], validate)
    Q = operad_from_json(data["target"], validate)
    f = OperadMorphism(P, Q, data["colours"], dict(data["operations"]))
    if validate:
        prob = f.check()
        if prob:
            raise OperadError("not an operad morphism: %s" % prob)
    return f


# a few small operads used throughout tests and demos

def monoid_operad(elements, mul, unit, name="M"):
    """One colour, unary operations only: a finite monoid."""
    ops = {m: (("*",), "*") for m in elements}
    return FiniteOperad(["*"], ops, {"*": unit}, lambda f, i, g: mul(f, g), name=name)


def tree_operad(text):
    from .trees import parse_tree
    return FreeOperad(parse_tree(text))


def tau_d(X, vertex_bound=2, max_arity=3, name=None):
    """Left adjoint to the nerve on bounded inputs; see dendro.presentation."""
    from .presentation import tau_d as build
    return build(X, vertex_bound, max_arity, name)


__all__ = [n for n in dir() if not n.startswith("_") and n not in ("itertools", "json", "namedtuple", "Tree")]
