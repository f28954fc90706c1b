"""Small named examples: operad maps, algebras and tree algebras.

Each map constructor returns an OperadMorphism; `battery()` lists them with
the facts expected of them.
"""

from .trees import parse_tree, corolla
from .operads import (FiniteOperad, OperadMorphism, free_operad, identity_morphism,
                      operad_from_category, monoid_operad)
from .categories import FiniteCategory, cyclic_group, arrow, codiscrete, discrete, terminal_category
from .grothendieck import CatAlgebra, algebra_from_generators, groth, SetAlgebra


def _z2():
    G = cyclic_group(2)
    (e,) = [m for m in G.morphisms if G.is_identity(m)]
    (g,) = [m for m in G.morphisms if not G.is_identity(m)]
    return G, e, g


def z2_sum_algebra():
    """Over the free operad on C_2: every fibre is Z/2, the vertex adds."""
    S = free_operad(corolla(2))
    G, e, g = _z2()
    (o,) = G.objects

    def mor(op, ms):
        return g if sum(1 for m in ms if m == g) % 2 else e
    return CatAlgebra(S, {c: G for c in S.colours}, lambda op, xs: o, mor, name="Z2sum")


def arrow_algebra():
    """Over the free operad on C_1: both fibres the arrow 0 -> 1, the vertex acts by identity."""
    S = free_operad(corolla(1))
    A = arrow(1)
    return CatAlgebra(S, {c: A for c in S.colours}, lambda op, xs: xs[0], lambda op, ms: ms[0],
                      name="arrow")


def swap_algebra():
    """Over the free operad on C_1: fibres the walking isomorphism; the vertex swaps a and b."""
    S = free_operad(corolla(1))
    I = codiscrete(["a", "b"], name="iso")
    sw = {"a": "b", "b": "a"}

    def mor(op, ms):
        (m,) = ms
        if op[0] == (op[1],):
            return m
        a, b = I.dom(m), I.cod(m)
        (n,) = I.hom(sw[a], sw[b])
        return n
    return CatAlgebra(S, {c: I for c in S.colours},
                      lambda op, xs: xs[0] if op[0] == (op[1],) else sw[xs[0]], mor, name="swap")


def discrete_two_algebra():
    """Over the free operad on C_1: the discrete category {0, 1} at each colour, vertex by identity."""
    S = free_operad(corolla(1))
    D = discrete([0, 1], name="2")
    return CatAlgebra(S, {c: D for c in S.colours}, lambda op, xs: xs[0], lambda op, ms: ms[0],
                      name="disc2")


def terminal_algebra(S, max_arity=None):
    C = terminal_category()
    (o,), (m,) = C.objects, C.morphisms
    return CatAlgebra(S, {c: C for c in S.colours}, lambda op, xs: o, lambda op, ms: m,
                      name="terminal", max_arity=max_arity)


def strict_algebras():
    return [z2_sum_algebra(), arrow_algebra(), swap_algebra(), discrete_two_algebra(),
            terminal_algebra(free_operad(parse_tree("(node r (node e a b) c)")))]


# operad maps

def planted_category_over_arrow():
    """x over 0, y over 1, f, g: x -> y and a vertical idempotent u with u f = g.

    Opfibered (f is coCartesian, g is not) but u is not invertible.
    """
    C = FiniteCategory(["x", "y"], {"ix": ("x", "x"), "iy": ("y", "y"), "f": ("x", "y"),
                                    "g": ("x", "y"), "u": ("y", "y")},
                       {"x": "ix", "y": "iy"}, {("u", "f"): "g", ("u", "g"): "g", ("u", "u"): "u"},
                       name="fgu")
    P, S = operad_from_category(C), operad_from_category(arrow(1))
    return OperadMorphism(P, S, {"x": 0, "y": 1},
                          {"ix": (0, 0), "iy": (1, 1), "f": (0, 1), "g": (0, 1), "u": (1, 1)},
                          name="fgu")


def planted_two_targets():
    """x over 0 with two unrelated arrows to y1, y2 over 1: no coCartesian lift."""
    C = FiniteCategory(["x", "y1", "y2"],
                       {"ix": ("x", "x"), "i1": ("y1", "y1"), "i2": ("y2", "y2"),
                        "f1": ("x", "y1"), "f2": ("x", "y2")},
                       {"x": "ix", "y1": "i1", "y2": "i2"}, {}, name="split")
    P, S = operad_from_category(C), operad_from_category(arrow(1))
    return OperadMorphism(P, S, {"x": 0, "y1": 1, "y2": 1},
                          {"ix": (0, 0), "i1": (1, 1), "i2": (1, 1), "f1": (0, 1), "f2": (0, 1)},
                          name="split")


def z2_action_groupoid():
    """The action groupoid of Z/2 on {a, b} over the one-object groupoid Z/2."""
    mors = {("a", 0): ("a", "a"), ("b", 0): ("b", "b"), ("a", 1): ("a", "b"), ("b", 1): ("b", "a")}

    def comp(g, f):
        return (f[0], (f[1] + g[1]) % 2)
    C = FiniteCategory(["a", "b"], mors, {"a": ("a", 0), "b": ("b", 0)}, comp, name="Z2//Z2")
    G, e, g = _z2()
    P, S = operad_from_category(C), operad_from_category(G)
    (o,) = G.objects
    return OperadMorphism(P, S, {"a": o, "b": o}, lambda m: g if m[1] else e, name="action")


def free_identity(text, name=None):
    P = free_operad(parse_tree(text))
    f = identity_morphism(P)
    f.name = name or "id " + text
    return f


def groth_projection(F):
    G, p = groth(F.operad, F)
    p.name = "int " + F.name
    return p


def battery():
    """(name, map, facts) with facts among opfibered / groupoids."""
    return [
        ("int Z2sum", groth_projection(z2_sum_algebra()), {"opfibered": True, "groupoids": True}),
        ("int arrow", groth_projection(arrow_algebra()), {"opfibered": True, "groupoids": False}),
        ("id free V", free_identity("(node r (node e a b) c)", "id V"),
         {"opfibered": True, "groupoids": True}),
        ("fgu", planted_category_over_arrow(), {"opfibered": True, "groupoids": False}),
        ("split", planted_two_targets(), {"opfibered": False, "groupoids": False}),
        ("Z2 action", z2_action_groupoid(), {"opfibered": True, "groupoids": True}),
        ("id free C0", free_identity("(node e0)", "id C0"), {"opfibered": True, "groupoids": True}),
        ("int swap", groth_projection(swap_algebra()), {"opfibered": True, "groupoids": True}),
    ]


# Set-valued algebras for the coYoneda checks

def set_algebras():
    """(S, colour, F) triples."""
    out = []
    C2 = corolla(2)
    out.append(algebra_from_generators(C2, {"e0": [0, 1, 2], "e1": [0, 1], "e2": [0, 1]},
                                       {"e0": lambda a, b: a + b}, name="sum"))
    out.append(algebra_from_generators(C2, {"e0": [0, 1], "e1": [0, 1], "e2": [0, 1]},
                                       {"e0": lambda a, b: a * b}, name="and"))
    C1 = corolla(1)
    out.append(algebra_from_generators(C1, {"e0": [0, 1], "e1": [0, 1, 2]},
                                       {"e0": lambda a: a % 2}, name="mod2"))
    V = parse_tree("(node r (node e a b) c)")
    out.append(algebra_from_generators(V, {"r": [0, 1], "e": [0, 1], "a": [0, 1], "b": [0], "c": [0, 1]},
                                       {"r": lambda c, e: max(c, e), "e": lambda a, b: a}, name="maxV"))
    St = parse_tree("(node r (node s) a)")
    out.append(algebra_from_generators(St, {"r": [0, 1, 2], "s": [0, 1], "a": [0, 1]},
                                       {"r": lambda a, s: a + s, "s": lambda: 1}, name="stump"))
    M = monoid_operad([0, 1, 2], lambda a, b: (a + b) % 3, 0, name="Z3")
    out.append(SetAlgebra(M, {"*": [0, 1, 2]}, lambda op, xs: (op + xs[0]) % 3, name="Z3reg"))
    out.append(SetAlgebra(M, {"*": ["p"]}, lambda op, xs: "p", name="Z3pt"))
    N = monoid_operad(["1", "z"], lambda a, b: "z" if "z" in (a, b) else "1", "1", name="M0")
    out.append(SetAlgebra(N, {"*": [0, 1, 2]}, lambda op, xs: 0 if op == "z" else xs[0], name="M0act"))
    triples = []
    for F in out:
        for s in sorted(F.operad.colours):
            triples.append((F.operad, s, F))
    return triples


# tree algebras for mapping trees

def _chain(n):
    return (list(range(n)), lambda a, b: a <= b)


def tree_algebras():
    """Small poset-valued algebras over C_1, C_2 and the two-vertex tree."""
    from .homotopy import poset_tree_algebra
    out = []
    C1 = corolla(1)
    out.append(poset_tree_algebra(C1, {"e0": _chain(2), "e1": _chain(2)}, {"e0": lambda x: x}, name="id"))
    out.append(poset_tree_algebra(C1, {"e0": _chain(2), "e1": _chain(3)},
                                  {"e0": lambda x: min(x, 1)}, name="trunc"))
    C2 = corolla(2)
    out.append(poset_tree_algebra(C2, {"e0": _chain(2), "e1": _chain(2), "e2": _chain(2)},
                                  {"e0": lambda a, b: max(a, b)}, name="max"))
    V = parse_tree("(node r (node e a b) c)")
    out.append(poset_tree_algebra(V, {"r": _chain(2), "e": _chain(2), "a": _chain(2),
                                      "b": _chain(1), "c": _chain(2)},
                                  {"r": lambda c, e: min(c, e), "e": lambda a, b: a}, name="minV"))
    return out
