import itertools

import pytest
from hypothesis import given, settings, strategies as st

from dendro import trees as tr
from dendro.trees import FaceLabel, OmegaMorphism, ParseError, TreeError

from oracles import mono_images, free_operad_count

SMALL = tr.all_trees(3)
MEDIUM = tr.all_trees(4)
trees3 = st.sampled_from(SMALL)
trees4 = st.sampled_from(MEDIUM)

V = tr.parse_tree("(node r (node e a b) c)")


def test_shape_counts():
    # trees with exactly k vertices and arity at most 3
    assert [len(tr.all_trees(k, 3, k)) for k in range(5)] == [1, 4, 12, 56, 284]


def test_eta_is_the_only_vertexless_tree():
    E = tr.eta()
    assert E.leaves == {"e0"} and not E.vertices and not E.inner_edges
    assert tr.face_labels(E) == []


def test_corolla_and_linear_naming():
    C = tr.corolla(3)
    assert C.root == "e0" and C.leaves == {"e1", "e2", "e3"}
    L = tr.linear(3)
    assert L.leaves == {"e3"} and L.inner_edges == {"e1", "e2"}
    assert [tr.linear_edge(3, j) for j in range(4)] == ["e3", "e2", "e1", "e0"]
    J = tr.join_corolla(2, 2)
    assert J.root == "r2" and J.leaves == {"l1", "l2"}


@pytest.mark.parametrize("bad", [
    ("r", [("r", ["a"]), ("r", ["b"])]),      # two producers
    ("r", [("r", ["a"]), ("s", ["a"])]),      # two consumers
    ("r", [("r", ["r"])]),                    # loop
    ("r", [("r", ["a"]), ("x", ["y"])]),      # disconnected
])
def test_invalid_trees_rejected(bad):
    with pytest.raises(TreeError):
        tr.Tree(*bad)


def test_sexpr_round_trip_and_errors():
    for T in MEDIUM:
        assert tr.parse_tree(tr.to_sexpr(T)) == T
    with pytest.raises(ParseError) as exc:
        tr.parse_tree("(node r\n (bogus a))")
    assert (exc.value.line, exc.value.col) == (2, 3)
    with pytest.raises(ParseError) as exc:
        tr.parse_tree("(node r a")
    assert (exc.value.line, exc.value.col) == (1, 1)
    with pytest.raises(ParseError):
        tr.parse_tree("")
    assert "digraph" in tr.to_dot(V)


@given(trees4)
def test_canonical_form_invariant_under_renaming(T):
    names = sorted(T.edges)
    renamed = T.rename({e: "x" + str(k) for k, e in enumerate(reversed(names))})
    assert tr.code(renamed) == tr.code(T)
    assert tr.are_isomorphic(renamed, T)
    assert tr.tree_from_code(tr.code(T)) == tr.canonical_form(T)[0]


def test_codes_distinguish_shapes():
    codes = [tr.code(T) for T in MEDIUM]
    assert len(set(codes)) == len(codes)


@given(trees4)
def test_automorphism_group_size(T):
    # brute force: edge permutations preserving the vertex structure
    auts = tr.automorphisms(T)
    edges = sorted(T.edges)
    verts = {(v.output, v.inputs) for v in T.vertices}
    if len(edges) <= 7:
        n = 0
        for p in itertools.permutations(edges):
            m = dict(zip(edges, p))
            if m[T.root] == T.root and {(m[o], frozenset(m[i] for i in ins)) for o, ins in verts} == verts:
                n += 1
        assert n == len(auts)
    assert all(a.is_iso() for a in auts)


@given(trees3, trees3)
@settings(max_examples=60, deadline=None)
def test_hom_is_closed_under_composition_and_unital(S, T):
    for f in tr.hom(S, T):
        assert f.problem() is None
        assert tr.identity(T).compose(f) == f
        assert f.compose(tr.identity(S)) == f
        for g in tr.hom(T, S)[:4]:
            assert g.compose(f).problem() is None


def test_associativity_exhaustive_two_vertices():
    ts = tr.all_trees(2)
    homs = {(a, b): tr.hom(a, b) for a in ts for b in ts}
    n = 0
    for R, S, T, U in itertools.product(ts[:6], repeat=4):
        for f in homs[(R, S)]:
            for g in homs[(S, T)]:
                gf = g.compose(f)
                for h in homs[(T, U)]:
                    assert h.compose(gf) == h.compose(g).compose(f)
                    n += 1
    assert n > 1000


@pytest.mark.parametrize("T", MEDIUM[::25] + [V])
def test_mono_search_matches_image_oracle(T):
    # monos from canonical sources, counted via automorphisms of each image
    by_hand = 0
    for I in mono_images(T):
        by_hand += len(tr.automorphisms(I))
    widest = max(len(L) for c in T.edges for L in T.cuts(c))
    searched = 0
    for S in tr.all_trees(len(T.vertices), widest):
        searched += len(tr.monos(S, T))
    assert searched == by_hand


def test_face_labels_of_example():
    labs = tr.face_labels(V)
    assert FaceLabel("inner", "e") in labs
    assert FaceLabel("leaf", "e") in labs
    assert FaceLabel("root", "e") in labs
    C = tr.corolla(2)
    assert tr.face_labels(C) == [FaceLabel("leaf", "e0"), FaceLabel("root", "e1"),
                                 FaceLabel("root", "e2")]
    assert tr.face_tree(V, FaceLabel("inner", "e")).leaves == {"a", "b", "c"}


@given(trees4)
def test_faces_are_monos_with_one_fewer_vertex_or_edge(T):
    for lab, f in tr.faces(T):
        assert f.problem() is None and f.is_injective()
        if lab.kind == "inner":
            assert len(f.source.edges) == len(T.edges) - 1
        else:
            assert len(f.source.vertices) == len(T.vertices) - 1


@given(trees4)
def test_degeneracy_section(T):
    for sigma, delta in tr.degeneracies(T):
        assert tr.is_degeneracy(sigma)
        assert sigma.compose(delta) == tr.identity(sigma.target)


@given(st.sampled_from([T for T in SMALL if T.leaves]), st.data())
def test_grafting(T, data):
    S = data.draw(trees3)
    l = data.draw(st.sampled_from(sorted(T.leaves)))
    G = tr.graft(T, l, S)
    assert len(G.vertices) == len(T.vertices) + len(S.vertices)
    assert len(G.leaves) == len(T.leaves) - 1 + len(S.leaves)


@given(trees4)
def test_free_operad_count_matches_corolla_maps(T):
    from dendro.operads import free_operad
    P = free_operad(T)
    for n in range(4):
        ops = [f for f in P.operations(n) if P.arity(f) == n]
        assert len(ops) == free_operad_count(T, n)
        assert len(ops) == len(tr.hom(tr.corolla(n), T))


def test_spanning_and_cuts():
    assert V.has_operation("r", ["a", "b", "c"])
    assert not V.has_operation("r", ["a", "c"])
    assert V.spanning_subtree("e", ["a", "b"]) == tr.Tree("e", [("e", ["a", "b"])])
    assert len(V.cuts("r")) == 3
    S = tr.subtree_above(V, "e")
    assert S.root == "e" and S.leaves == {"a", "b"}


def test_restrict_linear():
    f = tr.restrict_linear((0, 2), 1, 2)
    assert f.problem() is None
    assert f("e1") == "e2" and f("e0") == "e0"


def test_bad_morphism_rejected():
    with pytest.raises(TreeError):
        OmegaMorphism(tr.corolla(2), V, {"e0": "r", "e1": "a", "e2": "a"})
