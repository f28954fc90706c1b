import json

import pytest
from hypothesis import given, settings, strategies as st

from dendro import trees as tr
from dendro.dendsets import check_functoriality
from dendro.homotopy import (w_space, w_signatures, w_points, w_unit, w_compose, w_act, WOp,
                             straightening_cube, straightening_face_map, face_functoriality_failures,
                             poset_tree_algebra, tree_algebra_from_json, point_algebra, mapping_tree,
                             marked_mapping_tree, fibre_iso_check, point_iso_check)
from dendro.catalogue import tree_algebras

EX = tr.parse_tree("(node r (node c (node a l) (node b)) (node d m))")
V = tr.parse_tree("(node r (node e a b) c)")
chain = lambda n: (list(range(n)), lambda a, b: a <= b)


@given(st.sampled_from(tr.all_trees(4)))
@settings(max_examples=60, deadline=None)
def test_w_space_dimension_is_inner_edge_count(T):
    for L, c in w_signatures(T):
        cube = w_space(T, L, c)
        assert cube.dim == len(T.spanning_subtree(c, L).inner_edges)
        assert len(w_points(T, L, c)) == 2 ** cube.dim


def test_w_space_missing_subtree():
    assert w_space(V, ("a", "a"), "r") is None
    assert w_space(V, ("a",), "c") is None
    assert w_points(V, ("a",), "c") == []


def test_w_composition():
    f = WOp(("e", "c"), "r", {})
    g = WOp(("a", "b"), "e", {})
    fg = w_compose(V, f, 0, g)
    assert fg.leaves == ("a", "b", "c") and fg.coords() == {"e": 1}
    assert w_compose(V, w_unit("r"), 0, f) == f
    assert w_compose(V, f, 1, w_unit("c")) == f
    with pytest.raises(ValueError):
        w_compose(V, f, 1, g)
    assert w_act(fg, (2, 0, 1)).leaves == ("c", "a", "b")
    # every point of the full cube with e = 1 is a composite
    tops = [p for p in w_points(V, ("a", "b", "c"), "r") if p.coords()["e"] == 1]
    assert tops == [fg]


def test_w_composition_associative_on_example():
    top = WOp(("c", "d"), "r", {})
    mid = WOp(("a", "b"), "c", {})
    bot = WOp(("l",), "a", {})
    lhs = w_compose(EX, w_compose(EX, top, 0, mid), 0, bot)
    rhs = w_compose(EX, top, 0, w_compose(EX, mid, 0, bot))
    assert lhs == rhs and lhs.coords() == {"a": 1, "c": 1}


def test_straightening_cubes():
    assert straightening_cube(EX, "c").dim == 3
    assert [straightening_cube(tr.linear(n), "e0").dim for n in range(5)] == list(range(5))
    assert straightening_cube(EX, "l").dim == 0


@pytest.mark.parametrize("T", tr.all_trees(3) + tr.all_trees(4, 3, 4)[::40], ids=tr.code)
def test_face_maps_are_functorial(T):
    assert face_functoriality_failures(T) == []


def test_face_maps_are_monotone():
    for lab, f in tr.faces(EX):
        for c in f.source.edges:
            m = straightening_face_map(f, c)
            assert m.is_monotone()


@pytest.mark.parametrize("A", tree_algebras(), ids=lambda A: A.name)
def test_tree_algebras(A):
    assert A.check() is None
    B = tree_algebra_from_json(json.loads(json.dumps(A.to_json())))
    assert B.to_json() == A.to_json()
    for c in sorted(A.tree.edges):
        assert fibre_iso_check(A, c) is None


def test_tree_algebra_rejects_non_monotone_maps():
    C1 = tr.corolla(1)
    A = poset_tree_algebra(C1, {"e0": chain(2), "e1": chain(2)}, {"e0": lambda x: 1 - x})
    assert A.check() is not None


def test_mapping_tree_counts():
    C1 = tr.corolla(1)
    A = poset_tree_algebra(C1, {"e0": chain(2), "e1": chain(2)}, {"e0": lambda x: x})
    M = mapping_tree(A)
    # a dendrex is a map R -> C1 with a simplex of the leaf's space: 2 * 2, 3 * 3, 4 * 4
    assert [len(M.dendrices(S)) for S in (tr.eta(), C1, tr.linear(2))] == [4, 9, 16]
    assert check_functoriality(M, tr.all_trees(3)) is None


def test_point_algebra_recovers_representable():
    assert point_iso_check(tr.corolla(2), tr.all_trees(3)) is None
    assert point_iso_check(V, tr.all_trees(2)) is None
    P = point_algebra(V)
    assert P.check() is None


def test_marked_mapping_tree():
    A = tree_algebras()[0]
    MP = marked_mapping_tree(A)
    und = MP.underlying
    marked = MP.marked(1)
    assert marked and len(marked) < len(und.corollas(1))
