import json

import pytest
from hypothesis import given, settings, strategies as st

from dendro import trees as tr
from dendro.categories import arrow, cyclic_group, codiscrete
from dendro.dendsets import Representable, Nerve, boundary, spine_subobject, BoundError
from dendro.operads import (FiniteOperad, OperadError, OperadMorphism, check_axioms, find_isomorphism,
                            free_operad, free_operad_map, identity_morphism, monoid_operad,
                            morphism_from_json, morphism_to_json, operad_from_category,
                            operad_from_json, operad_to_json, tabulate, tree_operad)
from dendro.operads import tau_d
from dendro.catalogue import battery, z2_action_groupoid

trees3 = st.sampled_from(tr.all_trees(3))
V = tr.parse_tree("(node r (node e a b) c)")


def small_operads():
    return [free_operad(V), free_operad(tr.corolla(0)), operad_from_category(arrow(2)),
            operad_from_category(codiscrete(["a", "b"])),
            monoid_operad([0, 1, 2], lambda a, b: (a + b) % 3, 0, name="Z3"),
            z2_action_groupoid().source, tree_operad("(node r (node s) a)")]


@pytest.mark.parametrize("P", small_operads(), ids=lambda P: P.name)
def test_axioms_hold(P):
    assert check_axioms(P).ok
    assert check_axioms(P, orbit_reps=True).ok


def test_axiom_checker_names_the_broken_law():
    # subtraction mod 3 is not associative
    P = monoid_operad([0, 1, 2], lambda a, b: (a - b) % 3, 0, name="sub")
    rep = check_axioms(P)
    assert not rep.ok and "assoc" in rep.violation


def test_broken_equivariance_detected():
    ops = {"m": (("x", "x"), "x"), "n": (("x", "x"), "x"), "1": (("x",), "x")}
    # the transposition fixes m but the table also claims it moves n to m
    act = {("m", (1, 0)): "m", ("n", (1, 0)): "m"}
    P = FiniteOperad(["x"], ops, {"x": "1"}, {}, act)
    rep = check_axioms(P, max_arity=2)
    assert not rep.ok


def test_malformed_unit_rejected():
    with pytest.raises(OperadError):
        FiniteOperad(["x"], {"u": (("y",), "x")}, {"x": "u"}, {})


@pytest.mark.parametrize("T", tr.all_trees(2, 2) + [tr.corolla(3)], ids=tr.code)
def test_orbit_mode_agrees_with_full_mode(T):
    P = free_operad(T)
    assert check_axioms(P).ok and check_axioms(P, orbit_reps=True).ok


@given(trees3)
@settings(max_examples=30, deadline=None)
def test_free_operads_satisfy_axioms(T):
    assert check_axioms(free_operad(T), orbit_reps=True).ok


@pytest.mark.parametrize("P", small_operads(), ids=lambda P: P.name)
def test_operad_json_round_trip(P):
    data = json.loads(json.dumps(operad_to_json(P)))
    Q = operad_from_json(data)
    assert len(Q.operations()) == len(P.operations())
    assert find_isomorphism(Q, P) is not None
    again = operad_to_json(Q)
    by_name = lambda d: sorted(d["operations"], key=lambda o: o["name"])
    assert by_name(again) == by_name(data)
    assert {k: again[k] for k in ("units", "composition", "colours")} == \
        {k: data[k] for k in ("units", "composition", "colours")}


def test_morphism_json_round_trip():
    for name, f, _ in battery():
        g = morphism_from_json(json.loads(json.dumps(morphism_to_json(f))))
        assert g.check() is None, name
        assert len(g.source.operations()) == len(f.source.operations())


def test_operad_json_rejects_garbage():
    with pytest.raises(OperadError):
        operad_from_json({"colours": ["x"]})


def test_find_isomorphism():
    P = free_operad(V)
    Q = free_operad(V.rename({"a": "z", "c": "q"}))
    f = find_isomorphism(P, tabulate(Q))
    assert f is not None and f.check() is None
    assert find_isomorphism(P, free_operad(tr.parse_tree("(node r a (node e b c))"))) is not None
    assert find_isomorphism(P, free_operad(tr.linear(3))) is None
    Z3 = monoid_operad([0, 1, 2], lambda a, b: (a + b) % 3, 0)
    C3 = operad_from_category(cyclic_group(3))
    assert find_isomorphism(Z3, C3) is not None
    M = monoid_operad([0, 1, 2], lambda a, b: max(a, b), 0)
    assert find_isomorphism(Z3, M) is None


@given(trees3, trees3)
@settings(max_examples=20, deadline=None)
def test_omega_morphisms_induce_operad_maps(S, T):
    for alpha in tr.hom(S, T)[:5]:
        assert free_operad_map(alpha).check() is None


def test_bad_morphism_reported():
    P = operad_from_category(arrow(1))
    f = OperadMorphism(P, P, {0: 0, 1: 0}, lambda m: m)
    assert f.check() is not None
    assert identity_morphism(P).check() is None


# presentations

@pytest.mark.parametrize("text", ["(edge a)", "(node e0 e1 e2)", "(node r (node e a b) c)",
                                  "(node r (node s) a)", "(node r (node a b))"])
def test_tau_of_representable_is_free(text):
    T = tr.parse_tree(text)
    P = tau_d(Representable(T), 2, 3)
    assert check_axioms(P).ok
    assert find_isomorphism(P, tabulate(free_operad(T), 3)) is not None


@pytest.mark.parametrize("idx", range(6))
def test_tau_of_nerve_recovers_operad(idx):
    name, f, _ = battery()[idx]
    Q = f.source
    P = tau_d(Nerve(Q), 2, Q.max_arity)
    assert find_isomorphism(P, tabulate(Q, Q.max_arity)) is not None, name


def test_tau_of_corolla_boundary_is_discrete():
    P = tau_d(boundary(tr.corolla(2), bound=2), 2, 3)
    assert len(P.colours) == 3
    assert all(P.is_unit(f) for f in P.operations())


def test_tau_of_spine_is_free_with_enough_room():
    P = tau_d(spine_subobject(V, bound=2), 2, 3)
    assert find_isomorphism(P, tabulate(free_operad(V), 3)) is not None
    L = tr.parse_tree("(node r (node a (node b c)))")
    short = tau_d(spine_subobject(L, bound=3), 2, 3)
    with pytest.raises(BoundError):
        check_axioms(short)
    P = tau_d(spine_subobject(L, bound=3), 3, 3)
    assert find_isomorphism(P, tabulate(free_operad(L), 3)) is not None
