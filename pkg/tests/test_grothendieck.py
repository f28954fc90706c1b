import json

import pytest

from dendro import trees as tr
from dendro.categories import arrow
from dendro.operads import (FiniteOperad, OperadMorphism, free_operad, identity_morphism, monoid_operad,
                            operad_from_category, check_axioms)
from dendro.grothendieck import (AlgebraError, SetAlgebra, solve, set_algebra_from_json,
                                 cat_algebra_from_json, corepresentable, natural_maps, coyoneda_check,
                                 coyoneda_check_times, groth, straighten_set, adjunction_check,
                                 choose_cleavage, cleavage_from_json, phi, unit_check, counit_check,
                                 compare_cleavages, groupoid_restriction_check, straightening_is_strict,
                                 discrete_algebra, constant_algebra)
from dendro.catalogue import (battery, strict_algebras, set_algebras, z2_sum_algebra, swap_algebra,
                              arrow_algebra, planted_two_targets, z2_action_groupoid)

V = tr.parse_tree("(node r (node e a b) c)")


def test_solve_enumerates_constrained_assignments():
    doms = {"x": [0, 1, 2], "y": [0, 1, 2]}
    sols = solve(["x", "y"], doms, [(["x", "y"], lambda a: a["x"] < a["y"])])
    assert sorted((s["x"], s["y"]) for s in sols) == [(0, 1), (0, 2), (1, 2)]
    assert len(solve(["x", "y"], doms, [], limit=4)) == 4


@pytest.mark.parametrize("triple", set_algebras(), ids=lambda t: "%s@%s" % (t[2].name, t[1]))
def test_coyoneda(triple):
    S, s, F = triple
    assert F.check() is None
    res = coyoneda_check(S, s, F)
    assert res["ok"] and res["nat"] == len(F.sets[s])


def test_coyoneda_with_a_parameter_set():
    S, s, F = set_algebras()[0]
    res = coyoneda_check_times(S, s, F, ["p", "q"])
    assert res["ok"] and res["nat"] == len(F.sets[s]) ** 2


def test_set_algebra_checks_and_json():
    S, _, F = set_algebras()[3]
    data = json.loads(json.dumps(F.to_json()))
    G = set_algebra_from_json(data)
    assert sorted(G.to_json()["action"]) == sorted(data["action"])
    assert G.sets == data["sets"]
    # breaking one row of the table is caught on reload
    data["action"][-1][2] = "junk"
    with pytest.raises(AlgebraError):
        set_algebra_from_json(data)
    M = monoid_operad([0, 1, 2], lambda a, b: (a + b) % 3, 0)
    bad = SetAlgebra(M, {"*": [0, 1, 2]}, lambda op, xs: (op * xs[0]) % 3)
    assert bad.check() is not None


@pytest.mark.parametrize("F", strict_algebras(), ids=lambda F: F.name)
def test_strict_algebras(F):
    assert F.check() is None
    data = json.loads(json.dumps(F.to_json()))
    again = cat_algebra_from_json(data).to_json()
    for k in ("objects", "morphisms"):
        assert sorted(again[k]) == sorted(data[k])
    H, proj = groth(F.operad, F)
    assert check_axioms(H, orbit_reps=True).ok and proj.check() is None
    assert unit_check(F.operad, F)["ok"]


def test_cat_algebra_json_rejects_garbage():
    with pytest.raises(AlgebraError):
        cat_algebra_from_json({"operad": {}})


def test_integral_colours_and_operations():
    F = z2_sum_algebra()
    H, proj = groth(F.operad, F)
    # one object per fibre, two morphisms of Z/2 per lifted operation
    assert len(H.colours) == 3
    assert all(len([a for a in H.operations() if a[0] == s]) == 2 for s in F.operad.operations())


def test_discrete_and_constant_algebras():
    S, _, F = set_algebras()[0]
    D = discrete_algebra(F)
    assert D.check() is None and D.objects_algebra().sets == F.sets
    A = constant_algebra(free_operad(tr.corolla(1)), arrow(1))
    assert A.check() is None
    with pytest.raises(AlgebraError):
        constant_algebra(free_operad(tr.corolla(2)), arrow(1))


@pytest.mark.parametrize("S", [free_operad(V), operad_from_category(arrow(2))], ids=["V", "[2]"])
def test_straightening_a_colour_gives_the_corepresentable(S):
    for s in S.colours:
        U = FiniteOperad([s], {"u": ((s,), s)}, {s: "u"}, {}, name="eta")
        p = OperadMorphism(U, S, {s: s}, {"u": S.unit(s)})
        assert p.check() is None
        St = straighten_set(p)
        assert St.check() is None
        O, F = St.objects_algebra(), corepresentable(S, s)
        assert {c: len(O.sets[c]) for c in S.colours} == {c: len(F.sets[c]) for c in S.colours}
        (t,) = natural_maps(F, O)
        for c in S.colours:
            assert len({t[(c, x)] for x in F.sets[c]}) == len(O.sets[c])


def test_straightening_a_monoid_is_its_translation_category():
    M = monoid_operad([0, 1, 2], lambda a, b: (a + b) % 3, 0)
    C = straighten_set(identity_morphism(M)).cats["*"]
    assert len(C.objects) == 3 and len(C.morphisms) == 9


def test_straightening_an_empty_source():
    M = monoid_operad([0, 1, 2], lambda a, b: (a + b) % 3, 0)
    E = FiniteOperad([], {}, {}, {}, name="empty")
    St = straighten_set(OperadMorphism(E, M, {}, {}))
    assert St.check() is None and not St.cats["*"].objects


@pytest.mark.parametrize("entry", battery(), ids=lambda e: e[0])
def test_cleavages_and_counit(entry):
    name, f, facts = entry
    assert straightening_is_strict(f) is None
    if not facts["opfibered"]:
        with pytest.raises(AlgebraError):
            choose_cleavage(f)
        return
    K, K2 = choose_cleavage(f), choose_cleavage(f, prefer="max")
    assert K.check() is None and K2.check() is None
    assert counit_check(f, K)["ok"] and counit_check(f, K2)["ok"]
    cmp = compare_cleavages(f, K, K2)
    assert cmp["ok"]
    assert phi(f, K).check() is None
    again = cleavage_from_json(f, json.loads(json.dumps(K.to_json())))
    assert again.choice == K.choice


def test_two_cleavages_can_differ():
    f = battery()[0][1]
    cmp = compare_cleavages(f, choose_cleavage(f), choose_cleavage(f, prefer="max"))
    assert cmp["nonidentity_components"] > 0


def test_cleavage_json_rejects_unknown_names():
    f = battery()[0][1]
    with pytest.raises(AlgebraError):
        cleavage_from_json(f, [["nope", [], "nope"]])


def test_split_has_no_cleavage():
    with pytest.raises(AlgebraError):
        choose_cleavage(planted_two_targets())


def test_adjunction_bijection():
    cases = [(battery()[0][1], z2_sum_algebra()), (battery()[1][1], arrow_algebra()),
             (battery()[1][1], swap_algebra()), (battery()[7][1], swap_algebra()),
             (battery()[2][1], strict_algebras()[-1])]
    for p, F in cases:
        res = adjunction_check(p, F)
        assert res["ok"] and res["algebra_maps"] == res["maps_over"] > 0


def test_groupoid_restriction():
    F = swap_algebra()
    res = groupoid_restriction_check(F.operad, F, z2_action_groupoid())
    assert res["ok"] and res["algebra_in_groupoids"] and res["fibres_groupoids"]
    res = groupoid_restriction_check(arrow_algebra().operad, arrow_algebra())
    assert res["ok"] and not res["algebra_in_groupoids"]
