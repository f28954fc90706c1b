import json

import pytest

from dendro import trees as tr
from dendro.trees import FaceLabel
from dendro.categories import arrow
from dendro.dendsets import (DendError, DendMap, NerveMap, Representable, horn, inclusion, corolla_dendrex,
                             sharp)
from dendro.operads import identity_morphism, free_operad
from dendro.lifting import (Verdict, horn_filler_counts, is_inner_fibration, is_left_fibration,
                            cocartesian_corollas, is_cocartesian_corolla, is_cocartesian_fibration,
                            cocart_pullback_criterion, is_opfibered, is_opfibered_in_groupoids,
                            fibre_category, lifts_of, operation_keys, cocart_space_of_op,
                            natural_marking, MarkedMap, marked_rlp_report, join_map)
from dendro.catalogue import (planted_category_over_arrow, planted_two_targets, z2_action_groupoid,
                              groth_projection, z2_sum_algebra)

V = tr.parse_tree("(node r (node e a b) c)")


def test_horn_inclusion_is_not_an_inner_fibration():
    H = horn(V, FaceLabel("inner", "e"))
    R = Representable(V)
    p = inclusion(H, R)
    v = is_inner_fibration(p, bound=2)
    assert not v and tr.are_isomorphic(v.witness["tree"], V)
    counts = horn_filler_counts(p, V, FaceLabel("inner", "e"))
    # one problem per automorphism of V, none fillable
    assert [k for _, _, k in counts] == [0] * len(tr.automorphisms(V))


def test_identity_of_representable_lifts_everything():
    R = Representable(V)
    p = DendMap(R, R, lambda T, x: x)
    assert is_inner_fibration(p, bound=2)
    assert is_left_fibration(p, bound=2)


def test_fgu_is_cocartesian_but_not_left():
    f = planted_category_over_arrow()
    p = NerveMap(f, bound=4)
    assert is_inner_fibration(p, 4)
    assert is_cocartesian_fibration(p, 4)
    v = is_left_fibration(p, 4)
    assert not v and v.witness["condition"] == "leaf horn"
    assert is_opfibered(f) and not is_opfibered_in_groupoids(f)


def test_split_has_no_cocartesian_lift():
    f = planted_two_targets()
    v = is_opfibered(f)
    assert not v and v.witness["operation"] == (0, 1)
    p = NerveMap(f, bound=3)
    assert not is_cocartesian_fibration(p, 3)


def test_pullback_criterion_on_fgu():
    f = planted_category_over_arrow()
    verdicts = {op: bool(cocart_pullback_criterion(f, op)) for op in f.source.operations()}
    assert verdicts == {"ix": True, "iy": True, "f": True, "g": False, "u": False}
    w = cocart_pullback_criterion(f, "g").witness
    assert set(w) >= {"position", "domain", "fibre_product", "image"}


def test_lifting_detection_matches_criterion_on_fgu():
    f = planted_category_over_arrow()
    p = NerveMap(f, bound=3)
    cc = cocartesian_corollas(p, 3)
    for op in f.source.operations():
        x = corolla_dendrex(f.source, op)
        assert (x in cc[1]) == cocart_pullback_criterion(f, op).ok
        assert bool(is_cocartesian_corolla(p, x, 1)) == (x in cc[1])


def test_jobs_do_not_change_verdicts():
    f = z2_action_groupoid()
    p = NerveMap(f, bound=4)
    assert bool(is_left_fibration(p, 4, jobs=3)) == bool(is_left_fibration(p, 4)) == True
    assert cocartesian_corollas(p, 3, jobs=2) == cocartesian_corollas(p, 3)


def test_fibres_and_lifts():
    f = planted_category_over_arrow()
    F1 = fibre_category(f, 1)
    assert sorted(F1.objects) == ["y"] and len(F1.morphisms) == 2
    assert sorted(lifts_of(f, (0, 1), ("x",))) == ["f", "g"]
    assert len(list(operation_keys(f))) == 3


def test_verdict_json():
    v = Verdict(False, {"tree": V, "xs": (1, 2)})
    data = json.loads(json.dumps(v.to_json()))
    assert data["ok"] is False and data["witness"]["tree"] == tr.to_sexpr(V)
    assert not v and bool(Verdict(True))


def test_cocart_space_is_contractible_in_low_degrees():
    p_int = groth_projection(z2_sum_algebra())
    p = NerveMap(p_int, bound=3)
    cc = cocartesian_corollas(p, 3)
    sizes = []
    for sigma, xs in operation_keys(p_int):
        K = cocart_space_of_op(p, sigma, xs, dim=2, cc=cc)
        assert K.simplices(0) and K.is_connected()
        assert K.check_identities() is None
        sizes.append(K.counts())
    assert [2, 4, 8] in [list(c) for c in sizes]


def test_join_maps_compose():
    a = join_map((0, 2), 1, 2, 2)
    b = join_map((0, 0, 1), 2, 1, 2)
    assert a.problem() is None and b.problem() is None
    assert b.compose(a) == join_map((0, 1), 1, 1, 2)


def test_natural_marking_passes_characterisation():
    f = planted_category_over_arrow()
    p = NerveMap(f, bound=3)
    src = natural_marking(p, 3)
    pm = MarkedMap(src, sharp(p.target, 1), p)
    rep = marked_rlp_report(pm, 3)
    assert rep["rlp"] and rep["characterisation"] and rep["agree"]


def test_class_four_needs_groupoids():
    f = planted_category_over_arrow()
    p = NerveMap(f, bound=3)
    pm = MarkedMap(natural_marking(p, 3), sharp(p.target, 1), p)
    with pytest.raises(DendError):
        marked_rlp_report(pm, 3, groupoids=[arrow(1)])


def test_free_identity_is_left_fibration():
    f = identity_morphism(free_operad(V))
    assert is_left_fibration(NerveMap(f, bound=4), 4)
    assert is_opfibered_in_groupoids(f)
