"""Acceptance suite: twelve end-to-end checks, one PASS/FAIL line each.

Run under pytest, or directly with `python3 tests/test_acceptance.py`.
"""

import random
import sys
import time
from collections import Counter
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from dendro import trees as tr
from dendro.categories import arrow
from dendro.operads import free_operad, operad_from_category, monoid_operad, tree_operad, to_terminal
from dendro.dendsets import NerveMap, MarkedDendSet, nerve_map, corolla_dendrex, sharp
from dendro.tensor import shuffles, coherent_labellings
from dendro.lifting import (horn_filler_counts, is_left_fibration, is_opfibered_in_groupoids,
                            is_cocartesian_fibration, cocartesian_corollas, cocart_pullback_criterion,
                            natural_marking, MarkedMap, marked_rlp_report, operation_keys,
                            cocart_space_of_op)
from dendro.grothendieck import (coyoneda_check, unit_check, choose_cleavage, counit_check,
                                 compare_cleavages, adjunction_check)
from dendro.homotopy import (w_signatures, w_space, straightening_cube, face_functoriality_failures,
                             fibre_iso_check, point_iso_check)
from dendro.catalogue import (battery, strict_algebras, set_algebras, tree_algebras,
                              planted_category_over_arrow, z2_action_groupoid)

from oracles import mono_images


def c1_omega():
    monos = bad = 0
    for T in tr.all_trees(5):
        subs = {f.source for f in tr.subface_inclusions(T)}
        for I in mono_images(T):
            monos += 1
            m = tr.OmegaMorphism(I, T, {e: e for e in I.edges})
            iso, labels = tr.face_factorization(m)
            chain, cur = tr.identity(T), T
            for lab in labels:
                chain = chain.compose(tr.face(cur, lab))
                cur = tr.face_tree(cur, lab)
            if I not in subs or chain.compose(iso) != m:
                bad += 1
    # units and associativity along every chain of three generating maps
    # (faces and degeneracy sections) into each tree
    gens = {}

    def into(T):
        if T not in gens:
            gens[T] = [f for _, f in tr.faces(T)] + [d for _, d in tr.degeneracies(T)]
        return gens[T]
    triples = 0
    for T in tr.all_trees(5):
        for h in into(T):
            if tr.identity(T).compose(h) != h or h.compose(tr.identity(h.source)) != h:
                bad += 1
            for g in into(h.source):
                hg = h.compose(g)
                for f in into(g.source):
                    triples += 1
                    if hg.compose(f) != h.compose(g.compose(f)):
                        bad += 1
    # and on full hom sets between random small trees, degeneracies included
    rng = random.Random(1)
    pool = tr.all_trees(3)
    for _ in range(150):
        R, S, T, U = (rng.choice(pool) for _ in range(4))
        for f in tr.hom(R, S)[:4]:
            for g in tr.hom(S, T)[:4]:
                for h in tr.hom(T, U)[:4]:
                    triples += 1
                    if h.compose(g.compose(f)) != h.compose(g).compose(f):
                        bad += 1
    return bad == 0, "%d mono images, %d composable triples, %d failures" % (monos, triples, bad)


def c2_shuffles():
    counts = {(n, k): len(shuffles(tr.corolla(n), tr.corolla(k))) for n in range(1, 4) for k in range(1, 4)}
    rng = random.Random(7)
    pool = tr.all_trees(3)
    agree = 0
    for _ in range(10):
        S, T = rng.choice(pool), rng.choice(pool)
        agree += len(shuffles(S, T)) == len(coherent_labellings(S, T))
    ok = set(counts.values()) == {2} and agree == 10
    return ok, "corolla counts %s, random pairs %d/10" % (sorted(set(counts.values())), agree)


def c3_segal():
    ops = [free_operad(tr.corolla(2)), operad_from_category(arrow(2)),
           monoid_operad([0, 1, 2], lambda a, b: (a + b) % 3, 0, name="Z3"),
           z2_action_groupoid().source, planted_category_over_arrow().source,
           tree_operad("(node r (node s) a)")]
    seen = []
    ok = True
    for P in ops:
        assert len(P.colours) <= 3
        p = nerve_map(to_terminal(P), bound=4)
        a = P.max_arity if P.max_arity is not None else 3
        cnt = Counter()
        for T in tr.all_trees(4, a, 2):
            for lab in tr.face_labels(T):
                if lab.kind == "inner":
                    for _, _, k in horn_filler_counts(p, T, lab):
                        cnt[k] += 1
        ok = ok and set(cnt) == {1}
        seen.append("%s:%s" % (P.name, dict(cnt)))
    return ok, "; ".join(seen)


def c4_left_fibrations():
    rows, agree = [], 0
    bat = battery()
    for name, f, facts in bat:
        lf = bool(is_left_fibration(NerveMap(f, bound=4), 4))
        og = bool(is_opfibered_in_groupoids(f))
        agree += (lf == og == facts["groupoids"])
        rows.append("%s=%s" % (name, lf))
    return agree == len(bat) >= 6, "%d/%d agree (%s)" % (agree, len(bat), ", ".join(rows))


def c5_cocartesian_criterion():
    total = agree = 0
    for name, f, _ in battery():
        cc = cocartesian_corollas(NerveMap(f, bound=3), 3)
        for op in f.source.operations():
            n = f.source.arity(op)
            assert n in cc, (name, n)
            total += 1
            agree += (corolla_dendrex(f.source, op) in cc[n]) == cocart_pullback_criterion(f, op).ok
    return agree == total, "%d/%d operations agree" % (agree, total)


def c6_coyoneda():
    triples = set_algebras()
    good = sum(1 for S, s, F in triples
               if (lambda r: r["ok"] and r["nat"] == len(F.sets[s]))(coyoneda_check(S, s, F)))
    return good == len(triples) >= 10, "%d/%d triples" % (good, len(triples))


def c7_round_trips():
    units = [unit_check(F.operad, F)["ok"] for F in strict_algebras()]
    counits, nontrivial = [], 0
    for name, f, facts in battery():
        if not facts["opfibered"]:
            continue
        K1, K2 = choose_cleavage(f), choose_cleavage(f, prefer="max")
        counits.append(counit_check(f, K1)["ok"] and counit_check(f, K2)["ok"])
        cmp = compare_cleavages(f, K1, K2)
        counits[-1] = counits[-1] and cmp["ok"]
        nontrivial = max(nontrivial, cmp.get("nonidentity_components", 0))
    ok = all(units) and all(counits) and len(units) >= 5 and len(counits) >= 5 and nontrivial > 0
    return ok, "unit %d/%d, counit %d/%d, largest cleavage comparison moves %d lifts" % (
        sum(units), len(units), sum(counits), len(counits), nontrivial)


def c8_adjunction():
    pairs = []
    algs = strict_algebras()
    for name, f, _ in battery():
        for F in algs:
            if F.operad is f.target or (set(F.operad.colours) == set(f.target.colours)
                                        and repr(F.operad.operations()) == repr(f.target.operations())):
                pairs.append((name, f, F))
    good = 0
    for name, f, F in pairs:
        r = adjunction_check(f, F)
        good += r["ok"] and r["algebra_maps"] == r["maps_over"] and r["injective"] and r["surjective"]
    return good == len(pairs) >= 5, "%d/%d pairs" % (good, len(pairs))


def c9_cubes():
    sigs = bad = 0
    for T in tr.all_trees(5):
        for L, c in w_signatures(T):
            sigs += 1
            bad += w_space(T, L, c).dim != len(T.spanning_subtree(c, L).inner_edges)
    for n in range(5):
        cube = straightening_cube(tr.linear(n), tr.linear_edge(n, n))
        bad += cube.dim != n or len(cube.simplices(0)) != 2 ** n
    fails = 0
    small = tr.all_trees(4)
    for T in small:
        fails += len(face_functoriality_failures(T))
    return bad == fails == 0, "%d signatures, %d trees for functoriality, %d failures" % (
        sigs, len(small), bad + fails)


def c10_mapping_trees():
    algs = tree_algebras()
    checks = bad = 0
    for A in algs:
        for c in sorted(A.tree.edges):
            checks += 1
            bad += fibre_iso_check(A, c) is not None
    shapes = {tr.code(A.tree) for A in algs}
    for T in [tr.corolla(1), tr.corolla(2), tr.parse_tree("(node r (node e a b) c)")]:
        checks += 1
        bad += point_iso_check(T, tr.all_trees(2)) is not None
    ok = bad == 0 and len(algs) >= 3 and len(shapes) >= 3
    return ok, "%d algebras over %d trees, %d checks, %d failures" % (len(algs), len(shapes), checks, bad)


def _marked_summary(rep):
    return rep["rlp"], rep["characterisation"], rep["agree"]


def c11_marked():
    lines, ok = [], True
    for name, f, _ in battery():
        p = NerveMap(f, bound=3)
        if not is_cocartesian_fibration(p, 3):
            continue
        cc = cocartesian_corollas(p, 3)
        src = natural_marking(p, 3, cc=cc)
        rep = marked_rlp_report(MarkedMap(src, sharp(p.target, src.max_arity), p), 3, cc=cc)
        ok = ok and rep["rlp"] and rep["characterisation"] and rep["agree"]
        lines.append(name)
    f = planted_category_over_arrow()
    p = NerveMap(f, bound=3)
    cc = cocartesian_corollas(p, 3)
    g, fd = corolla_dendrex(f.source, "g"), corolla_dendrex(f.source, "f")
    over = MarkedDendSet(p.source, lambda n, x: x in cc.get(n, ()) or x == g, max_arity=1, check=False)
    under = MarkedDendSet(p.source, lambda n, x: x in cc.get(n, ()) and x != fd, max_arity=1, check=False)
    rep_o = marked_rlp_report(MarkedMap(over, sharp(p.target, 1), p), 3, cc=cc)
    rep_u = marked_rlp_report(MarkedMap(under, sharp(p.target, 1), p), 3, cc=cc)
    # over-marking breaks condition (a): a marked corolla that is not coCartesian;
    # under-marking breaks the marked-lift class: coCartesian lifts go unmarked
    named_o = [k for k, v in rep_o["abc"].items() if not v]
    named_u = [k for k, v in rep_u["classes"].items() if not v]
    ok = ok and not rep_o["characterisation"] and named_o and not rep_u["rlp"] and named_u
    return bool(ok), "%d fibrations agree; over-marked fails %s; under-marked fails %s" % (
        len(lines), named_o, named_u)


def c12_cocart_spaces():
    keys = bad = 0
    for name, f, facts in battery():
        if not facts["opfibered"]:
            continue
        p = NerveMap(f, bound=3)
        cc = cocartesian_corollas(p, 3)
        for sigma, xs in operation_keys(f):
            keys += 1
            K = cocart_space_of_op(p, sigma, xs, dim=2, cc=cc)
            bad += not (K.simplices(0) and K.is_connected())
    return bad == 0, "%d keys, %d empty or disconnected" % (keys, bad)


CRITERIA = [c1_omega, c2_shuffles, c3_segal, c4_left_fibrations, c5_cocartesian_criterion, c6_coyoneda,
            c7_round_trips, c8_adjunction, c9_cubes, c10_mapping_trees, c11_marked, c12_cocart_spaces]


def _line(k, fn, ok, detail, secs):
    return "criterion %2d %-26s %s  (%s; %.1fs)" % (k, fn.__name__.split("_", 1)[1], "PASS" if ok else "FAIL",
                                                  detail, secs)


@pytest.mark.parametrize("k", range(1, 13))
def test_criterion(k, capsys):
    fn = CRITERIA[k - 1]
    t = time.time()
    ok, detail = fn()
    with capsys.disabled():
        print("\n" + _line(k, fn, ok, detail, time.time() - t))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for k, fn in enumerate(CRITERIA, 1):
        t = time.time()
        ok, detail = fn()
        failed += not ok
        print(_line(k, fn, ok, detail, time.time() - t), flush=True)
    sys.exit(1 if failed else 0)
