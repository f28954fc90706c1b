import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from dendro import trees as tr
from dendro.dendsets import Representable, boundary, check_functoriality, sharp, flat
from dendro.tensor import (shuffles, coherent_labellings, label_valid, minimal_shuffle, maximal_shuffle,
                           percolation_poset, tensor, swap_map, maximal_nondegenerate, marked_tensor)

no_stumps = [T for T in tr.all_trees(3) if all(v.inputs for v in T.vertices)]
pairs = st.tuples(st.sampled_from(tr.all_trees(2)), st.sampled_from(tr.all_trees(2)))


@pytest.mark.parametrize("n,k", [(n, k) for n in range(1, 4) for k in range(1, 4)])
def test_two_shuffles_of_corollas(n, k):
    assert len(shuffles(tr.corolla(n), tr.corolla(k))) == 2


@pytest.mark.parametrize("m,n", [(m, n) for m in range(4) for n in range(4)])
def test_linear_shuffles_are_lattice_paths(m, n):
    assert len(shuffles(tr.linear(m), tr.linear(n))) == math.comb(m + n, m)


@given(pairs)
@settings(max_examples=60, deadline=None)
def test_percolation_reaches_every_coherent_labelling(st_pair):
    S, T = st_pair
    found = {s.cells for s in shuffles(S, T)}
    oracle = {s.cells for s in coherent_labellings(S, T)}
    assert found == oracle
    assert all(label_valid(s) for s in shuffles(S, T))


def test_random_pairs_three_vertices():
    rng = random.Random(7)
    pool = tr.all_trees(3)
    for _ in range(10):
        S, T = rng.choice(pool), rng.choice(pool)
        assert len(shuffles(S, T)) == len(coherent_labellings(S, T))


@given(pairs)
@settings(max_examples=40, deadline=None)
def test_shuffle_counts_are_symmetric(st_pair):
    S, T = st_pair
    assert len(shuffles(S, T)) == len(shuffles(T, S))


@pytest.mark.parametrize("S", no_stumps[:8], ids=tr.code)
def test_leaves_of_shuffles(S):
    T = tr.corolla(2)
    for sh in shuffles(S, T):
        assert len(sh.tree.leaves) == len(S.leaves) * len(T.leaves)
        assert not sh.has_nullary_percolation()


def test_poset_has_unique_ends():
    S, T = tr.parse_tree("(node r (node e a b) c)"), tr.corolla(2)
    shs, edges = percolation_poset(S, T)
    sources = {i for i, _ in edges}
    targets = {j for _, j in edges}
    mins = [k for k in range(len(shs)) if k not in targets]
    maxs = [k for k in range(len(shs)) if k not in sources]
    assert [shs[k] for k in mins] == [minimal_shuffle(S, T)]
    assert [shs[k] for k in maxs] == [maximal_shuffle(S, T)]


def test_stumps_flagged():
    S = tr.corolla(0)
    T = tr.corolla(2)
    flags = [sh.has_nullary_percolation() for sh in shuffles(S, T)]
    assert any(flags)


def test_shuffle_sexpr_uses_pairs():
    sh = minimal_shuffle(tr.corolla(1), tr.corolla(1))
    assert "(pair e0 e0)" in sh.sexpr()


def test_tensor_of_representables():
    A, B = Representable(tr.corolla(1)), Representable(tr.corolla(2))
    X = tensor(A, B)
    assert len(X.dendrices(tr.eta())) == 2 * 3
    assert check_functoriality(X, tr.all_trees(2)) is None
    sw = swap_map(X)
    Y = tensor(B, A)
    for U in tr.all_trees(2):
        assert {sw(U, x) for x in X.dendrices(U)} == set(Y.dendrices(U))
    tops = maximal_nondegenerate(X, tr.all_trees(3))
    orbits = {(tr.code(T), frozenset(X.sigma_orbit(T, x))) for T, x in tops}
    # one orbit per shuffle of C1 and C2
    assert len(orbits) == 2


def test_tensor_of_boundary():
    B = boundary(tr.corolla(1), bound=1)
    X = tensor(B, Representable(tr.corolla(1)))
    # two copies of the arrow, no square
    assert len(X.dendrices(tr.eta())) == 4
    assert len(X.nondegenerate(tr.corolla(1))) == 2


def test_marked_tensor():
    A = Representable(tr.corolla(1))
    M = marked_tensor(sharp(A, 1), flat(A, 1))
    und = M.underlying
    marked = M.marked(1)
    assert marked and len(marked) < len(und.corollas(1))
