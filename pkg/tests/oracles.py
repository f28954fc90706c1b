"""Brute-force reference computations shared by the test modules.

These avoid the library's face, shuffle and operad machinery so that
agreement means something.
"""

import itertools
import math

from dendro import trees as tr


def mono_images(T):
    """Every subtree of T that is the image of a monomorphism.

    Grown from each possible root edge; at each image edge either stop (the
    edge becomes an image leaf) or pick a nontrivial cut above it.
    """
    def grow(todo, struct):
        if not todo:
            yield struct
            return
        e, rest = todo[0], todo[1:]
        yield from grow(rest, struct)
        for L in T.cuts(e):
            L = sorted(L)
            if L == [e]:
                continue
            yield from grow(rest + L, struct + [(e, L)])

    for r in sorted(T.edges):
        for st in grow([r], []):
            yield tr.Tree(r, st)


def is_leaf_set(T, root, L):
    """Walking up from root, every branch stops at a member of L or at a
    nullary vertex, and every member of L is reached."""
    L = set(L)
    reached, stack = set(), [root]
    while stack:
        e = stack.pop()
        if e in L:
            reached.add(e)
            continue
        v = T.producer(e)
        if v is None:
            return False
        stack.extend(v.inputs)
    return reached == L


def free_operad_count(T, n):
    """Number of arity-n operations of the free operad on T."""
    count = 0
    for root in T.edges:
        for L in itertools.combinations(sorted(T.above(root)), n):
            if is_leaf_set(T, root, L):
                count += math.factorial(n)
    return count
