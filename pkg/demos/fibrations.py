"""Nerves of small operads, horn fillers and the fibration taxonomy on a battery of maps."""

from dendro import trees as tr
from dendro.trees import FaceLabel
from dendro.operads import operad_from_category, to_terminal
from dendro.categories import arrow
from dendro.dendsets import Nerve, NerveMap, nerve_map
from dendro.lifting import (horn_filler_counts, is_inner_fibration, is_left_fibration,
                            is_cocartesian_fibration, is_opfibered_in_groupoids, cocart_pullback_criterion)
from dendro.catalogue import battery, planted_category_over_arrow

P = operad_from_category(arrow(2))
N = Nerve(P)
print("nerve of [2]: %d colours, %d arrows" % (len(N.colours()), len(N.corollas(1))))

# inner horns in a nerve fill uniquely
p = nerve_map(to_terminal(P), bound=3)
L = tr.linear(2)
print("fillers of the inner horn of L2:", [k for _, _, k in horn_filler_counts(p, L, FaceLabel("inner", "e1"))])

print("\n%-12s %6s %6s %6s %10s" % ("map", "inner", "left", "cocart", "groupoids"))
for name, f, _ in battery():
    q = NerveMap(f, bound=3)
    print("%-12s %6s %6s %6s %10s" % (name, bool(is_inner_fibration(q, 3)), bool(is_left_fibration(q, 3)),
                                      bool(is_cocartesian_fibration(q, 3)), bool(is_opfibered_in_groupoids(f))))

# a failed check carries a witness
f = planted_category_over_arrow()
v = is_left_fibration(NerveMap(f, bound=3), 3)
print("\nfgu is not a left fibration; witness condition:", v.witness["condition"])
for op in f.source.operations():
    print("  %s coCartesian: %s" % (op, cocart_pullback_criterion(f, op).ok))
