"""Integrate an algebra, straighten it back, and compare two cleavages."""

from dendro.grothendieck import (groth, unit_check, choose_cleavage, counit_check, compare_cleavages,
                                 straighten_set, adjunction_check, coyoneda_check)
from dendro.catalogue import z2_sum_algebra, set_algebras

F = z2_sum_algebra()
S = F.operad
G, proj = groth(S, F)
print("integral: %d colours, %d operations" % (len(G.colours), len(G.operations())))
print("unit:", unit_check(S, F))

K_min, K_max = choose_cleavage(proj), choose_cleavage(proj, prefer="max")
print("counit (min cleavage):", counit_check(proj, K_min))
cmp = compare_cleavages(proj, K_min, K_max)
print("cleavages differ on %d lifts; canonical isos natural: %s" % (cmp["nonidentity_components"], cmp["ok"]))

St = straighten_set(proj)
print("straightening is strict:", St.check() is None)
print("adjunction:", adjunction_check(proj, F))

S2, s, A = set_algebras()[0]
print("coyoneda at %s for %s:" % (s, A.name), coyoneda_check(S2, s, A))
