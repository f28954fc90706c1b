"""W-construction cubes, straightening cubes and mapping trees of poset algebras."""

from dendro import trees as tr
from dendro.homotopy import (w_signatures, w_space, straightening_cube, face_functoriality_failures,
                             mapping_tree, fibre_iso_check, point_iso_check)
from dendro.catalogue import tree_algebras

T = tr.parse_tree("(node r (node c (node a l) (node b)) (node d m))")
for leaves, c in w_signatures(T)[:6]:
    print("W(%s; %s) is a %d-cube" % (",".join(leaves) or "-", c, w_space(T, leaves, c).dim))
print("straightening cube at c:", straightening_cube(T, "c").dim, "dimensional")
print("face maps functorial:", face_functoriality_failures(T) == [])

for A in tree_algebras():
    M = mapping_tree(A, 2)
    fib = {c: fibre_iso_check(A, c) is None for c in sorted(A.tree.edges)}
    print("%-6s over %-26s colours %3d  fibres iso %s" % (A.name, tr.to_sexpr(A.tree),
                                                      len(M.dendrices(tr.eta())), all(fib.values())))
print("point algebra recovers the representable:", point_iso_check(tr.corolla(2), tr.all_trees(2)) is None)
