"""Trees, their faces, and the shuffles of a tensor product of two trees."""

from dendro import trees as tr
from dendro.tensor import shuffles, percolation_poset, minimal_shuffle, maximal_shuffle

V = tr.parse_tree("(node r (node e a b) c)")
print("tree:", tr.to_sexpr(V), " code:", tr.code(V))
print("automorphisms:", len(tr.automorphisms(V)))
for lab, f in tr.faces(V):
    print("  %-5s face at %s -> %s" % (lab.kind, lab.name, tr.to_sexpr(f.source)))

# every mono into V, up to reparametrisation
print("subobjects of V:", len(tr.subface_inclusions(V)))

# a corolla against a corolla has exactly two shuffles, whatever the arities
for n, k in [(1, 1), (2, 3), (3, 3)]:
    print("C%d x C%d: %d shuffles" % (n, k, len(shuffles(tr.corolla(n), tr.corolla(k)))))

C2 = tr.corolla(2)
shs, edges = percolation_poset(V, C2)
print("V x C2: %d shuffles, %d percolation steps" % (len(shs), len(edges)))
print("  bottom:", minimal_shuffle(V, C2).sexpr())
print("  top:   ", maximal_shuffle(V, C2).sexpr())
