"""
Tour 1: root systems and the smoothness combinatorics.

Everything downstream rests on exact Dynkin-diagram bookkeeping: Cartan
tables in the fundamental-weight convention, positive roots, induced
subdiagrams, and the smooth pair / triple / quadruple predicates.
"""

from horokit import rootdata as rd
from horokit.rootdata import GroupFactor, GroupProduct, Root

print("== Cartan data ==")
print("B3 table (rows are coroots):")
for row in rd.cartan_matrix("B", 3):
    print("   ", row)
print("positive roots of F4:", rd.positive_root_count("F", 4))

G = GroupProduct((GroupFactor("A", 3),))
print("\ndim SL4/B =", rd.flag_dimension(G, set()))
print("dim SL4/P(w2) =", rd.flag_dimension(G, {Root(0, 1), Root(0, 3)}))

print("\n== Induced subdiagrams ==")
B4 = GroupProduct((GroupFactor("B", 4),))
for roots in ({Root(0, 1), Root(0, 2)}, {Root(0, 3), Root(0, 4)},
              {Root(0, 2), Root(0, 3), Root(0, 4)}):
    comps = rd.subdiagram_components(B4, roots)
    print(sorted(r.index for r in roots), "->",
          [(c.family, c.rank, [m.index for m in c.members]) for c in comps])

print("\n== Smooth pairs ==")
print("(B4; {a2,a3} | {a4}):",
      rd.is_smooth_pair(B4, {Root(0, 2), Root(0, 3)}, {Root(0, 4)}))
print("(B4; {a3} | {a4}):  ",
      rd.is_smooth_pair(B4, {Root(0, 3)}, {Root(0, 4)}))

print("\n== Smooth triples (the eight-case table) ==")
for K, g, d in ((GroupFactor("A", 5), 1, 5), (GroupFactor("B", 3), 1, 3),
                (GroupFactor("C", 3), 2, 3), (GroupFactor("G", 2), 1, 2),
                (GroupFactor("A", 5), 2, 4)):
    print(f"({K}, a{g}, a{d}) ->", rd.smooth_triple_class(K, g, d))

print("\n== Smooth quadruples and their enumeration ==")
print("(A5, a3, {a1,a2}, n=1):",
      rd.is_smooth_quadruple(GroupFactor("A", 5), 3, {1, 2}, 1))
print("(B4, a1, {a4}, n=2): ",
      rd.is_smooth_quadruple(GroupFactor("B", 4), 1, {4}, 2))
for fam, m in (("G", 2), ("F", 4)):
    entries = rd.enumerate_smooth_quadruples(fam, m, 2)
    nonempty = [(b, sorted(R)) for b, R in entries if R]
    print(f"{fam}{m}, higher rank: {len(entries)} classes; nonempty: {nonempty}")
