# Sizes of the Kakeya sets that come from monomial graphs.
#
# DK(x^d, c) is the graph of x^d together with the lines of slope c through
# it; the Kakeya set built from it has q^2 - v_0 points, where v_0 counts
# the lines of DK that miss the graph.
from nonhitting.gf import gf
from nonhitting.kakeya import kakeya_report, kakeya_size, monomial_census
from nonhitting.polyset import FieldPoly

for q in (4, 5, 7, 8, 9):
    census = monomial_census(gf(q))
    sizes = ", ".join(f"{k}:{sorted(ds)}" for k, ds in census.items())
    print(f"q={q}  {sizes}")

ctx = gf(9)
f = FieldPoly.monomial(ctx, 2)
print()
print("x^2 over GF(9), all c:", [kakeya_size(f, c) for c in range(ctx.q)])
print(kakeya_report(f, 1).to_dict())
