# How often does a line of slope c meet the graph of x^d?
#
# For each c the row M(x^d, c) counts, for every k, the translates
# y = c x + b that meet {(x, x^d)} in exactly k points.  Summing the rows
# gives v, the distribution over all q^2 non-vertical lines.
import numpy as np

from nonhitting.gf import gf
from nonhitting.polyset import (FieldPoly, intersection_distribution_poly,
                                multiplicity_matrix, permutation_directions)

ctx = gf(7)
f = FieldPoly.monomial(ctx, 3)

M = multiplicity_matrix(f)
print("rows of M(x^3, c) over GF(7), columns k = 0..q")
print(M)

# each row accounts for q lines and q points
k = np.arange(ctx.q + 1)
print("row sums  ", M.sum(axis=1))
print("row moment", M @ k)

v = intersection_distribution_poly(f)
print("v =", dict(v.counts))
print("directions where x^3 + c x permutes:", sorted(permutation_directions(f)))

# x^3 does not permute GF(7); over GF(8) x^5 and x^3 are inverse permutations
ctx = gf(8)
a, b = FieldPoly.monomial(ctx, 5), FieldPoly.monomial(ctx, 3)   # 5 * 3 = 15 = 1 mod 7
for c in range(1, 4):
    ra = multiplicity_matrix(a)[c]
    rb = multiplicity_matrix(b)[ctx.inv(c)]
    print(f"c={c}: x^5 row {ra.tolist()}  x^3 row at 1/c {rb.tolist()}")
