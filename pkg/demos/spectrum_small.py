# Which numbers of external lines can a (q+1)-set have?
#
# For q <= 5 every (q+1)-set of PG(2,q) is enumerated.  For q = 7 a seeded
# search only shows values that do occur, it proves nothing about the rest.
import time

from nonhitting.extremal import (EXAMPLE_KINDS, check_bounds, construct_example,
                                 example_admissible, spectrum)
from nonhitting.gf import gf
from nonhitting.plane import intersection_distribution

for q in (2, 3, 4, 5):
    t = time.time()
    res = spectrum(gf(q))
    print(f"Spec({q}) = {set(res.attained)}   {res.sets_checked} sets, {time.time() - t:.1f}s")

res = spectrum(gf(7), "partial", budget=3000, seed=0)
print("q=7, values seen:", res.attained)
print("one set with 15 external lines ->", res.evidence[15])

# the named constructions, with their distributions and the bound checks
print()
for kind in EXAMPLE_KINDS:
    for q in (7, 8):
        if not example_admissible(kind, q):
            continue
        S = construct_example(kind, gf(q))
        u = intersection_distribution(S)
        print(f"{kind:24s} q={q}  u={dict(u.counts)}  bounds ok: {check_bounds(S).ok}")
