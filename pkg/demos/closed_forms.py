# Closed-form rows versus brute force for the power families.
#
# Every family that applies to q gets its predicted rows compared with the
# rows counted from the graph itself.  Nothing should mismatch.
import time

from nonhitting.formulas import families_for, predict_intersection, verify_family
from nonhitting.gf import gf, prime_powers

t = time.time()
total = 0
for q in prime_powers(2, 64):
    ctx = gf(q)
    line = []
    for fam in families_for(ctx):
        rep = verify_family(fam, ctx)
        total += rep.rows_checked
        line.append(f"{fam.name}{'' if rep.ok else '!'}")
    print(f"q={q:3d}  " + "  ".join(line))
print(f"{total} rows checked in {time.time() - t:.1f}s")

# the aggregated distribution for one family
ctx = gf(27)
for fam in families_for(ctx)[:3]:
    pred = predict_intersection(fam, ctx)
    print(fam.name, "d =", fam.exponent(ctx), dict(pred.dist.counts))
