"""
Many-copy conversion rates.

n copies of a = (0.9, 0.1) have 2**n Schmidt coefficients but only n + 1
distinct values, so the spectrum is kept as type classes.  For each n we
find the fewest Bell pairs m that produce n copies of a (dilution), and the
most Bell pairs that n copies of a yield (distillation).

Exactly (eps = 0) the ratios sit at two walls: log2 of the rank for
dilution and the min-entropy for distillation.  Allowing a small error eps
moves the dilution ratio down towards the entropy of a.
"""
from entax import EPR, SchmidtVector, entropy, estimate_E, rate_frontier
from entax.asymptotic import Direction, product_spectrum
from entax.schmidt import min_entropy

a = SchmidtVector([0.9, 0.1])
print(f"entropy {entropy(a):.4f}, min-entropy {min_entropy(a):.4f}")

s = product_spectrum(a, 40)
print(f"a^40: {s.count} coefficients in {len(s)} classes")

dil = rate_frontier(a, EPR, 12)
dist = rate_frontier(a, EPR, 12, direction=Direction.DISTILLATION)
print("\n n  dilution  distillation")
for p, q in zip(dil.points, dist.points):
    print(f"{p.n:2d}  {p.m:8d}  {q.m:12d}")

print("\nsmoothed dilution, eps = 0.05")
front = rate_frontier(a, EPR, 64, 0.05)
for p in front.points[7::8]:
    print(f"n={p.n:2d}  m={p.m:2d}  m/n={p.ratio:.4f}  discarded={p.discarded:.4f}")
est = estimate_E(a, EPR, 0.05, n=64)
print(f"best over n <= 64: {est.m}/{est.n} = {est.ratio:.4f}  (entropy {est.reference:.4f})")
