"""
Catalysed conversion.

a cannot be turned into b directly, but borrowing a two-level state c and
returning it untouched makes a + c -> b + c possible.  The search below
finds such a c on a grid over sorted spectra and polishes it.
"""
from entax import SchmidtVector, convertible_with_catalyst, search_catalyst
from entax.errors import NotFound

a = SchmidtVector([0.4, 0.4, 0.1, 0.1])
b = SchmidtVector([0.5, 0.25, 0.25])

c = SchmidtVector([0.6, 0.4])
print("with c = (0.6, 0.4):", convertible_with_catalyst(a, b, c))

found = search_catalyst(a, b, max_dim=2, grid_points=101)
print("best two-level catalyst:", [round(x, 4) for x in found.spectrum.probs],
      f"margin={found.margin:.4f}", f"({found.provenance.value}, {found.evaluations} evaluations)")

found = search_catalyst(a, b)
print("up to four levels:", [round(x, 4) for x in found.spectrum.probs], f"margin={found.margin:.4f}")

# entropy can never go up, catalyst or not
try:
    search_catalyst(SchmidtVector([1.0]), SchmidtVector([0.5, 0.5]), max_dim=3, grid_points=21)
except NotFound as exc:
    print("product -> Bell:", exc)
