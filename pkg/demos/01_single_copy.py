"""
Single-copy conversion of bipartite pure states.

A pure state is described (up to local unitaries) by its Schmidt spectrum.
One copy of a state can be turned into one copy of another by local
operations and classical communication exactly when the target spectrum
majorizes the source spectrum.
"""
import numpy as np

from entax import SchmidtVector, convertible_single_copy, entropy
from entax.schmidt import schmidt_from_amplitudes

# amplitudes psi[i, j] of sum_ij psi_ij |i>|j>
psi = np.array([[0.6, 0.0], [0.0, 0.8j]])
s = schmidt_from_amplitudes(psi)
print("Schmidt spectrum of psi:", s.probs, " entropy:", round(entropy(s), 4))

bell = SchmidtVector([0.5, 0.5])
for src, dst in [(bell, s), (s, bell)]:
    v = convertible_single_copy(src, dst)
    print(f"{src.probs} -> {dst.probs}: convertible={v.convertible}, margin={v.margin:+.3f}")

# a pair neither of which can reach the other
a = SchmidtVector([0.4, 0.4, 0.1, 0.1])
b = SchmidtVector([0.5, 0.25, 0.25])
print()
print("prefix sums of a:", np.cumsum(a.probs))
print("prefix sums of b:", np.cumsum(b.probs))
for src, dst in [(a, b), (b, a)]:
    v = convertible_single_copy(src, dst)
    print(f"{src.probs} -> {dst.probs}: convertible={v.convertible}, first failing prefix={v.failing_prefix}")
