"""
Three parties: two states reachable from GHZ that cannot reach each other.

b holds a Bell pair between parties 2 and 3, c one between parties 1 and 2.
Each bipartition of the parties gives a necessary condition for conversion;
b -> c fails across the cut around party 1 and c -> b across the cut around
party 3.
"""
import json

from entax.multipartite import counterexample_states, cut_label, cut_profile, ghz_counterexample

names = ("GHZ", "b", "c")
for name, state in zip(names, counterexample_states()):
    row = ", ".join(f"{cut_label(e.mask)}: {e.entropy:.3f}" for e in cut_profile(state))
    print(f"{name:>3}  cut entropies  {row}")

rep = ghz_counterexample()
for key in ("a_to_b", "a_to_c", "b_to_c", "c_to_b"):
    print(f"{key}: {json.dumps(rep[key])}")
print("incomparable:", rep["incomparable"])
