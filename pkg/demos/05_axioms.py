"""
Randomised checks of the ordering axioms and of entropy as the
entanglement measure.

This is a reduced configuration so it runs in a few seconds; the full
battery is ``entax axiom-suite`` or ``run_axiom_suite(HarnessConfig())``.
"""
from entax.axioms import HarnessConfig, check_internal_state, replay_witness, run_axiom_suite
from entax.schmidt import EPR, SchmidtVector

cfg = HarnessConfig(samples=200, pairs=1000, a5_pool=60, a7_pool=20, n=16)
reports = run_axiom_suite(cfg)
for r in reports:
    flag = "ok " if r.passed else "BAD"
    extra = ", ".join(f"{k}={v:.3g}" for k, v in sorted(r.metrics.items()))
    print(f"{flag} {r.axiom:<16} samples={r.samples:<6} violations={r.violations:<3} {extra}")

# witnesses are plain JSON and can be re-run
w = next(r for r in reports if r.axiom == "A5-single-copy").witnesses[0]
print("\nincomparable witness:", w["args"]["a"], w["args"]["b"], "replays as", replay_witness(w))

for x in ([0.9, 0.1], [0.25] * 4, [0.5, 0.2, 0.2, 0.1, 0.0], [0.2] * 5):
    x = SchmidtVector(x)
    print(f"Bell pairs needed for {x.probs}: {check_internal_state(EPR, x).n}")
