"""How an initially correlated bath changes the dephasing trajectory.

The off-diagonal qubit element carries a single complex factor whose
magnitude is the surviving coherence fraction.  With a super-Ohmic bath the
magnitude freezes at a finite value (coherence trapping); the correlated
initial state starts lower but traps higher.
"""

import numpy as np

from cohtrap import BathSpec, CorrelationSpec, ModelParams, QubitSpec, dephasing_factor, stationary_magnitude

bath = BathSpec(alpha=0.2, mu=1.46, omega_c=1.0)
times = np.linspace(0.0, 40.0, 9)

print(f"{'t':>6} " + " ".join(f"lam={lam:<4}" for lam in (0.0, 0.5, 1.0)))
for t in times:
    row = []
    for lam in (0.0, 0.5, 1.0):
        p = ModelParams(bath=bath, corr=CorrelationSpec(lam=lam, upsilon=1.5), qubit=QubitSpec())
        row.append(abs(complex(dephasing_factor(float(t), p))))
    print(f"{t:6.1f} " + " ".join(f"{v:7.4f}" for v in row))

print("\nstationary magnitudes (t -> infinity):")
for lam in (0.0, 0.5, 1.0):
    p = ModelParams(bath=bath, corr=CorrelationSpec(lam=lam, upsilon=1.5), qubit=QubitSpec())
    print(f"  lam={lam}: {stationary_magnitude(p):.6f}")

# The lam=1 trajectory starts at |factor(0)| ~ 0.64 < 1 (correlation costs
# initial coherence) yet ends ~42% above the uncorrelated stationary value.
