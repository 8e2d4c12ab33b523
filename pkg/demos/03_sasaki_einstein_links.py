"""Contact forms and Sasaki-Einstein metrics on circle bundles.

Each covering integer ell picks a circle bundle over X_P; its contact
form is assembled from first derivatives of the same log K potential, and
g = (pullback of the rescaled base metric) + eta_bar (x) eta_bar is
Einstein with Ric = 2n g.  The script prints the structure tensors for
the Hopf fibration and verifies the axioms and curvature on the
9-dimensional Stiefel example.
"""

import numpy as np

from flagcone import (
    anticanonical_potential,
    contact_form_at,
    reeb_and_contact_axioms,
    sasaki_einstein_residual,
    sasaki_metric_at,
    sasaki_nijenhuis_check,
)
from flagcone.sasaki import (
    contact_metric_axiom_residuals,
    sasaki_scalar_curvature,
)

np.set_printoptions(precision=5, suppress=True)

print("=" * 70)
print("Hopf fibration S^3 -> CP^1 (ell = 1)")
print("=" * 70)
cp1 = anticanonical_potential(1, set(), ell=1)
z = [0.3 + 0.4j]
print("eta components (dx, dy, dtheta):", contact_form_at(cp1, z))
s = sasaki_metric_at(cp1, [0.0])
print("g at the origin (round sphere):")
print(s.g)
print("phi at the origin (rotation on the base, zero on the Reeb line):")
print(s.phi)
rep = reeb_and_contact_axioms(cp1, z)
print(f"eta(xi) = {rep['eta_bar_of_xi']:.1f}, "
      f"top-form coefficient = {rep['top_form_coefficient']:.4f}")

print()
print("=" * 70)
print("V_2(R^6)/Z_4 = Q(K_{Gr(2,C^4)}): dimension 9, n = 4")
print("=" * 70)
gr = anticanonical_potential(3, {1, 3}, ell=4)
z = [0.3 + 0.1j, -0.2 + 0.25j, 0.15 - 0.3j, 0.4 + 0.05j]
ax = contact_metric_axiom_residuals(gr, z)
print("contact-metric axiom residuals:")
for k, v in ax.items():
    print(f"  {k:28s} {v:.2e}")
print(f"Sasaki condition [phi,phi] + d eta (x) xi: "
      f"{sasaki_nijenhuis_check(gr, z):.2e}")
print(f"Einstein residual |Ric - 8 g|: {sasaki_einstein_residual(gr, z):.2e}")
print(f"scalar curvature: {sasaki_scalar_curvature(gr, z):.10f} "
      f"(2n(2n+1) = 72)")

print()
print("=" * 70)
print("ell only rescales the fiber: eta_bar for the Stiefel family")
print("=" * 70)
for ell in (1, 2, 4):
    spec = anticanonical_potential(3, {1, 3}, ell=ell)
    s = sasaki_metric_at(spec, [0.0] * 4)
    print(f"  ell = {ell}: eta_bar(dtheta) = {s.eta_bar[-1]:.4f}, "
          f"xi = {s.xi[-1]:.4f} d/dtheta")
