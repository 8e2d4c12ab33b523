"""From a parabolic choice to the anticanonical weight and Fano index.

Everything geometric in this package is driven by three integers' worth of
data: the rank of A_n, a subset theta of simple roots, and a covering
integer ell.  This script walks the combinatorial layer: positive roots,
the complement of the parabolic span, delta_P, its Cartan pairings, and
the gcd that decides which circle bundles carry the structures downstream.
"""

from flagcone import build_root_system, crepancy_check, parabolic_choice

print("=" * 70)
print("The Klein quadric Gr(2, C^4): rank 3, theta = {1, 3}")
print("=" * 70)
rs = build_root_system(3)
print(f"positive roots of A_3 ({len(rs.positive_roots)}):",
      ", ".join(str(r) for r in rs.positive_roots))

pc = parabolic_choice(rs, {1, 3}, ell=4)
print("complement of <theta>:", ", ".join(str(r) for r in pc.complement_roots))
print("delta_P (simple-root coordinates):", pc.delta_p)
print("pairings <delta_P, h_alpha> for alpha outside theta:", pc.pairings)
print("Fano index = gcd of pairings:", pc.fano_index)
print("Picard rank b_2:", pc.picard_rank)
print("complex dimension of X_P:", pc.dim_complex)

print()
print("covering integers ell and the canonical-root ladder:")
for ell in (1, 2, 3, 4):
    print(f"  ell = {ell}: {crepancy_check(ell, pc.fano_index)}")
print("only ell = I(X_P) = 4 gives the canonical bundle itself -- the")
print("crepant case where the Calabi ansatz resolves the cone.")

print()
print("=" * 70)
print("Projective spaces: the Fano index grows with the dimension")
print("=" * 70)
for n in range(1, 7):
    pcn = parabolic_choice(build_root_system(n), set(range(2, n + 1)))
    print(f"  CP^{n}: delta_P = {pcn.delta_p}, I = {pcn.fano_index}")

print()
print("=" * 70)
print("Full flags: every pairing is 2, so I = 2 regardless of rank")
print("=" * 70)
for n in range(1, 6):
    pcb = parabolic_choice(build_root_system(n), set())
    print(f"  SU({n + 1})/T^{n}: pairings {sorted(pcb.pairings.values())}, "
          f"I = {pcb.fano_index}, b_2 = {pcb.picard_rank}")
