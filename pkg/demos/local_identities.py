#!/usr/bin/env python3
"""Walkthrough: exact local GL(2) data and its brute-force cross-checks.

Everything here is exact until the final section: coset masses, classical
vectors, transition coefficients and local zeta ratios are Laurent rational
functions over Q extended by S = sqrt((q+1)/(q-1)), so each identity is
checked by normalising a difference to the literal zero element.  The last
section evaluates the same objects numerically and compares them with
shell-by-shell p-adic integration.
"""

from fractions import Fraction

from zetalab import locgl2 as lg
from zetalab import oracle as oc
from zetalab.symring import GEN_T, ONE, ZERO, EvalPoint, q_pow

print("=" * 72)
print("1. coset masses: w_0 = q/(q+1), w_n = q^-(n-1)(1-1/q)/(q+1)")
print("=" * 72)
table = lg.coset_masses(3)
for n, w in enumerate(table.masses):
    print(f"   w_{n} = {w.canonical_str()}")
print(f"   tail(4) = {table.tail.canonical_str()}")
print(f"   total mass - 1 is zero: {(table.total() - 1).is_zero}")

print()
print("   enumerating GL2(Z/8) classifies the same masses as exact rationals:")
rep = oc.coset_count(2, 3)
for v, mass in sorted(rep.masses.items()):
    print(f"   valuation {v}: {mass} " + ("(residual cell)" if v == 3 else ""))
assert rep.masses[0] == Fraction(2, 3) and rep.masses[1] == Fraction(1, 6)

print()
print("=" * 72)
print("2. classical vectors and K-type dimensions")
print("=" * 72)
cv = lg.classical_vectors(4)
for l, n in ((0, 3), (1, 0), (1, 1), (3, 2), (3, 3)):
    print(f"   a({l},{n}) = {cv.entry(l, n).canonical_str()}")
print("   orthonormality sum_n a(l,n) a(l',n) w_n = delta for l,l' <= 4:",
      all(lg.orthonormality_residual(l, lp).is_zero for l in range(5) for lp in range(5)))
print("   d_n = a(n,n)^2 for n = 1..6:",
      all(lg.dimension_residual(n).is_zero for n in range(1, 7)))

print()
print("=" * 72)
print("3. transition coefficients and the explicit inversion")
print("=" * 72)
print("   c(1,0) =", lg.transition_coeff(1, 0).canonical_str())
print("   c(2,2) =", lg.transition_coeff(2, 2).canonical_str())
print("   evaluation system q^((n-2k)(1/2+s0)) = sum_l c(n,l) a(l,n-k), n <= 5:",
      all(lg.evaluation_residual(n, k).is_zero for n in range(6) for k in range(n + 1)))

seq = [ONE, GEN_T, GEN_T**2 - 1, q_pow(1), ZERO, GEN_T ** (-1)]
fwd = []
for n in range(len(seq)):
    acc = ZERO
    for l in range(n + 1):
        acc = acc + lg.transition_coeff(n, l) * seq[l]
    fwd.append(acc)
back = lg.solve_transition(fwd)
print("   forward transform then explicit inversion is the identity:",
      all((b - s).is_zero for b, s in zip(back, seq)))

print()
print("=" * 72)
print("4. local zeta ratios: displays, duals, unitarity")
print("=" * 72)
print("   zeta_1(s, s0) =", lg.zeta_ratio(1).value.canonical_str())
print("   dual solve matches the s -> -s substitution for l <= 6:",
      all(lg.dual_ratio_residual(l).is_zero for l in range(7)))
print("   unitarity sum_l c(n,l;s0) c(n,l;-s0) = 1 for n <= 6:",
      all(lg.unitarity_identity(n).is_zero for n in range(7)))
print("   hermitian linear system closes for n <= 2:",
      all(lg.herm_system_residual(n).is_zero for n in (0, 1, 2)))

print()
print("=" * 72)
print("5. numeric cross-check against shell summation")
print("=" * 72)
pt = EvalPoint(q=3, s=2.0, s0=0.5)
closed = lg.spherical_zeta().value.substitute(pt)
summed = oc.zeta_by_summation(0, pt)
print(f"   spherical zeta at q=3, s=2, s0=1/2: closed {closed:.12f}")
print(f"                               shells {summed:.12f}")
print(f"   |difference| = {abs(closed - summed):.2e}")

pt = EvalPoint(q=5, s=1.8 - 0.4j, s1=0.2 + 0.3j, s2=-0.15j)
for l in (1, 2):
    closed = lg.rs_zeta_ratio(l).value.substitute(pt)
    summed = oc.rs_by_summation(l, pt)
    print(f"   Rankin-Selberg ratio l={l}: |closed - shells| = {abs(closed - summed):.2e}")
for l in (1, 2):
    closed = lg.herm_zeta_ratio(l).value.substitute(pt)
    summed = oc.herm_by_summation(l, pt)
    print(f"   hermitian ratio     l={l}: |closed - shells| = {abs(closed - summed):.2e}")
print()
print("done.")
