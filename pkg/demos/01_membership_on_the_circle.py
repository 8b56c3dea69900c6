"""Which points of the circle does a sequence of integers make null?

For an integer sequence (v_n) the characterized subgroup is the set of t in
T = R/Z with v_n t -> 0.  At a rational point a/q everything happens mod q,
so the residues of v_n eventually cycle and the verdict is exact.  At an
irrational point we can only collect evidence.
"""

from fractions import Fraction

from charsub import CircleT, member, evidence_trail
from charsub import sequences as S
from charsub.circle import CircleInterval, golden_ratio

T = CircleT()

print("n! t -> 0 for every rational t, since q divides n! once n >= q:")
for x in [Fraction(1, 6), Fraction(1, 7), Fraction(5, 12)]:
    v = member(T, S.Factorial(), x)
    print(f"  t = {x}: {v.status.value} (residues from index {v.certificate.claims['preperiod']} on are 0)")

print("\nThe Fibonacci numbers mod 2 cycle through 1, 1, 0, so t = 1/2 never settles:")
v = member(T, S.fibonacci(), Fraction(1, 2))
print(f"  {v.status.value}: cycle {v.certificate.claims['cycle']}, "
      f"|v_n t| = {v.certificate.claims['escape_norm']} infinitely often")
print(f"  replaying the certificate from its text: {v.certificate.replay()}")

print("\nThe enumeration 1, -1, 2, -2, ... of nonzero integers keeps every nonzero rational away from 0:")
for x in [Fraction(1, 3), Fraction(2, 5)]:
    v = member(T, S.ZEnumeration(), x)
    print(f"  t = {x}: {v.status.value}, escapes to norm {v.certificate.claims['escape_norm']} > 1/4")

print("\nAt the golden ratio F_n phi does tend to 0, but no finite check can prove it:")
phi = CircleInterval(golden_ratio())
v = member(T, S.fibonacci(), phi, horizon=30)
trail = evidence_trail(T, S.fibonacci(), phi, horizon=30)
for n in (5, 10, 20, 30):
    print(f"  n = {n:2d}: |v_n phi| <= {float(trail.upper_bounds[n]):.3e}")
print(f"  verdict: {v.status.value}")
