"""Building a one-to-one sequence on Z whose characterized subgroup is 6Z.

Start from u_n(6j) = j/2^(n+t) on 6Z, which tends to 0 at every point.  The
lifting step turns each value a into a point b with 6b = a and every kb
(1 <= k < 6) far from 0.  The resulting characters of Z vanish in the limit
exactly on the multiples of 6.
"""

from fractions import Fraction

from charsub import IntegersZ, member
from charsub.construct import claim_lift, k_characterize_open_finite_index
from charsub.circle import norm

a, m = Fraction(1, 400), 6
b = claim_lift(a, m)
print(f"lifting a = {a} with m = {m}: b = {b}")
print(f"  m b - a = {m * b - a} (an integer)")
print(f"  |k b| for k = 1..5: {[str(norm(k * b)) for k in range(1, m)]}, all above 1/36")

result = k_characterize_open_finite_index(6)
print(f"\nthe sequence: {result.sequence.expr()}")
print(f"first terms: {[str(t) for t in result.sequence.terms(0, 5)]}")

Z = IntegersZ()
inside = [k for k in range(-20, 21) if member(Z, result.sequence, k).proven_in]
print(f"integers in [-20, 20] proven in s_v: {inside}")
v = member(Z, result.sequence, 4)
print(f"k = 4: {v.status.value}, |v_n(4)| >= {v.certificate.claims['escape_norm']} infinitely often")

print("\nalong the chain 12 > 6 > 3 > 1 the same works for 12Z:")
result = k_characterize_open_finite_index(12, chain=(12, 6, 3, 1))
for step in result.steps:
    print(f"  {step}")
print(f"  multiples of 12 in [-30, 30]: {[k for k in range(-30, 31) if member(Z, result.sequence, k).proven_in]}")
