"""On a finite group only the characters that recur matter.

A sequence on a finite group is eventually periodic, so s_v is the joint
kernel of the characters in its cycle.  That kernel is also the radical of
those characters, which we compare against brute force here.
"""

from charsub import FiniteAbelian, radical, s_v_finite
from charsub import sequences as S
from charsub.groups import all_subgroups, quotient_finite
from charsub.membership import s_v_brute
from charsub.construct import quotient_lift

G = FiniteAbelian((2, 4))
seq = S.ExplicitPeriodic(G, ((1, 1),), ((0, 2), (1, 0)))
print(f"group {G}, sequence {seq.expr()}")
print(f"  characters occurring infinitely often: {sorted(S.support_partition(seq).gamma_inf)}")
print(f"  s_v = {s_v_finite(G, seq).elements()}")
rad = radical(G, S.ExplicitPeriodic(G, (), seq.cycle))
print(f"  radical of the cycle: {rad.describe()} (certificate replays: {rad.certificate.replay()})")

print("\nPulling a sequence back along every quotient map of Z(2)+Z(4):")
for F in all_subgroups(G):
    q = quotient_finite(G, F.generators)
    chi = tuple(1 for _ in q.target.factors)  # the character with every coordinate 1
    u = S.ExplicitPeriodic(q.target, (), (chi,))
    v = quotient_lift(u, q)
    lhs = s_v_brute(G, v)
    rhs = q.preimage(s_v_brute(q.target, u))
    print(f"  F of order {F.order}: X/F = {q.target}, s_v(X) = preimage of s_u(X/F): {lhs == rhs}")
