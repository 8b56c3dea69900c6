"""Classification questions that reduce to arithmetic.

Essential order and exponent of symbolic compact groups decide whether a
closed subgroup with that quotient can be characterized by a T-sequence.
Compact groups are never characterized by a non-trivial sequence of their
own characters, while R, Z and the p-adic numbers are.
"""

from charsub import autochar_verdict, eo_descriptor, exp_descriptor, not_t_characterizable, parse_group
from charsub.classify import admits_minap_fg

for text in ["Z(3) x Z(2)^N", "Z(2)^N", "T^N", "Z(4) x Z(2)^N x Z(3)"]:
    G = parse_group(text)
    crit = not_t_characterizable(G)
    print(f"{text:24s} eo = {str(eo_descriptor(G)):3s} exp = {str(exp_descriptor(G)):3s} "
          f"eo < exp: {crit.holds}  {crit.reason}")

print()
for text in ["R", "Z", "Q_3", "prod(Z(2), R)", "T", "Z(6)"]:
    verdict = autochar_verdict(parse_group(text))
    witness = f" with witness {verdict.witness.expr()}" if verdict.witness is not None else ""
    print(f"{text:14s} characterized by its own sequence: {verdict.autocharacterized}{witness} ({verdict.reason})")

print()
for text in ["Z", "Z(5)", "prod(Z, Z(2))", "Z(1)"]:
    ans = admits_minap_fg(parse_group(text))
    extra = f"  [{ans.flagged}]" if ans.flagged else ""
    print(f"{text:14s} admits a MinAP group topology: {ans.admits}{extra}")
