"""Replayable certificates.

A certificate records its inputs as text (group, sequence, subject) plus the
claims it makes.  ``replay()`` re-parses the inputs, recomputes the claims from
scratch and spot-checks them against direct evaluation of the terms.
"""

from __future__ import annotations

from dataclasses import dataclass, field

_VERIFIERS = {}


def verifier(kind):
    def register(fn):
        _VERIFIERS[kind] = fn
        return fn

    return register


@dataclass(frozen=True, eq=True)
class Certificate:
    kind: str
    group: str
    sequence: str | None = None
    subject: str | None = None
    claims: dict = field(default_factory=dict, hash=False)
    trace: tuple = ()

    def replay(self) -> bool:
        """Recompute the certificate from its inputs; True iff every claim is reproduced."""
        # importing the modules registers their verifiers
        from . import membership, radicals  # noqa: F401

        check = _VERIFIERS.get(self.kind)
        if check is None:
            return False
        return bool(check(self))

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "group": self.group,
            "sequence": self.sequence,
            "subject": self.subject,
            "claims": self.claims,
            "trace": list(self.trace),
        }

    @classmethod
    def from_dict(cls, data: dict) -> Certificate:
        return cls(
            data["kind"], data["group"], data.get("sequence"), data.get("subject"),
            dict(data.get("claims", {})), tuple(data.get("trace", ())),
        )

    def __hash__(self):
        return hash((self.kind, self.group, self.sequence, self.subject, self.trace))
