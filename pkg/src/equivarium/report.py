from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Report:
    """Outcome of a law check: truthy on success, with a witness otherwise."""

    ok: bool
    witness: str | None = None

    def __bool__(self):
        return self.ok

    @classmethod
    def success(cls) -> Report:
        return cls(True)

    @classmethod
    def fail(cls, witness: str) -> Report:
        return cls(False, witness)

    def raise_for(self, exc=ValueError) -> None:
        if not self.ok:
            raise exc(self.witness)


def first_failure(*reports: Report) -> Report:
    for r in reports:
        if not r:
            return r
    return Report.success()
