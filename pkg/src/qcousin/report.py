"""Verification findings shared by the section, cohomology and Cousin verifiers."""

from dataclasses import dataclass, field

__all__ = ["Finding", "summarize"]

PASS = "pass"
FAIL = "fail"
REPORT = "report"


@dataclass
class Finding:
    """One checked claim.

    ``status`` is ``pass`` or ``fail`` for asserted checks and ``report`` for scans whose
    outcome is recorded without being asserted.
    """

    claim: str
    status: str
    message: str = ""
    witness: str = None
    data: dict = field(default_factory=dict)

    @property
    def failed(self):
        return self.status == FAIL

    def to_dict(self):
        out = {"claim": self.claim, "status": self.status, "message": self.message, "data": self.data}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def check(claim, ok, message="", witness=None, **data):
    return Finding(claim, PASS if ok else FAIL, message, witness if not ok else None, data)


def summarize(findings):
    counts = {PASS: 0, FAIL: 0, REPORT: 0}
    for f in findings:
        counts[f.status] += 1
    return counts
