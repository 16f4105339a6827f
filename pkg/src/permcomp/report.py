from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field

PASS = "PASS"
FAIL = "FAIL"


@dataclass
class Report:
    """Outcome of checking one claim.

    A FAIL must name at least one counterexample in ``witnesses``.
    """

    claim: str
    status: str
    witnesses: list = field(default_factory=list)
    runtime: float = 0.0
    scale: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in (PASS, FAIL):
            raise ValueError(f"status must be PASS or FAIL, not {self.status!r}")
        if self.status == FAIL and not self.witnesses:
            raise ValueError(f"FAIL report for {self.claim!r} carries no counterexample")

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, data: dict) -> "Report":
        return cls(**data)

    def line(self) -> str:
        extra = f"  counterexamples: {', '.join(map(str, self.witnesses[:5]))}" if not self.passed else ""
        return f"{self.status}  {self.claim}  ({self.runtime:.2f}s){extra}"


@contextmanager
def timed():
    box = {}
    t0 = time.perf_counter()
    try:
        yield box
    finally:
        box["runtime"] = time.perf_counter() - t0
