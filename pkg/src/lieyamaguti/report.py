"""Per-identity check results."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

DEFAULT_MAX_WITNESSES = 16


@dataclass
class CheckReport:
    """Outcome of checking one identity on every ordered basis tuple.

    ``witnesses`` holds at most ``max_witnesses`` pairs ``(index_tuple,
    residual)``; ``total`` counts every failing tuple. Informational reports
    are shown to the user but never affect pass/fail.
    """

    axiom_id: str
    witnesses: list = field(default_factory=list)
    total: int = 0
    informational: bool = False
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.total == 0

    def __repr__(self) -> str:
        flag = " (info)" if self.informational else ""
        return f"CheckReport({self.axiom_id}{flag}: {self.total} failing tuples)"


def from_residual(axiom_id: str, residual: np.ndarray, arity: int,
                  max_witnesses: int = DEFAULT_MAX_WITNESSES,
                  prefix: tuple = (), informational: bool = False) -> CheckReport:
    """Collect the basis tuples (the first ``arity`` axes) with nonzero residual."""
    residual = np.asarray(residual, dtype=object)
    lead = residual.shape[:arity]
    flat = residual.reshape((int(np.prod(lead, dtype=int)), -1))
    bad = np.nonzero(np.any(flat != 0, axis=1))[0]
    witnesses = []
    for pos in bad[:max_witnesses]:
        idx = tuple(int(i) for i in np.unravel_index(pos, lead)) if lead else ()
        witnesses.append((prefix + idx, tuple(flat[pos])))
    return CheckReport(axiom_id, witnesses, int(len(bad)), informational)


def merge(axiom_id: str, reports: list[CheckReport], max_witnesses: int = DEFAULT_MAX_WITNESSES,
          informational: bool = False) -> CheckReport:
    witnesses = [w for r in reports for w in r.witnesses][:max_witnesses]
    return CheckReport(axiom_id, witnesses, sum(r.total for r in reports), informational)


def all_ok(reports) -> bool:
    return all(r.ok for r in reports if not r.informational)
