"""Check reports: one entry per axiom, with every failing witness."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

MAX_STORED_WITNESSES = 1000


@dataclass
class CheckResult:
    check_id: str
    witnesses: list[tuple] = field(default_factory=list)
    count: int = 0
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.count == 0

    def line(self) -> str:
        if self.passed:
            return f"CHECK {self.check_id} PASS"
        return f"CHECK {self.check_id} FAIL witness={format_witness(self.witnesses[0])}"


@dataclass
class AxiomReport:
    """Outcome of a batch of checks.

    ``ok`` is true exactly when no entry recorded a failure.
    """

    results: list[CheckResult] = field(default_factory=list)

    def add(self, check_id: str, witnesses: Iterable[tuple], note: str = "") -> CheckResult:
        res = CheckResult(check_id, note=note)
        for w in witnesses:
            res.count += 1
            if len(res.witnesses) < MAX_STORED_WITNESSES:
                res.witnesses.append(tuple(w))
        self.results.append(res)
        return res

    def extend(self, other: "AxiomReport", prefix: str = "") -> "AxiomReport":
        for r in other.results:
            self.results.append(CheckResult(prefix + r.check_id, list(r.witnesses), r.count, r.note))
        return self

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.passed]

    def __getitem__(self, check_id: str) -> CheckResult:
        for r in self.results:
            if r.check_id == check_id:
                return r
        raise KeyError(check_id)

    def __contains__(self, check_id: str) -> bool:
        return any(r.check_id == check_id for r in self.results)

    def __iter__(self) -> Iterator[CheckResult]:
        return iter(self.results)

    def lines(self, sort: bool = True) -> list[str]:
        rs = sorted(self.results, key=lambda r: r.check_id) if sort else self.results
        return [r.line() for r in rs]

    def __str__(self) -> str:
        return "\n".join(self.lines())


def format_witness(w: tuple) -> str:
    return "(" + ",".join(str(x) for x in w) + ")"
