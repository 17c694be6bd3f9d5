"""Pass/fail reports produced by the law checkers.

A report is a flat list of named checks. Failures carry a human-readable
witness (the first counterexample found); checkers never raise on a failed
law, only on malformed input.
"""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckItem:
    law: str
    passed: bool
    checked: int
    witness: str | None = None

    def to_dict(self) -> dict:
        d = {"law": self.law, "passed": self.passed, "checked": self.checked}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


@dataclass(frozen=True)
class Report:
    title: str
    items: tuple[CheckItem, ...]
    verdict: str | None = None
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(item.passed for item in self.items)

    def failures(self) -> tuple[CheckItem, ...]:
        return tuple(item for item in self.items if not item.passed)

    def to_dict(self) -> dict:
        d = {
            "title": self.title,
            "passed": self.passed,
            "items": [item.to_dict() for item in self.items],
        }
        if self.verdict is not None:
            d["verdict"] = self.verdict
        if self.extra:
            d["extra"] = self.extra
        return d

    def summary(self) -> str:
        lines = [f"{'PASS' if self.passed else 'FAIL'}: {self.title}"]
        for item in self.items:
            mark = "ok " if item.passed else "FAIL"
            line = f"  [{mark}] {item.law} ({item.checked} checked)"
            if item.witness is not None:
                line += f" -- {item.witness}"
            lines.append(line)
        if self.verdict is not None:
            lines.append(f"  verdict: {self.verdict}")
        return "\n".join(lines)


def merge_reports(title: str, reports: list[Report], verdict: str | None = None) -> Report:
    items = []
    for rep in reports:
        for item in rep.items:
            items.append(CheckItem(f"{rep.title}: {item.law}", item.passed, item.checked, item.witness))
    return Report(title, tuple(items), verdict=verdict)
