"""Text and JSON reports shared by every command."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
import json

from .const import (
    ATTR_CHECKS,
    ATTR_DETAIL,
    ATTR_DISTINCT,
    ATTR_FIELD,
    ATTR_INFO,
    ATTR_MULTIPLICITY,
    ATTR_NAME,
    ATTR_PD,
    ATTR_SHAPE,
    ATTR_SUPPORT,
    FORMAT_JSON,
)
from .slicefamily import SupportCount
from .witness import CheckResult


@dataclass(kw_only=True)
class Report:
    """Everything a command found, in the order it was found."""

    shape: str | None = None
    field: str | None = None
    checks: list[CheckResult] = dc_field(default_factory=list)
    infos: list[tuple[str, str]] = dc_field(default_factory=list)
    pd: int | None = None
    support: SupportCount | None = None
    sections: list[tuple[str, str]] = dc_field(default_factory=list)
    error: str | None = None

    @property
    def passed(self) -> bool:
        """Show if there was no error and every check passed."""
        return self.error is None and all(c.passed for c in self.checks)

    def check(self, name: str, passed: bool, detail: str = "") -> bool:
        """Record a check and return its outcome."""
        self.checks.append(CheckResult(name, bool(passed), detail))
        return bool(passed)

    def info(self, name: str, detail: str) -> None:
        """Record a value that carries no verdict."""
        self.infos.append((name, detail))

    def section(self, title: str, body: str) -> None:
        """Attach a block of text shown only in text output."""
        self.sections.append((title, body))

    def fail(self, code: str, err: BaseException) -> None:
        """Record an error by its code."""
        self.error = code
        self.checks.append(CheckResult("error", False, f"{code}: {err}"))

    def as_dict(self) -> dict[str, object]:
        """Return the JSON form with a fixed set of keys."""
        return {
            ATTR_SHAPE: self.shape,
            ATTR_FIELD: self.field,
            ATTR_CHECKS: [c.as_dict() for c in self.checks],
            ATTR_INFO: [{ATTR_NAME: name, ATTR_DETAIL: detail} for name, detail in self.infos],
            ATTR_PD: self.pd,
            ATTR_SUPPORT: (
                {
                    ATTR_MULTIPLICITY: self.support.with_multiplicity,
                    ATTR_DISTINCT: self.support.distinct,
                }
                if self.support is not None
                else None
            ),
        }

    def to_json(self) -> str:
        """Render as one line of JSON."""
        return json.dumps(self.as_dict(), ensure_ascii=False)

    def to_text(self) -> str:
        """Render for a terminal."""
        lines = [f"shape {self.shape} over {self.field}"]
        lines += [
            f"[{'PASS' if c.passed else 'FAIL'}] {c.name}"
            + (f": {c.detail}" if c.detail else "")
            for c in self.checks
        ]
        lines += [f"{name}: {detail}" for name, detail in self.infos]
        for title, body in self.sections:
            lines.append(f"{title}:")
            lines += [f"  {row}" for row in body.splitlines()]
        if self.support is not None:
            lines.append(
                f"support: {self.support.with_multiplicity}"
                f" (distinct {self.support.distinct})"
            )
        if self.pd is not None:
            lines.append(f"pd: {self.pd}")
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines)

    def render(self, output_format: str) -> str:
        """Render in the requested format."""
        return self.to_json() if output_format == FORMAT_JSON else self.to_text()
