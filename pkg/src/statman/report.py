"""Structured check reports with deterministic text and machine serialization."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

VERDICTS = ("pass", "fail", "match", "mismatch", "n/a", "info")
_BAD = ("fail", "mismatch")


@dataclass(frozen=True)
class Check:
    """One evaluated claim.

    ``claim`` is a stable identifier, ``anchor`` a short human label for the
    statement being tested, ``value`` the engine's result, ``printed`` the
    externally asserted value when one exists.
    """

    claim: str
    anchor: str
    verdict: str
    value: str = ""
    printed: str = ""
    conventions: tuple = ()
    detail: str = ""

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")
        object.__setattr__(self, "value", str(self.value))
        object.__setattr__(self, "printed", str(self.printed))
        object.__setattr__(self, "conventions", tuple(self.conventions))

    @property
    def ok(self) -> bool:
        return self.verdict not in _BAD

    def to_dict(self) -> dict:
        d = {"claim": self.claim, "anchor": self.anchor, "verdict": self.verdict}
        for key in ("value", "printed", "detail"):
            v = getattr(self, key)
            if v:
                d[key] = v
        if self.conventions:
            d["conventions"] = list(self.conventions)
        return d


def verdict(ok: bool, kind: str = "pass") -> str:
    """``pass``/``fail`` or, with ``kind="match"``, ``match``/``mismatch``."""
    if kind == "match":
        return "match" if ok else "mismatch"
    return "pass" if ok else "fail"


@dataclass
class Report:
    title: str = ""
    checks: list = field(default_factory=list)
    sections: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def section(self, sub: "Report") -> "Report":
        self.sections.append(sub)
        return sub

    def extend(self, other: "Report"):
        self.checks.extend(other.checks)
        self.sections.extend(other.sections)

    def all_checks(self):
        yield from self.checks
        for s in self.sections:
            yield from s.all_checks()

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.all_checks())

    def find(self, claim: str) -> Check:
        for c in self.all_checks():
            if c.claim == claim:
                return c
        raise KeyError(claim)

    def find_all(self, prefix: str) -> list:
        return [c for c in self.all_checks() if c.claim.startswith(prefix)]

    def to_dict(self) -> dict:
        d = {}
        if self.title:
            d["title"] = self.title
        if self.checks:
            d["checks"] = [c.to_dict() for c in self.checks]
        if self.sections:
            d["sections"] = [s.to_dict() for s in self.sections]
        if self.data:
            d["data"] = {k: _plain(v) for k, v in self.data.items()}
        if self.checks or self.sections:
            d["verdict"] = "pass" if self.passed else "fail"
        return d

    def to_text(self, indent: int = 0) -> str:
        pad = " " * indent
        lines = []
        if self.title:
            lines.append(pad + self.title)
        if self.data:
            width = max(len(k) for k in self.data)
            for k in sorted(self.data):
                lines.append(f"{pad}  {k.ljust(width)} : {_plain(self.data[k])}")
        if self.checks:
            wc = max(len(c.claim) for c in self.checks)
            for c in self.checks:
                line = f"{pad}  [{c.verdict.upper():<8}] {c.claim.ljust(wc)}  {c.anchor}"
                if c.value:
                    line += f"\n{pad}      value:   {c.value}"
                if c.printed:
                    line += f"\n{pad}      printed: {c.printed}"
                if c.conventions:
                    line += f"\n{pad}      conventions: {', '.join(c.conventions)}"
                if c.detail:
                    line += f"\n{pad}      detail:  {c.detail}"
                lines.append(line)
        for s in self.sections:
            lines.append(s.to_text(indent + 2))
        return "\n".join(lines)


def _plain(v):
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, (bool, int)) or v is None:
        return v
    return str(v)


def emit(report: Report, format: str = "text") -> bytes:
    """Serialize deterministically; ``machine`` is sorted-key JSON with LF endings."""
    if format == "machine":
        return (json.dumps(report.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode("utf-8")
    if format == "text":
        text = report.to_text()
        return (text + "\n").encode("utf-8") if text else b""
    raise ValueError(f"unknown format {format!r}")
