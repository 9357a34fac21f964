"""Deterministic JSON reports.

A report holds the command echo, digests of the input files, one record per
check and the budget in force.  Records are ordered by check name and no
clock or host data is written, so equal inputs give byte-equal reports.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .budget import current_budget
from .io import digest, dumps


@dataclass
class Report:
    command: list
    inputs: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    result: dict = field(default_factory=dict)
    budget_used: dict = field(default_factory=dict)

    def input(self, path) -> Path:
        p = Path(path)
        self.inputs[str(path)] = digest(p)
        return p

    def check(self, name: str, anchor: str, ok: bool, witness=None, trace=None) -> bool:
        rec = {"name": name, "anchor": anchor, "status": "pass" if ok else "fail"}
        if witness is not None:
            rec["witness"] = witness
        if trace is not None:
            rec["trace"] = trace
        self.checks.append(rec)
        return ok

    @property
    def ok(self) -> bool:
        return all(c["status"] == "pass" for c in self.checks)

    @property
    def exit_status(self) -> int:
        return 0 if self.ok else 1

    def to_json(self, quiet: bool = False) -> dict:
        checks = sorted(self.checks, key=lambda c: c["name"])
        if quiet:
            checks = [{k: v for k, v in c.items() if k not in ("trace", "witness")}
                      for c in checks]
        b = current_budget()
        return {
            "command": list(self.command),
            "inputs": dict(sorted(self.inputs.items())),
            "checks": checks,
            "result": self.result,
            "budget": {"max_objects": b.max_objects, "max_morphisms": b.max_morphisms,
                       "max_nodes": b.max_nodes, **self.budget_used},
            "exit_status": self.exit_status,
        }

    def render(self, quiet: bool = False) -> str:
        return dumps(self.to_json(quiet))
