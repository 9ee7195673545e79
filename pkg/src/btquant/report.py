"""Machine-readable run reports: named checks plus run metadata.

JSON is the full format (schema versioned); CSV carries the check table
only. Numbers are serialized with 17 significant digits so reports
round-trip float64 exactly.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field

SCHEMA_VERSION = 1


def _fmt_float(v):
    return format(float(v), ".17g")


def _jsonify(obj, indent=0):
    pad = "  " * indent
    pad_in = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f'{pad_in}"{k}": {_jsonify(v, indent + 1)}' for k, v in obj.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad_in + _jsonify(v, indent + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, complex):
        if obj.imag == 0.0:
            return _fmt_float(obj.real)
        return f'{{"re": {_fmt_float(obj.real)}, "im": {_fmt_float(obj.imag)}}}'
    if isinstance(obj, str):
        return '"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"'
    raise TypeError(f"cannot serialize {type(obj).__name__}")


@dataclass
class CheckRecord:
    name: str
    expected: object
    observed: object
    tolerance: float
    passed: bool
    group: str = ""

    def as_dict(self):
        return {
            "name": self.name,
            "group": self.group,
            "expected": self.expected,
            "observed": self.observed,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


def check(name, expected, observed, tolerance, group="", relative=False):
    """Build a record; comparison is |observed - expected| against
    `tolerance`, scaled by |expected| when `relative`."""
    bound = tolerance * max(abs(expected), 1e-300) if relative else tolerance
    passed = abs(observed - expected) <= bound
    return CheckRecord(
        name=name,
        expected=expected,
        observed=observed,
        tolerance=float(tolerance),
        passed=bool(passed),
        group=group,
    )


@dataclass
class Report:
    command: str
    seed: int | None = None
    metadata: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def add(self, record):
        self.checks.append(record)
        return record

    def as_dict(self):
        return {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "seed": self.seed,
            "pass": self.passed,
            "metadata": self.metadata,
            "checks": [c.as_dict() for c in self.checks],
        }

    def to_json(self):
        return _jsonify(self.as_dict()) + "\n"

    def to_csv(self):
        buf = io.StringIO()
        buf.write("name,group,expected,observed,tolerance,pass\n")
        for c in self.checks:
            exp = _csv_num(c.expected)
            obs = _csv_num(c.observed)
            buf.write(
                f"{c.name},{c.group},{exp},{obs},{_fmt_float(c.tolerance)},{c.passed}\n"
            )
        return buf.getvalue()

    def write(self, path, fmt="json"):
        text = self.to_json() if fmt == "json" else self.to_csv()
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)

    def summary_lines(self):
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            yield f"{status} {c.name}: expected={c.expected} observed={c.observed} tol={c.tolerance}"


def _csv_num(v):
    if isinstance(v, complex):
        if v.imag == 0.0:
            return _fmt_float(v.real)
        return f"{_fmt_float(v.real)}{'+' if v.imag >= 0 else ''}{_fmt_float(v.imag)}j"
    if isinstance(v, (int, float)):
        return _fmt_float(v)
    return str(v)
