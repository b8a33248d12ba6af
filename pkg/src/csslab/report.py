"""Deterministic, diffable run reports: one ``key value`` pair per line."""

from __future__ import annotations

import hashlib
from fractions import Fraction


class RunReport:
    """Accumulates inputs, metrics and an outcome for one CLI invocation."""

    def __init__(self, command: str):
        self.command = command
        self.inputs: list[tuple[str, str]] = []
        self.metrics: list[tuple[str, str]] = []
        self.outcome: str | None = None

    def add_input(self, name: str, data: bytes) -> None:
        self.inputs.append((name, hashlib.sha256(data).hexdigest()))

    def metric(self, key: str, value) -> None:
        if isinstance(value, bool):
            text = "true" if value else "false"
        elif isinstance(value, Fraction):
            text = f"{value.numerator}/{value.denominator}"
        elif isinstance(value, float):
            text = repr(value)
        else:
            text = str(value)
        self.metrics.append((key, text))

    def set_outcome(self, outcome: str) -> None:
        if outcome not in ("pass", "fail", "advisory"):
            raise ValueError("outcome must be pass, fail or advisory")
        self.outcome = outcome

    def emit(self) -> str:
        lines = [f"command {self.command}"]
        for name, digest in self.inputs:
            lines.append(f"input {name} {digest}")
        for key, value in self.metrics:
            lines.append(f"metric {key} {value}")
        lines.append(f"outcome {self.outcome or 'fail'}")
        return "\n".join(lines) + "\n"
