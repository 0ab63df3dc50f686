"""Run configuration and the defaults shared by the CLI and the agents"""
from dataclasses import dataclass, field
from typing import List, Optional

SCHEMA_VERSION = "foliation-trace/1"
GUARD_MULTIPLIER = 16
REPORT_DIR = "reports"
DIAGRAM_DIR = "reports/diagrams"
LOG_FILE = "foliation_engine.log"
COMMANDS = ("check", "resolve", "graph", "pi1", "report", "replay")


@dataclass
class RunConfig:
    command: str
    inputs: List[str] = field(default_factory=list)
    out: Optional[str] = None
    dot_out: Optional[str] = None
    report_dir: str = REPORT_DIR
    truncate: Optional[int] = None
    guard: Optional[int] = None
    field_order: Optional[int] = None
    verbose: bool = False
    log_file: str = LOG_FILE

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if not self.inputs:
            raise ValueError("at least one --input is required")
        if len(self.inputs) > 1 and self.command != "report":
            raise ValueError(f"{self.command} takes a single --input; only report runs a batch")

    @property
    def input(self) -> Optional[str]:
        return self.inputs[0] if self.inputs else None


def step_guard(k: int, d: int, l: int, delta: int, a: int, b: int, override: Optional[int] = None) -> int:
    """Upper bound on blow-ups for one resolution"""
    if override is not None:
        return override
    return GUARD_MULTIPLIER * (k + d * l * delta + a + b)
