# modules/cli/report.py

from dataclasses import dataclass, field
from typing import Any, Dict, List

from modules.core.serialization import dumps
from modules.validation.validator import CheckResult


@dataclass
class RunReport:
    """
    Everything one CLI invocation produced.

    Attributes:
        command: subcommand path, e.g. ``"mu4 verify"``
        inputs: parsed arguments, echoed back
        checks: named checks in the order they ran
        artifacts: paths of files written
        result: command-specific payload
    """

    command: str
    inputs: Dict[str, Any]
    checks: List[CheckResult] = field(default_factory=list)
    artifacts: List[str] = field(default_factory=list)
    result: Any = None

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "checks": [check.to_dict() for check in self.checks],
            "artifacts": list(self.artifacts),
            "result": self.result,
        }

    def to_json(self, pretty: bool = False) -> str:
        return dumps(self.to_dict(), pretty)
