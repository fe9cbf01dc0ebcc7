import json

from qsymkit.qsymkit_types import Violation


class VerificationReport:
    """
    Outcome of one verification suite, optionally made of sub-reports (`checks`).

    `passed` holds iff no violation is recorded here or in any check.
    """

    def __init__(self, suite, instances=0, violations=None, elapsed=0.0, details=None, checks=None):
        self.suite = suite
        self.instances = instances
        self.violations = list(violations or [])
        self.elapsed = elapsed
        self.details = dict(details or {})
        self.checks = list(checks or [])

    @property
    def passed(self):
        return not self.violations and all(check.passed for check in self.checks)

    @property
    def total_instances(self):
        return self.instances + sum(check.total_instances for check in self.checks)

    def all_violations(self):
        return self.violations + [violation for check in self.checks for violation in check.all_violations()]

    def add_violation(self, check, message, witnesses=()):
        self.violations.append(Violation(check, message, tuple(str(witness) for witness in witnesses)))

    def add_check(self, report):
        self.checks.append(report)
        return report

    def to_dict(self, include_elapsed=True):
        tree = {"suite": self.suite,
                "instances": self.instances,
                "passed": self.passed,
                "violations": [violation._asdict() for violation in self.violations],
                "details": self.details,
                "checks": [check.to_dict(include_elapsed=False) for check in self.checks]}
        for violation in tree["violations"]:
            violation["witnesses"] = list(violation["witnesses"])
        if include_elapsed:
            tree["elapsed"] = round(self.elapsed, 3)
        return tree

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), ensure_ascii=False, **kwargs)

    def _body(self, indent):
        pad = "  " * indent
        lines = [f"{pad}{self.suite}: {'PASS' if self.passed else 'FAIL'}",
                 f"{pad}  instances: {self.instances}"]
        for key, value in self.details.items():
            lines.append(f"{pad}  {key}: {value}")
        lines.append(f"{pad}  violations: {len(self.violations)}")
        for violation in self.violations:
            witnesses = " | ".join(violation.witnesses)
            lines.append(f"{pad}    [{violation.check}] {violation.message}" + (f": {witnesses}" if witnesses else ""))
        for check in self.checks:
            lines.extend(check._body(indent + 1))
        return lines

    def format_text(self, include_elapsed=True):
        """
        Text rendering. Everything but the final elapsed-time line depends only on the
        suite's inputs.
        """
        lines = self._body(0)
        lines.append(f"result: {'PASS' if self.passed else 'FAIL'}")
        if include_elapsed:
            lines.append(f"elapsed: {self.elapsed:.3f} s")
        return "\n".join(lines)

    def __str__(self):
        return self.format_text()

    def __repr__(self):
        return (f"VerificationReport(suite={self.suite!r}, instances={self.instances}, "
                f"violations={len(self.all_violations())}, passed={self.passed})")
