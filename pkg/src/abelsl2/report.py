"""Pass/fail records produced by the verification routines."""

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Check:
    anchor: str
    name: str
    passed: bool
    detail: str = ""
    inputs: str = ""


@dataclass
class Report:
    title: str
    checks: list = field(default_factory=list)

    def add(self, anchor, name, passed, detail="", inputs=""):
        self.checks.append(Check(anchor, name, bool(passed), detail, inputs))
        return bool(passed)

    def extend(self, other):
        self.checks.extend(other.checks)
        return self

    @property
    def ok(self):
        return all(c.passed for c in self.checks)

    def __bool__(self):
        return self.ok

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def sorted(self):
        return Report(self.title, sorted(self.checks, key=lambda c: (c.anchor, c.name, c.inputs)))

    def to_text(self):
        lines = [f"== {self.title}"]
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            extra = f"  [{c.detail}]" if c.detail else ""
            lines.append(f"{mark}  {c.anchor}: {c.name}{extra}")
        lines.append(f"{sum(c.passed for c in self.checks)}/{len(self.checks)} passed")
        return "\n".join(lines)

    def to_tree(self):
        return {
            "title": self.title,
            "passed": self.ok,
            "records": [
                {"anchor": c.anchor, "name": c.name, "pass": c.passed,
                 "inputs": c.inputs, "detail": c.detail}
                for c in self.checks
            ],
        }
