"""Formula / certificate / solver agreement table."""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field

from . import __version__
from .certificates import RECORDED_ONLY, check_certificate, formula_value, has_certificate
from .graph import build_flower_snark
from .solvers import CapacityError, check_capacity, solve
from .validators import Variant

REPORT_VARIANTS = [v.value for v in Variant if v != Variant.MINIMAL] + list(RECORDED_ONLY)


@dataclass
class ReportRow:
    variant: str
    n: int
    formula: int
    certificate_size: int | None = None
    certificate_valid: bool | None = None
    solver_value: int | None = None
    solver_skipped_reason: str | None = None
    agree: bool = True

    def settle(self) -> None:
        values = [self.formula]
        if self.certificate_size is not None:
            values.append(self.certificate_size)
        if self.solver_value is not None:
            values.append(self.solver_value)
        self.agree = len(set(values)) == 1 and self.certificate_valid is not False


@dataclass
class VerificationReport:
    version: str = __version__
    rows: list[ReportRow] = field(default_factory=list)
    elapsed_ms: float = 0.0

    @property
    def all_agree(self) -> bool:
        return all(r.agree for r in self.rows)

    def to_dict(self) -> dict:
        return {"version": self.version, "rows": [asdict(r) for r in self.rows], "elapsed_ms": self.elapsed_ms}

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, data: dict) -> VerificationReport:
        return cls(data["version"], [ReportRow(**r) for r in data["rows"]], data["elapsed_ms"])

    def to_table(self) -> str:
        head = ("variant", "n", "formula", "cert", "valid", "solver", "agree")
        body = [
            (
                r.variant,
                str(r.n),
                str(r.formula),
                "-" if r.certificate_size is None else str(r.certificate_size),
                "-" if r.certificate_valid is None else ("yes" if r.certificate_valid else "NO"),
                r.solver_skipped_reason or "-" if r.solver_value is None else str(r.solver_value),
                "yes" if r.agree else "NO",
            )
            for r in self.rows
        ]
        widths = [max(len(x) for x in col) for col in zip(head, *body)]
        fmt = "  ".join(f"{{:<{w}}}" for w in widths)
        return "\n".join(fmt.format(*line) for line in [head, *body]) + "\n"


def build_report(
    n_max: int,
    with_solver: bool = False,
    long_running: bool = False,
    workers: int | None = None,
    n_min: int = 3,
) -> VerificationReport:
    if n_max < 3:
        raise ValueError("n_max must be at least 3")
    start = time.perf_counter()
    report = VerificationReport()
    for variant in REPORT_VARIANTS:
        for n in range(n_min, n_max + 1):
            row = ReportRow(variant, n, formula_value(variant, n))
            if variant in RECORDED_ONLY:
                row.solver_skipped_reason = "no validator in scope"
                row.settle()
                report.rows.append(row)
                continue
            if has_certificate(variant, n):
                row.certificate_size, row.certificate_valid = check_certificate(variant, n)
            if not with_solver:
                row.solver_skipped_reason = "solver not requested"
            else:
                try:
                    check_capacity(Variant(variant), n, long_running)
                except CapacityError:
                    row.solver_skipped_reason = "out of range"
                else:
                    row.solver_value = solve(
                        build_flower_snark(n), variant, long_running=long_running, workers=workers
                    ).optimum
            row.settle()
            report.rows.append(row)
    report.elapsed_ms = round((time.perf_counter() - start) * 1000, 3)
    return report
