#!/usr/bin/env python3
"""Run the complete verification (all suites, n = 2 and 3, seed 42) and
write reports/verification.json plus a markdown summary next to it."""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from qsh_lab.cli import RunConfig, run
from qsh_lab.report import write_atomic


def main() -> int:
    out_dir = pathlib.Path(__file__).resolve().parent.parent / "reports"
    out_dir.mkdir(exist_ok=True)
    config = RunConfig(ns=(2, 3), seed=42,
                       output_path=str(out_dir / "verification.json"))
    report, code = run(config)
    write_atomic(str(out_dir / "verification.md"), report.to_markdown())
    summary = report.summary()
    print(f"{summary['passed']}/{summary['total']} checks passed; "
          f"reports in {out_dir}")
    return code


if __name__ == "__main__":
    raise SystemExit(main())
