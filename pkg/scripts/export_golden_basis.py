#!/usr/bin/env python3
"""Regenerate tests/golden/so_star_basis_n2.json from the deterministic
basis enumeration.  Run only when the pivoting convention changes on
purpose; the regression test compares byte-for-byte."""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from qsh_lab.liealg import enumerate_so_star_basis
from qsh_lab.linmodel import build_flat_model
from qsh_lab.serialize import basis_to_json


def main() -> int:
    target = (pathlib.Path(__file__).resolve().parent.parent
              / "tests" / "golden" / "so_star_basis_n2.json")
    basis = enumerate_so_star_basis(build_flat_model(2))
    target.write_text(basis_to_json(basis))
    print(f"wrote {target}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
