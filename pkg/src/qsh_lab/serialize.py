"""JSON schema for exact matrices and basis exports.

A matrix is serialized row-major with every entry an exact rational
string "p/q" (denominator always present):

    {"rows": R, "cols": C, "entries": [["0/1", "1/1", ...], ...]}

A basis export bundles the enumerated so*(2n) basis with the three
structure matrices:

    {"schema": 1, "n": n, "so_star": [matrix, ...], "sp1": [matrix x3]}

Used for golden-file regression of the deterministic enumeration.
"""

from __future__ import annotations

import json
from fractions import Fraction

from qsh_lab.liealg import LieBasis

SCHEMA_VERSION = 1


def matrix_to_dict(m) -> dict:
    return {
        "rows": len(m),
        "cols": len(m[0]) if m else 0,
        "entries": [[f"{Fraction(x).numerator}/{Fraction(x).denominator}"
                     for x in row] for row in m],
    }


def matrix_from_dict(d):
    entries = d["entries"]
    if len(entries) != d["rows"] or any(len(r) != d["cols"] for r in entries):
        raise ValueError("matrix dimensions disagree with entries")
    return [[Fraction(x) for x in row] for row in entries]


def basis_to_dict(basis: LieBasis) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "n": basis.model.n,
        "so_star": [matrix_to_dict(el.matrix) for el in basis.so_basis],
        "sp1": [matrix_to_dict(el.matrix) for el in basis.sp_basis],
    }


def basis_to_json(basis: LieBasis) -> str:
    return json.dumps(basis_to_dict(basis), indent=1, sort_keys=True) + "\n"
