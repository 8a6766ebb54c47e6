import pathlib
import random
from fractions import Fraction

import pytest

from qsh_lab import liealg
from qsh_lab import matrices as mat
from qsh_lab.linmodel import sp1_conjugate_frame
from qsh_lab.quaternion import Quaternion
from qsh_lab.serialize import basis_to_json

GOLDEN = pathlib.Path(__file__).parent / "golden" / "so_star_basis_n2.json"


def _rational_vector(rng, dim):
    return [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(dim)]


@pytest.mark.parametrize("n_fixture,expected", [("basis2", 6), ("basis3", 15)])
def test_dimension_formula(n_fixture, expected, request):
    basis = request.getfixturevalue(n_fixture)
    assert len(basis.so_basis) == expected
    assert len(basis.sp_basis) == 3
    assert basis.dim == expected + 3


def test_basis_defining_equations(model2, basis2):
    dim = model2.dim
    for el in basis2.so_basis:
        assert liealg.commutation_defect(model2, el.matrix) == 0
        assert mat.max_abs(liealg.symplectic_defect(model2, el.matrix)) == 0
        assert sum(el.matrix[i][i] for i in range(dim)) == 0
        for Ja in model2.J:
            assert sum(sum(Ja[i][k] * el.matrix[k][i] for k in range(dim))
                       for i in range(dim)) == 0


def test_basis_linear_independence(model2, basis2):
    rows = [mat.flatten(el.matrix) for el in basis2.elements()]
    assert mat.rank(rows) == len(rows)


def test_golden_basis_export(basis2):
    assert basis_to_json(basis2) == GOLDEN.read_text()


def test_decompose_basis_elements(model2, basis2):
    el = liealg.decompose(model2, basis2, model2.J[1])
    assert el.sp_coeffs == (0, 1, 0)
    assert mat.max_abs(el.so_part) == 0
    first = basis2.so_basis[0].matrix
    el = liealg.decompose(model2, basis2, first)
    assert el.sp_coeffs == (0, 0, 0)
    assert el.so_part == first


def test_decompose_random_roundtrip(model2, basis2):
    rng = random.Random(20)
    for _ in range(10):
        coeffs = [Fraction(rng.randint(-5, 5), rng.randint(1, 4))
                  for _ in basis2.elements()]
        combo = mat.zeros(model2.dim, model2.dim)
        for c, b in zip(coeffs, basis2.elements()):
            combo = mat.mat_add(combo, mat.mat_scale(c, b.matrix))
        el = liealg.decompose(model2, basis2, combo)
        assert tuple(el.sp_coeffs) == tuple(coeffs[-3:])
        assert mat.mat_add(el.so_part, _span(model2, el.sp_coeffs)) == combo


def _span(model, coeffs):
    out = mat.zeros(model.dim, model.dim)
    for c, Ja in zip(coeffs, model.J):
        out = mat.mat_add(out, mat.mat_scale(c, Ja))
    return out


def test_decompose_rejects_outsiders(model2, basis2):
    with pytest.raises(liealg.MembershipError) as err:
        liealg.decompose(model2, basis2, mat.identity(model2.dim))
    assert err.value.residual > 0


def test_projection_lands_in_targets(model2):
    rng = random.Random(21)
    for _ in range(5):
        x = _rational_vector(rng, model2.dim)
        y = _rational_vector(rng, model2.dim)
        p = liealg.project_ZQ(model2, x, y)
        assert liealg.commutation_defect(model2, p) == 0
        q = liealg.project_Q(model2, x, y)
        assert liealg.project_Q_operator(model2, q) == q


def test_projection_trace_identity(model2):
    # Tr(omega0(x,-) (x) J_a y) = g_a(x, y), the reduction behind project_Q
    m = model2
    rng = random.Random(22)
    for _ in range(10):
        x = _rational_vector(rng, m.dim)
        y = _rational_vector(rng, m.dim)
        omega_x = [-v for v in mat.mat_vec(m.omega, x)]
        for a in range(3):
            op = mat.outer(mat.mat_vec(m.J[a], y), omega_x)
            trace = sum(op[i][i] for i in range(m.dim))
            assert trace == mat.bilinear(m.g[a], x, y)


def test_project_Q_vanishes_on_orthogonal_pair(model2):
    # y ranges over the exact solution space of g_a(e0, y) = 0, a = 1, 2, 3
    m = model2
    e0 = m.basis_vector(0)
    conditions = [mat.mat_vec(ga, e0) for ga in m.g]
    solutions = mat.nullspace(conditions)
    assert len(solutions) == m.dim - 3
    for y in solutions:
        assert all(mat.bilinear(ga, e0, y) == 0 for ga in m.g)
        assert mat.max_abs(liealg.project_Q(m, e0, y)) == 0


def test_projection_frame_independence(model2):
    rng = random.Random(24)
    q = Quaternion(Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), Fraction(1, 2))
    frame = sp1_conjugate_frame(model2, q)
    for _ in range(5):
        x = _rational_vector(rng, model2.dim)
        y = _rational_vector(rng, model2.dim)
        assert liealg.project_ZQ(model2, x, y) == \
            liealg.project_ZQ(model2, x, y, frame=frame)
        assert liealg.project_Q(model2, x, y) == \
            liealg.project_Q(model2, x, y, frame=frame)


def test_projection_idempotence_and_cross(model2, basis2):
    ident = mat.identity(model2.dim)
    assert liealg.project_ZQ_operator(model2, ident) == ident
    assert mat.max_abs(liealg.project_Q_operator(model2, ident)) == 0
    for el in basis2.so_basis[:3]:
        assert liealg.project_ZQ_operator(model2, el.matrix) == el.matrix
        assert mat.max_abs(liealg.project_Q_operator(model2, el.matrix)) == 0
    for Ja in model2.J:
        assert liealg.project_Q_operator(model2, Ja) == Ja
        assert mat.max_abs(liealg.project_ZQ_operator(model2, Ja)) == 0


def test_project_ZQ_against_least_squares_oracle(model2):
    """Orthogonal-projection oracle: conjugation by unit quaternions is
    orthogonal for the trace pairing, so the invariant projection onto the
    centralizer is the trace-orthogonal one; solve the normal equations
    over the nullspace-enumerated centralizer basis and compare."""
    m = model2
    zq = liealg.centralizer_basis(m)
    gram = [[mat.dot(mat.flatten(a), mat.flatten(b)) for b in zq] for a in zq]
    rng = random.Random(25)
    cases = [(m.basis_vector(0), m.basis_vector(0))]
    for _ in range(3):
        cases.append((_rational_vector(rng, m.dim), _rational_vector(rng, m.dim)))
    for x, y in cases:
        omega_x = [-v for v in mat.mat_vec(m.omega, x)]
        target = mat.outer(y, omega_x)
        rhs = [mat.dot(mat.flatten(b), mat.flatten(target)) for b in zq]
        coeffs = mat.solve(gram, rhs)
        proj = mat.zeros(m.dim, m.dim)
        for c, b in zip(coeffs, zq):
            if c:
                proj = mat.mat_add(proj, mat.mat_scale(c, b))
        assert proj == liealg.project_ZQ(m, x, y)


def test_circle_map_symmetry_and_parts(model2):
    m = model2
    rng = random.Random(26)
    kappa = Fraction(1)
    for _ in range(5):
        x = _rational_vector(rng, m.dim)
        y = _rational_vector(rng, m.dim)
        el = liealg.circle_map(m, x, y, kappa)
        assert el.matrix == liealg.circle_map(m, y, x, kappa).matrix
        # sp1 component formula
        sp = liealg.circle_sp1(m, x, y)
        expected = mat.zeros(m.dim, m.dim)
        for a in range(3):
            c = Fraction(-1, 2 * m.n) * mat.bilinear(m.g[a], x, y)
            expected = mat.mat_add(expected, mat.mat_scale(c, m.J[a]))
        assert sp == expected
        # so* part is the invariant projection of the symmetrized operator
        fxy = mat.mat_add(
            mat.outer(y, [-v for v in mat.mat_vec(m.omega, x)]),
            mat.outer(x, [-v for v in mat.mat_vec(m.omega, y)]))
        assert liealg.circle_so_star(m, x, y) == \
            liealg.project_ZQ_operator(m, fxy)


def test_circle_map_rejects_zero_kappa(model2):
    with pytest.raises(ValueError):
        liealg.circle_map(model2, model2.basis_vector(0),
                          model2.basis_vector(1), 0)


def test_circle_map_equivariance(model2, basis2):
    rng = random.Random(27)
    for el in [basis2.so_basis[0], basis2.so_basis[3], basis2.sp_basis[1]]:
        B = el.matrix
        x = _rational_vector(rng, model2.dim)
        y = _rational_vector(rng, model2.dim)
        circ = liealg.circle_map(model2, x, y, Fraction(1)).matrix
        lhs = mat.mat_sub(mat.mat_mul(B, circ), mat.mat_mul(circ, B))
        rhs = mat.mat_add(
            liealg.circle_map(model2, mat.mat_vec(B, x), y, Fraction(1)).matrix,
            liealg.circle_map(model2, x, mat.mat_vec(B, y), Fraction(1)).matrix)
        assert lhs == rhs


def test_circle_map_membership(model2, basis2):
    rng = random.Random(28)
    x = _rational_vector(rng, model2.dim)
    y = _rational_vector(rng, model2.dim)
    el = liealg.circle_map(model2, x, y, Fraction(2))
    liealg.decompose(model2, basis2, el.matrix)  # must not raise
