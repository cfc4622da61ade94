import numpy as np
import pytest

from oscbasis import (
    Frequency,
    build_basis,
    derivative_matrix_legtrig,
    to_orthogonal_basis,
)
from oscbasis.basis import evaluate_member
from oscbasis.calculus import (
    load_operator,
    operator_from_doc,
    operator_to_doc,
    save_operator,
    save_operator_csv,
)
from oscbasis.legendre import derivative_expansion
from oscbasis.pairing import LegTrigCoeffs


def test_smallest_operator_is_pure_rotation(freq20):
    op = derivative_matrix_legtrig(freq20, 0)
    w = freq20.omega
    assert np.array_equal(op.d_legtrig, np.array([[0.0, w], [-w, 0.0]]))
    # d/dx cos(wx) = -w sin(wx)
    assert np.array_equal(op.d_legtrig @ np.array([1.0, 0.0]), np.array([0.0, -w]))


def test_rejects_negative_size(freq20):
    with pytest.raises(ValueError):
        derivative_matrix_legtrig(freq20, -1)


def test_columns_encode_symbolic_derivatives(freq20):
    n_max = 7
    op = derivative_matrix_legtrig(freq20, n_max)
    D = op.d_legtrig
    for j in range(n_max + 1):
        col = D[:, 2 * j].copy()
        assert col[2 * j + 1] == -freq20.omega
        col[2 * j + 1] = 0.0
        expected = np.zeros_like(col)
        for m, coeff in derivative_expansion(j).terms:
            expected[2 * m] = coeff
        assert np.array_equal(col, expected)


def test_block_structure(freq20):
    D = derivative_matrix_legtrig(freq20, 5).d_legtrig
    for j in range(6):
        for m in range(6):
            block = D[2 * m : 2 * m + 2, 2 * j : 2 * j + 2]
            if m == j:
                continue
            if m > j or (j - m) % 2 == 0:
                assert np.all(block == 0.0)
            else:
                assert block[0, 0] == block[1, 1] == 2.0 * m + 1.0
                assert block[0, 1] == block[1, 0] == 0.0


def test_matrix_action_matches_finite_differences(freq20):
    n_max = 8
    op = derivative_matrix_legtrig(freq20, n_max)
    rng = np.random.default_rng(2)
    x = np.linspace(-0.85, 0.85, 11)
    h = 1e-6
    for _ in range(5):
        vec = rng.uniform(-1.0, 1.0, 2 * (n_max + 1))
        f = LegTrigCoeffs(a=vec[0::2].copy(), b=vec[1::2].copy())
        img = op.d_legtrig @ vec
        g = LegTrigCoeffs(a=img[0::2].copy(), b=img[1::2].copy())
        fd = (
            8.0 * (f.evaluate(freq20.omega, x + h) - f.evaluate(freq20.omega, x - h))
            - (f.evaluate(freq20.omega, x + 2 * h) - f.evaluate(freq20.omega, x - 2 * h))
        ) / (12.0 * h)
        exact = g.evaluate(freq20.omega, x)
        scale = np.max(np.abs(exact))
        assert np.max(np.abs(exact - fd)) <= 1e-5 * scale


def test_similarity_transform_small_residual(freq20, basis20):
    op = to_orthogonal_basis(derivative_matrix_legtrig(freq20, 12), basis20)
    assert op.similarity_residual is not None
    assert op.similarity_residual <= 1e-9
    assert op.d_orth.shape == (26, 26)


def test_transform_on_seed_pair_is_exact(freq20, tables20):
    basis0 = build_basis(freq20, 0, tables20)
    op = to_orthogonal_basis(derivative_matrix_legtrig(freq20, 0), basis0)
    w = freq20.omega
    assert np.allclose(op.d_orth, [[0.0, w], [-w, 0.0]], atol=1e-12)
    # applying twice gives -w^2 times the identity on the seed pair
    twice = op.d_orth @ op.d_orth @ np.array([0.0, 1.0])
    assert twice == pytest.approx([0.0, -(w**2)], rel=1e-12)


def test_orthonormal_derivative_matches_member_differentiation(freq20, basis20):
    op = to_orthogonal_basis(derivative_matrix_legtrig(freq20, 12), basis20)
    e = np.zeros(26)
    e[2] = 1.0
    d_exp = op.d_orth @ e
    # keep omega * x0 away from multiples of pi so the derivative is O(omega)
    x0 = 0.31
    h = 1e-6
    fd = (
        evaluate_member(basis20, 2, x0 + h) - evaluate_member(basis20, 2, x0 - h)
    ) / (2.0 * h)
    val = sum(d_exp[i] * evaluate_member(basis20, i, x0) for i in range(26))
    assert val == pytest.approx(fd, rel=1e-6)


def test_transform_rejects_mismatched_inputs(freq20, tables20, basis20):
    op12 = derivative_matrix_legtrig(freq20, 12)
    other = build_basis(freq20, 3, tables20)
    with pytest.raises(ValueError, match="size mismatch"):
        to_orthogonal_basis(op12, other)
    op_wrong = derivative_matrix_legtrig(Frequency.exact(21), 12)
    with pytest.raises(ValueError, match="frequency mismatch"):
        to_orthogonal_basis(op_wrong, basis20)


def test_doc_and_file_round_trip(freq20, basis20, tmp_path):
    op = to_orthogonal_basis(derivative_matrix_legtrig(freq20, 12), basis20)
    back = operator_from_doc(operator_to_doc(op))
    assert np.array_equal(back.d_legtrig, op.d_legtrig)
    assert np.array_equal(back.d_orth, op.d_orth)
    path = tmp_path / "op.json"
    save_operator(op, path)
    loaded = load_operator(path)
    assert loaded.freq == op.freq
    assert np.array_equal(loaded.d_orth, op.d_orth)


def test_round_trip_without_transform(freq20, tmp_path):
    op = derivative_matrix_legtrig(freq20, 2)
    path = save_operator(op, tmp_path / "plain.json")
    loaded = load_operator(path)
    assert loaded.d_orth is None
    assert np.array_equal(loaded.d_legtrig, op.d_legtrig)


def test_csv_export(freq20, basis20, tmp_path):
    op = to_orthogonal_basis(derivative_matrix_legtrig(freq20, 12), basis20)
    paths = save_operator_csv(op, tmp_path / "op")
    assert [p.name for p in paths] == ["op_d_legtrig.csv", "op_d_orth.csv"]
    data = np.loadtxt(paths[1], delimiter=",", skiprows=1)
    assert np.array_equal(data, op.d_orth)
