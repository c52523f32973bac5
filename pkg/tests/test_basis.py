import numpy as np
import pytest

from cohfact.basis import (
    gellmann_basis,
    pair_for_position,
    pair_indices,
    pauli_tensor_basis,
    y_to_x_transform,
)
from cohfact.errors import InvalidDimensionError

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)


def test_d2_is_pauli_set():
    b = gellmann_basis(2)
    np.testing.assert_allclose(b.elements[0], SX)
    np.testing.assert_allclose(b.elements[1], SY)
    np.testing.assert_allclose(b.elements[2], SZ)
    np.testing.assert_allclose(b.identity_element, np.eye(2))


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_orthonormality(d):
    b = gellmann_basis(d)
    gens = (b.identity_element,) + b.elements
    for i, x in enumerate(gens):
        assert np.max(np.abs(x - x.conj().T)) < 1e-14
        if i > 0:
            assert abs(np.trace(x)) < 1e-14
        for j, y in enumerate(gens):
            want = 2.0 if i == j else 0.0
            assert abs(np.trace(x @ y) - want) < 1e-12


def test_d3_diagonal_generator_textbook_formula():
    # independent oracle: w_l = sqrt(2/(l(l+1))) (sum_{j<=l} |j><j| - l |l+1><l+1|)
    b = gellmann_basis(3)
    w2 = np.diag([1.0, 1.0, -2.0]) / np.sqrt(3.0)
    np.testing.assert_allclose(b.elements[7], w2, atol=1e-15)
    w1 = np.diag([1.0, -1.0, 0.0])
    np.testing.assert_allclose(b.elements[6], w1, atol=1e-15)


def test_ordering_contract():
    assert pair_indices(3) == [(1, 2), (1, 3), (2, 3)]
    assert pair_for_position(3, 1) == (1, (1, 2), "u")
    assert pair_for_position(3, 4) == (2, (1, 3), "v")
    assert pair_for_position(4, 11) == (6, (3, 4), "u")
    with pytest.raises(IndexError):
        pair_for_position(3, 7)  # position 7 is a diagonal generator


@pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
def test_completeness_sum(d):
    b = gellmann_basis(d)
    s = sum(x @ x for x in b.elements)
    np.testing.assert_allclose(s, 2.0 * (d * d - 1) / d * np.eye(d), atol=1e-12)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_hermitian_reconstruction(d):
    rng = np.random.default_rng(d)
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    h = g + g.conj().T
    b = gellmann_basis(d)
    rec = np.trace(h) / d * np.eye(d, dtype=complex)
    rec += 0.5 * sum(np.trace(h @ x) * x for x in b.elements)
    np.testing.assert_allclose(rec, h, atol=1e-12)


def test_invalid_dimension():
    with pytest.raises(InvalidDimensionError):
        gellmann_basis(1)
    with pytest.raises(InvalidDimensionError):
        pauli_tensor_basis(0)
    with pytest.raises(InvalidDimensionError):
        pauli_tensor_basis(7)
    with pytest.raises(InvalidDimensionError):
        y_to_x_transform(4)


def test_pauli_basis_n1():
    b = pauli_tensor_basis(1)
    np.testing.assert_allclose(b.elements[0], SX)
    np.testing.assert_allclose(b.elements[1], SY)
    np.testing.assert_allclose(b.elements[2], SZ)
    assert b.index_digits == ("1", "2", "3")


def test_pauli_basis_n2_prefactor_and_order():
    b = pauli_tensor_basis(2)
    assert len(b.elements) == 15
    assert b.index_digits[0] == "01"
    np.testing.assert_allclose(b.elements[0], np.kron(np.eye(2), SX) / np.sqrt(2))
    assert b.index_digits[11] == "30"
    np.testing.assert_allclose(b.elements[11], np.kron(SZ, np.eye(2)) / np.sqrt(2))


def test_pauli_basis_n2_pairwise_orthogonal():
    b = pauli_tensor_basis(2)
    for i, x in enumerate(b.elements):
        for j, y in enumerate(b.elements):
            want = 2.0 if i == j else 0.0
            assert abs(np.trace(x @ y) - want) < 1e-12


def test_transform_n1_is_identity():
    np.testing.assert_allclose(y_to_x_transform(1).a, np.eye(3), atol=1e-14)


def test_transform_n2_known_columns():
    a = y_to_x_transform(2).a
    # Y_1 = (X_1 + X_11) / sqrt(2)
    col = a[:, 0]
    assert abs(col[0] - 1 / np.sqrt(2)) < 1e-12
    assert abs(col[10] - 1 / np.sqrt(2)) < 1e-12
    assert np.sum(np.abs(col) > 1e-12) == 2
    # Y_12 = (sqrt(6)/3) X_14 + (1/sqrt(3)) X_15
    col = a[:, 11]
    assert abs(col[13] - np.sqrt(6) / 3) < 1e-12
    assert abs(col[14] - 1 / np.sqrt(3)) < 1e-12
    assert np.sum(np.abs(col) > 1e-12) == 2


@pytest.mark.parametrize("N", [1, 2])
def test_transform_orthogonal(N):
    a = y_to_x_transform(N).a
    np.testing.assert_allclose(a @ a.T, np.eye(4**N - 1), atol=1e-12)


@pytest.mark.parametrize("N", [1, 2])
def test_transform_reproduces_generators(N):
    a = y_to_x_transform(N).a
    xb = gellmann_basis(2**N)
    yb = pauli_tensor_basis(N)
    for i, xi in enumerate(xb.elements):
        rec = sum(a[i, j] * yj for j, yj in enumerate(yb.elements))
        np.testing.assert_allclose(rec, xi, atol=1e-12)
