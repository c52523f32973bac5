"""Generator bases: generalized Gell-Mann matrices, N-qubit Pauli tensors,
and the linear transform between the two.

Ordering contract (shared by every module): the d^2-1 Gell-Mann generators
are arranged as u_12, v_12, u_13, v_13, ..., u_{d-1,d}, v_{d-1,d},
w_1, ..., w_{d-1}, with the (j,k) index pairs in lexicographic order.
Positions 2r-1, 2r (1-based) hold the u/v pair of the r-th index pair,
so the first d^2-d coordinates of a Bloch vector are the coherence part.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from .errors import InvalidDimensionError

_SIGMA = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


@dataclass(frozen=True)
class GeneratorBasis:
    """Ordered generalized Gell-Mann basis for a d-dimensional system.

    ``elements[i]`` is X_{i+1} in the 1-based ordering above;
    ``identity_element`` is X_0 = sqrt(2/d) I.
    """

    d: int
    elements: tuple
    identity_element: np.ndarray

    @property
    def num_offdiag(self):
        """Number of off-diagonal (u/v) generators, d^2 - d."""
        return self.d * self.d - self.d

    @property
    def num_pairs(self):
        """d_0 = (d^2 - d)/2, the number of (j,k) index pairs."""
        return (self.d * self.d - self.d) // 2


@dataclass(frozen=True)
class PauliTensorBasis:
    """Ordered N-qubit Pauli tensor basis Y_j = 2^((1-N)/2) sigma_{j_1} x ... x sigma_{j_N}.

    ``index_digits[j]`` is the base-4 digit string of Y_{j+1}; elements run
    in numeric order (00..1), (00..2), ..., (33..3).
    """

    N: int
    elements: tuple
    index_digits: tuple
    identity_element: np.ndarray


@dataclass(frozen=True)
class BasisTransform:
    """Real matrix a with X_i = sum_j a_ij Y_j (orthogonal: a a^T = I)."""

    N: int
    a: np.ndarray


def pair_indices(d):
    """Return the ordered (j,k) index pairs, 1-based, lexicographic.

    The r-th pair (r = 1..d_0) owns generator positions 2r-1 and 2r.
    """
    return list(combinations(range(1, d + 1), 2))


def pair_for_position(d, pos):
    """Map a 1-based off-diagonal generator position to (r, (j,k), kind).

    ``kind`` is 'u' for odd positions and 'v' for even ones.
    """
    if not 1 <= pos <= d * d - d:
        raise IndexError(f"position {pos} outside off-diagonal range for d={d}")
    r = (pos + 1) // 2
    jk = pair_indices(d)[r - 1]
    return r, jk, "u" if pos % 2 == 1 else "v"


def _u_matrix(d, j, k):
    m = np.zeros((d, d), dtype=complex)
    m[j - 1, k - 1] = 1
    m[k - 1, j - 1] = 1
    return m


def _v_matrix(d, j, k):
    m = np.zeros((d, d), dtype=complex)
    m[j - 1, k - 1] = -1j
    m[k - 1, j - 1] = 1j
    return m


def _w_matrix(d, l):
    # Standard diagonal generator, normalized so Tr(w_l^2) = 2.
    diag = np.zeros(d)
    diag[:l] = 1.0
    diag[l] = -l
    return np.diag(diag).astype(complex) * np.sqrt(2.0 / (l * (l + 1)))


@lru_cache(maxsize=None)
def gellmann_basis(d):
    """Build the generalized Gell-Mann basis for dimension d >= 2.

    Elements are Hermitian, traceless, and satisfy Tr(X_i X_j) = 2 delta_ij.
    """
    if not isinstance(d, (int, np.integer)) or d < 2:
        raise InvalidDimensionError(f"dimension must be an integer >= 2, got {d}")
    elements = []
    for j, k in pair_indices(d):
        elements.append(_u_matrix(d, j, k))
        elements.append(_v_matrix(d, j, k))
    for l in range(1, d):
        elements.append(_w_matrix(d, l))
    identity = np.sqrt(2.0 / d) * np.eye(d, dtype=complex)
    return GeneratorBasis(d=int(d), elements=tuple(elements), identity_element=identity)


@lru_cache(maxsize=None)
def pauli_tensor_basis(N):
    """Build the N-qubit Pauli tensor basis, 1 <= N <= 6."""
    if not isinstance(N, (int, np.integer)) or N < 1 or N > 6:
        raise InvalidDimensionError(f"qubit count must be in 1..6, got {N}")
    dim = 2**N
    scale = 2.0 ** ((1 - N) / 2)
    elements = []
    digits = []
    for j in range(1, 4**N):
        ds = np.base_repr(j, base=4).zfill(N)
        m = np.array([[scale]], dtype=complex)
        for c in ds:
            m = np.kron(m, _SIGMA[int(c)])
        elements.append(m)
        digits.append(ds)
    identity = np.sqrt(2.0 ** (1 - N)) * np.eye(dim, dtype=complex)
    return PauliTensorBasis(
        N=int(N), elements=tuple(elements), index_digits=tuple(digits), identity_element=identity
    )


@lru_cache(maxsize=None)
def y_to_x_transform(N):
    """Transform a with X_i = sum_j a_ij Y_j, a_ij = Tr(X_i Y_j)/2, N <= 3."""
    if not isinstance(N, (int, np.integer)) or N < 1 or N > 3:
        raise InvalidDimensionError(f"qubit count must be in 1..3, got {N}")
    xb = gellmann_basis(2**N)
    yb = pauli_tensor_basis(N)
    n = 4**N - 1
    a = np.empty((n, n))
    for i, xi in enumerate(xb.elements):
        for j, yj in enumerate(yb.elements):
            val = np.trace(xi @ yj) / 2.0
            a[i, j] = val.real
    return BasisTransform(N=int(N), a=a)
