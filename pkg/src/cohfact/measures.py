"""Coherence and correlation measures: the l1 norm in both pictures, the
purity monotone, and the two-qubit correlation/discord family."""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .basis import GeneratorBasis
from .errors import DimensionMismatchError, UnphysicalStateError
from .state import BlochVector, DensityMatrix

_SIG = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def _mat(rho):
    return rho.m if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)


@dataclass(frozen=True)
class CorrelationMatrix:
    """Two-qubit correlation matrix T_ij = Tr(rho sigma_i x sigma_j) and the
    descending eigenvalues of T^dag T."""

    t3: np.ndarray
    eigs: np.ndarray


@dataclass(frozen=True)
class MeasurementDirection:
    """Unit Bloch vector a defining projectors (I +/- a.sigma)/2 on A."""

    a: np.ndarray

    def projectors(self):
        av = sum(self.a[i] * _SIG[i + 1] for i in range(3))
        return (np.eye(2, dtype=complex) + av) / 2, (np.eye(2, dtype=complex) - av) / 2


def l1_from_density(rho) -> float:
    """C_l1: sum of absolute values of the off-diagonal elements."""
    m = _mat(rho)
    return float(np.sum(np.abs(m)) - np.sum(np.abs(np.diag(m))))


def l1_from_bloch(x: BlochVector) -> float:
    """C_l1 in Bloch form: sum_r sqrt(x_{2r-1}^2 + x_{2r}^2); the diagonal
    (w_l) coordinates do not contribute."""
    d = x.d
    d0 = (d * d - d) // 2
    xv = np.asarray(x.x, dtype=float)
    return float(np.sum(np.hypot(xv[0 : 2 * d0 : 2], xv[1 : 2 * d0 : 2])))


def purity_measure(rho) -> float:
    """P(rho) = Tr(rho^2) - 1/d = |x|^2 / 2, in [0, (d-1)/d]."""
    m = _mat(rho)
    d = m.shape[0]
    return float(np.trace(m @ m).real - 1.0 / d)


def correlation_matrix(rho) -> CorrelationMatrix:
    """Correlation matrix of a two-qubit state (tensor ordering A x B)."""
    m = _mat(rho)
    if m.shape != (4, 4):
        raise DimensionMismatchError(f"expected a 4x4 two-qubit state, got {m.shape}")
    t3 = np.empty((3, 3))
    for i in range(3):
        for j in range(3):
            t3[i, j] = np.trace(m @ np.kron(_SIG[i + 1], _SIG[j + 1])).real
    eigs = np.linalg.eigvalsh(t3.T @ t3)[::-1]
    return CorrelationMatrix(t3=t3, eigs=np.clip(eigs, 0.0, None))


def correlation_measures(rho) -> dict:
    """Bell-max, RSP fidelity, and teleportation figures from the
    correlation-matrix eigenvalues E1 >= E2 >= E3."""
    e1, e2, e3 = correlation_matrix(rho).eigs
    n_qt = float(np.sqrt(e1 + e2 + e3))
    return {
        "bell_max": float(2.0 * np.sqrt(e1 + e2)),
        "rsp_fidelity": float((e2 + e3) / 2.0),
        "teleport_n": n_qt,
        "teleport_fidelity": 0.5 + n_qt / 6.0,
    }


def projective_collapse(rho, direction) -> DensityMatrix:
    """Local measurement map sum_k (Pi_k x I) rho (Pi_k x I) on subsystem A."""
    m = _mat(rho)
    if m.shape != (4, 4):
        raise DimensionMismatchError(f"expected a 4x4 two-qubit state, got {m.shape}")
    if not isinstance(direction, MeasurementDirection):
        direction = MeasurementDirection(np.asarray(direction, dtype=float))
    out = np.zeros((4, 4), dtype=complex)
    for p in direction.projectors():
        pk = np.kron(p, np.eye(2))
        out += pk @ m @ pk
    return DensityMatrix(d=4, m=out)


def _collapse_residual_sq(m, units):
    """||m - Pi^A(m)||_2^2 for a batch of measurement directions.

    ``units`` is (n, 3); evaluated from the definition by sandwiching with
    the stacked projectors, vectorized over the batch.
    """
    units = np.atleast_2d(units)
    n = units.shape[0]
    sig = np.stack([_SIG[1], _SIG[2], _SIG[3]])
    av = np.einsum("ni,ijk->njk", units, sig)
    eye = np.broadcast_to(np.eye(2, dtype=complex), (n, 2, 2))
    plus = (eye + av) / 2
    minus = (eye - av) / 2
    mm = m.reshape(2, 2, 2, 2)  # (a, b; a', b') indices of A x B
    out = np.empty(n)
    for proj in (plus, minus):
        # (P x I) m (P x I) summed into the residual below
        left = np.einsum("nxa,abcd->nxbcd", proj, mm)
        sand = np.einsum("nxbcd,ncy->nxbyd", left, proj)
        if proj is plus:
            acc = sand
        else:
            acc += sand
    resid = mm[None, ...] - acc
    out = np.einsum("nabcd,nabcd->n", resid, resid.conj()).real
    return out


def _optimize_direction(m, mode, grid=(32, 64), refine_tol=1e-10):
    """Grid search over the hemisphere plus local refinement.

    Returns (optimal value, direction). ``mode`` is 'min' or 'max'. The
    objective is antipodally symmetric, so theta runs over [0, pi/2].
    """
    n_theta, n_phi = grid
    theta = np.linspace(0.0, np.pi / 2, n_theta)
    phi = np.linspace(0.0, 2 * np.pi, n_phi, endpoint=False)
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    units = np.column_stack(
        [
            (np.sin(tt) * np.cos(pp)).ravel(),
            (np.sin(tt) * np.sin(pp)).ravel(),
            np.cos(tt).ravel(),
        ]
    )
    vals = _collapse_residual_sq(m, units)
    sign = 1.0 if mode == "min" else -1.0
    best = int(np.argmin(sign * vals))
    x0 = np.array([tt.ravel()[best], pp.ravel()[best]])

    def objective(angles):
        t, p = angles
        u = np.array([np.sin(t) * np.cos(p), np.sin(t) * np.sin(p), np.cos(t)])
        return sign * _collapse_residual_sq(m, u[None, :])[0]

    res = minimize(objective, x0, method="Nelder-Mead",
                   options={"xatol": 1e-8, "fatol": refine_tol, "maxiter": 500})
    t, p = res.x
    u = np.array([np.sin(t) * np.cos(p), np.sin(t) * np.sin(p), np.cos(t)])
    return sign * res.fun, u


def geometric_discord2(rho, grid=(32, 64)) -> float:
    """Schatten-2 geometric discord D2 = 2 min ||rho - Pi^A(rho)||_2^2."""
    m = _mat(rho)
    val, _ = _optimize_direction(m, "min", grid=grid)
    return float(2.0 * val)


def min2(rho, grid=(32, 64)) -> float:
    """Schatten-2 measurement-induced nonlocality N2 = 2 max ||rho - Pi^A(rho)||_2^2."""
    m = _mat(rho)
    val, _ = _optimize_direction(m, "max", grid=grid)
    return float(2.0 * val)


def hellinger_discord(rho, grid=(32, 64)) -> float:
    """Hellinger discord D_H = min ||sqrt(rho) - Pi^A(sqrt(rho))||_2^2."""
    m = _mat(rho)
    w, v = np.linalg.eigh(m)
    if w[0] < -1e-9:
        raise UnphysicalStateError(
            f"square root undefined: min eigenvalue {w[0]:.3e}", min_eigenvalue=float(w[0])
        )
    root = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    val, _ = _optimize_direction(root, "min", grid=grid)
    return float(val)
