"""States in two pictures: density matrices and Bloch vectors, plus the
one-parameter state families rho^n and their probe states."""

from dataclasses import dataclass

import numpy as np

from .basis import GeneratorBasis, gellmann_basis
from .errors import (
    DimensionMismatchError,
    IncoherentDirectionError,
    InvalidDimensionError,
    UnphysicalStateError,
)

HERM_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = -1e-9  # accumulated round-off in G G^dag / Tr compositions
REAL_TOL = 1e-12


@dataclass(frozen=True)
class DensityMatrix:
    d: int
    m: np.ndarray


@dataclass(frozen=True)
class BlochVector:
    d: int
    x: np.ndarray


@dataclass(frozen=True)
class StateFamily:
    """Unit direction n with multiplicative factor chi; members are
    rho = I/d + (chi/2) n . X."""

    d: int
    n: np.ndarray
    chi: float


@dataclass(frozen=True)
class ProbeState:
    """Family member rescaled so its l1 coherence is exactly 1.

    ``physical`` records the PSD check; formal (non-PSD) probes are allowed
    since the factorization law is an algebraic identity in chi.
    """

    n: np.ndarray
    chi_p: float
    state: DensityMatrix
    physical: bool


def purity_radius(d):
    """Largest |x| compatible with a physical state: sqrt(2(d-1)/d)."""
    return np.sqrt(2.0 * (d - 1) / d)


def density_matrix(m, validate=True):
    """Wrap a matrix as a DensityMatrix, optionally validating it."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvalidDimensionError(f"expected a square matrix, got shape {m.shape}")
    rho = DensityMatrix(d=m.shape[0], m=m)
    if validate:
        validate_density(rho)
    return rho


def validate_density(rho, psd_tol=PSD_TOL):
    """Raise UnphysicalStateError unless rho is Hermitian, unit trace, PSD."""
    m = rho.m
    if np.max(np.abs(m - m.conj().T)) > HERM_TOL:
        raise UnphysicalStateError("matrix is not Hermitian")
    if abs(np.trace(m).real - 1.0) > TRACE_TOL or abs(np.trace(m).imag) > TRACE_TOL:
        raise UnphysicalStateError(f"trace is {np.trace(m)}, expected 1")
    w = np.linalg.eigvalsh(m)
    if w[0] < psd_tol:
        raise UnphysicalStateError(
            f"matrix is not positive semidefinite (min eigenvalue {w[0]:.3e})",
            min_eigenvalue=float(w[0]),
        )
    return rho


def is_psd(m, psd_tol=PSD_TOL):
    w = np.linalg.eigvalsh(np.asarray(m))
    return bool(w[0] >= psd_tol)


def bloch_decompose(rho: DensityMatrix, basis: GeneratorBasis) -> BlochVector:
    """Bloch coordinates x_i = Tr(rho X_i)."""
    if rho.d != basis.d:
        raise DimensionMismatchError(f"state d={rho.d} vs basis d={basis.d}")
    x = np.array([np.trace(rho.m @ xi) for xi in basis.elements])
    if np.max(np.abs(x.imag)) > REAL_TOL:
        raise UnphysicalStateError(
            f"Bloch coordinates have imaginary residue {np.max(np.abs(x.imag)):.3e}; "
            "input is not Hermitian"
        )
    return BlochVector(d=basis.d, x=x.real)


def bloch_compose(x, basis: GeneratorBasis, validate=False) -> DensityMatrix:
    """Compose rho = I/d + (1/2) sum_i x_i X_i from Bloch coordinates."""
    xv = x.x if isinstance(x, BlochVector) else np.asarray(x, dtype=float)
    d = basis.d
    if xv.shape != (d * d - 1,):
        raise DimensionMismatchError(f"expected {d * d - 1} coordinates, got {xv.shape}")
    m = np.eye(d, dtype=complex) / d
    for xi, gen in zip(xv, basis.elements):
        m += 0.5 * xi * gen
    rho = DensityMatrix(d=d, m=m)
    if validate:
        validate_density(rho)
    return rho


def family_member(fam: StateFamily, basis: GeneratorBasis, validate=False) -> DensityMatrix:
    """Density matrix of rho^n at the family's chi."""
    if fam.d != basis.d:
        raise DimensionMismatchError(f"family d={fam.d} vs basis d={basis.d}")
    return bloch_compose(fam.chi * fam.n, basis, validate=validate)


def coherence_weight(n, d):
    """g(n^s) = sum_r sqrt(n_{2r-1}^2 + n_{2r}^2) over the off-diagonal pairs."""
    n = np.asarray(n, dtype=float)
    d0 = (d * d - d) // 2
    return float(np.sum(np.hypot(n[0 : 2 * d0 : 2], n[1 : 2 * d0 : 2])))


def probe_state(n, basis: GeneratorBasis) -> ProbeState:
    """Probe state of the family direction n: chi_p = 1/g(n^s), C_l1 = 1.

    Probes with chi_p beyond the purity radius are returned flagged
    ``physical=False`` rather than rejected.
    """
    n = np.asarray(n, dtype=float)
    d = basis.d
    if n.shape != (d * d - 1,):
        raise DimensionMismatchError(f"expected {d * d - 1} components, got {n.shape}")
    g = coherence_weight(n, d)
    if g <= 1e-12:
        raise IncoherentDirectionError(
            "direction has no coherent part (g = 0); probe state undefined"
        )
    chi_p = 1.0 / g
    state = bloch_compose(chi_p * n, basis, validate=False)
    return ProbeState(n=n, chi_p=chi_p, state=state, physical=is_psd(state.m))


def _rng(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_state(d, seed=None) -> DensityMatrix:
    """Random full-rank state G G^dag / Tr(G G^dag), G complex Gaussian."""
    if d < 2:
        raise InvalidDimensionError(f"dimension must be >= 2, got {d}")
    rng = _rng(seed)
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    m = g @ g.conj().T
    return DensityMatrix(d=d, m=m / np.trace(m).real)


def random_family(d, seed=None) -> StateFamily:
    """Random unit direction with chi drawn uniformly, resampled until PSD."""
    if d < 2:
        raise InvalidDimensionError(f"dimension must be >= 2, got {d}")
    rng = _rng(seed)
    basis = gellmann_basis(d)
    v = rng.standard_normal(d * d - 1)
    n = v / np.linalg.norm(v)
    bound = purity_radius(d)
    while True:
        chi = rng.uniform(-bound, bound)
        if is_psd(bloch_compose(chi * n, basis).m):
            return StateFamily(d=d, n=n, chi=float(chi))
