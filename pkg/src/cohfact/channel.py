"""Kraus channels, their Heisenberg-picture transfer matrices, the named
channel families, the frozen-coherence qubit constructions, and the
N-qubit auxiliary channel."""

from dataclasses import dataclass, field

import numpy as np

from .basis import (
    GeneratorBasis,
    PauliTensorBasis,
    _SIGMA,
    gellmann_basis,
    pauli_tensor_basis,
)
from .errors import (
    DimensionMismatchError,
    InvalidChannelError,
    NotAChannelError,
    NotApplicableError,
    UnreachableTargetError,
)
from .state import DensityMatrix, StateFamily

COMPLETENESS_TOL = 1e-10
CONDITION_TOL = 1e-10
REAL_TOL = 1e-12


@dataclass(frozen=True)
class KrausChannel:
    """CPTP map given by Kraus operators E_mu with sum E^dag E = I."""

    d: int
    kraus: tuple
    label: str = ""
    params: dict = field(default_factory=dict)


@dataclass(frozen=True)
class TransferMatrix:
    """Real d^2 x d^2 Heisenberg-picture matrix, row/col 0 for X_0.

    T_ij = Tr[E^dag(X_i) X_j]/2, so Bloch coordinates evolve as
    x'_i = sum_j T_ij x_j with the fixed coordinate x_0 = sqrt(2/d).
    """

    d: int
    t: np.ndarray

    @property
    def s_block(self):
        """T^S: rows 1..d^2-d, columns 1..d^2-1."""
        return self.t[1 : self.d * self.d - self.d + 1, 1:]

    def block(self, r):
        """2x2 diagonal block T^S_r of the r-th off-diagonal pair (1-based)."""
        i = 2 * r - 1
        return self.t[i : i + 2, i : i + 2]


@dataclass(frozen=True)
class AuxSolve:
    """Solved coefficients of the auxiliary channel: c eps = q."""

    N: int
    c: np.ndarray
    q_vec: np.ndarray
    eps: np.ndarray


def kraus_channel(ops, label="", params=None, tol=COMPLETENESS_TOL) -> KrausChannel:
    """Build a KrausChannel, enforcing the completeness condition."""
    ops = tuple(np.asarray(e, dtype=complex) for e in ops)
    if not ops:
        raise InvalidChannelError("empty Kraus set")
    d = ops[0].shape[0]
    for e in ops:
        if e.shape != (d, d):
            raise InvalidChannelError(f"Kraus operators must all be {d}x{d}")
    s = sum(e.conj().T @ e for e in ops)
    err = np.max(np.abs(s - np.eye(d)))
    if err > tol:
        raise InvalidChannelError(f"completeness violated: |sum E^dag E - I| = {err:.3e}")
    return KrausChannel(d=d, kraus=ops, label=label, params=dict(params or {}))


def apply(ch: KrausChannel, rho: DensityMatrix) -> DensityMatrix:
    """Schroedinger-picture action sum_mu E_mu rho E_mu^dag."""
    if rho.d != ch.d:
        raise DimensionMismatchError(f"state d={rho.d} vs channel d={ch.d}")
    out = sum(e @ rho.m @ e.conj().T for e in ch.kraus)
    return DensityMatrix(d=ch.d, m=out)


def dual_apply(ch: KrausChannel, obs) -> np.ndarray:
    """Heisenberg-picture action E^dag(O) = sum_mu E_mu^dag O E_mu."""
    obs = np.asarray(obs, dtype=complex)
    if obs.shape != (ch.d, ch.d):
        raise DimensionMismatchError(f"observable shape {obs.shape} vs channel d={ch.d}")
    return sum(e.conj().T @ obs @ e for e in ch.kraus)


def a_matrix(ch: KrausChannel) -> np.ndarray:
    """A = sum_mu E_mu E_mu^dag (diagonal iff Corollary-1 condition holds)."""
    return sum(e @ e.conj().T for e in ch.kraus)


def transfer_matrix(ch: KrausChannel, basis: GeneratorBasis = None) -> TransferMatrix:
    """Transfer matrix T_ij = Tr[E^dag(X_i) X_j]/2 in the given basis."""
    if basis is None:
        basis = gellmann_basis(ch.d)
    if basis.d != ch.d:
        raise DimensionMismatchError(f"basis d={basis.d} vs channel d={ch.d}")
    gens = (basis.identity_element,) + basis.elements
    duals = [dual_apply(ch, g) for g in gens]
    n = ch.d * ch.d
    t = np.empty((n, n), dtype=complex)
    for i, di in enumerate(duals):
        for j, gj in enumerate(gens):
            t[i, j] = np.trace(di @ gj) / 2.0
    if np.max(np.abs(t.imag)) > REAL_TOL:
        raise InvalidChannelError(
            f"transfer matrix has imaginary residue {np.max(np.abs(t.imag)):.3e}"
        )
    return TransferMatrix(d=ch.d, t=t.real)


def theorem1_condition(T: TransferMatrix, tol=CONDITION_TOL) -> bool:
    """True iff T_k0 = 0 for every off-diagonal generator row k."""
    k_max = T.d * T.d - T.d
    return bool(np.max(np.abs(T.t[1 : k_max + 1, 0])) <= tol)


def corollary1_check(ch: KrausChannel, tol=CONDITION_TOL) -> bool:
    """True iff A = sum E E^dag is diagonal."""
    a = a_matrix(ch)
    off = a - np.diag(np.diag(a))
    return bool(np.max(np.abs(off)) <= tol)


def is_unital(ch: KrausChannel, tol=CONDITION_TOL) -> bool:
    """True iff the channel fixes the maximally mixed state (A = I)."""
    return bool(np.max(np.abs(a_matrix(ch) - np.eye(ch.d))) <= tol)


def scalar_action_detect(T: TransferMatrix, subset, tol=CONDITION_TOL):
    """Return q if T acts as q * identity on every row in ``subset``.

    ``subset`` holds 1-based off-diagonal generator indices. Returns None
    when the rows are not a common rescaling.
    """
    subset = sorted(set(int(k) for k in subset))
    if not subset:
        return None
    k_max = T.d * T.d - T.d
    if subset[0] < 1 or subset[-1] > k_max:
        raise IndexError(f"subset must lie in 1..{k_max}")
    q = None
    for k in subset:
        row = T.t[k]
        if q is None:
            q = row[k]
        if abs(row[k] - q) > tol:
            return None
        rest = np.delete(row, k)
        if np.max(np.abs(rest)) > tol:
            return None
    return float(q)


def frozen_condition_check(T: TransferMatrix, fam: StateFamily = None, tol=CONDITION_TOL) -> bool:
    """Corollary-4 decision: does this transfer matrix freeze coherence?

    Without a family the full condition is tested: T^S block diagonal with
    orthogonal 2x2 blocks. With a family, blocks whose direction component
    n_{2r-1} (or n_{2r}) vanishes get the relaxed single-column test, and
    only couplings into coordinates the family actually populates count.
    """
    if not theorem1_condition(T, tol=tol):
        raise NotApplicableError(
            "frozen-coherence check requires the factorization precondition T_k0 = 0"
        )
    d = T.d
    d0 = (d * d - d) // 2
    s = T.s_block  # rows 0..d^2-d-1 are generators 1..d^2-d (0-based here)

    if fam is None:
        for r in range(1, d0 + 1):
            rows = slice(2 * r - 2, 2 * r)
            off = s[rows].copy()
            off[:, 2 * r - 2 : 2 * r] = 0.0
            if np.max(np.abs(off)) > tol:
                return False
            b = T.block(r)
            if np.max(np.abs(b.T @ b - np.eye(2))) > tol:
                return False
        return True

    n = np.asarray(fam.n, dtype=float)
    populated = np.abs(n) > tol
    for r in range(1, d0 + 1):
        i, j = 2 * r - 2, 2 * r - 1  # 0-based positions of the pair
        if not populated[i] and not populated[j]:
            continue
        # rows of this pair must not pick up populated coordinates outside it
        off = s[i : j + 1].copy()
        off[:, i : j + 1] = 0.0
        off[:, ~populated] = 0.0
        if np.max(np.abs(off)) > tol:
            return False
        b = T.block(r)
        if populated[i] and populated[j]:
            if np.max(np.abs(b.T @ b - np.eye(2))) > tol:
                return False
        elif populated[i]:  # n_{2r} = 0: only the first column enters
            if abs(b[0, 0] ** 2 + b[1, 0] ** 2 - 1.0) > tol:
                return False
        else:  # n_{2r-1} = 0: only the second column enters
            if abs(b[0, 1] ** 2 + b[1, 1] ** 2 - 1.0) > tol:
                return False
    return True


# ---------------------------------------------------------------------------
# named channels


def _require(cond, msg):
    if not cond:
        raise InvalidChannelError(msg)


def bit_flip(q) -> KrausChannel:
    """Qubit channel preserving sigma_x and shrinking sigma_y, sigma_z by q."""
    _require(0.0 <= q <= 1.0, f"bit_flip requires 0 <= q <= 1, got q={q}")
    ops = [np.sqrt((1 + q) / 2) * _SIGMA[0], np.sqrt((1 - q) / 2) * _SIGMA[1]]
    return kraus_channel(ops, label="bit_flip", params={"q": q})


def bit_phase_flip(q) -> KrausChannel:
    """Qubit channel preserving sigma_y and shrinking sigma_x, sigma_z by q."""
    _require(0.0 <= q <= 1.0, f"bit_phase_flip requires 0 <= q <= 1, got q={q}")
    ops = [np.sqrt((1 + q) / 2) * _SIGMA[0], np.sqrt((1 - q) / 2) * _SIGMA[2]]
    return kraus_channel(ops, label="bit_phase_flip", params={"q": q})


def phase_flip(q) -> KrausChannel:
    """Qubit channel preserving sigma_z and shrinking sigma_x, sigma_y by q."""
    _require(0.0 <= q <= 1.0, f"phase_flip requires 0 <= q <= 1, got q={q}")
    ops = [np.sqrt((1 + q) / 2) * _SIGMA[0], np.sqrt((1 - q) / 2) * _SIGMA[3]]
    return kraus_channel(ops, label="phase_flip", params={"q": q})


def phase_damping(q) -> KrausChannel:
    """Qubit phase damping scaling the off-diagonal elements by q."""
    _require(0.0 <= q <= 1.0, f"phase_damping requires 0 <= q <= 1, got q={q}")
    ops = [np.diag([1.0, q]).astype(complex), np.diag([0.0, np.sqrt(1 - q * q)]).astype(complex)]
    return kraus_channel(ops, label="phase_damping", params={"q": q})


def pauli(p0, p1, p2, p3) -> KrausChannel:
    """Pauli channel E(rho) = sum_i p_i sigma_i rho sigma_i."""
    p = np.array([p0, p1, p2, p3], dtype=float)
    _require(np.all(p >= 0) and abs(p.sum() - 1.0) <= 1e-12, "pauli probabilities must be a distribution")
    ops = [np.sqrt(pi) * _SIGMA[i] for i, pi in enumerate(p) if pi > 0]
    return kraus_channel(ops, label="pauli", params={"p0": p0, "p1": p1, "p2": p2, "p3": p3})


def generalized_amplitude_damping(gamma, pbar) -> KrausChannel:
    """Qubit GAD channel with damping gamma toward a pbar/(1-pbar) mixture."""
    _require(0.0 <= gamma <= 1.0, f"gamma must be in [0,1], got {gamma}")
    _require(0.0 <= pbar <= 1.0, f"pbar must be in [0,1], got {pbar}")
    g = np.sqrt(gamma)
    gq = np.sqrt(1 - gamma)
    ops = [
        np.sqrt(pbar) * np.array([[1, 0], [0, gq]], dtype=complex),
        np.sqrt(pbar) * np.array([[0, g], [0, 0]], dtype=complex),
        np.sqrt(1 - pbar) * np.array([[gq, 0], [0, 1]], dtype=complex),
        np.sqrt(1 - pbar) * np.array([[0, 0], [g, 0]], dtype=complex),
    ]
    ops = [e for e in ops if np.max(np.abs(e)) > 0]
    return kraus_channel(ops, label="generalized_amplitude_damping", params={"gamma": gamma, "pbar": pbar})


def amplitude_damping(gamma) -> KrausChannel:
    """Full damping toward |0>: GAD with pbar = 1."""
    ch = generalized_amplitude_damping(gamma, 1.0)
    return KrausChannel(d=2, kraus=ch.kraus, label="amplitude_damping", params={"gamma": gamma})


def gell_mann_G(d, q, q0) -> KrausChannel:
    """Generator-mixing channel whose dual multiplies every off-diagonal
    generator by q and every diagonal one by q0."""
    c1 = 1.0 - q0
    c2 = 1.0 - d * q + (d - 1) * q0
    c3 = 1.0 + (d * d - d) * q + (d - 1) * q0
    _require(c1 >= -1e-12, f"gell_mann_G requires 1 - q0 >= 0 (got {c1:.3e})")
    _require(c2 >= -1e-12, f"gell_mann_G requires 1 - d q + (d-1) q0 >= 0 (got {c2:.3e})")
    _require(c3 >= -1e-12, f"gell_mann_G requires 1 + (d^2-d) q + (d-1) q0 >= 0 (got {c3:.3e})")
    basis = gellmann_basis(d)
    n_off = basis.num_offdiag
    ops = [np.sqrt(max(c3, 0.0)) / d * np.eye(d, dtype=complex)]
    for k in range(n_off):
        ops.append(np.sqrt(max(c1, 0.0) / (2 * d)) * basis.elements[k])
    for l in range(n_off, d * d - 1):
        ops.append(np.sqrt(max(c2, 0.0) / (2 * d)) * basis.elements[l])
    ops = [e for e in ops if np.max(np.abs(e)) > 0]
    return kraus_channel(ops, label="gell_mann_G", params={"q": q, "q0": q0}, tol=1e-12)


def depolarizing(d, p) -> KrausChannel:
    """rho -> (1-p) rho + p I/d, realized as gell_mann_G(d, 1-p, 1-p)."""
    _require(0.0 <= p <= 1.0 + 1.0 / (d * d - 1), f"depolarizing requires p in range, got {p}")
    ch = gell_mann_G(d, 1.0 - p, 1.0 - p)
    return KrausChannel(d=d, kraus=ch.kraus, label="depolarizing", params={"p": p})


_NAMED = {
    "bit_flip": (bit_flip, ("q",), False),
    "phase_flip": (phase_flip, ("q",), False),
    "bit_phase_flip": (bit_phase_flip, ("q",), False),
    "phase_damping": (phase_damping, ("q",), False),
    "pauli": (pauli, ("p0", "p1", "p2", "p3"), False),
    "generalized_amplitude_damping": (generalized_amplitude_damping, ("gamma", "pbar"), False),
    "amplitude_damping": (amplitude_damping, ("gamma",), False),
    "depolarizing": (depolarizing, ("p",), True),
    "gell_mann_G": (gell_mann_G, ("q", "q0"), True),
}


def named_channels():
    """Names accepted by make_named."""
    return sorted(_NAMED)


def make_named(name, d=2, params=None) -> KrausChannel:
    """Construct a named channel from its parameter map."""
    if name in ("frozen_xy", "frozen_z"):
        p = dict(params or {})
        return make_frozen_qubit(name.split("_")[1], p["q"], sign=p.get("sign", +1))
    if name not in _NAMED:
        raise InvalidChannelError(f"unknown channel name {name!r}; known: {named_channels()}")
    fn, keys, takes_d = _NAMED[name]
    p = dict(params or {})
    missing = [k for k in keys if k not in p]
    if missing:
        raise InvalidChannelError(f"channel {name!r} missing parameters {missing}")
    args = [p[k] for k in keys]
    return fn(d, *args) if takes_d else fn(*args)


def make_frozen_qubit(variant, q, sign=+1) -> KrausChannel:
    """Single-Kraus qubit channels that freeze the l1 coherence.

    variant 'xy': E_0 = q sigma_x +/- q' sigma_y;
    variant 'z':  E_0 = q I +/- i q' sigma_z; q' = sqrt(1 - q^2).
    """
    _require(0.0 <= q <= 1.0, f"frozen qubit channel requires 0 <= q <= 1, got {q}")
    if sign not in (+1, -1):
        raise InvalidChannelError(f"sign must be +1 or -1, got {sign}")
    qp = np.sqrt(1.0 - q * q)
    if variant == "xy":
        e0 = q * _SIGMA[1] + sign * qp * _SIGMA[2]
    elif variant == "z":
        e0 = q * _SIGMA[0] + sign * 1j * qp * _SIGMA[3]
    else:
        raise InvalidChannelError(f"variant must be 'xy' or 'z', got {variant!r}")
    return kraus_channel([e0], label=f"frozen_{variant}", params={"q": q, "sign": sign})


def validate_frozen_coefficients(eps, tol=CONDITION_TOL) -> bool:
    """Check the frozen-coherence coefficient conditions for a qubit Kraus
    set E_i = sum_j eps[i, j] sigma_j.

    The set must be a valid channel; returns True iff one of the two
    freezing condition families (columns 0,3 zero or columns 1,2 zero,
    plus the corresponding norm constraints) holds.
    """
    eps = np.asarray(eps, dtype=complex)
    if eps.shape != (4, 4):
        raise InvalidChannelError(f"expected a 4x4 coefficient table, got {eps.shape}")
    ops = [sum(eps[i, j] * _SIGMA[j] for j in range(4)) for i in range(4)]
    kraus_channel(ops)  # raises InvalidChannelError on completeness failure

    def _xy_form(e):
        if np.max(np.abs(e[:, [0, 3]])) > tol:
            return False
        s_plus = np.sum(np.abs(e[:, 1] + 1j * e[:, 2]) ** 2)
        s_minus = np.sum(np.abs(e[:, 1] - 1j * e[:, 2]) ** 2)
        if abs(s_plus - 1.0) > tol or abs(s_minus - 1.0) > tol:
            return False
        # cross terms that must vanish for block diagonality (implied by the
        # zero columns, re-checked for safety)
        c1 = np.sum((e[:, 0] + e[:, 3]) * (e[:, 1].conj() - 1j * e[:, 2].conj()))
        c2 = np.sum((e[:, 0].conj() - e[:, 3].conj()) * (e[:, 1] - 1j * e[:, 2]))
        if abs(c1) > tol or abs(c2) > tol:
            return False
        t_diag = np.sum(np.abs(e[:, 1]) ** 2 - np.abs(e[:, 2]) ** 2).real
        t_off = np.sum((e[:, 1].conj() * e[:, 2]).real)
        return abs(t_diag**2 + 4 * t_off**2 - 1.0) <= tol

    def _z_form(e):
        if np.max(np.abs(e[:, [1, 2]])) > tol:
            return False
        s_plus = np.sum(np.abs(e[:, 0] + e[:, 3]) ** 2)
        s_minus = np.sum(np.abs(e[:, 0] - e[:, 3]) ** 2)
        if abs(s_plus - 1.0) > tol or abs(s_minus - 1.0) > tol:
            return False
        t_diag = np.sum(np.abs(e[:, 0]) ** 2 - np.abs(e[:, 3]) ** 2).real
        t_off = np.sum((e[:, 3].conj() * e[:, 0]).imag)
        return abs(t_diag**2 + 4 * t_off**2 - 1.0) <= tol

    return bool(_xy_form(eps) or _z_form(eps))


def pauli_coefficients(ops) -> np.ndarray:
    """Expand up to four qubit Kraus operators as eps[i, j] with
    E_i = sum_j eps[i, j] sigma_j."""
    eps = np.zeros((4, 4), dtype=complex)
    for i, e in enumerate(ops):
        for j in range(4):
            eps[i, j] = np.trace(np.asarray(e) @ _SIGMA[j]) / 2.0
    return eps


# ---------------------------------------------------------------------------
# auxiliary channel (N-qubit family generator)

EPS_TOL = -1e-10  # linear-solve round-off on the Kraus weights


def aux_coefficient_matrix(N) -> np.ndarray:
    """c_{nu mu} = 2^(1-N) (-1)^(sum_k xi_k), xi_k = 0 iff
    nu_k mu_k (nu_k - mu_k) = 0 in the base-4 digit expansion."""
    size = 4**N
    digits = np.array([[(idx // 4**k) % 4 for k in range(N)] for idx in range(size)])
    c = np.empty((size, size))
    for nu in range(size):
        anti = (digits[nu] != 0) & (digits != 0) & (digits != digits[nu])
        c[nu] = 2.0 ** (1 - N) * (-1.0) ** anti.sum(axis=1)
    return c


def aux_solve(rho: DensityMatrix, m, chi, basis: PauliTensorBasis) -> AuxSolve:
    """Solve c eps = q for the auxiliary channel steering rho onto the
    family member chi * m in the Pauli tensor picture."""
    N = basis.N
    if rho.d != 2**N:
        raise DimensionMismatchError(f"state d={rho.d} vs basis d={2**N}")
    m = np.asarray(m, dtype=float)
    if m.shape != (4**N - 1,):
        raise DimensionMismatchError(f"target direction needs {4**N - 1} components")
    y = np.array([np.trace(rho.m @ yv).real for yv in basis.elements])
    q = np.zeros(4**N)
    q[0] = 1.0
    for nu in range(1, 4**N):
        if abs(m[nu - 1]) > 0:
            if abs(y[nu - 1]) <= 1e-10:
                raise UnreachableTargetError(
                    f"target coordinate {nu} is nonzero but the source coordinate vanishes",
                    index=nu,
                )
            q[nu] = chi * m[nu - 1] / y[nu - 1]
        # m_nu = 0: annihilate the coordinate (q_nu = 0)
    c = aux_coefficient_matrix(N)
    eps = np.linalg.solve(c, q)
    return AuxSolve(N=N, c=c, q_vec=q, eps=eps)


def aux_channel(rho: DensityMatrix, m, chi, basis: PauliTensorBasis) -> KrausChannel:
    """Auxiliary channel with Kraus set E_mu = sqrt(eps_mu) Y_mu mapping
    rho onto the family member with direction m and factor chi."""
    sol = aux_solve(rho, m, chi, basis)
    eps = sol.eps
    if np.min(eps) < EPS_TOL:
        raise NotAChannelError(
            f"no Kraus realization: solved weight eps[{int(np.argmin(eps))}] = {np.min(eps):.3e} < 0",
            eps=eps,
        )
    eps = np.clip(eps, 0.0, None)
    gens = (basis.identity_element,) + basis.elements
    ops = [np.sqrt(e) * g for e, g in zip(eps, gens) if e > 0]
    return kraus_channel(
        ops, label="aux", params={"chi": float(chi), "N": basis.N}
    )


# ---------------------------------------------------------------------------
# random channels


def _haar_unitary(n, rng):
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_channel(d, k=None, seed=None) -> KrausChannel:
    """Random CPTP map from a Haar isometry on d*k dimensions (k Kraus
    operators via the stacked-block construction); default k = d^2."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    k = d * d if k is None else int(k)
    u = _haar_unitary(d * k, rng)
    v = u[:, :d]
    ops = [v[mu * d : (mu + 1) * d, :] for mu in range(k)]
    return kraus_channel(ops, label="random", params={"k": k})


def random_unital_channel(d, k=None, seed=None) -> KrausChannel:
    """Random unital CPTP map: a Dirichlet-weighted mixture of Haar
    unitaries (A = I, so the factorization condition holds)."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    k = d * d if k is None else int(k)
    p = rng.dirichlet(np.ones(k))
    ops = [np.sqrt(p[mu]) * _haar_unitary(d, rng) for mu in range(k)]
    return kraus_channel(ops, label="random_unital", params={"k": k})
