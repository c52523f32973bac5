"""Acceptance suite: one test per criterion, each printing a pass/fail line
at the pinned tolerance. Run with ``pytest -s tests/test_acceptance.py``."""

import numpy as np
import pytest

from cohfact.basis import gellmann_basis, pauli_tensor_basis
from cohfact.channel import (
    apply,
    aux_channel,
    corollary1_check,
    gell_mann_G,
    make_frozen_qubit,
    make_named,
    random_channel,
    random_unital_channel,
    theorem1_condition,
    transfer_matrix,
)
from cohfact.errors import NotAChannelError
from cohfact.factorization import (
    freeze_trajectory,
    verify_cascade,
    verify_lemma1,
    verify_theorem1,
)
from cohfact.measures import (
    correlation_measures,
    geometric_discord2,
    l1_from_bloch,
    l1_from_density,
    min2,
)
from cohfact.state import (
    StateFamily,
    bloch_decompose,
    density_matrix,
    family_member,
    is_psd,
    probe_state,
    random_family,
    random_state,
)


def _report(name, passed, detail=""):
    status = "PASS" if passed else "FAIL"
    print(f"\nACCEPTANCE {name}: {status} {detail}")
    assert passed, f"{name} failed: {detail}"


def test_criterion_1_factorization_law():
    """Factorization law on 500 random unital channels x families per d in 2..4."""
    worst = 0.0
    for d in (2, 3, 4):
        rng = np.random.default_rng(1000 + d)
        for _ in range(500):
            rep = verify_theorem1(random_unital_channel(d, k=d, seed=rng), random_family(d, rng))
            worst = max(worst, rep.abs_err)
    _report("1 factorization-law", worst <= 1e-9, f"max |lhs-rhs| = {worst:.3e}")


def test_criterion_2_condition_equivalence():
    """corollary1_check agrees with theorem1_condition on 200 channels per d."""
    agree = True
    trues = 0
    for d in (2, 3, 4):
        rng = np.random.default_rng(2000 + d)
        for i in range(200):
            if i % 4 == 0:
                ch = random_unital_channel(d, k=d, seed=rng)
            else:
                ch = random_channel(d, k=d, seed=rng)
            a = corollary1_check(ch)
            b = theorem1_condition(transfer_matrix(ch))
            trues += a
            agree = agree and (a == b)
    _report("2 condition-equivalence", agree and trues > 0, f"{trues} condition-true channels")


def test_criterion_3_gell_mann_G_scalar_law():
    """C[E_G(rho)] = q C(rho) over a 21-point valid (q, q0) grid per d."""
    worst = 0.0
    comp_worst = 0.0
    for d in (2, 3, 4):
        rng = np.random.default_rng(3000 + d)
        grid = [
            (t * (1.0 + (d - 1) * q0) / d, q0)
            for q0 in np.linspace(0.0, 1.0, 7)
            for t in (0.0, 0.5, 1.0)
        ]
        assert len(grid) == 21
        for q, q0 in grid:
            ch = gell_mann_G(d, q, q0)
            s = sum(e.conj().T @ e for e in ch.kraus)
            comp_worst = max(comp_worst, float(np.max(np.abs(s - np.eye(d)))))
            rho = random_state(d, rng)
            err = abs(l1_from_density(apply(ch, rho)) - q * l1_from_density(rho))
            worst = max(worst, err)
    ok = worst <= 1e-10 and comp_worst <= 1e-12
    _report("3 scalar-law-E_G", ok, f"max err = {worst:.3e}, completeness = {comp_worst:.3e}")


def test_criterion_4_frozen_coherence():
    """Frozen-qubit families stay constant over q in [0,1]; bit(-phase)-flip
    freezes the matching zero-component families."""
    grid = np.linspace(0.0, 1.0, 101)
    worst = 0.0
    rng = np.random.default_rng(4000)
    for variant in ("xy", "z"):
        for sign in (+1, -1):
            for _ in range(50):
                rho = random_state(2, rng)
                traj = freeze_trajectory(
                    lambda q: make_frozen_qubit(variant, q, sign=sign), grid, rho
                )
                worst = max(worst, traj.spread)
    b = gellmann_basis(2)
    for name, zero_idx in (("bit_flip", 1), ("bit_phase_flip", 0)):
        for _ in range(20):
            n = rng.standard_normal(3)
            n[zero_idx] = 0.0
            n /= np.linalg.norm(n)
            chi = rng.uniform(0.05, 0.9)
            if not is_psd(family_member(StateFamily(d=2, n=n, chi=chi), b).m):
                chi *= 0.5
            rho = family_member(StateFamily(d=2, n=n, chi=chi), b)
            traj = freeze_trajectory(lambda q: make_named(name, params={"q": q}), grid, rho)
            worst = max(worst, traj.spread)
    _report("4 frozen-coherence", worst <= 1e-9, f"max spread = {worst:.3e}")


def _reachable_targets(N, count, seed):
    rng = np.random.default_rng(seed)
    yb = pauli_tensor_basis(N)
    out = []
    while len(out) < count:
        rho = random_state(2**N, rng)
        v = rng.standard_normal(4**N - 1)
        m = v / np.linalg.norm(v)
        chi = rng.uniform(0.005, 0.2)
        for _ in range(60):
            try:
                ch = aux_channel(rho, m, chi, yb)
            except NotAChannelError:
                chi *= 0.5
                continue
            out.append((rho, m, chi, ch))
            break
    return out, yb


def test_criterion_5_auxiliary_channel_and_cascade():
    """E_aux hits the target family member; the cascaded relation holds."""
    worst_target = 0.0
    worst_cascade = 0.0
    for N in (1, 2):
        draws, yb = _reachable_targets(N, 200, 5000 + N)
        dep = make_named("depolarizing", d=2**N, params={"p": 0.35})
        uni = random_unital_channel(2**N, k=2**N, seed=5050 + N)
        for i, (rho, m, chi, ch) in enumerate(draws):
            out = apply(ch, rho).m
            target = np.eye(2**N, dtype=complex) / 2**N
            for mv, yv in zip(m, yb.elements):
                target += 0.5 * chi * mv * yv
            worst_target = max(worst_target, float(np.linalg.norm(out - target)))
            if i < 50:
                for ch_f in (dep, uni):
                    rep = verify_cascade(ch_f, rho, m, chi)
                    worst_cascade = max(worst_cascade, rep.abs_err)
    ok = worst_target <= 1e-10 and worst_cascade <= 1e-9
    _report(
        "5 auxiliary-channel",
        ok,
        f"max target err = {worst_target:.3e}, max cascade err = {worst_cascade:.3e}",
    )


def test_criterion_6_dual_picture_and_transfer():
    """l1 agrees across pictures; Bloch action x' = T x matches apply."""
    worst_l1 = 0.0
    for d in range(2, 7):
        b = gellmann_basis(d)
        rng = np.random.default_rng(6000 + d)
        for _ in range(500):
            rho = random_state(d, rng)
            err = abs(l1_from_density(rho) - l1_from_bloch(bloch_decompose(rho, b)))
            worst_l1 = max(worst_l1, err)
    worst_t = 0.0
    for d in (2, 3, 4):
        b = gellmann_basis(d)
        rng = np.random.default_rng(6100 + d)
        for _ in range(167):
            ch = random_channel(d, k=d, seed=rng)
            rho = random_state(d, rng)
            t = transfer_matrix(ch, b)
            xa = np.concatenate([[np.sqrt(2.0 / d)], bloch_decompose(rho, b).x])
            got = bloch_decompose(apply(ch, rho), b).x
            worst_t = max(worst_t, float(np.max(np.abs((t.t @ xa)[1:] - got))))
    ok = worst_l1 <= 1e-12 and worst_t <= 1e-11
    _report("6 dual-picture", ok, f"l1 err = {worst_l1:.3e}, transfer err = {worst_t:.3e}")


def test_criterion_7_purity_factorization():
    """Purity factorizes under unital channels; amplitude damping breaks it."""
    worst = 0.0
    for d in (2, 3):
        rng = np.random.default_rng(7000 + d)
        for _ in range(100):
            rep = verify_lemma1("purity", random_unital_channel(d, seed=rng), random_family(d, rng))
            worst = max(worst, rep.abs_err)
    ad = make_named("amplitude_damping", params={"gamma": 0.5})
    rng = np.random.default_rng(7100)
    violation = max(
        verify_lemma1("purity", ad, random_family(2, rng)).abs_err for _ in range(50)
    )
    ok = worst <= 1e-9 and violation > 1e-6
    _report("7 purity-factorization", ok, f"unital err = {worst:.3e}, AD violation = {violation:.3e}")


def test_criterion_8_two_qubit_measures():
    """Bell-state figures of merit; D2 grid stability; N2 >= D2."""
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = m[0, 3] = m[3, 0] = m[3, 3] = 0.5
    bell = density_matrix(m)
    meas = correlation_measures(bell)
    err_bell = abs(meas["bell_max"] - 2.0 * np.sqrt(2.0))
    err_tf = abs(meas["teleport_fidelity"] - (0.5 + np.sqrt(3.0) / 6.0))
    d2_coarse = geometric_discord2(bell, grid=(32, 64))
    d2_fine = geometric_discord2(bell, grid=(64, 128))
    stab = abs(d2_coarse - d2_fine)
    dominance = True
    rng = np.random.default_rng(8000)
    for _ in range(200):
        rho = random_state(4, rng)
        dominance = dominance and (min2(rho) >= geometric_discord2(rho) - 1e-10)
    ok = err_bell <= 1e-10 and err_tf <= 1e-10 and stab <= 1e-8 and dominance
    _report(
        "8 two-qubit-measures",
        ok,
        f"bell err = {err_bell:.3e}, fidelity err = {err_tf:.3e}, D2 stability = {stab:.3e}",
    )


def test_criterion_9_probe_contract():
    """Probe coherence is exactly 1; physicality is flagged by a PSD check."""
    worst = 0.0
    flags_consistent = True
    both_seen = set()
    for d in (2, 3, 4):
        b = gellmann_basis(d)
        rng = np.random.default_rng(9000 + d)
        for _ in range(500):
            v = rng.standard_normal(d * d - 1)
            p = probe_state(v / np.linalg.norm(v), b)
            worst = max(worst, abs(l1_from_density(p.state) - 1.0))
            w_min = float(np.linalg.eigvalsh(p.state.m)[0])
            flags_consistent = flags_consistent and (p.physical == (w_min >= -1e-9))
            both_seen.add(p.physical)
    ok = worst <= 1e-12 and flags_consistent and both_seen == {True, False}
    _report("9 probe-contract", ok, f"max |C-1| = {worst:.3e}, flags = {sorted(both_seen)}")
