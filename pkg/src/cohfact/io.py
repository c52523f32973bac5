"""JSON formats for states, channels, and transfer matrices.

State: {"d": int, "matrix": [[[re, im], ...], ...]} or {"d": int, "bloch": [...]}.
Channel: {"name": ..., "d": int, "params": {...}} or {"kraus": [[[[re, im], ...]]]}.
Numbers serialize with 12 significant digits.
"""

import json

import numpy as np

from .basis import gellmann_basis
from .channel import KrausChannel, TransferMatrix, kraus_channel, make_named
from .errors import CohfactError
from .state import DensityMatrix, bloch_compose, density_matrix


def fmt12(x):
    """12-significant-digit float, round-tripping through repr."""
    return float(f"{float(x):.12g}")


def _complex_to_pair(z):
    return [fmt12(z.real), fmt12(z.imag)]


def _matrix_to_json(m):
    return [[_complex_to_pair(z) for z in row] for row in np.asarray(m, dtype=complex)]


def _matrix_from_json(rows):
    return np.array([[complex(re, im) for re, im in row] for row in rows])


def state_to_dict(rho: DensityMatrix) -> dict:
    return {"d": rho.d, "matrix": _matrix_to_json(rho.m)}


def state_from_dict(spec: dict, validate=True) -> DensityMatrix:
    if "matrix" in spec:
        m = _matrix_from_json(spec["matrix"])
        rho = density_matrix(m, validate=validate)
    elif "bloch" in spec:
        d = int(spec["d"])
        rho = bloch_compose(np.asarray(spec["bloch"], dtype=float), gellmann_basis(d),
                            validate=validate)
    else:
        raise CohfactError("state spec needs a 'matrix' or 'bloch' entry")
    if "d" in spec and int(spec["d"]) != rho.d:
        raise CohfactError(f"declared d={spec['d']} but matrix is {rho.d}x{rho.d}")
    return rho


def load_state(path, validate=True) -> DensityMatrix:
    with open(path) as fh:
        return state_from_dict(json.load(fh), validate=validate)


def save_state(path, rho: DensityMatrix):
    with open(path, "w") as fh:
        json.dump(state_to_dict(rho), fh)
        fh.write("\n")


def channel_to_dict(ch: KrausChannel) -> dict:
    return {
        "d": ch.d,
        "label": ch.label,
        "params": {k: fmt12(v) if isinstance(v, (int, float)) else v for k, v in ch.params.items()},
        "kraus": [_matrix_to_json(e) for e in ch.kraus],
    }


def channel_from_dict(spec: dict) -> KrausChannel:
    if "name" in spec:
        return make_named(spec["name"], d=int(spec.get("d", 2)), params=spec.get("params"))
    if "kraus" in spec:
        ops = [_matrix_from_json(e) for e in spec["kraus"]]
        return kraus_channel(ops, label=spec.get("label", ""), params=spec.get("params"))
    raise CohfactError("channel spec needs a 'name' or 'kraus' entry")


def load_channel(path) -> KrausChannel:
    with open(path) as fh:
        return channel_from_dict(json.load(fh))


def save_channel(path, ch: KrausChannel):
    with open(path, "w") as fh:
        json.dump(channel_to_dict(ch), fh)
        fh.write("\n")


def transfer_to_dict(t: TransferMatrix) -> dict:
    """Row-major real entries, index-0 (identity) row first."""
    return {"d": t.d, "t": [[fmt12(v) for v in row] for row in t.t]}
