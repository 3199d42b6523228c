"""Small shipped channels, policies and simulation configurations."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .channel import AuxPolicy, ChannelSpec, make_channel
from .coding.covering import doubly_symmetric_binary
from .game import GAMES

ERASURE_MAIN = 0.6
ERASURE_EVE = 0.95


def _constant_states() -> np.ndarray:
    return np.ones((1, 1))


def noiseless_binary() -> ChannelSpec:
    """y1 = y2 = x, constant states and eavesdropper."""
    t = np.zeros((2, 1, 1, 2, 2, 1))
    for x in range(2):
        t[x, 0, 0, x, x, 0] = 1.0
    return make_channel(_constant_states(), t)


def noiseless_policy(spec: ChannelSpec | None = None) -> AuxPolicy:
    """u1 = x uniform, u2 constant."""
    spec = spec or noiseless_binary()
    t = np.zeros((1, 1, 2, 1, 2))
    t[0, 0, 0, 0, 0] = t[0, 0, 1, 0, 1] = 0.5
    return AuxPolicy.from_table(spec, t)


def _bec(p_erase: float) -> np.ndarray:
    """Rows x in {0,1}, outputs {0, 1, erasure}."""
    return np.array([[1 - p_erase, 0.0, p_erase], [0.0, 1 - p_erase, p_erase]])


def erasure_pair(main: float = ERASURE_MAIN, eve: float = ERASURE_EVE) -> ChannelSpec:
    """x = (xa, xb); receiver 1 sees xa and receiver 2 sees xb through BEC(main).

    The eavesdropper sees xa through BEC(eve).  States are constant.
    """
    bm, be = _bec(main), _bec(eve)
    t = np.zeros((4, 1, 1, 3, 3, 3))
    for x in range(4):
        xa, xb = divmod(x, 2)
        t[x, 0, 0] = np.einsum("i,j,k->ijk", bm[xa], bm[xb], be[xa])
    return make_channel(_constant_states(), t)


def erasure_policy(spec: ChannelSpec | None = None) -> AuxPolicy:
    """u1 = xa, u2 = xb, independent and uniform."""
    spec = spec or erasure_pair()
    t = np.zeros((1, 1, 2, 2, 4))
    for a in range(2):
        for b in range(2):
            t[0, 0, a, b, 2 * a + b] = 0.25
    return AuxPolicy.from_table(spec, t)


def correlated_aux_channel() -> ChannelSpec:
    """x = (xa, xb) delivered noiselessly: y1 = xa, y2 = xb, z constant."""
    t = np.zeros((4, 1, 1, 2, 2, 1))
    for x in range(4):
        xa, xb = divmod(x, 2)
        t[x, 0, 0, xa, xb, 0] = 1.0
    return make_channel(_constant_states(), t)


def correlated_aux_policy(p_flip: float = 0.1, spec: ChannelSpec | None = None) -> AuxPolicy:
    """(u1, u2) doubly symmetric binary with crossover p_flip, x = (u1, u2)."""
    spec = spec or correlated_aux_channel()
    t = np.zeros((1, 1, 2, 2, 4))
    for a in range(2):
        for b in range(2):
            t[0, 0, a, b, 2 * a + b] = (1 - p_flip if a == b else p_flip) / 2
    return AuxPolicy.from_table(spec, t)


def wiretap_bsc(eve_flip: float = 0.25) -> ChannelSpec:
    """Single user: y1 = x, z = BSC(eve_flip) of x, y2 and states constant."""
    t = np.zeros((2, 1, 1, 2, 1, 2))
    for x in range(2):
        t[x, 0, 0, x, 0, x] = 1 - eve_flip
        t[x, 0, 0, x, 0, 1 - x] = eve_flip
    return make_channel(_constant_states(), t)


def pure_noise_eavesdropper() -> ChannelSpec:
    """y1 = x, z uniform and independent of everything."""
    return wiretap_bsc(0.5)


def single_user_policy(spec: ChannelSpec) -> AuxPolicy:
    """u1 = x uniform, u2 constant, for single-user binary channels."""
    t = np.zeros((1, 1, 2, 1, 2))
    t[0, 0, 0, 0, 0] = t[0, 0, 1, 0, 1] = 0.5
    return AuxPolicy.from_table(spec, t)


def binary_dirty_paper(state_flip: float = 0.5, main: float = 0.1, eve: float = 0.2) -> ChannelSpec:
    """Single user with an encoder-only state: y1 = x^s^N(main), z = x^s^N(eve).

    The state is carried on ``s1`` with ``s2`` constant; receiver 2 is absent.
    """
    ps = np.array([[1 - state_flip], [state_flip]])
    t = np.zeros((2, 2, 1, 2, 1, 2))
    for x in range(2):
        for s in range(2):
            c = x ^ s
            for y in range(2):
                for z in range(2):
                    py = 1 - main if y == c else main
                    pz = 1 - eve if z == c else eve
                    t[x, s, 0, y, 0, z] = py * pz
    return make_channel(ps, t)


CHANNELS = {
    "noiseless_binary": noiseless_binary,
    "erasure_pair": erasure_pair,
    "correlated_aux": correlated_aux_channel,
    "wiretap_bsc": wiretap_bsc,
    "pure_noise_eavesdropper": pure_noise_eavesdropper,
    "binary_dirty_paper": binary_dirty_paper,
}


# Simulation and equivocation configurations.  Paths are relative to the
# config file.
SIM_CONFIG = {
    "schema_version": 1,
    "channel": "erasure_pair.channel.json",
    "policy": "erasure_pair.policy.json",
    "margin": 0.15,
    "n": 32,
    "trials": 100,
    "epsilon": 0.5,
    "seed": 20240611,
}

EQUIVOCATION_CONFIG = {
    "schema_version": 1,
    "channel": "wiretap_bsc.channel.json",
    "policy": "wiretap_bsc.policy.json",
    "rates": {
        "user1": {"R": 2 / 6, "R_W": 0.0, "R_Z": 2 / 6},
        "user2": {"R": 0.0, "R_W": 0.0, "R_Z": 0.0},
    },
    "n": 6,
    "epsilon": 1.0,
    "seed": 0,
    "ablation": True,
}


def shipped_files() -> dict:
    """File name -> JSON object for every shipped data file."""
    files = {
        "noiseless_binary.channel.json": noiseless_binary().to_json(),
        "noiseless_binary.policy.json": noiseless_policy().to_json(),
        "erasure_pair.channel.json": erasure_pair().to_json(),
        "erasure_pair.policy.json": erasure_policy().to_json(),
        "correlated_aux.channel.json": correlated_aux_channel().to_json(),
        "correlated_aux.policy.json": correlated_aux_policy().to_json(),
        "wiretap_bsc.channel.json": wiretap_bsc().to_json(),
        "wiretap_bsc.policy.json": single_user_policy(wiretap_bsc()).to_json(),
        "binary_dirty_paper.channel.json": binary_dirty_paper().to_json(),
        "erasure_pair.sim.json": SIM_CONFIG,
        "wiretap_bsc.equiv.json": EQUIVOCATION_CONFIG,
        "dsbs_0.2.joint.json": doubly_symmetric_binary(0.2).to_json(),
    }
    for name, make in GAMES.items():
        files[f"{name}.game.json"] = make().to_json()
    return files


def data_dir() -> Path:
    return Path(__file__).parent / "data"


def write_shipped_files(directory=None) -> list:
    d = Path(directory) if directory is not None else data_dir()
    d.mkdir(parents=True, exist_ok=True)
    out = []
    for name, obj in shipped_files().items():
        p = d / name
        p.write_text(json.dumps(obj, sort_keys=True, indent=1) + "\n")
        out.append(p)
    return out
