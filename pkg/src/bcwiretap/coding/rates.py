"""Binning rate bookkeeping for the random-binning scheme.

Per user k (all in bits/symbol):

    R_Y = R_U + R      codebook = bins x per-bin
    R_U = R_W + R_Z    per-bin  = sub-bins x per-sub-bin

Constraints at margin m (strict inequalities placed m inside their limit):

    R_Uk > I(Uk;S1,S2)                      state covering
    R_U1 + R_U2 > I(U1;U2) + I(U1,U2;S1,S2)  joint covering
    R_Yk < I(Uk;Yk,Sk)                      decoding
    R_Zk < I(Uk;Z),  R_Z1 + R_Z2 < I(U1;U2) + I(U1,U2;Z)
    R_Uk > R_Zk
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from ..channel import FullJoint
from ..probcore import EntropyCache
from ..region import information_terms

_TOL = 1e-12


class InfeasibleRates(ValueError):
    """The binning constraint system has no solution at the requested margin."""


@dataclass(frozen=True)
class UserRates:
    codebook: float = 0.0     # R_Y
    message: float = 0.0      # R
    bin: float = 0.0          # R_U
    subbin_count: float = 0.0  # R_W
    subbin_size: float = 0.0   # R_Z

    def __post_init__(self):
        for name in ("codebook", "message", "bin", "subbin_count", "subbin_size"):
            if getattr(self, name) < -_TOL:
                raise ValueError(f"rate {name} is negative: {getattr(self, name)}")
        if abs(self.codebook - self.bin - self.message) > _TOL:
            raise ValueError("R_Y must equal R_U + R")
        if abs(self.bin - self.subbin_count - self.subbin_size) > _TOL:
            raise ValueError("R_U must equal R_W + R_Z")

    @classmethod
    def build(cls, message: float, subbin_count: float, subbin_size: float) -> "UserRates":
        b = subbin_count + subbin_size
        return cls(codebook=b + message, message=message, bin=b, subbin_count=subbin_count, subbin_size=subbin_size)

    def without_subbins(self) -> "UserRates":
        """Ablation: drop the sub-bin randomization (R_Z = 0), keep R_W and R."""
        return UserRates.build(self.message, self.subbin_count, 0.0)

    def to_json(self) -> dict:
        return {
            "R_Y": self.codebook,
            "R": self.message,
            "R_U": self.bin,
            "R_W": self.subbin_count,
            "R_Z": self.subbin_size,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "UserRates":
        return cls.build(float(obj["R"]), float(obj["R_W"]), float(obj["R_Z"]))


@dataclass(frozen=True)
class BinningRates:
    user1: UserRates
    user2: UserRates

    def __getitem__(self, k: int) -> UserRates:
        return (self.user1, self.user2)[k - 1]

    def without_subbins(self) -> "BinningRates":
        return BinningRates(self.user1.without_subbins(), self.user2.without_subbins())

    def with_user(self, k: int, rates: UserRates) -> "BinningRates":
        return replace(self, **{f"user{k}": rates})

    def to_json(self) -> dict:
        return {"user1": self.user1.to_json(), "user2": self.user2.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> "BinningRates":
        return cls(UserRates.from_json(obj["user1"]), UserRates.from_json(obj["user2"]))


def derive_rates(j: FullJoint, margin: float) -> BinningRates:
    """Rates sitting ``margin`` inside every binning constraint.

    A user whose auxiliary variable is constant carries nothing and gets all
    rates zero.  Message rates come out as the region bounds minus margins.
    """
    if margin <= 0:
        raise ValueError("margin must be positive")
    t = information_terms(j)
    c = EntropyCache(j.joint)
    active = [c.h(("u1",)) > _TOL, c.h(("u2",)) > _TOL]
    i_y = [t["I_u1_y1"], t["I_u2_y2"]]
    i_s = [t["I_u1_s"], t["I_u2_s"]]
    i_z = [t["I_u1_z"], t["I_u2_z"]]

    r_z = [max(0.0, i_z[k] - margin) if active[k] else 0.0 for k in range(2)]
    if all(active):
        cap = max(0.0, t["I_u1_u2"] + t["I_u12_z"] - margin)
        if sum(r_z) > cap:
            scale = cap / sum(r_z)
            r_z = [r * scale for r in r_z]

    r_u = [max(i_s[k], i_z[k]) + margin if active[k] else 0.0 for k in range(2)]
    if all(active):
        need = t["I_u1_u2"] + max(t["I_u12_s"], t["I_u12_z"]) + margin
        deficit = need - sum(r_u)
        if deficit > 0:
            r_u = [r + deficit / 2 for r in r_u]

    users = []
    for k in range(2):
        if not active[k]:
            users.append(UserRates())
            continue
        r_y = i_y[k] - margin
        r = r_y - r_u[k]
        if r < 0:
            raise InfeasibleRates(
                f"user {k + 1}: decoding limit R_Y < I(U{k + 1};Y{k + 1},S{k + 1}) = {i_y[k]:.6f} "
                f"cannot cover R_U = {r_u[k]:.6f} at margin {margin}"
            )
        users.append(UserRates.build(r, r_u[k] - r_z[k], r_z[k]))
    return BinningRates(*users)
