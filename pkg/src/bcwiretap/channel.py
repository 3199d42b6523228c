"""Broadcast wiretap channel with asymmetric side information.

A channel is a state law ``P_s(s1, s2)`` plus a transition
``T(y1, y2, z | x, s1, s2)``.  Decoder k observes ``(y_k, s_k)``, the
eavesdropper observes ``z`` only.  Components that are absent from a
special case are encoded as size-1 axes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .probcore import (
    NORM_TOL,
    Alphabet,
    ConditionalPmf,
    Pmf,
    ValidationError,
    chain,
    condition,
    conditional_mutual_information,
)

STATE_AXES = ("s1", "s2")
INPUT_AXES = ("x", "s1", "s2")
OUTPUT_AXES = ("y1", "y2", "z")
POLICY_OUTPUT = ("u1", "u2", "x")
JOINT_AXES = ("u1", "u2", "x", "s1", "s2", "y1", "y2", "z")


def _expect_names(actual, expected, what):
    if tuple(actual) != tuple(expected):
        missing = [n for n in expected if n not in actual]
        hint = f" (missing {missing})" if missing else ""
        raise ValidationError(f"{what} axes must be {list(expected)}, got {list(actual)}{hint}")


@dataclass(frozen=True)
class ChannelSpec:
    state_dist: Pmf
    transition: ConditionalPmf

    def __post_init__(self):
        _expect_names(self.state_dist.names, STATE_AXES, "state_dist")
        _expect_names(self.transition.given_names, INPUT_AXES, "transition given")
        _expect_names(self.transition.output_names, OUTPUT_AXES, "transition output")
        for a in self.state_dist.axes:
            b = self.transition.given_axes[INPUT_AXES.index(a.name)]
            if a != b:
                raise ValidationError(f"axis {a.name!r}: size {a.size} in state_dist, {b.size} in transition")

    def size(self, name: str) -> int:
        for a in self.state_dist.axes + self.transition.given_axes + self.transition.output_axes:
            if a.name == name:
                return a.size
        raise KeyError(name)

    def to_json(self) -> dict:
        return {
            "schema_version": 1,
            "state_dist": self.state_dist.to_json(),
            "transition": self.transition.to_json(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ChannelSpec":
        for key in ("state_dist", "transition"):
            if key not in obj:
                raise ValidationError(f"channel json is missing {key!r}")
        return cls(Pmf.from_json(obj["state_dist"]), ConditionalPmf.from_json(obj["transition"]))


@dataclass(frozen=True)
class AuxPolicy:
    """Encoder law P(u1, u2, x | s1, s2)."""

    policy: ConditionalPmf

    def __post_init__(self):
        _expect_names(self.policy.given_names, STATE_AXES, "policy given")
        _expect_names(self.policy.output_names, POLICY_OUTPUT, "policy output")

    @property
    def aux_sizes(self) -> tuple[int, int]:
        return self.policy.output_axes[0].size, self.policy.output_axes[1].size

    def to_json(self) -> dict:
        return self.policy.to_json()

    @classmethod
    def from_json(cls, obj: dict) -> "AuxPolicy":
        return cls(ConditionalPmf.from_json(obj))

    @classmethod
    def from_table(cls, spec: ChannelSpec, table) -> "AuxPolicy":
        """Build from an array indexed ``(s1, s2, u1, u2, x)``."""
        table = np.asarray(table, dtype=float)
        given = spec.state_dist.axes
        out = [Alphabet("u1", table.shape[2]), Alphabet("u2", table.shape[3]), Alphabet("x", spec.size("x"))]
        return cls(ConditionalPmf(given, out, table))


@dataclass(frozen=True)
class FullJoint:
    """Q(u1, u2, x, s1, s2, y1, y2, z) = P_s * P(u1, u2, x | s1, s2) * T."""

    joint: Pmf

    def __post_init__(self):
        _expect_names(self.joint.names, JOINT_AXES, "full joint")

    def markov_gap(self) -> float:
        """I(U1,U2; Y1,Y2,Z | X,S1,S2); zero for a valid factorization."""
        return conditional_mutual_information(self.joint, ("u1", "u2"), OUTPUT_AXES, INPUT_AXES)


def build_full_joint(spec: ChannelSpec, pol: AuxPolicy) -> FullJoint:
    for a in pol.policy.given_axes:
        if a.size != spec.size(a.name):
            raise ValidationError(f"axis {a.name!r}: size {a.size} in policy, {spec.size(a.name)} in channel")
    x_pol = pol.policy.output_axes[2]
    if x_pol.size != spec.size("x"):
        raise ValidationError(f"axis 'x': size {x_pol.size} in policy, {spec.size('x')} in channel")
    j = chain(chain(spec.state_dist, pol.policy), spec.transition)
    return FullJoint(j.transpose(JOINT_AXES))


def joint_from_table(spec: ChannelSpec, table: np.ndarray) -> FullJoint:
    """Fast path for search loops: policy array indexed (s1, s2, u1, u2, x)."""
    ps = spec.state_dist.table
    t = spec.transition.table
    q = np.einsum("ab,abuvx,xabijk->uvxabijk", ps, table, t, optimize=False)
    axes = (
        Alphabet("u1", table.shape[2]),
        Alphabet("u2", table.shape[3]),
    ) + spec.transition.given_axes + spec.transition.output_axes
    return FullJoint(Pmf(axes, q, validate=False))


def policy_from_joint(j: FullJoint) -> AuxPolicy:
    """Recover P(u1, u2, x | s1, s2) from a full joint."""
    c = condition(j.joint.marginal(("u1", "u2", "x", "s1", "s2")), STATE_AXES)
    return AuxPolicy(c)


class MemorylessSampler:
    """i.i.d. state blocks and per-letter channel use for blocklength ``n``.

    Single owner: it holds a seeded generator.
    """

    def __init__(self, spec: ChannelSpec, n: int, seed=None):
        if n < 1:
            raise ValueError("blocklength must be >= 1")
        self.spec = spec
        self.n = int(n)
        self.rng = np.random.default_rng(seed)
        ps = spec.state_dist.table
        self._s_shape = ps.shape
        self._s_cdf = np.cumsum(ps.ravel())
        t = spec.transition.table
        self._out_shape = t.shape[3:]
        self._t_cdf = np.cumsum(t.reshape(t.shape[:3] + (-1,)), axis=-1)

    def draw_states(self):
        """Whole state block (s1^n, s2^n), drawn before any encoding."""
        flat = _inverse_cdf(self._s_cdf, self.rng.random(self.n))
        s1, s2 = np.unravel_index(flat, self._s_shape)
        return s1.astype(np.int64), s2.astype(np.int64)

    def transmit(self, x, s1, s2):
        """Channel outputs (y1^n, y2^n, z^n) for input x^n under states (s1^n, s2^n)."""
        x, s1, s2 = (np.asarray(v, dtype=np.int64) for v in (x, s1, s2))
        if not (x.shape == s1.shape == s2.shape == (self.n,)):
            raise ValueError("sequence length mismatch")
        cdf = self._t_cdf[x, s1, s2]
        u = self.rng.random(self.n)[:, None]
        flat = np.minimum((u >= cdf).sum(axis=1), cdf.shape[1] - 1)
        y1, y2, z = np.unravel_index(flat, self._out_shape)
        return y1.astype(np.int64), y2.astype(np.int64), z.astype(np.int64)


def _inverse_cdf(cdf: np.ndarray, u: np.ndarray) -> np.ndarray:
    return np.minimum(np.searchsorted(cdf, u, side="right"), cdf.size - 1)


def memoryless_extend(spec: ChannelSpec, n: int, seed=None) -> MemorylessSampler:
    return MemorylessSampler(spec, n, seed)


def save_channel(spec: ChannelSpec, path) -> None:
    Path(path).write_text(json.dumps(spec.to_json(), sort_keys=True, indent=1) + "\n")


def load_channel(path) -> ChannelSpec:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: malformed JSON ({exc})") from exc
    return ChannelSpec.from_json(obj)


def make_channel(state_table, transition_table, *, tol: float = NORM_TOL) -> ChannelSpec:
    """Channel from raw arrays: P_s indexed (s1, s2), T indexed (x, s1, s2, y1, y2, z)."""
    ps = np.asarray(state_table, dtype=float)
    t = np.asarray(transition_table, dtype=float)
    states = [Alphabet("s1", ps.shape[0]), Alphabet("s2", ps.shape[1])]
    given = [Alphabet("x", t.shape[0])] + states
    out = [Alphabet("y1", t.shape[3]), Alphabet("y2", t.shape[4]), Alphabet("z", t.shape[5])]
    return ChannelSpec(Pmf(states, ps, atol=tol), ConditionalPmf(given, out, t, atol=tol))
