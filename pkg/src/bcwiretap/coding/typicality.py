"""Robust (letter) typicality on empirical joint types."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..channel import FullJoint
from ..probcore import Pmf


@dataclass(frozen=True)
class TypicalityParams:
    epsilon: float
    n: int

    def __post_init__(self):
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.n < 1:
            raise ValueError("n must be >= 1")


class TypicalityTest:
    """Joint-type test against a model marginal over ordered axes.

    A sequence tuple is typical iff for every cell c of the joint alphabet
    |N(c)/n - p(c)| <= eps*p(c) + eps/|cells| when p(c) > 0, and N(c) = 0
    when p(c) = 0.
    """

    def __init__(self, marginal: Pmf, eps: float):
        self.names = marginal.names
        self.sizes = marginal.shape
        self.p = marginal.table.ravel()
        self.cells = self.p.size
        self.zero = self.p <= 0
        self.thr = np.where(self.zero, 0.0, eps * self.p + eps / self.cells)
        self.strides = np.array([int(np.prod(self.sizes[i + 1:])) for i in range(len(self.sizes))], dtype=np.int64)

    @classmethod
    def over(cls, joint, axes, eps: float) -> "TypicalityTest":
        p = joint.joint if isinstance(joint, FullJoint) else joint
        return cls(p.marginal(axes).transpose(tuple(axes)), eps)

    def stride(self, name: str) -> int:
        return int(self.strides[self.names.index(name)])

    def cells_of(self, seqs: dict) -> np.ndarray:
        return sum(np.asarray(seqs[n], dtype=np.int64) * self.stride(n) for n in self.names)

    def mask(self, cells: np.ndarray) -> np.ndarray:
        """Typicality of each row of a (K, n) array of flattened cell indices."""
        cells = np.asarray(cells, dtype=np.int64)
        k, n = cells.shape
        offs = (np.arange(k, dtype=np.int64) * self.cells)[:, None]
        counts = np.bincount((cells + offs).ravel(), minlength=k * self.cells).reshape(k, self.cells)
        freq = counts / n
        ok = np.all(np.abs(freq - self.p) <= self.thr + 1e-15, axis=1)
        ok &= ~np.any(counts[:, self.zero] > 0, axis=1)
        return ok

    def check(self, seqs: dict) -> bool:
        return bool(self.mask(self.cells_of(seqs)[None, :])[0])


def is_jointly_typical(seqs: dict, joint, axes, eps: float) -> bool:
    """Robust joint typicality of named sequences against the model marginal.

    Parameters
    ----------
    seqs : dict
        Axis name to integer sequence; all of one length.
    joint : FullJoint or Pmf
        Model law; its marginal on ``axes`` is the reference type.
    axes : sequence of str
    eps : float
    """
    axes = tuple(axes)
    lengths = {len(np.asarray(seqs[a])) for a in axes}
    if len(lengths) != 1:
        raise ValueError(f"sequence length mismatch: {sorted(lengths)}")
    return TypicalityTest.over(joint, axes, eps).check(seqs)
