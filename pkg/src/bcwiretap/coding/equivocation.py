"""Exact message equivocation at the eavesdropper by full enumeration."""

from __future__ import annotations

import itertools
import math

import numpy as np

from ..channel import AuxPolicy, ChannelSpec, build_full_joint
from ..probcore import condition, entropy_of_table
from .scheme import Codebook, Coder, EncodeFailure
from .typicality import TypicalityParams

DEFAULT_BUDGET = 10 ** 8


class EnumerationBudgetExceeded(RuntimeError):
    def __init__(self, required: int, budget: int):
        super().__init__(f"exact equivocation needs {required} enumeration terms, budget is {budget}")
        self.required = required
        self.budget = budget


def enumeration_size(cb: Codebook, spec: ChannelSpec) -> int:
    """messages x state sequences x encoder offsets x z^n."""
    n = cb.n
    states = (spec.size("s1") * spec.size("s2")) ** n
    return (
        cb[1].bins * cb[2].bins * states * cb[1].per_bin * cb[2].per_bin * spec.size("z") ** n
    )


def _kron_rows(rows) -> np.ndarray:
    out = np.ones(1)
    for r in rows:
        out = np.kron(out, r)
    return out


def exact_equivocation(
    cb: Codebook,
    spec: ChannelSpec,
    pol: AuxPolicy,
    tp: TypicalityParams,
    *,
    budget: int = DEFAULT_BUDGET,
) -> float:
    """H(M1, M2 | Z^n) / n in bits under the code's true joint law.

    The law marginalizes i.i.d. states, the encoder's uniform scan offsets
    (which pick the codeword inside each bin), the letterwise input
    randomization and the eavesdropper channel.  An encoding failure sends
    the all-zero input, as in the simulator.
    """
    required = enumeration_size(cb, spec)
    if required > budget:
        raise EnumerationBudgetExceeded(required, budget)
    n = cb.n
    j = build_full_joint(spec, pol)
    coder = Coder(cb, j, tp)

    # W(z | u1, u2, s1, s2) = sum_x Q(x | u1, u2, s1, s2) T(z | x, s1, s2)
    qx = condition(j.joint.marginal(("u1", "u2", "x", "s1", "s2")), ("u1", "u2", "s1", "s2")).table
    tz = spec.transition.table.sum(axis=(3, 4))  # (x, s1, s2, z)
    w = np.einsum("uvabx,xabz->uvabz", qx, tz)
    w_fail = tz[0]  # (s1, s2, z)

    ps = spec.state_dist.table
    m1s, m2s = cb[1].bins, cb[2].bins
    off = cb[1].per_bin * cb[2].per_bin
    joint = np.zeros((m1s * m2s, spec.size("z") ** n))
    cache: dict = {}
    s_cells = list(itertools.product(range(ps.shape[0]), range(ps.shape[1])))
    for s_seq in itertools.product(range(len(s_cells)), repeat=n):
        s1 = np.array([s_cells[c][0] for c in s_seq], dtype=np.int64)
        s2 = np.array([s_cells[c][1] for c in s_seq], dtype=np.int64)
        p_s = float(np.prod(ps[s1, s2]))
        if p_s == 0.0:
            continue
        for m1, m2 in itertools.product(range(m1s), range(m2s)):
            row = joint[m1 * m2s + m2]
            for r1, r2 in itertools.product(range(cb[1].per_bin), range(cb[2].per_bin)):
                sel = coder.select_pair(m1, m2, s1, s2, r1, r2)
                key = (sel if not isinstance(sel, EncodeFailure) else None, s_seq)
                lik = cache.get(key)
                if lik is None:
                    if key[0] is None:
                        lik = _kron_rows(w_fail[s1[t], s2[t]] for t in range(n))
                    else:
                        u1 = cb[1].words[sel[0]]
                        u2 = cb[2].words[sel[1]]
                        lik = _kron_rows(w[u1[t], u2[t], s1[t], s2[t]] for t in range(n))
                    cache[key] = lik
                row += p_s * lik / off
    joint /= m1s * m2s
    h_mz = entropy_of_table(joint)
    h_z = entropy_of_table(joint.sum(axis=0))
    return max(0.0, (h_mz - h_z)) / n


def message_entropy_rate(cb: Codebook) -> float:
    """(log2 M1 + log2 M2) / n, the equivocation ceiling."""
    return (math.log2(cb[1].bins) + math.log2(cb[2].bins)) / cb.n
