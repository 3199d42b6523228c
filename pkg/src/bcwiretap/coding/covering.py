"""Mutual covering experiment: do two independent random families contain a typical pair?

Each trial draws a family of 2^{nR_I} sequences i.i.d. from P_U and an
independent family of 2^{nR_J} sequences i.i.d. from P_V and records whether
some pair (u_i, v_j) is jointly typical.

When the product of the family sizes is small both are drawn explicitly.
Otherwise only the smaller family is drawn.  Conditioned on it, the other
family's members are i.i.d., so the trial succeeds with probability
1 - (1 - g)^N, where g is the probability that one fresh sequence is typical
with at least one explicit word.  g is a union of events whose individual
probabilities are exact sums over joint types, and it is estimated with the
Karp-Luby union estimator.  The trial outcome is then a Bernoulli(1 - (1 - g)^N)
draw.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammaln

from ..probcore import Alphabet, Pmf, mutual_information
from .typicality import TypicalityTest

EXPLICIT_CELLS = 1 << 24
MAX_FAMILY = 1 << 16
KL_SAMPLES = 64


@dataclass(frozen=True)
class CoveringResult:
    frequency: float
    successes: int
    trials: int
    n: int
    family_sizes: tuple
    mutual_information: float
    method: str

    def to_json(self) -> dict:
        return {
            "schema_version": 1,
            "frequency": self.frequency,
            "successes": self.successes,
            "trials": self.trials,
            "n": self.n,
            "family_sizes": list(self.family_sizes),
            "mutual_information": self.mutual_information,
            "method": self.method,
        }


def _family_size(rate: float, n: int) -> int:
    return max(1, int(round(2.0 ** (n * rate))))


class _UnionEvents:
    """Events A_j = {u : (u, v_j) typical} for u i.i.d. from a marginal.

    Axis 0 of ``table`` is the drawn variable, axis 1 the explicit one.  The
    per-cell typicality constraints split across the symbols of v_j, so
    P(A_j) is a product over symbols b of a multinomial box probability.
    """

    def __init__(self, table: np.ndarray, eps: float, n: int):
        self.p = table
        self.n = n
        self.pu = table.sum(axis=1)
        cells = table.size
        self.lo = np.where(table > 0, np.ceil(n * (table - eps * table - eps / cells) - 1e-9), 0).clip(0)
        self.hi = np.where(table > 0, np.floor(n * (table + eps * table + eps / cells) + 1e-9), 0)
        self._box = lru_cache(maxsize=None)(self._box_uncached)

    def _box_uncached(self, b: int, count: int):
        """Compositions of ``count`` draws inside the box of column b, with log weights."""
        k = self.pu.size
        ranges = [range(int(self.lo[a, b]), int(min(self.hi[a, b], count)) + 1) for a in range(k - 1)]
        comps, logw = [], []
        logp = np.log(np.where(self.pu > 0, self.pu, 1.0))
        for head in itertools.product(*ranges):
            last = count - sum(head)
            if last < self.lo[k - 1, b] or last > self.hi[k - 1, b]:
                continue
            c = np.array(head + (last,))
            if np.any((self.pu == 0) & (c > 0)):
                continue
            lw = gammaln(count + 1) - gammaln(c + 1).sum() + (c * logp).sum()
            comps.append(c)
            logw.append(lw)
        return np.array(comps, dtype=np.int64).reshape(-1, k), np.array(logw)

    def log_prob(self, v: np.ndarray) -> float:
        total = 0.0
        for b in range(self.p.shape[1]):
            comps, logw = self._box(b, int(np.count_nonzero(v == b)))
            if comps.shape[0] == 0:
                return -math.inf
            total += float(np.logaddexp.reduce(logw))
        return total

    def sample(self, v: np.ndarray, rng) -> np.ndarray:
        """u ~ P_U^n conditioned on (u, v) typical."""
        u = np.empty(self.n, dtype=np.int64)
        for b in range(self.p.shape[1]):
            pos = np.flatnonzero(v == b)
            comps, logw = self._box(b, pos.size)
            w = np.exp(logw - logw.max())
            c = comps[rng.choice(len(w), p=w / w.sum())]
            u[rng.permutation(pos)] = np.repeat(np.arange(c.size), c)
        return u


def _draw(p: np.ndarray, size: int, n: int, rng) -> np.ndarray:
    return rng.choice(p.size, size=(size, n), p=p).astype(np.int64)


def _any_typical(test: TypicalityTest, fam_u: np.ndarray, fam_v: np.ndarray) -> bool:
    su, sv = test.strides
    n = fam_u.shape[1]
    rows = max(1, EXPLICIT_CELLS // (fam_v.shape[0] * n))
    for start in range(0, fam_u.shape[0], rows):
        cells = (fam_u[start:start + rows, None, :] * su + fam_v[None, :, :] * sv).reshape(-1, n)
        if test.mask(cells).any():
            return True
    return False


def union_probability(events: _UnionEvents, test: TypicalityTest, fam_v: np.ndarray, rng, samples: int = KL_SAMPLES) -> float:
    """Karp-Luby estimate of P(u typical with some row of fam_v)."""
    logs = np.array([events.log_prob(v) for v in fam_v])
    if not np.isfinite(logs).any():
        return 0.0
    top = logs.max()
    w = np.exp(logs - top)
    s = float(w.sum())
    su, sv = test.strides
    inv = 0.0
    for j in rng.choice(len(w), size=samples, p=w / s):
        u = events.sample(fam_v[j], rng)
        hits = int(test.mask(u[None, :] * su + fam_v * sv).sum())
        inv += 1.0 / max(hits, 1)
    return min(1.0, math.exp(top) * s * inv / samples)


def covering_experiment(joint: Pmf, rate_i: float, rate_j: float, n: int, trials: int, seed, eps: float = 0.1) -> CoveringResult:
    """Frequency with which two independent families contain a typical pair.

    Parameters
    ----------
    joint : Pmf
        Two-axis law; the first axis is the I-family variable.
    rate_i, rate_j : float
        Family exponents in bits/symbol.
    n, trials : int
    seed : int or sequence of int
        Trial t uses the generator seeded by (seed, t).
    eps : float
        Typicality slack.
    """
    if len(joint.names) != 2:
        raise ValueError(f"covering needs a two-axis joint, got axes {list(joint.names)}")
    mi = mutual_information(joint, joint.names[:1], joint.names[1:])
    n_i, n_j = _family_size(rate_i, n), _family_size(rate_j, n)
    table = joint.table
    test = TypicalityTest(joint, eps)
    explicit = n_i * n_j * n <= EXPLICIT_CELLS
    if not explicit and min(n_i, n_j) > MAX_FAMILY:
        raise ValueError(f"both families exceed the desk-scale cap {MAX_FAMILY}")
    # the drawn-only family is the larger one; orient the table as (drawn, explicit)
    swap = n_j > n_i
    events = None
    if not explicit:
        events = _UnionEvents(table.T if swap else table, eps, n)
        ev_test = TypicalityTest(Pmf(joint.axes[::-1], table.T) if swap else joint, eps)
    pu, pv = table.sum(axis=1), table.sum(axis=0)
    base = list(seed) if isinstance(seed, (list, tuple)) else [int(seed)]
    wins = 0
    for t in range(trials):
        rng = np.random.default_rng([*base, t])
        if explicit:
            wins += _any_typical(test, _draw(pu, n_i, n, rng), _draw(pv, n_j, n, rng))
            continue
        small = _draw(pu, n_i, n, rng) if swap else _draw(pv, n_j, n, rng)
        big = n_j if swap else n_i
        g = union_probability(events, ev_test, small, rng)
        p_win = -math.expm1(big * math.log1p(-g)) if g < 1.0 else 1.0
        wins += bool(rng.random() < p_win)
    return CoveringResult(
        frequency=wins / trials if trials else 0.0,
        successes=wins,
        trials=trials,
        n=n,
        family_sizes=(n_i, n_j),
        mutual_information=mi,
        method="explicit" if explicit else "union-estimate",
    )


def doubly_symmetric_binary(p_flip: float) -> Pmf:
    t = np.array([[1 - p_flip, p_flip], [p_flip, 1 - p_flip]]) / 2
    return Pmf([Alphabet("u", 2), Alphabet("v", 2)], t)
