"""Random binning codebooks, typical-set encoder/decoders and Monte Carlo runs."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..channel import AuxPolicy, ChannelSpec, FullJoint, MemorylessSampler, build_full_joint
from ..probcore import condition
from .rates import BinningRates, UserRates
from .typicality import TypicalityParams, TypicalityTest

MAX_WORDS = 1 << 21
_CHUNK_CELLS = 1 << 22


def _count(rate: float, n: int) -> int:
    return max(1, int(round(2.0 ** (n * rate))))


@dataclass(frozen=True)
class UserCodebook:
    words: np.ndarray     # (size, n), row index = bin*per_bin + subbin*subbin_size + offset
    bins: int
    subbins: int
    subbin_size: int

    @property
    def per_bin(self) -> int:
        return self.subbins * self.subbin_size

    @property
    def size(self) -> int:
        return self.words.shape[0]

    def bin_of(self, index: int) -> int:
        return int(index) // self.per_bin

    def subbin_of(self, index: int) -> int:
        return (int(index) % self.per_bin) // self.subbin_size

    def bin_words(self, m: int) -> np.ndarray:
        return self.words[m * self.per_bin:(m + 1) * self.per_bin]

    def effective_rates(self, n: int) -> dict:
        return {
            "R": math.log2(self.bins) / n,
            "R_U": math.log2(self.per_bin) / n,
            "R_W": math.log2(self.subbins) / n,
            "R_Z": math.log2(self.subbin_size) / n,
            "R_Y": math.log2(self.size) / n,
        }


@dataclass(frozen=True)
class Codebook:
    users: tuple
    n: int
    seed: object

    def __getitem__(self, k: int) -> UserCodebook:
        return self.users[k - 1]


class CodebookTooLarge(ValueError):
    pass


def generate_codebook(j: FullJoint, rates: BinningRates, n: int, seed, max_words: int = MAX_WORDS) -> Codebook:
    """Draw both codebooks i.i.d. from the auxiliary marginals.

    Sizes 2^{nR} are rounded to the nearest integer >= 1.  Codewords are
    i.i.d., so laying bins out contiguously is a uniformly random binning.
    """
    rng = np.random.default_rng(seed)
    users = []
    for k in (1, 2):
        r: UserRates = rates[k]
        bins, sub, size = _count(r.message, n), _count(r.subbin_count, n), _count(r.subbin_size, n)
        total = bins * sub * size
        if total > max_words:
            raise CodebookTooLarge(f"user {k}: {total} codewords exceed the desk-scale cap {max_words}")
        pu = j.joint.marginal((f"u{k}",)).table
        words = rng.choice(pu.size, size=(total, n), p=pu).astype(np.uint8)
        users.append(UserCodebook(words, bins, sub, size))
    return Codebook(tuple(users), n, seed)


@dataclass(frozen=True)
class EncodeFailure:
    """No pair in the message bins is jointly typical with the states."""


@dataclass(frozen=True)
class Encoded:
    index1: int
    index2: int
    x: np.ndarray


@dataclass(frozen=True)
class DecodeFailure:
    candidates: int


class Coder:
    """Encoder/decoder machinery bound to one codebook and one model law."""

    def __init__(self, cb: Codebook, j: FullJoint, tp: TypicalityParams):
        if tp.n != cb.n:
            raise ValueError(f"typicality blocklength {tp.n} != codebook blocklength {cb.n}")
        self.cb, self.j, self.tp = cb, j, tp
        self.enc_test = TypicalityTest.over(j, ("u1", "u2", "s1", "s2"), tp.epsilon)
        self.dec_test = {
            k: TypicalityTest.over(j, (f"u{k}", f"y{k}", f"s{k}"), tp.epsilon) for k in (1, 2)
        }
        cx = condition(j.joint.marginal(("u1", "u2", "x", "s1", "s2")), ("u1", "u2", "s1", "s2"))
        self.x_cdf = np.cumsum(cx.table, axis=-1)

    def select_pair(self, m1: int, m2: int, s1, s2, r1: int, r2: int):
        """First typical pair scanning bin m1 from offset r1 and bin m2 from r2.

        Returns global codeword indices or EncodeFailure.
        """
        t = self.enc_test
        b1 = np.roll(self.cb[1].bin_words(m1), -r1, axis=0).astype(np.int64)
        b2 = np.roll(self.cb[2].bin_words(m2), -r2, axis=0).astype(np.int64)
        base = np.asarray(s1, dtype=np.int64) * t.stride("s1") + np.asarray(s2, dtype=np.int64) * t.stride("s2")
        part2 = b2 * t.stride("u2") + base
        n = b1.shape[1]
        rows = max(1, _CHUNK_CELLS // (part2.shape[0] * n))
        for start in range(0, b1.shape[0], rows):
            blk = b1[start:start + rows] * t.stride("u1")
            cells = (blk[:, None, :] + part2[None, :, :]).reshape(-1, n)
            hit = np.flatnonzero(t.mask(cells))
            if hit.size:
                i, k = divmod(int(hit[0]), part2.shape[0])
                i1 = (start + i + r1) % b1.shape[0] + m1 * self.cb[1].per_bin
                i2 = (k + r2) % b2.shape[0] + m2 * self.cb[2].per_bin
                return i1, i2
        return EncodeFailure()

    def encode(self, m1: int, m2: int, s1, s2, rng):
        """Stochastic encoder: uniform scan offsets inside each bin, then x^n ~ Q(x|u1,u2,s1,s2)."""
        r1 = int(rng.integers(self.cb[1].per_bin))
        r2 = int(rng.integers(self.cb[2].per_bin))
        sel = self.select_pair(m1, m2, s1, s2, r1, r2)
        if isinstance(sel, EncodeFailure):
            return sel
        i1, i2 = sel
        u1 = self.cb[1].words[i1].astype(np.int64)
        u2 = self.cb[2].words[i2].astype(np.int64)
        cdf = self.x_cdf[u1, u2, np.asarray(s1), np.asarray(s2)]
        x = np.minimum((rng.random(len(u1))[:, None] >= cdf).sum(axis=1), cdf.shape[1] - 1)
        return Encoded(i1, i2, x.astype(np.int64))

    def decode(self, k: int, y, s):
        """Bin of the unique codeword jointly typical with (y_k^n, s_k^n)."""
        ucb = self.cb[k]
        if ucb.bins == 1:
            return 0
        t = self.dec_test[k]
        base = np.asarray(y, dtype=np.int64) * t.stride(f"y{k}") + np.asarray(s, dtype=np.int64) * t.stride(f"s{k}")
        n = ucb.words.shape[1]
        rows = max(1, _CHUNK_CELLS // n)
        found: list = []
        for start in range(0, ucb.size, rows):
            cells = ucb.words[start:start + rows].astype(np.int64) * t.stride(f"u{k}") + base
            hit = np.flatnonzero(t.mask(cells))
            found.extend((start + hit[:2]).tolist())
            if len(found) > 1:
                return DecodeFailure(len(found))
        if len(found) != 1:
            return DecodeFailure(len(found))
        return ucb.bin_of(found[0])


def encode(cb: Codebook, m1: int, m2: int, s1, s2, j: FullJoint, tp: TypicalityParams, rng):
    return Coder(cb, j, tp).encode(m1, m2, s1, s2, rng)


def decode(cb: Codebook, user: int, y, s, j: FullJoint, tp: TypicalityParams):
    return Coder(cb, j, tp).decode(user, y, s)


@dataclass
class SimReport:
    trials: int
    seed: object
    n: int
    epsilon: float
    encode_failure_rate: float | None = None
    decode_error_rate_1: float | None = None
    decode_error_rate_2: float | None = None
    joint_error: float | None = None
    leakage_bits_per_symbol: float | None = None
    nominal_rates: dict = field(default_factory=dict)
    effective_rates: dict = field(default_factory=dict)
    rounding_error: dict = field(default_factory=dict)
    counts: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "schema_version": 1,
            "trials": self.trials,
            "seed": self.seed,
            "n": self.n,
            "epsilon": self.epsilon,
            "encode_failure_rate": self.encode_failure_rate,
            "decode_error_rate_1": self.decode_error_rate_1,
            "decode_error_rate_2": self.decode_error_rate_2,
            "joint_error": self.joint_error,
            "leakage_bits_per_symbol": self.leakage_bits_per_symbol,
            "nominal_rates": self.nominal_rates,
            "effective_rates": self.effective_rates,
            "rounding_error": self.rounding_error,
            "counts": self.counts,
        }


def _run_trials(coder: Coder, spec: ChannelSpec, seed, trial_ids) -> np.ndarray:
    counts = np.zeros(4, dtype=np.int64)  # encode fail, err1, err2, joint
    cb = coder.cb
    for t in trial_ids:
        rng = np.random.default_rng([*_seed_words(seed), 1, t])
        sampler = MemorylessSampler(spec, cb.n, rng)
        m1 = int(rng.integers(cb[1].bins))
        m2 = int(rng.integers(cb[2].bins))
        s1, s2 = sampler.draw_states()
        enc = coder.encode(m1, m2, s1, s2, rng)
        failed = isinstance(enc, EncodeFailure)
        x = np.zeros(cb.n, dtype=np.int64) if failed else enc.x
        y1, y2, _ = sampler.transmit(x, s1, s2)
        errs = []
        for k, m, y, s in ((1, m1, y1, s1), (2, m2, y2, s2)):
            out = coder.decode(k, y, s)
            wrong = isinstance(out, DecodeFailure) or out != m
            errs.append(wrong or (failed and cb[k].bins > 1))
        counts += np.array([failed, errs[0], errs[1], errs[0] or errs[1]], dtype=np.int64)
    return counts


def _seed_words(seed) -> list:
    return list(seed) if isinstance(seed, (list, tuple)) else [int(seed)]


def simulate(
    spec: ChannelSpec,
    pol: AuxPolicy,
    rates: BinningRates,
    tp: TypicalityParams,
    trials: int,
    seed,
    *,
    workers: int = 1,
    max_words: int = MAX_WORDS,
) -> SimReport:
    """Full encode -> channel -> decode pipeline with uniform messages.

    On an encoding failure the all-zero input is sent and every user with
    more than one message counts the trial as an error.
    """
    j = build_full_joint(spec, pol)
    cb = generate_codebook(j, rates, tp.n, [*_seed_words(seed), 0], max_words)
    report = SimReport(trials=trials, seed=seed, n=tp.n, epsilon=tp.epsilon)
    report.nominal_rates = rates.to_json()
    report.effective_rates = {f"user{k}": cb[k].effective_rates(tp.n) for k in (1, 2)}
    report.rounding_error = {
        f"user{k}": {key: report.effective_rates[f"user{k}"][key] - rates[k].to_json()[key] for key in ("R", "R_U", "R_W", "R_Z", "R_Y")}
        for k in (1, 2)
    }
    if trials <= 0:
        return report
    coder = Coder(cb, j, tp)
    parts = [range(i, trials, max(1, workers)) for i in range(max(1, workers))]
    with ThreadPoolExecutor(max_workers=max(1, workers)) as ex:
        counts = sum(ex.map(lambda ids: _run_trials(coder, spec, seed, ids), parts))
    report.counts = dict(zip(("encode_failures", "errors_1", "errors_2", "joint_errors"), map(int, counts)))
    report.encode_failure_rate = counts[0] / trials
    report.decode_error_rate_1 = counts[1] / trials
    report.decode_error_rate_2 = counts[2] / trials
    report.joint_error = counts[3] / trials
    return report
