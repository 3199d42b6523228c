"""Upper bound on player 4's min-max level in a four-player game with signals.

Players 1-3 try to hold player 4 down.  One of them acts as an encoder whose
actions, observed by the other two through the signal structure, carry the
coordination needed to play a correlated profile that player 4 cannot
predict.  A distribution q over (a1, a2, a3) is achievable for encoder e
when some auxiliary law P(u, u' | a) satisfies three entropy inequalities.
The bound is

    nu = min over Q in co(Q1 u Q2 u Q3 u X123) of max_a4 E_Q u4(a, a4).

Relabeling for encoders: encoder e addresses receivers (r, r'), the other two
players in increasing order, so encoder 1 -> (2, 3), encoder 2 -> (1, 3),
encoder 3 -> (1, 2).  Player 4's signal s4 plays the eavesdropper's role.
"""

from __future__ import annotations

import itertools
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.optimize import linprog

from .probcore import Alphabet, ConditionalPmf, Pmf, ValidationError, entropy_of_table

FEASIBILITY_TOL = 1e-6
DEDUP_L1 = 1e-6
AUX_CAP = 8
RECEIVERS = {1: (2, 3), 2: (1, 3), 3: (1, 2)}
ACTION_AXES = ("a1", "a2", "a3")
SIGNAL_AXES = ("s1", "s2", "s3", "s4")


@dataclass(frozen=True)
class StageGame:
    """Action counts (n1..n4), u4 indexed (a1, a2, a3, a4), signals T(s1..s4 | a1, a2, a3)."""

    actions: tuple
    u4: np.ndarray
    signals: ConditionalPmf
    name: str = ""

    def __post_init__(self):
        acts = tuple(int(a) for a in self.actions)
        if len(acts) != 4 or min(acts) < 1:
            raise ValidationError(f"actions must be four positive counts, got {list(self.actions)}")
        object.__setattr__(self, "actions", acts)
        u = np.asarray(self.u4, dtype=float)
        if u.shape != acts:
            raise ValidationError(f"u4 shape {u.shape} does not match actions {acts}")
        if not np.all(np.isfinite(u)):
            raise ValidationError("u4 has non-finite entries")
        object.__setattr__(self, "u4", u)
        if tuple(self.signals.given_names) != ACTION_AXES:
            raise ValidationError(f"signal inputs must be {list(ACTION_AXES)} (no a4), got {list(self.signals.given_names)}")
        if tuple(self.signals.output_names) != SIGNAL_AXES:
            raise ValidationError(f"signal outputs must be {list(SIGNAL_AXES)}, got {list(self.signals.output_names)}")
        for ax, n in zip(self.signals.given_axes, acts[:3]):
            if ax.size != n:
                raise ValidationError(f"axis {ax.name!r}: size {ax.size} in signals, {n} in actions")

    @property
    def profile_shape(self) -> tuple:
        return self.actions[:3]

    @property
    def profiles(self) -> int:
        return int(np.prod(self.actions[:3]))

    def payoff_matrix(self) -> np.ndarray:
        """u4 as (profiles, |A4|)."""
        return self.u4.reshape(self.profiles, self.actions[3])

    def signal_marginal(self, k: int) -> np.ndarray:
        """T(s_k | a) as (profiles, |S_k|)."""
        t = self.signals.table
        keep = 3 + (k - 1)
        drop = tuple(i for i in range(3, 7) if i != keep)
        return t.sum(axis=drop).reshape(self.profiles, -1)

    def to_json(self) -> dict:
        return {
            "schema_version": 1,
            "name": self.name,
            "actions": list(self.actions),
            "u4": self.u4.ravel().tolist(),
            "signals": self.signals.to_json(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "StageGame":
        for key in ("actions", "u4", "signals"):
            if key not in obj:
                raise ValidationError(f"game json is missing {key!r}")
        acts = tuple(int(a) for a in obj["actions"])
        u = np.asarray(obj["u4"], dtype=float)
        if u.size != int(np.prod(acts)):
            raise ValidationError(f"u4 has {u.size} entries, actions need {int(np.prod(acts))}")
        return cls(acts, u.reshape(acts), ConditionalPmf.from_json(obj["signals"]), obj.get("name", ""))


def make_game(actions, u4, signal_table, name: str = "") -> StageGame:
    """Game from a u4 array and signal array indexed (a1, a2, a3, s1, s2, s3, s4)."""
    t = np.asarray(signal_table, dtype=float)
    given = [Alphabet(n, s) for n, s in zip(ACTION_AXES, actions[:3])]
    out = [Alphabet(n, s) for n, s in zip(SIGNAL_AXES, t.shape[3:])]
    return StageGame(tuple(actions), np.asarray(u4, dtype=float), ConditionalPmf(given, out, t), name)


def save_game(game: StageGame, path) -> None:
    Path(path).write_text(json.dumps(game.to_json(), sort_keys=True, indent=1) + "\n")


def load_game(path) -> StageGame:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: malformed JSON ({exc})") from exc
    return StageGame.from_json(obj)


@dataclass(frozen=True)
class CandidateDistribution:
    q: Pmf
    source: str = ""

    @property
    def vector(self) -> np.ndarray:
        return self.q.table.ravel()

    @classmethod
    def from_vector(cls, game: StageGame, v, source: str = "") -> "CandidateDistribution":
        axes = [Alphabet(n, s) for n, s in zip(ACTION_AXES, game.profile_shape)]
        return cls(Pmf(axes, np.asarray(v, dtype=float).reshape(game.profile_shape)), source)


def expected_u4(game: StageGame, q, a4: int) -> float:
    """sum_a q(a) u4(a, a4)."""
    v = q.vector if isinstance(q, CandidateDistribution) else np.asarray(q, dtype=float).ravel()
    return float(v @ game.payoff_matrix()[:, a4])


# ---------------------------------------------------------------- feasibility


def _mi2(t: np.ndarray) -> float:
    """I between the row and column groups of a 2-D joint table."""
    return entropy_of_table(t.sum(axis=1)) + entropy_of_table(t.sum(axis=0)) - entropy_of_table(t)


class _EncoderView:
    """Precomputed index maps for one encoder's constraint evaluation."""

    def __init__(self, game: StageGame, encoder: int):
        if encoder not in RECEIVERS:
            raise ValueError(f"encoder must be 1, 2 or 3, got {encoder}")
        self.encoder = encoder
        self.r, self.rp = RECEIVERS[encoder]
        grid = np.indices(game.profile_shape).reshape(3, -1)
        self.a_r = grid[self.r - 1]
        self.a_rp = grid[self.rp - 1]
        self.n_r = game.actions[self.r - 1]
        self.n_rp = game.actions[self.rp - 1]
        self.pair = self.a_r * self.n_rp + self.a_rp
        self.t_r = game.signal_marginal(self.r)
        self.t_rp = game.signal_marginal(self.rp)
        self.t_4 = game.signal_marginal(4)

    def _group(self, w: np.ndarray, labels: np.ndarray, size: int) -> np.ndarray:
        """Sum rows of w (profiles, ...) by label."""
        out = np.zeros((size,) + w.shape[1:])
        np.add.at(out, labels, w)
        return out

    def terms(self, q: np.ndarray, cond: np.ndarray) -> dict:
        """Entropy/MI terms for q (profiles,) and P(u, u' | a) (profiles, k, k')."""
        j = q[:, None, None] * cond
        ju, jv = j.sum(axis=2), j.sum(axis=1)
        k, kp = cond.shape[1:]
        t = {
            "H_r": entropy_of_table(self._group(q, self.a_r, self.n_r)),
            "H_rp": entropy_of_table(self._group(q, self.a_rp, self.n_rp)),
        }
        for name, ja, tr, lab, n in (("u", ju, self.t_r, self.a_r, self.n_r), ("v", jv, self.t_rp, self.a_rp, self.n_rp)):
            # I(U; S_r, A_r): joint over (a_r, s_r) x u
            m = self._group(ja[:, :, None] * tr[:, None, :], lab, n)  # (n, k, |S|)
            t[f"I_{name}_sa"] = _mi2(np.moveaxis(m, 1, 2).reshape(-1, ja.shape[1]))
            t[f"I_{name}_s4"] = _mi2(ja.T @ self.t_4)
            t[f"I_{name}_aa"] = _mi2(self._group(ja, self.pair, self.n_r * self.n_rp))
        juv = j.reshape(len(q), k * kp)
        t["I_u_v"] = _mi2(j.sum(axis=0))
        t["I_uv_s4"] = _mi2(juv.T @ self.t_4)
        t["I_uv_aa"] = _mi2(self._group(juv, self.pair, self.n_r * self.n_rp))
        return t

    def slack(self, q: np.ndarray, cond: np.ndarray) -> tuple[float, tuple]:
        t = self.terms(q, cond)
        c1 = t["I_u_sa"] - max(t["I_u_s4"], t["I_u_aa"]) - t["H_r"]
        c2 = t["I_v_sa"] - max(t["I_v_s4"], t["I_v_aa"]) - t["H_rp"]
        c12 = (
            t["I_u_sa"] + t["I_v_sa"] - t["I_u_v"] - max(t["I_uv_s4"], t["I_uv_aa"]) - t["H_r"] - t["H_rp"]
        )
        return min(c1, c2, c12), (c1, c2, c12)


@dataclass
class FeasibilityWitness:
    """Auxiliary law for one encoder; q~ = q(a) P(u, u' | a) T(s | a)."""

    encoder: int
    aux_sizes: tuple
    q: np.ndarray          # (profiles,)
    cond: np.ndarray       # (profiles, k, k')
    slack: float
    constraint_slacks: tuple = ()

    def q_tilde(self, game: StageGame) -> Pmf:
        """Full joint over (u, u', a1, a2, a3, s1, s2, s3, s4)."""
        k, kp = self.aux_sizes
        j = (self.q[:, None, None] * self.cond).reshape(game.profile_shape + (k, kp))
        full = np.einsum("abcuv,abcwxyz->uvabcwxyz", j, game.signals.table)
        r, rp = RECEIVERS[self.encoder]
        axes = [Alphabet(f"u{r}", k), Alphabet(f"u{rp}", kp)]
        axes += list(game.signals.given_axes) + list(game.signals.output_axes)
        return Pmf(axes, full)

    def to_json(self) -> dict:
        return {
            "encoder": self.encoder,
            "aux_sizes": list(self.aux_sizes),
            "slack": self.slack,
            "constraint_slacks": list(self.constraint_slacks),
            "cond": self.cond.ravel().tolist(),
        }


@dataclass(frozen=True)
class NotFound:
    encoder: int
    best_slack: float


def entropy_constraints_satisfied(game: StageGame, w: FeasibilityWitness) -> float:
    """Minimum over the three entropy inequalities of (right side - left side), bits."""
    return _EncoderView(game, w.encoder).slack(w.q, w.cond)[0]


def default_aux_sizes(game: StageGame, encoder: int, cap: int = AUX_CAP) -> tuple:
    """|U_r| = |A_r| |S_r| per receiver, capped."""
    out = []
    for r in RECEIVERS[encoder]:
        s_size = game.signals.output_axes[r - 1].size
        out.append(min(cap, game.actions[r - 1] * s_size))
    return tuple(out)


def _softmax(logits: np.ndarray) -> np.ndarray:
    flat = logits.reshape(logits.shape[0], -1)
    e = np.exp(flat - flat.max(axis=1, keepdims=True))
    return (e / e.sum(axis=1, keepdims=True)).reshape(logits.shape)


def check_membership(
    game: StageGame,
    q: CandidateDistribution,
    encoder: int,
    budget: int = 300,
    seed=0,
    *,
    aux_sizes: tuple | None = None,
    tol: float = FEASIBILITY_TOL,
):
    """Search P(u, u' | a) maximizing the minimum constraint slack.

    Starts from the constant auxiliary law, then random restarts each
    followed by a (1+1) evolution strategy on the logits.  ``budget`` caps
    the number of slack evaluations.  Returns the best witness when its
    slack is at least ``-tol``, else NotFound with the best slack.
    """
    view = _EncoderView(game, encoder)
    k, kp = aux_sizes or default_aux_sizes(game, encoder)
    qv = q.vector
    rng = np.random.default_rng(seed)
    n = len(qv)

    const = np.zeros((n, k, kp))
    const[:, 0, 0] = 1.0
    best_c = const
    best_s, best_parts = view.slack(qv, const)
    used = 1
    restarts = max(1, min(8, budget // 40))
    per = max(1, (budget - used) // restarts)
    for _ in range(restarts):
        if used >= budget:
            break
        logits = 3.0 * rng.standard_normal((n, k, kp))
        cond = _softmax(logits)
        s, parts = view.slack(qv, cond)
        used += 1
        sigma = 1.0
        for _ in range(per - 1):
            if used >= budget:
                break
            cand = logits.copy()
            i = rng.integers(n)
            cand[i] += sigma * rng.standard_normal((k, kp))
            c2 = _softmax(cand)
            s2, p2 = view.slack(qv, c2)
            used += 1
            if s2 > s:
                logits, cond, s, parts = cand, c2, s2, p2
                sigma = min(sigma * 1.5, 8.0)
            else:
                sigma = max(sigma * 0.9, 1e-3)
        if s > best_s:
            best_s, best_c, best_parts = s, cond, parts
    if best_s >= -tol:
        return FeasibilityWitness(encoder, (k, kp), qv, best_c, float(best_s), tuple(float(p) for p in best_parts))
    return NotFound(encoder, float(best_s))


# ---------------------------------------------------------------- candidates


def _simplex_grid(n: int, res: int) -> np.ndarray:
    """All points of the n-simplex with coordinates in multiples of 1/res."""
    pts = [c for c in itertools.product(range(res + 1), repeat=n) if sum(c) == res]
    return np.array(pts, dtype=float) / res


def product_grid(game: StageGame, res: int | None = None) -> np.ndarray:
    """Product distributions whose factors lie on a simplex grid; (m, profiles)."""
    factors = []
    for n in game.profile_shape:
        r = res if res is not None else max(1, 10 // max(1, n - 1))
        factors.append(_simplex_grid(n, r))
    out = []
    for f1, f2, f3 in itertools.product(*factors):
        out.append(np.einsum("i,j,k->ijk", f1, f2, f3).ravel())
    return np.array(out)


def pure_profiles(game: StageGame) -> np.ndarray:
    return np.eye(game.profiles)


@dataclass
class CandidateSet:
    candidates: list
    memberships: list = field(default_factory=list)  # (candidate index, witness)
    tested: int = 0

    def vectors(self) -> np.ndarray:
        return np.array([c.vector for c in self.candidates])


def _dedup(cands: list) -> list:
    out: list = []
    for c in cands:
        if all(np.abs(c.vector - o.vector).sum() > DEDUP_L1 for o in out):
            out.append(c)
    return out


def build_Q123(game: StageGame, budget: int = 32, seed=0, *, membership_budget: int = 300, workers: int = 1) -> CandidateSet:
    """Product distributions plus sampled correlated q that pass membership.

    Every pure profile is a product distribution, so the candidate hull is
    always the whole simplex over (a1, a2, a3).  The correlated samples are
    still tested and recorded; they matter for the single-candidate view.
    """
    base = list(pure_profiles(game))
    base.append(np.full(game.profiles, 1.0 / game.profiles))
    cands = [CandidateDistribution.from_vector(game, v, "product") for v in base]
    rng = np.random.default_rng([*_seed_words(seed), 0])
    for _ in range(budget):
        fs = [rng.dirichlet(np.ones(n)) for n in game.profile_shape]
        cands.append(CandidateDistribution.from_vector(game, np.einsum("i,j,k->ijk", *fs).ravel(), "product"))
    samples = [rng.dirichlet(np.full(game.profiles, 0.3)) for _ in range(budget)]

    def test(idx):
        v = samples[idx]
        cd = CandidateDistribution.from_vector(game, v, "correlated")
        for e in (1, 2, 3):
            res = check_membership(game, cd, e, membership_budget, [*_seed_words(seed), 1, idx, e])
            if isinstance(res, FeasibilityWitness):
                return cd, res
        return None

    with ThreadPoolExecutor(max_workers=max(1, workers)) as ex:
        found = list(ex.map(test, range(len(samples))))
    members = []
    for item in found:
        if item is not None:
            cd, wit = item
            cands.append(CandidateDistribution.from_vector(game, cd.vector, f"encoder{wit.encoder}"))
            members.append(wit)
    cands = _dedup(cands)
    memberships = []
    for wit in members:
        for i, c in enumerate(cands):
            if np.abs(c.vector - wit.q).sum() <= DEDUP_L1:
                memberships.append((i, wit))
                break
    return CandidateSet(cands, memberships, len(samples))


def _seed_words(seed) -> list:
    return list(seed) if isinstance(seed, (list, tuple)) else [int(seed)]


# ---------------------------------------------------------------- minimax LP


@dataclass
class MinmaxResult:
    nu: float
    optimal_weights: np.ndarray
    support: list
    oracle_gap: float
    duals: np.ndarray
    slackness_residual: float
    mixed: np.ndarray

    def to_json(self) -> dict:
        keep = [i for i, w in enumerate(self.optimal_weights) if w > 1e-12]
        return {
            "schema_version": 1,
            "nu": self.nu,
            "weights": [float(self.optimal_weights[i]) for i in keep],
            "candidates": [
                {"q": self.support[i].vector.tolist(), "source": self.support[i].source} for i in keep
            ],
            "diagnostics": {
                "oracle_gap": self.oracle_gap,
                "duals_a4": self.duals.tolist(),
                "complementary_slackness_residual": self.slackness_residual,
                "candidate_count": len(self.support),
                "mixed_distribution": self.mixed.tolist(),
            },
        }


def minmax_upper_bound(game: StageGame, candidates, *, hull: bool = True) -> MinmaxResult:
    """min over the candidate hull of max_a4 expected u4.

    Solves  min t  s.t.  sum_j w_j E_{Q_j}[u4(., a4)] <= t  for all a4,
    w in the simplex, with scipy's HiGHS.  ``hull=False`` restricts to the
    best single candidate (no time-sharing).
    """
    cands = candidates.candidates if isinstance(candidates, CandidateSet) else list(candidates)
    if not cands:
        raise ValueError("candidate list is empty")
    v = np.array([c.vector for c in cands])
    m = v @ game.payoff_matrix()  # (J, |A4|)
    n_j, n_a = m.shape
    if not hull:
        vals = m.max(axis=1)
        j = int(np.argmin(vals))
        w = np.zeros(n_j)
        w[j] = 1.0
        y = np.zeros(n_a)
        y[int(np.argmax(m[j]))] = 1.0
        return MinmaxResult(float(vals[j]), w, cands, 0.0, y, 0.0, v[j])
    c = np.zeros(n_j + 1)
    c[-1] = 1.0
    a_ub = np.hstack([m.T, -np.ones((n_a, 1))])
    a_eq = np.hstack([np.ones((1, n_j)), np.zeros((1, 1))])
    bounds = [(0, None)] * n_j + [(None, None)]
    res = linprog(c, A_ub=a_ub, b_ub=np.zeros(n_a), A_eq=a_eq, b_eq=[1.0], bounds=bounds, method="highs")
    if res.status != 0:
        raise RuntimeError(f"minimax LP failed: {res.message}")
    w = np.clip(res.x[:n_j], 0.0, None)
    w /= w.sum()
    mixed = w @ v
    achieved = w @ m
    nu = float(res.x[-1])
    y = -np.asarray(res.ineqlin.marginals)
    # y is player 4's optimal mix; every used candidate must earn nu against it
    used = w > 1e-9
    resid = float(np.abs(m[used] @ y - nu).max(initial=0.0)) if y.sum() > 0 else 0.0
    gap = float(achieved.max() - nu)
    return MinmaxResult(nu, w, cands, gap, y, resid, mixed)


def full_correlation_oracle(game: StageGame) -> float:
    """min over all q in the simplex of max_a4 E_q u4, via its dual.

    max over y in Delta(A4) of min over profiles a of sum_a4 y(a4) u4(a, a4).
    """
    m = game.payoff_matrix()
    n_p, n_a = m.shape
    c = np.zeros(n_a + 1)
    c[-1] = -1.0
    a_ub = np.hstack([-m, np.ones((n_p, 1))])
    a_eq = np.hstack([np.ones((1, n_a)), np.zeros((1, 1))])
    res = linprog(c, A_ub=a_ub, b_ub=np.zeros(n_p), A_eq=a_eq, b_eq=[1.0],
                  bounds=[(0, None)] * n_a + [(None, None)], method="highs")
    if res.status != 0:
        raise RuntimeError(f"oracle LP failed: {res.message}")
    return float(-res.fun)


def product_oracle(game: StageGame, res: int | None = None) -> float:
    """Grid search of min over product distributions of max_a4 E u4."""
    v = product_grid(game, res)
    return float((v @ game.payoff_matrix()).max(axis=1).min())


@dataclass
class GameBound:
    result: MinmaxResult
    candidate_set: CandidateSet
    single_candidate_nu: float

    def to_json(self) -> dict:
        out = self.result.to_json()
        out["diagnostics"]["single_candidate_nu"] = self.single_candidate_nu
        out["diagnostics"]["correlated_tested"] = self.candidate_set.tested
        out["diagnostics"]["memberships"] = [
            {"candidate": i, "witness": w.to_json()} for i, w in self.candidate_set.memberships
        ]
        return out


def game_upper_bound(game: StageGame, budget: int = 32, seed=0, *, workers: int = 1, membership_budget: int = 300) -> GameBound:
    cs = build_Q123(game, budget, seed, workers=workers, membership_budget=membership_budget)
    res = minmax_upper_bound(game, cs)
    single = minmax_upper_bound(game, cs, hull=False).nu
    return GameBound(res, cs, single)


# ---------------------------------------------------------------- shipped games


def _point_signal(profile_to_signals, actions, sizes) -> np.ndarray:
    t = np.zeros(tuple(actions[:3]) + tuple(sizes))
    for a in itertools.product(*(range(n) for n in actions[:3])):
        t[a + tuple(profile_to_signals(a))] = 1.0
    return t


def coordination_payoff() -> np.ndarray:
    """u4 over binary (a1, a2, a3, a4): player 4 guesses whether a1 == a2.

    Guessing "equal" (a4 = 0) pays 1 on (0, 0) only; guessing "different"
    (a4 = 1) pays 0.6 on (0, 1) and (1, 0) and 1 on (1, 1).  Correlating
    a1 and a2 lowers player 4's best reply below any product distribution.
    """
    u = np.zeros((2, 2, 2, 2))
    for a1, a2, a3 in itertools.product(range(2), repeat=3):
        u[a1, a2, a3, 0] = 1.0 if (a1, a2) == (0, 0) else 0.0
        u[a1, a2, a3, 1] = 1.0 if (a1, a2) == (1, 1) else (0.6 if a1 != a2 else 0.0)
    return u


def perfect_monitoring_game() -> StageGame:
    """Players 1-3 see the whole profile, player 4 sees nothing."""
    acts = (2, 2, 2, 2)
    idx = lambda a: a[0] * 4 + a[1] * 2 + a[2]  # noqa: E731
    t = _point_signal(lambda a: (idx(a), idx(a), idx(a), 0), acts, (8, 8, 8, 1))
    return make_game(acts, coordination_payoff(), t, "perfect_monitoring")


def blind_game() -> StageGame:
    """All signals constant."""
    acts = (2, 2, 2, 2)
    return make_game(acts, coordination_payoff(), np.ones((2, 2, 2, 1, 1, 1, 1)), "blind")


def noisy_game(flip: float = 0.1, eve_flip: float = 0.3) -> StageGame:
    """Each of players 1-3 sees the others' actions through BSC(flip); player 4 sees a1 through BSC(eve_flip)."""
    acts = (2, 2, 2, 2)
    t = np.zeros((2, 2, 2, 4, 4, 4, 2))
    bsc = lambda x, p: np.array([1 - p, p]) if x == 0 else np.array([p, 1 - p])  # noqa: E731
    for a1, a2, a3 in itertools.product(range(2), repeat=3):
        s1 = np.kron(bsc(a2, flip), bsc(a3, flip))
        s2 = np.kron(bsc(a1, flip), bsc(a3, flip))
        s3 = np.kron(bsc(a1, flip), bsc(a2, flip))
        s4 = bsc(a1, eve_flip)
        t[a1, a2, a3] = np.einsum("i,j,k,l->ijkl", s1, s2, s3, s4)
    return make_game(acts, coordination_payoff(), t, "noisy")


def constant_game(c: float = 3.0) -> StageGame:
    acts = (2, 2, 2, 2)
    return make_game(acts, np.full(acts, float(c)), np.ones((2, 2, 2, 1, 1, 1, 1)), "constant")


GAMES = {
    "perfect_monitoring": perfect_monitoring_game,
    "blind": blind_game,
    "noisy": noisy_game,
    "constant": constant_game,
}
