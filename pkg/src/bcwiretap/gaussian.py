"""Gaussian broadcast wiretap channel with asymmetric state knowledge.

Model (all zero mean)::

    Y1 = X + S2 + W1,   Y2 = X + S1 + W2,   Z = X + S1 + S2 + W3
    X = X1 + X2,  Var X1 = beta P,  Var X2 = (1 - beta) P
    U1 = X1 + alpha1 S2,   U2 = X2 + alpha2 (S1 + X1)

Every variable is a linear image of the seven independent-or-jointly-Gaussian
base variables (X1, X2, S1, S2, W1, W2, W3), so all mutual informations are
log-determinant ratios of sub-blocks of one covariance matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .region import RateBounds, RegionPolygon, convex_hull, pentagon_vertices

BASE = ("X1", "X2", "S1", "S2", "W1", "W2", "W3")
DERIVED = ("U1", "U2", "X", "Y1", "Y2", "Z")
JITTER = 1e-12
PSD_TOL = 1e-9
SYM_TOL = 1e-12

DEFAULT_P, DEFAULT_N1, DEFAULT_N2, DEFAULT_N3 = 1.0, 1.5, 1.0, 2.0


class GaussianParamError(ValueError):
    pass


@dataclass(frozen=True)
class GaussianParams:
    P: float = DEFAULT_P
    N1: float = DEFAULT_N1
    N2: float = DEFAULT_N2
    N3: float = DEFAULT_N3
    Q1: float = 0.0
    Q2: float = 0.0
    rho: float = 0.0

    def __post_init__(self):
        for name in ("P", "N1", "N2", "N3"):
            if not getattr(self, name) > 0:
                raise GaussianParamError(f"{name} must be positive, got {getattr(self, name)}")
        for name in ("Q1", "Q2"):
            if getattr(self, name) < 0:
                raise GaussianParamError(f"{name} must be nonnegative, got {getattr(self, name)}")
        if abs(self.rho) > 1:
            raise GaussianParamError(f"|rho| must be <= 1, got {self.rho}")
        if self.N1 < self.N2:
            raise GaussianParamError(f"receiver 1 must be the weaker one: N1={self.N1} < N2={self.N2}")

    def to_json(self) -> dict:
        return {k: getattr(self, k) for k in ("P", "N1", "N2", "N3", "Q1", "Q2", "rho")}


@dataclass(frozen=True)
class AuxParams:
    alpha1: float = 0.0
    alpha2: float = 0.0
    beta: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.beta <= 1.0:
            raise GaussianParamError(f"beta must lie in [0, 1], got {self.beta}")


def base_covariance(gp: GaussianParams, beta) -> np.ndarray:
    """Covariance of (X1, X2, S1, S2, W1, W2, W3); broadcasts over ``beta``."""
    beta = np.asarray(beta, dtype=float)
    c = np.zeros(beta.shape + (7, 7))
    c[..., 0, 0] = beta * gp.P
    c[..., 1, 1] = (1.0 - beta) * gp.P
    c[..., 2, 2] = gp.Q1
    c[..., 3, 3] = gp.Q2
    c[..., 2, 3] = c[..., 3, 2] = gp.rho * math.sqrt(gp.Q1 * gp.Q2)
    c[..., 4, 4], c[..., 5, 5], c[..., 6, 6] = gp.N1, gp.N2, gp.N3
    return c


def base_factor(gp: GaussianParams, beta) -> np.ndarray:
    """L with L L^T = base covariance (lower-triangular state block); broadcasts."""
    beta = np.asarray(beta, dtype=float)
    f = np.zeros(beta.shape + (7, 7))
    f[..., 0, 0] = np.sqrt(beta * gp.P)
    f[..., 1, 1] = np.sqrt((1.0 - beta) * gp.P)
    f[..., 2, 2] = math.sqrt(gp.Q1)
    f[..., 3, 2] = gp.rho * math.sqrt(gp.Q2)
    f[..., 3, 3] = math.sqrt(max(0.0, 1.0 - gp.rho ** 2) * gp.Q2)
    f[..., 4, 4], f[..., 5, 5], f[..., 6, 6] = math.sqrt(gp.N1), math.sqrt(gp.N2), math.sqrt(gp.N3)
    return f


def derived_map(alpha1, alpha2) -> np.ndarray:
    """Rows express U1, U2, X, Y1, Y2, Z in the base variables; broadcasts."""
    a1 = np.asarray(alpha1, dtype=float)
    a2 = np.asarray(alpha2, dtype=float)
    shape = np.broadcast(a1, a2).shape
    m = np.zeros(shape + (6, 7))
    m[..., 0, 0] = 1.0
    m[..., 0, 3] = a1
    m[..., 1, 1] = 1.0
    m[..., 1, 2] = a2
    m[..., 1, 0] = a2
    m[..., 2, 0:2] = 1.0
    m[..., 3, [0, 1, 3, 4]] = 1.0
    m[..., 4, [0, 1, 2, 5]] = 1.0
    m[..., 5, [0, 1, 2, 3, 6]] = 1.0
    return m


@dataclass(frozen=True)
class GaussianVector:
    """Jointly Gaussian variables; ``factor`` (labels x k) satisfies cov = F F^T.

    The factor is kept when the vector is built from independent sources, so
    that determinants can be taken without squaring condition numbers.
    """

    labels: tuple
    cov: np.ndarray
    factor: np.ndarray | None = None

    def __post_init__(self):
        c = np.asarray(self.cov, dtype=float)
        if c.shape != (len(self.labels), len(self.labels)):
            raise GaussianParamError(f"covariance shape {c.shape} does not match {len(self.labels)} labels")
        if np.max(np.abs(c - c.T), initial=0.0) > SYM_TOL * max(1.0, np.abs(c).max(initial=0.0)):
            raise GaussianParamError("covariance is not symmetric")
        lo = np.linalg.eigvalsh(c).min(initial=0.0)
        if lo < -PSD_TOL * max(1.0, np.abs(c).max(initial=0.0)):
            raise GaussianParamError(f"covariance is not PSD (min eigenvalue {lo:.3e})")
        object.__setattr__(self, "cov", c)
        if self.factor is None:
            w, v = np.linalg.eigh(c)
            object.__setattr__(self, "factor", v * np.sqrt(np.clip(w, 0.0, None)))

    def index(self, names) -> list[int]:
        try:
            return [self.labels.index(n) for n in names]
        except ValueError as exc:
            raise KeyError(f"unknown label in {list(names)}; known {list(self.labels)}") from exc

    def var(self, name: str) -> float:
        i = self.labels.index(name)
        return float(self.cov[i, i])

    def covariance(self, a: str, b: str) -> float:
        return float(self.cov[self.labels.index(a), self.labels.index(b)])


def linear_vector(base_labels, base_factor_: np.ndarray, rows: dict) -> GaussianVector:
    """Base variables plus linear combinations ``rows[name] = coefficients``."""
    names = tuple(base_labels) + tuple(rows)
    a = np.vstack([np.eye(len(base_labels))] + [np.asarray(r, dtype=float)[None, :] for r in rows.values()])
    f = a @ base_factor_
    return GaussianVector(names, f @ f.T, f)


def build_covariance(gp: GaussianParams, ap: AuxParams) -> GaussianVector:
    rows = dict(zip(DERIVED, derived_map(ap.alpha1, ap.alpha2)))
    return linear_vector(BASE, base_factor(gp, ap.beta), rows)


def _unit_rows(f: np.ndarray) -> np.ndarray:
    """Rescale every variable to unit variance (zero-variance ones are left alone).

    Mutual information is invariant under per-variable scaling, and the
    rescaled blocks are far better conditioned when gains like alpha differ
    by orders of magnitude.
    """
    norm = np.linalg.norm(f, axis=-1)
    return f / np.where(norm > 0, norm, 1.0)[..., None]


def _logdet_rows(f: np.ndarray, lam: np.ndarray) -> np.ndarray:
    """log det(F F^T + lam I) from a QR factorization of [F, sqrt(lam) I]^T."""
    d = f.shape[-2]
    aug = np.concatenate([f, np.sqrt(lam)[..., None, None] * np.eye(d)], axis=-1)
    r = np.linalg.qr(np.swapaxes(aug, -1, -2), mode="r")
    return 2.0 * np.log(np.abs(np.diagonal(r, axis1=-2, axis2=-1))).sum(axis=-1)


def mi_factor(f: np.ndarray, a, b, jitter: float = JITTER) -> np.ndarray:
    """I(A;B) in bits from factor rows F (..., d, k), cov = F F^T.

    Variables are rescaled to unit variance.  When the union block is
    near-singular (smallest eigenvalue below ``jitter * trace``) all three
    blocks get ``jitter * trace`` on the diagonal, which keeps the log-ratio
    finite for deterministic or degenerate components.  Well-conditioned
    blocks are left untouched.
    """
    a, b = list(a), list(b)
    if not a or not b:
        raise ValueError("mutual information needs two nonempty groups")
    if set(a) & set(b):
        raise ValueError("groups must be disjoint")
    ab = a + b
    g = _unit_rows(f[..., ab, :])
    tr = (g * g).sum(axis=(-1, -2))
    lam = jitter * np.maximum(tr, 1e-300)
    smin = np.linalg.svd(g, compute_uv=False)
    smin = smin[..., -1] if g.shape[-1] >= len(ab) else np.zeros(g.shape[:-2])
    lam = np.where(smin ** 2 <= lam, lam, 0.0)
    na = len(a)
    val = _logdet_rows(g[..., :na, :], lam) + _logdet_rows(g[..., na:, :], lam) - _logdet_rows(g, lam)
    return np.maximum(val / (2.0 * math.log(2.0)), 0.0)


def gaussian_mi(gv: GaussianVector, group_a, group_b, jitter: float = JITTER) -> float:
    """I(A;B) = 1/2 log2(det S_A det S_B / det S_AB), regularized when singular."""
    if not group_a or not group_b:
        raise ValueError("mutual information needs two nonempty groups")
    return float(mi_factor(gv.factor, gv.index(group_a), gv.index(group_b), jitter))


# (U1, U2, S1, S2, Y1, Y2, Z) positions inside the 13-variable vector
_IDX = {n: i for i, n in enumerate(BASE + DERIVED)}


def _terms(f: np.ndarray, eavesdropper: bool, jitter: float) -> dict:
    g = lambda *names: [_IDX[n] for n in names]  # noqa: E731
    t = {
        "I_u1_y1": mi_factor(f, g("U1"), g("Y1", "S1"), jitter),
        "I_u2_y2": mi_factor(f, g("U2"), g("Y2", "S2"), jitter),
        "I_u1_s": mi_factor(f, g("U1"), g("S1", "S2"), jitter),
        "I_u2_s": mi_factor(f, g("U2"), g("S1", "S2"), jitter),
        "I_u1_u2": mi_factor(f, g("U1"), g("U2"), jitter),
        "I_u12_s": mi_factor(f, g("U1", "U2"), g("S1", "S2"), jitter),
    }
    if eavesdropper:
        t["I_u1_z"] = mi_factor(f, g("U1"), g("Z"), jitter)
        t["I_u2_z"] = mi_factor(f, g("U2"), g("Z"), jitter)
        t["I_u12_z"] = mi_factor(f, g("U1", "U2"), g("Z"), jitter)
    else:
        zero = np.zeros_like(t["I_u1_y1"])
        t["I_u1_z"] = t["I_u2_z"] = t["I_u12_z"] = zero
    return t


def _raw_bounds(t: dict):
    raw1 = t["I_u1_y1"] - np.maximum(t["I_u1_z"], t["I_u1_s"])
    raw2 = t["I_u2_y2"] - np.maximum(t["I_u2_z"], t["I_u2_s"])
    raw12 = t["I_u1_y1"] + t["I_u2_y2"] - t["I_u1_u2"] - np.maximum(t["I_u12_z"], t["I_u12_s"])
    return raw1, raw2, raw12


def _full_factor(gp: GaussianParams, alpha1, alpha2, beta) -> np.ndarray:
    a = derived_map(alpha1, alpha2)
    eye = np.broadcast_to(np.eye(7), a.shape[:-2] + (7, 7))
    m = np.concatenate([eye, a], axis=-2)
    return m @ base_factor(gp, beta)


def gaussian_rate_bounds(gp: GaussianParams, ap: AuxParams, *, eavesdropper: bool = True, jitter: float = JITTER) -> RateBounds:
    f = _full_factor(gp, ap.alpha1, ap.alpha2, ap.beta)
    raw = _raw_bounds(_terms(f, eavesdropper, jitter))
    return RateBounds.from_raw(*(float(r) for r in raw))


def default_alpha_grid() -> np.ndarray:
    pos = np.logspace(-2, 1, 20)
    return np.concatenate([-pos[::-1], [0.0], pos])


def default_beta_grid() -> np.ndarray:
    return np.linspace(0.0, 1.0, 21)


def dirty_paper_alphas(gp: GaussianParams, betas) -> tuple[np.ndarray, np.ndarray]:
    """Costa coefficients for each power split.

    User 1 treats X2 as noise: alpha1 = beta P / (P + N1).  User 2 sees the
    interference S1 + X1: alpha2 = (1 - beta) P / ((1 - beta) P + N2).
    """
    b = np.asarray(betas, dtype=float)
    a1 = b * gp.P / (gp.P + gp.N1)
    a2 = (1 - b) * gp.P / ((1 - b) * gp.P + gp.N2)
    return a1, a2


def _merge(*arrays) -> tuple:
    return tuple(float(v) for v in np.unique(np.round(np.concatenate(arrays), 15)))


@dataclass(frozen=True)
class SweepGrid:
    alpha1: tuple
    alpha2: tuple
    beta: tuple

    @classmethod
    def default(cls, gp: GaussianParams | None = None) -> "SweepGrid":
        """Signed log-spaced alphas plus zero, 21 betas, and per-beta Costa alphas."""
        gp = gp or GaussianParams()
        beta = default_beta_grid()
        c1, c2 = dirty_paper_alphas(gp, beta)
        base = default_alpha_grid()
        return cls(_merge(base, c1), _merge(base, c2), tuple(float(v) for v in beta))

    @classmethod
    def parse(cls, text: str, gp: GaussianParams | None = None) -> "SweepGrid":
        """``default`` or ``alpha1=v,v;alpha2=v,v;beta=v,v`` (missing keys take defaults)."""
        d = cls.default(gp)
        if text.strip() == "default":
            return d
        vals = {"alpha1": d.alpha1, "alpha2": d.alpha2, "beta": d.beta}
        for part in filter(None, (p.strip() for p in text.split(";"))):
            key, _, body = part.partition("=")
            key = key.strip()
            if key not in vals:
                raise ValueError(f"unknown grid axis {key!r}; expected alpha1, alpha2 or beta")
            try:
                vals[key] = tuple(float(v) for v in body.split(",") if v.strip())
            except ValueError as exc:
                raise ValueError(f"grid axis {key!r}: {exc}") from exc
            if not vals[key]:
                raise ValueError(f"grid axis {key!r} is empty")
        if any(not 0.0 <= b <= 1.0 for b in vals["beta"]):
            raise ValueError("beta grid values must lie in [0, 1]")
        return cls(**vals)

    @property
    def size(self) -> int:
        return len(self.alpha1) * len(self.alpha2) * len(self.beta)

    def to_json(self) -> dict:
        return {"alpha1": list(self.alpha1), "alpha2": list(self.alpha2), "beta": list(self.beta)}


@dataclass
class SweepResult:
    region: RegionPolygon
    vertex_params: list  # (vertex, (alpha1, alpha2, beta))
    points: int


def sweep_region(gp: GaussianParams, grid: SweepGrid | None = None, *, eavesdropper: bool = True, jitter: float = JITTER) -> SweepResult:
    """Convex hull of the rate pentagons over a full (alpha1, alpha2, beta) grid."""
    grid = grid or SweepGrid.default(gp)
    a1, a2, be = np.meshgrid(grid.alpha1, grid.alpha2, grid.beta, indexing="ij")
    a1, a2, be = a1.ravel(), a2.ravel(), be.ravel()
    owner: dict = {}
    for s in range(0, a1.size, 4096):
        sl = slice(s, s + 4096)
        f = _full_factor(gp, a1[sl], a2[sl], be[sl])
        raw1, raw2, raw12 = _raw_bounds(_terms(f, eavesdropper, jitter))
        for k in range(raw1.size):
            b = RateBounds.from_raw(float(raw1[k]), float(raw2[k]), float(raw12[k]))
            for v in pentagon_vertices(b):
                owner.setdefault(v, (float(a1[s + k]), float(a2[s + k]), float(be[s + k])))
    hull = convex_hull(list(owner))
    region = RegionPolygon.from_points(hull)
    return SweepResult(region, [(v, owner.get(v)) for v in region.vertices], int(a1.size))


# Single-user channel with the state known at encoder and decoder:
#   Y1 = X + S1 + W1,  Z = X + S1 + W3,  U1 = X + alpha1 S1.
# It reuses the base variables with beta = 1 (X = X1), S2 unused and a
# rerouted output map.


def side_info_vector(gp: GaussianParams, alpha1: float) -> GaussianVector:
    base = base_factor(GaussianParams(gp.P, gp.N1, gp.N2, gp.N3, gp.Q1, 0.0, 0.0), 1.0)
    e = np.eye(7)
    rows = {
        "U1": e[0] + alpha1 * e[2],
        "Y1": e[0] + e[2] + e[4],
        "Z": e[0] + e[2] + e[6],
    }
    return linear_vector(BASE, base, rows)


def decoder_side_info_rate(gp: GaussianParams, alpha1: float, jitter: float = JITTER) -> float:
    """max(0, I(U1;Y1,S1) - max(I(U1;Z), I(U1;S1))) for U1 = X + alpha1 S1."""
    gv = side_info_vector(gp, alpha1)
    i_y = gaussian_mi(gv, ["U1"], ["Y1", "S1"], jitter)
    i_z = gaussian_mi(gv, ["U1"], ["Z"], jitter)
    i_s = gaussian_mi(gv, ["U1"], ["S1"], jitter)
    return max(0.0, i_y - max(i_z, i_s))


def capacity_limit(gp: GaussianParams) -> float:
    """I(X;Y1|S1) = 1/2 log2(1 + P/N1)."""
    return 0.5 * math.log2(1.0 + gp.P / gp.N1)
