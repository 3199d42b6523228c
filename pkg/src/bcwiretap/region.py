"""Secrecy rate bounds of a fixed policy and the time-shared region.

For a full joint Q the achievable set of a single policy is

    R1      <= I(U1;Y1,S1) - max(I(U1;Z), I(U1;S1,S2))
    R2      <= I(U2;Y2,S2) - max(I(U2;Z), I(U2;S1,S2))
    R1 + R2 <= I(U1;Y1,S1) + I(U2;Y2,S2) - I(U1;U2)
               - max(I(U1,U2;Z), I(U1,U2;S1,S2))

and the region is the convex hull of the union over policies.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .channel import AuxPolicy, ChannelSpec, FullJoint, joint_from_table
from .probcore import AxisError, EntropyCache

LAMBDAS = (0.0, 0.25, 0.5, 0.75, 1.0)
HULL_TOL = 1e-12


@dataclass(frozen=True)
class RateBounds:
    b1: float
    b2: float
    b12: float
    raw1: float = float("nan")
    raw2: float = float("nan")
    raw12: float = float("nan")

    @classmethod
    def from_raw(cls, raw1: float, raw2: float, raw12: float) -> "RateBounds":
        return cls(max(0.0, raw1), max(0.0, raw2), max(0.0, raw12), raw1, raw2, raw12)

    def to_json(self) -> dict:
        return {k: float(getattr(self, k)) for k in ("b1", "b2", "b12", "raw1", "raw2", "raw12")}


def information_terms(j: FullJoint, *, decoder_side_info: bool = True, eavesdropper: bool = True) -> dict:
    """Every mutual-information term entering the bounds, in bits.

    ``decoder_side_info=False`` drops S_k from decoder k's observation;
    ``eavesdropper=False`` drops the I(.;Z) terms.
    """
    c = EntropyCache(j.joint)
    obs1 = ("y1", "s1") if decoder_side_info else ("y1",)
    obs2 = ("y2", "s2") if decoder_side_info else ("y2",)
    s = ("s1", "s2")
    t = {
        "I_u1_y1": c.mi(("u1",), obs1),
        "I_u2_y2": c.mi(("u2",), obs2),
        "I_u1_s": c.mi(("u1",), s),
        "I_u2_s": c.mi(("u2",), s),
        "I_u1_u2": c.mi(("u1",), ("u2",)),
        "I_u12_s": c.mi(("u1", "u2"), s),
    }
    if eavesdropper:
        t["I_u1_z"] = c.mi(("u1",), ("z",))
        t["I_u2_z"] = c.mi(("u2",), ("z",))
        t["I_u12_z"] = c.mi(("u1", "u2"), ("z",))
    else:
        t["I_u1_z"] = t["I_u2_z"] = t["I_u12_z"] = 0.0
    return t


def bounds_from_terms(t: dict) -> RateBounds:
    raw1 = t["I_u1_y1"] - max(t["I_u1_z"], t["I_u1_s"])
    raw2 = t["I_u2_y2"] - max(t["I_u2_z"], t["I_u2_s"])
    raw12 = t["I_u1_y1"] + t["I_u2_y2"] - t["I_u1_u2"] - max(t["I_u12_z"], t["I_u12_s"])
    return RateBounds.from_raw(raw1, raw2, raw12)


def rate_bounds(j: FullJoint, *, decoder_side_info: bool = True, eavesdropper: bool = True) -> RateBounds:
    return bounds_from_terms(information_terms(j, decoder_side_info=decoder_side_info, eavesdropper=eavesdropper))


def chen_vinck_bound(j: FullJoint) -> float:
    """Single-user bound min(I(U;Y) - I(U;S), I(U;Y) - I(U;Z)), clipped at zero.

    The second user must be absent (size-1 ``u2``, ``y2``, ``s2``) and the
    receiver does not see the state.
    """
    for name in ("u2", "y2", "s2"):
        if j.joint.size_of(name) != 1:
            raise AxisError(f"axis {name!r} must be degenerate (size 1) for the single-user reduction")
    c = EntropyCache(j.joint)
    i_uy = c.mi(("u1",), ("y1",))
    i_us = c.mi(("u1",), ("s1", "s2"))
    i_uz = c.mi(("u1",), ("z",))
    return max(0.0, min(i_uy - i_us, i_uy - i_uz))


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points, tol: float = HULL_TOL) -> list[tuple[float, float]]:
    """Monotone-chain hull, counterclockwise, collinear points dropped."""
    pts = sorted({(float(x), float(y)) for x, y in points})
    if len(pts) <= 2:
        return pts
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= tol:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= tol:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    return hull if len(hull) >= 2 else pts[:1]


@dataclass(frozen=True)
class RegionPolygon:
    vertices: tuple

    @classmethod
    def from_points(cls, points, tol: float = HULL_TOL) -> "RegionPolygon":
        """Hull of the down-sets of ``points`` (each point plus its axis projections)."""
        pts = [(0.0, 0.0)]
        for x, y in points:
            x, y = max(0.0, float(x)), max(0.0, float(y))
            pts += [(x, y), (x, 0.0), (0.0, y)]
        return cls(tuple(convex_hull(pts, tol)))

    def contains(self, point, tol: float = 1e-9) -> bool:
        px, py = point
        if px < -tol or py < -tol:
            return False
        v = self.vertices
        if len(v) == 1:
            return math.hypot(px - v[0][0], py - v[0][1]) <= tol
        if len(v) == 2:
            (ax, ay), (bx, by) = v
            dx, dy = bx - ax, by - ay
            L2 = dx * dx + dy * dy
            if L2 == 0.0:
                return math.hypot(px - ax, py - ay) <= tol
            s = min(1.0, max(0.0, ((px - ax) * dx + (py - ay) * dy) / L2))
            return math.hypot(px - ax - s * dx, py - ay - s * dy) <= tol
        for i in range(len(v)):
            a, b = v[i], v[(i + 1) % len(v)]
            L = math.hypot(b[0] - a[0], b[1] - a[1])
            if _cross(a, b, (px, py)) < -tol * L:
                return False
        return True

    def contains_region(self, other: "RegionPolygon", tol: float = 1e-9) -> bool:
        return all(self.contains(p, tol) for p in other.vertices)

    def support(self, lam: float) -> float:
        """max of lam*R1 + (1-lam)*R2 over the region."""
        return max(lam * x + (1 - lam) * y for x, y in self.vertices)

    @property
    def max_sum_rate(self) -> float:
        return max(x + y for x, y in self.vertices)

    @property
    def area(self) -> float:
        v = self.vertices
        if len(v) < 3:
            return 0.0
        return 0.5 * abs(sum(v[i][0] * v[(i + 1) % len(v)][1] - v[(i + 1) % len(v)][0] * v[i][1] for i in range(len(v))))

    def to_csv(self) -> str:
        lines = ["R1_bits,R2_bits"] + [f"{x!r},{y!r}" for x, y in self.vertices]
        return "\n".join(lines) + "\n"


def pentagon_vertices(b: RateBounds) -> list[tuple[float, float]]:
    a = min(b.b1, b.b12)
    c = min(b.b2, b.b12)
    pts = [(0.0, 0.0), (a, 0.0), (a, min(c, b.b12 - a)), (min(a, b.b12 - c), c), (0.0, c)]
    out: list = []
    for p in pts:
        p = (max(0.0, p[0]), max(0.0, p[1]))
        if not out or p != out[-1]:
            out.append(p)
    if len(out) > 1 and out[-1] == out[0]:
        out.pop()
    return out


def region_from_bounds(b: RateBounds) -> RegionPolygon:
    return RegionPolygon(tuple(convex_hull(pentagon_vertices(b))) or ((0.0, 0.0),))


def weighted_value(b: RateBounds, lam: float) -> float:
    return max(lam * x + (1 - lam) * y for x, y in pentagon_vertices(b))


def pareto_points(region: RegionPolygon, tol: float = 1e-12) -> list[tuple[float, float]]:
    v = region.vertices
    keep = []
    for p in v:
        dominated = any(
            q != p and q[0] >= p[0] - tol and q[1] >= p[1] - tol and (q[0] > p[0] + tol or q[1] > p[1] + tol)
            for q in v
        )
        if not dominated:
            keep.append(p)
    return sorted(keep)


@dataclass(frozen=True)
class SearchConfig:
    aux_sizes: tuple | None = None
    sample_budget: int = 1000
    refinement_iterations: int = 200
    seed: int = 0
    tolerance: float = HULL_TOL
    workers: int = 1

    def __post_init__(self):
        if self.sample_budget < 1:
            raise ValueError("sample_budget must be >= 1")
        if self.aux_sizes is not None and min(self.aux_sizes) < 1:
            raise ValueError("aux sizes must be >= 1")


@dataclass
class VertexWitness:
    vertex: tuple
    policy: AuxPolicy
    bounds: RateBounds


@dataclass
class SearchResult:
    region: RegionPolygon
    witnesses: list = field(default_factory=list)
    evaluations: int = 0

    def to_json(self) -> dict:
        return {
            "schema_version": 1,
            "vertices": [list(v) for v in self.region.vertices],
            "evaluations": self.evaluations,
            "witnesses": [
                {"vertex": list(w.vertex), "bounds": w.bounds.to_json(), "policy": w.policy.to_json()}
                for w in self.witnesses
            ],
        }


def default_aux_sizes(spec: ChannelSpec) -> tuple[int, int]:
    k = spec.size("x") * spec.size("s1") * spec.size("s2")
    return k, k


def _policy_shape(spec: ChannelSpec, aux) -> tuple:
    return (spec.size("s1"), spec.size("s2"), aux[0], aux[1], spec.size("x"))


def _sample_table(shape, rng) -> np.ndarray:
    ns = shape[0] * shape[1]
    k = math.prod(shape[2:])
    return rng.dirichlet(np.ones(k), size=ns).reshape(shape)


def _evaluate(spec: ChannelSpec, table: np.ndarray) -> RateBounds:
    return rate_bounds(joint_from_table(spec, table))


def _softmax_slices(logits: np.ndarray) -> np.ndarray:
    shape = logits.shape
    flat = logits.reshape(shape[0] * shape[1], -1)
    flat = flat - flat.max(axis=1, keepdims=True)
    e = np.exp(flat)
    return (e / e.sum(axis=1, keepdims=True)).reshape(shape)


def refine(spec: ChannelSpec, table: np.ndarray, lam: float, iterations: int, rng) -> list[tuple[np.ndarray, RateBounds]]:
    """(1+1) evolution strategy on the policy logits, one state slice per step.

    Returns every accepted point (each one is a valid policy whose pentagon
    joins the union).
    """
    logits = np.log(np.maximum(table, 1e-12))
    best_t = _softmax_slices(logits)
    best_b = _evaluate(spec, best_t)
    best_f = weighted_value(best_b, lam)
    accepted = [(best_t, best_b)]
    sigma = 1.0
    ns1, ns2 = table.shape[:2]
    for _ in range(iterations):
        cand = logits.copy()
        i, k = rng.integers(ns1), rng.integers(ns2)
        cand[i, k] += sigma * rng.standard_normal(cand[i, k].shape)
        t = _softmax_slices(cand)
        b = _evaluate(spec, t)
        f = weighted_value(b, lam)
        if f > best_f:
            logits, best_f = cand, f
            accepted.append((t, b))
            sigma = min(sigma * 1.5, 8.0)
        else:
            sigma = max(sigma * 0.9, 1e-3)
    return accepted


def _checkpoints(budget: int) -> list[int]:
    out, k = [], 1
    while k <= budget:
        out.append(k)
        k *= 2
    return out


def search_region(spec: ChannelSpec, cfg: SearchConfig) -> SearchResult:
    """Random Dirichlet policies plus local refinement, then the 2-D hull.

    Sample i depends only on (seed, i), and refinements start from the best
    sample among the first 2^k for every 2^k <= budget, so a larger budget
    always yields a superset of points.
    """
    aux = tuple(cfg.aux_sizes) if cfg.aux_sizes is not None else default_aux_sizes(spec)
    shape = _policy_shape(spec, aux)

    def run_samples(idx):
        out = []
        for i in idx:
            t = _sample_table(shape, np.random.default_rng([cfg.seed, 0, i]))
            out.append((t, _evaluate(spec, t)))
        return out

    chunks = [range(s, min(s + 256, cfg.sample_budget)) for s in range(0, cfg.sample_budget, 256)]
    with ThreadPoolExecutor(max_workers=max(1, cfg.workers)) as ex:
        samples = [r for part in ex.map(run_samples, chunks) for r in part]

    values = np.array([[weighted_value(b, lam) for lam in LAMBDAS] for _, b in samples])
    starts = set()
    for k in _checkpoints(cfg.sample_budget):
        for li in range(len(LAMBDAS)):
            starts.add((li, int(np.argmax(values[:k, li]))))
    starts = sorted(starts)

    def run_refine(key):
        li, si = key
        rng = np.random.default_rng([cfg.seed, 1, li, si])
        return refine(spec, samples[si][0], LAMBDAS[li], cfg.refinement_iterations, rng)

    with ThreadPoolExecutor(max_workers=max(1, cfg.workers)) as ex:
        refined = [r for part in ex.map(run_refine, starts) for r in part]

    candidates = samples + refined
    owner: dict = {}
    for ci, (_, b) in enumerate(candidates):
        for v in pentagon_vertices(b):
            owner.setdefault(v, ci)
    region = RegionPolygon.from_points(owner.keys(), cfg.tolerance)
    witnesses = []
    for v in region.vertices:
        ci = owner.get(v)
        if ci is None:
            continue
        t, b = candidates[ci]
        witnesses.append(VertexWitness(v, AuxPolicy.from_table(spec, t), b))
    return SearchResult(region, witnesses, len(candidates))
