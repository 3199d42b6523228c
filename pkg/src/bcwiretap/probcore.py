"""Finite-alphabet probability tables with named axes.

Every distribution in the package (state laws, channels, auxiliary
policies, full joints, game signal structures) is a dense numpy table
whose axes carry a name and a cardinality.  Information measures are in
bits.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

NORM_TOL = 1e-9
IDENTITY_TOL = 1e-12


class AxisError(ValueError):
    """Unknown, duplicated or overlapping axis names."""


class ValidationError(ValueError):
    """A table that is not a valid (conditional) distribution."""


@dataclass(frozen=True)
class Alphabet:
    name: str
    size: int

    def __post_init__(self):
        if not isinstance(self.size, (int, np.integer)) or self.size < 1:
            raise ValidationError(f"axis {self.name!r}: size must be a positive integer, got {self.size!r}")

    def to_json(self) -> dict:
        return {"name": self.name, "size": int(self.size)}


def _as_axes(axes) -> tuple[Alphabet, ...]:
    out = []
    for a in axes:
        if isinstance(a, Alphabet):
            out.append(a)
        elif isinstance(a, dict):
            out.append(Alphabet(str(a["name"]), int(a["size"])))
        else:
            name, size = a
            out.append(Alphabet(str(name), int(size)))
    names = [a.name for a in out]
    if len(set(names)) != len(names):
        raise AxisError(f"duplicate axis names in {names}")
    return tuple(out)


def _names(group) -> tuple[str, ...]:
    if isinstance(group, str):
        return (group,)
    return tuple(group)


def _readonly(table: np.ndarray) -> np.ndarray:
    table = np.array(table, dtype=float)
    table.setflags(write=False)
    return table


class Pmf:
    """Joint distribution over an ordered list of named finite axes.

    Parameters
    ----------
    axes : sequence of Alphabet, ``(name, size)`` pairs or ``{"name", "size"}`` dicts
    table : array_like
        Nonnegative entries; reshaped to the axis sizes.
    atol : float
        Normalization tolerance.
    validate : bool
        Skip the checks when the table is known to be valid (hot loops).
    """

    __slots__ = ("axes", "table")

    def __init__(self, axes, table, *, atol: float = NORM_TOL, validate: bool = True):
        axes = _as_axes(axes)
        shape = tuple(a.size for a in axes)
        table = np.asarray(table, dtype=float)
        if table.size != math.prod(shape):
            raise ValidationError(
                f"table has {table.size} entries, axes {[a.name for a in axes]} need {math.prod(shape)}"
            )
        table = table.reshape(shape)
        if validate:
            if not np.all(np.isfinite(table)) or np.any(table < 0):
                raise ValidationError("table has negative or non-finite entries")
            total = table.sum()
            if abs(total - 1.0) > atol:
                raise ValidationError(f"table sums to {total!r}, not 1")
        object.__setattr__(self, "axes", axes)
        object.__setattr__(self, "table", _readonly(table))

    def __setattr__(self, key, value):
        raise AttributeError("Pmf is immutable")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.axes)

    @property
    def shape(self) -> tuple[int, ...]:
        return self.table.shape

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise AxisError(f"unknown axis {name!r}; have {list(self.names)}") from None

    def size_of(self, name: str) -> int:
        return self.axes[self.index(name)].size

    def marginal(self, keep) -> "Pmf":
        return marginalize(self, keep)

    def transpose(self, order: Sequence[str]) -> "Pmf":
        """Same law with axes reordered."""
        idx = [self.index(n) for n in order]
        if sorted(idx) != list(range(len(self.axes))):
            raise AxisError(f"order {list(order)} is not a permutation of {list(self.names)}")
        return Pmf([self.axes[i] for i in idx], np.transpose(self.table, idx), validate=False)

    def rename(self, mapping: dict) -> "Pmf":
        axes = [Alphabet(mapping.get(a.name, a.name), a.size) for a in self.axes]
        return Pmf(axes, self.table, validate=False)

    def to_json(self) -> dict:
        return {"axes": [a.to_json() for a in self.axes], "table": self.table.ravel().tolist()}

    @classmethod
    def from_json(cls, obj: dict, *, atol: float = NORM_TOL) -> "Pmf":
        if "axes" not in obj or "table" not in obj:
            raise ValidationError("Pmf json needs 'axes' and 'table'")
        return cls(obj["axes"], obj["table"], atol=atol)

    def __eq__(self, other):
        return (
            isinstance(other, Pmf)
            and self.axes == other.axes
            and np.array_equal(self.table, other.table)
        )

    def __hash__(self):
        return hash((self.axes, self.table.tobytes()))

    def __repr__(self):
        dims = ", ".join(f"{a.name}:{a.size}" for a in self.axes)
        return f"Pmf({dims})"


class ConditionalPmf:
    """Conditional law p(output | given); the table is indexed ``given + output``."""

    __slots__ = ("given_axes", "output_axes", "table")

    def __init__(self, given_axes, output_axes, table, *, atol: float = NORM_TOL, validate: bool = True):
        given_axes = _as_axes(given_axes)
        output_axes = _as_axes(output_axes)
        _as_axes(given_axes + output_axes)  # overlap check
        shape = tuple(a.size for a in given_axes + output_axes)
        table = np.asarray(table, dtype=float)
        if table.size != math.prod(shape):
            raise ValidationError(f"table has {table.size} entries, expected {math.prod(shape)}")
        table = table.reshape(shape)
        if validate:
            if not np.all(np.isfinite(table)) or np.any(table < 0):
                raise ValidationError("conditional table has negative or non-finite entries")
            ng = len(given_axes)
            sums = table.reshape(shape[:ng] + (-1,)).sum(axis=-1)
            bad = np.argwhere(np.abs(sums - 1.0) > atol)
            if bad.size:
                where = tuple(int(i) for i in bad[0])
                label = ", ".join(f"{a.name}={i}" for a, i in zip(given_axes, where))
                raise ValidationError(
                    f"conditional slice ({label}) sums to {float(sums[where])!r}, not 1"
                )
        object.__setattr__(self, "given_axes", given_axes)
        object.__setattr__(self, "output_axes", output_axes)
        object.__setattr__(self, "table", _readonly(table))

    def __setattr__(self, key, value):
        raise AttributeError("ConditionalPmf is immutable")

    @property
    def given_names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.given_axes)

    @property
    def output_names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.output_axes)

    def to_json(self) -> dict:
        return {
            "given": [a.to_json() for a in self.given_axes],
            "axes": [a.to_json() for a in self.output_axes],
            "table": self.table.ravel().tolist(),
        }

    @classmethod
    def from_json(cls, obj: dict, *, atol: float = NORM_TOL) -> "ConditionalPmf":
        for key in ("given", "axes", "table"):
            if key not in obj:
                raise ValidationError(f"ConditionalPmf json is missing {key!r}")
        return cls(obj["given"], obj["axes"], obj["table"], atol=atol)

    def __eq__(self, other):
        return (
            isinstance(other, ConditionalPmf)
            and self.given_axes == other.given_axes
            and self.output_axes == other.output_axes
            and np.array_equal(self.table, other.table)
        )

    def __hash__(self):
        return hash((self.given_axes, self.output_axes, self.table.tobytes()))

    def __repr__(self):
        g = ", ".join(f"{a.name}:{a.size}" for a in self.given_axes)
        o = ", ".join(f"{a.name}:{a.size}" for a in self.output_axes)
        return f"ConditionalPmf({o} | {g})"


def _einsum_letters(n: int) -> str:
    letters = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
    if n > len(letters):
        raise AxisError("too many axes")
    return letters[:n]


def chain(p: Pmf, c: ConditionalPmf) -> Pmf:
    """Joint law p(a) c(b | a') with a' a subset of p's axes.

    Output axes are appended after p's axes.
    """
    for a in c.given_axes:
        if p.axes[p.index(a.name)] != a:
            raise AxisError(f"axis {a.name!r} has size {p.size_of(a.name)} in p, {a.size} in c")
    for a in c.output_axes:
        if a.name in p.names:
            raise AxisError(f"output axis {a.name!r} already present in p")
    all_names = p.names + c.output_names
    letters = dict(zip(all_names, _einsum_letters(len(all_names))))
    spec_p = "".join(letters[n] for n in p.names)
    spec_c = "".join(letters[n] for n in c.given_names + c.output_names)
    spec_o = "".join(letters[n] for n in all_names)
    table = np.einsum(f"{spec_p},{spec_c}->{spec_o}", p.table, c.table)
    return Pmf(p.axes + c.output_axes, table, validate=False)


def product(*pmfs: Pmf) -> Pmf:
    """Independent product of distributions over disjoint axes."""
    axes = ()
    table = np.ones(())
    for p in pmfs:
        axes = axes + p.axes
        table = np.multiply.outer(table, p.table)
    return Pmf(axes, table, validate=False)


def _check_keep(p: Pmf, keep) -> list[int]:
    names = _names(keep)
    idx = [p.index(n) for n in names]
    if len(set(idx)) != len(idx):
        raise AxisError(f"repeated axis in {list(names)}")
    return sorted(idx)


def marginalize(p: Pmf, keep) -> Pmf:
    """Marginal of ``p`` on the axes in ``keep``, in their original order."""
    idx = _check_keep(p, keep)
    drop = tuple(i for i in range(len(p.axes)) if i not in idx)
    table = p.table.sum(axis=drop) if drop else p.table
    return Pmf([p.axes[i] for i in idx], table, validate=False)


def condition(p: Pmf, given) -> ConditionalPmf:
    """Conditional law of the remaining axes given ``given``.

    Slices of zero marginal mass get the uniform conditional; they carry no
    weight in any expectation taken against ``p``.
    """
    gidx = _check_keep(p, given)
    oidx = [i for i in range(len(p.axes)) if i not in gidx]
    if not oidx:
        raise AxisError("conditioning on every axis leaves nothing to condition")
    t = np.transpose(p.table, gidx + oidx)
    gshape = t.shape[: len(gidx)]
    flat = t.reshape(gshape + (-1,))
    mass = flat.sum(axis=-1, keepdims=True)
    out = np.empty_like(flat)
    pos = mass[..., 0] > 0
    out[pos] = flat[pos] / mass[pos]
    out[~pos] = 1.0 / flat.shape[-1]
    return ConditionalPmf(
        [p.axes[i] for i in gidx], [p.axes[i] for i in oidx], out.reshape(t.shape), validate=False
    )


def entropy_of_table(t: np.ndarray) -> float:
    q = t[t > 0]
    return float(-(q * np.log2(q)).sum())


def entropy(p: Pmf, over=None) -> float:
    """Shannon entropy (bits) of the marginal on ``over`` (all axes by default)."""
    if over is None:
        return entropy_of_table(p.table)
    names = _names(over)
    if not names:
        return 0.0
    return entropy_of_table(marginalize(p, names).table)


def _disjoint(*groups) -> list[tuple[str, ...]]:
    groups = [_names(g) for g in groups]
    seen: set[str] = set()
    for g in groups:
        if not g:
            raise AxisError("empty axis group")
        if seen & set(g) or len(set(g)) != len(g):
            raise AxisError(f"axis groups overlap: {groups}")
        seen |= set(g)
    return groups


def mutual_information(p: Pmf, group_a, group_b) -> float:
    """I(A;B) = H(A) + H(B) - H(A,B) in bits."""
    a, b = _disjoint(group_a, group_b)
    return entropy(p, a) + entropy(p, b) - entropy(p, a + b)


def conditional_mutual_information(p: Pmf, group_a, group_b, group_c) -> float:
    """I(A;B|C) = H(A,C) + H(B,C) - H(A,B,C) - H(C) in bits."""
    a, b, c = _disjoint(group_a, group_b, group_c)
    return entropy(p, a + c) + entropy(p, b + c) - entropy(p, a + b + c) - entropy(p, c)


def conditional_entropy(p: Pmf, group_a, group_b) -> float:
    """H(A|B) in bits."""
    a, b = _disjoint(group_a, group_b)
    return entropy(p, a + b) - entropy(p, b)


class EntropyCache:
    """Memoized marginal entropies of one fixed table.

    Used where many information terms of the same joint are needed; the axis
    positions are resolved once.
    """

    def __init__(self, p: Pmf):
        self._p = p
        self._pos = {n: i for i, n in enumerate(p.names)}
        self._cache: dict[frozenset, float] = {}

    def h(self, names: Iterable[str]) -> float:
        key = frozenset(names)
        if key not in self._cache:
            if not key:
                self._cache[key] = 0.0
            else:
                keep = {self._pos[n] for n in key}
                drop = tuple(i for i in range(self._p.table.ndim) if i not in keep)
                self._cache[key] = entropy_of_table(self._p.table.sum(axis=drop) if drop else self._p.table)
        return self._cache[key]

    def mi(self, a: Iterable[str], b: Iterable[str]) -> float:
        a, b = tuple(a), tuple(b)
        return self.h(a) + self.h(b) - self.h(a + b)


def binary_entropy(p: float) -> float:
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def uniform(axes) -> Pmf:
    axes = _as_axes(axes)
    shape = tuple(a.size for a in axes)
    return Pmf(axes, np.full(shape, 1.0 / math.prod(shape)), validate=False)


def point_mass(axes, at: Sequence[int]) -> Pmf:
    axes = _as_axes(axes)
    t = np.zeros(tuple(a.size for a in axes))
    t[tuple(at)] = 1.0
    return Pmf(axes, t, validate=False)


def dumps(obj) -> str:
    return json.dumps(obj.to_json(), sort_keys=True)
