"""Random model builders shared by the test modules."""

import numpy as np
from hypothesis import strategies as st

from bcwiretap.channel import AuxPolicy, make_channel
from bcwiretap.probcore import Pmf


def random_joint(rng, shape, names):
    t = rng.dirichlet(np.ones(int(np.prod(shape)))).reshape(shape)
    return Pmf(list(zip(names, shape)), t)


def random_channel(rng, sizes):
    """sizes = (x, s1, s2, y1, y2, z)."""
    x, s1, s2, y1, y2, z = sizes
    ps = rng.dirichlet(np.ones(s1 * s2)).reshape(s1, s2)
    t = rng.dirichlet(np.ones(y1 * y2 * z), size=(x, s1, s2)).reshape(x, s1, s2, y1, y2, z)
    return make_channel(ps, t)


def random_policy(rng, spec, u1, u2):
    s1, s2, x = spec.size("s1"), spec.size("s2"), spec.size("x")
    t = rng.dirichlet(np.ones(u1 * u2 * x), size=(s1, s2)).reshape(s1, s2, u1, u2, x)
    return AuxPolicy.from_table(spec, t)


def random_full_joint(rng, sizes=None):
    """Random (spec, policy) with axis sizes (u1, u2, x, s1, s2, y1, y2, z)."""
    sizes = sizes or tuple(int(v) for v in rng.integers(1, 4, size=8))
    u1, u2, *rest = sizes
    spec = random_channel(rng, rest)
    return spec, random_policy(rng, spec, u1, u2)


seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)
