import json

import numpy as np
import pytest
from hypothesis import given
from scipy import stats

from bcwiretap import instances
from bcwiretap.channel import (
    AuxPolicy,
    ChannelSpec,
    build_full_joint,
    joint_from_table,
    load_channel,
    make_channel,
    memoryless_extend,
    policy_from_joint,
    save_channel,
)
from bcwiretap.probcore import ValidationError, condition
from helpers import random_channel, random_full_joint, random_policy, seeds


def uniform_binary_case():
    spec = make_channel(np.full((2, 2), 0.25), np.full((2, 2, 2, 2, 2, 2), 1 / 8))
    return spec, AuxPolicy.from_table(spec, np.full((2, 2, 2, 2, 2), 1 / 8))


def test_fully_independent_joint_is_uniform():
    spec, pol = uniform_binary_case()
    j = build_full_joint(spec, pol).joint
    assert j.shape == (2,) * 8
    assert np.allclose(j.table, 1 / 256, atol=1e-15)


def test_copy_chain_has_two_cells():
    t = np.zeros((2, 1, 1, 2, 2, 2))
    for x in range(2):
        t[x, 0, 0, x, x, x] = 1.0
    spec = make_channel(np.ones((1, 1)), t)
    p = np.zeros((1, 1, 2, 2, 2))
    p[0, 0, 0, 0, 0] = p[0, 0, 1, 1, 1] = 0.5
    j = build_full_joint(spec, AuxPolicy.from_table(spec, p)).joint
    assert np.count_nonzero(j.table) == 2
    assert j.table[0, 0, 0, 0, 0, 0, 0, 0] == j.table[1, 1, 1, 0, 0, 1, 1, 1] == 0.5


@given(seeds)
def test_full_joint_marginals_and_markov(seed):
    rng = np.random.default_rng(seed)
    spec, pol = random_full_joint(rng)
    j = build_full_joint(spec, pol)
    ps = j.joint.marginal(("s1", "s2")).table
    assert np.max(np.abs(ps - spec.state_dist.table)) <= 1e-12
    assert j.markov_gap() <= 1e-9
    # T is recovered on positive-mass slices
    c = condition(j.joint.marginal(("x", "s1", "s2", "y1", "y2", "z")), ("x", "s1", "s2")).table
    mass = j.joint.marginal(("x", "s1", "s2")).table > 0
    assert np.max(np.abs(c[mass] - spec.transition.table[mass]), initial=0) <= 1e-9
    assert abs(j.joint.table.sum() - 1) <= 1e-9


@given(seeds)
def test_fast_path_and_policy_recovery(seed):
    rng = np.random.default_rng(seed)
    spec, pol = random_full_joint(rng)
    j = build_full_joint(spec, pol)
    fast = joint_from_table(spec, pol.policy.table)
    assert np.max(np.abs(fast.joint.table - j.joint.table)) <= 1e-15
    back = policy_from_joint(j).policy.table
    assert np.max(np.abs(back - pol.policy.table)) <= 1e-12


def test_size_mismatch_names_axis(rng):
    spec = random_channel(rng, (2, 2, 1, 2, 2, 2))
    other = random_channel(rng, (3, 2, 1, 2, 2, 2))
    pol = random_policy(rng, other, 2, 2)
    with pytest.raises(ValidationError, match="'x'"):
        build_full_joint(spec, pol)
    pol = random_policy(rng, random_channel(rng, (2, 3, 1, 2, 2, 2)), 2, 2)
    with pytest.raises(ValidationError, match="'s1'"):
        build_full_joint(spec, pol)


class TestSampler:
    def test_single_letter_frequencies(self):
        spec = random_channel(np.random.default_rng(8), (2, 2, 1, 2, 1, 2))
        s = memoryless_extend(spec, 1, seed=3)
        counts = np.zeros(spec.state_dist.table.size)
        out = np.zeros(8)
        for _ in range(20_000):
            s1, s2 = s.draw_states()
            counts[s1[0] * 1 + s2[0]] += 1
            y1, y2, z = s.transmit(np.array([1]), s1, s2)
            if s1[0] == 0:
                out[y1[0] * 2 + z[0]] += 1
        exp = spec.state_dist.table.ravel() * counts.sum()
        assert stats.chisquare(counts, exp).pvalue > 1e-3
        t = spec.transition.table[1, 0, 0].reshape(-1)
        assert stats.chisquare(out[:4], t * out[:4].sum()).pvalue > 1e-3

    def test_large_sample_frequencies(self):
        spec = random_channel(np.random.default_rng(9), (2, 2, 2, 2, 1, 1))
        s = memoryless_extend(spec, 100_000, seed=1)
        s1, s2 = s.draw_states()
        counts = np.bincount(s1 * 2 + s2, minlength=4)
        assert stats.chisquare(counts, spec.state_dist.table.ravel() * s.n).pvalue > 1e-3

    def test_constant_states(self):
        s = memoryless_extend(instances.erasure_pair(), 50, seed=0)
        s1, s2 = s.draw_states()
        assert not s1.any() and not s2.any()

    def test_seeded_determinism(self):
        spec = instances.erasure_pair()
        runs = []
        for _ in range(2):
            s = memoryless_extend(spec, 64, seed=[5, 6])
            s1, s2 = s.draw_states()
            runs.append(np.concatenate([*s.transmit(np.arange(64) % 4, s1, s2)]))
        assert np.array_equal(runs[0], runs[1])

    def test_length_mismatch(self):
        s = memoryless_extend(instances.erasure_pair(), 4, seed=0)
        with pytest.raises(ValueError):
            s.transmit(np.zeros(3), np.zeros(4), np.zeros(4))
        with pytest.raises(ValueError):
            memoryless_extend(instances.erasure_pair(), 0)


class TestFiles:
    def test_round_trip(self, tmp_path, rng):
        spec = random_channel(rng, (3, 2, 2, 2, 3, 2))
        path = tmp_path / "c.json"
        save_channel(spec, path)
        back = load_channel(path)
        assert back == spec
        assert np.array_equal(back.transition.table, spec.transition.table)

    def test_unnormalized_slice_named(self, tmp_path):
        obj = instances.wiretap_bsc().to_json()
        obj["transition"]["table"][0] = 0.65  # slice x=0 now sums to 0.9
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(obj))
        with pytest.raises(ValidationError, match="x=0"):
            load_channel(path)

    def test_missing_axis(self, tmp_path):
        obj = instances.wiretap_bsc().to_json()
        tr = obj["transition"]
        tr["axes"] = tr["axes"][:2]
        tr["table"] = np.asarray(tr["table"]).reshape(-1, 2).sum(axis=1).tolist()
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(obj))
        with pytest.raises(ValidationError, match="missing \\['z'\\]"):
            load_channel(path)

    def test_malformed(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(ValidationError, match="malformed"):
            load_channel(path)

    def test_shipped_channels_load(self):
        for name in ("wiretap_bsc", "binary_dirty_paper", "noiseless_binary", "erasure_pair"):
            spec = load_channel(instances.data_dir() / f"{name}.channel.json")
            assert spec == instances.CHANNELS[name]()

    def test_spec_equality_by_value(self):
        assert ChannelSpec.from_json(instances.wiretap_bsc().to_json()) == instances.wiretap_bsc()
