import itertools
import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bcwiretap.probcore import (
    Alphabet,
    AxisError,
    ConditionalPmf,
    EntropyCache,
    Pmf,
    ValidationError,
    binary_entropy,
    chain,
    condition,
    conditional_entropy,
    conditional_mutual_information,
    entropy,
    marginalize,
    mutual_information,
    point_mass,
    product,
    uniform,
)
from helpers import random_joint, seeds


def h(p):
    return -sum(x * math.log2(x) for x in p if x > 0)


class TestConstruction:
    def test_rejects_bad_tables(self):
        with pytest.raises(ValidationError, match="sum"):
            Pmf([("a", 2)], [0.5, 0.4])
        with pytest.raises(ValidationError):
            Pmf([("a", 2)], [1.5, -0.5])
        with pytest.raises(ValidationError):
            Pmf([("a", 2)], [1.0, 0.0, 0.0])
        with pytest.raises(AxisError):
            Pmf([("a", 2), ("a", 2)], np.full((2, 2), 0.25))
        with pytest.raises(ValueError):
            Alphabet("a", 0)

    def test_conditional_slice_named(self):
        t = np.array([[0.5, 0.5], [0.6, 0.3]])
        with pytest.raises(ValidationError, match="a=1"):
            ConditionalPmf([("a", 2)], [("b", 2)], t)

    def test_immutable(self):
        p = uniform([("a", 2)])
        with pytest.raises(AttributeError):
            p.table = None
        with pytest.raises(ValueError):
            p.table[0] = 1.0

    def test_json_round_trip_exact(self, rng):
        p = random_joint(rng, (2, 3, 4), "abc")
        q = Pmf.from_json(json.loads(json.dumps(p.to_json())))
        assert q == p
        assert np.array_equal(q.table, p.table)
        c = condition(p, ["b"])
        assert ConditionalPmf.from_json(json.loads(json.dumps(c.to_json()))) == c


class TestMarginalize:
    def test_uniform(self):
        m = marginalize(uniform([("a", 2), ("b", 2)]), ["a"])
        assert m.names == ("a",)
        assert np.allclose(m.table, [0.5, 0.5])

    def test_point_mass(self):
        m = marginalize(point_mass([("a", 2), ("b", 2)], (0, 1)), ["b"])
        assert np.array_equal(m.table, [0.0, 1.0])

    def test_hand_sum(self):
        p = Pmf([("a", 2), ("b", 2)], [[0.1, 0.2], [0.3, 0.4]])
        assert np.allclose(marginalize(p, ["a"]).table, [0.3, 0.7], atol=1e-15)

    def test_keeps_original_order(self, rng):
        p = random_joint(rng, (2, 3, 4), "abc")
        assert marginalize(p, ["c", "a"]).names == ("a", "c")

    def test_unknown_axis_named(self):
        with pytest.raises(AxisError, match="'q'"):
            marginalize(uniform([("a", 2)]), ["q"])


class TestCondition:
    def test_independent(self, rng):
        pa = random_joint(rng, (3,), "a")
        pb = random_joint(rng, (4,), "b")
        c = condition(product(pa, pb), ["a"])
        for i in range(3):
            assert np.allclose(c.table[i], pb.table, atol=1e-15)

    def test_identity_coupling(self):
        c = condition(Pmf([("a", 2), ("b", 2)], [[0.5, 0], [0, 0.5]]), ["a"])
        assert np.array_equal(c.table, np.eye(2))

    def test_zero_mass_slice_uniform(self):
        c = condition(Pmf([("a", 2), ("b", 3)], [[0.2, 0.3, 0.5], [0, 0, 0]]), ["a"])
        assert np.allclose(c.table[1], 1 / 3)

    @given(seeds)
    def test_reconstruction(self, seed):
        rng = np.random.default_rng(seed)
        p = random_joint(rng, (3, 4), "ab")
        c = condition(p, ["a"])
        pa = p.table.sum(axis=1)
        assert np.max(np.abs(c.table * pa[:, None] - p.table)) <= 1e-12

    @given(seeds)
    def test_chain_inverts_condition(self, seed):
        rng = np.random.default_rng(seed)
        p = random_joint(rng, (2, 3, 2), "abc")
        back = chain(marginalize(p, ["b"]), condition(p, ["b"])).transpose(p.names)
        assert np.max(np.abs(back.table - p.table)) <= 1e-12
        assert abs(back.table.sum() - 1) <= 1e-9


class TestEntropy:
    def test_uniform_eight(self):
        assert entropy(uniform([("a", 8)])) == pytest.approx(3.0, abs=1e-15)

    def test_point_mass(self):
        assert entropy(point_mass([("a", 5)], (2,))) == 0.0

    def test_bernoulli(self):
        p = Pmf([("a", 2)], [0.11, 0.89])
        oracle = -0.11 * math.log2(0.11) - 0.89 * math.log2(0.89)
        assert abs(entropy(p) - oracle) < 1e-15
        assert abs(binary_entropy(0.11) - oracle) < 1e-15

    @given(seeds)
    def test_bounds(self, seed):
        rng = np.random.default_rng(seed)
        p = random_joint(rng, (2, 3, 5), "abc")
        assert 0.0 <= entropy(p, ["b", "c"]) <= math.log2(15) + 1e-12

    @given(seeds)
    def test_chain_rule(self, seed):
        rng = np.random.default_rng(seed)
        p = random_joint(rng, (3, 2, 4), "abc")
        lhs = entropy(p, ["a", "b", "c"])
        rhs = entropy(p, ["a"]) + conditional_entropy(p, ["b"], ["a"]) + conditional_entropy(p, ["c"], ["a", "b"])
        assert abs(lhs - rhs) < 1e-12


class TestMutualInformation:
    def test_independent(self, rng):
        p = product(random_joint(rng, (3,), "a"), random_joint(rng, (2,), "b"))
        assert abs(mutual_information(p, ["a"], ["b"])) < 1e-12

    def test_copy(self):
        p = Pmf([("a", 2), ("b", 2)], [[0.5, 0], [0, 0.5]])
        assert mutual_information(p, ["a"], ["b"]) == pytest.approx(1.0, abs=1e-15)

    def test_bsc(self):
        e = 0.11
        p = Pmf([("x", 2), ("y", 2)], np.array([[1 - e, e], [e, 1 - e]]) / 2)
        assert abs(mutual_information(p, ["x"], ["y"]) - (1 - binary_entropy(e))) < 1e-12

    def test_overlap_rejected(self, rng):
        p = random_joint(rng, (2, 2), "ab")
        with pytest.raises(AxisError):
            mutual_information(p, ["a"], ["a", "b"])
        with pytest.raises(AxisError):
            conditional_mutual_information(p, ["a"], ["b"], ["b"])

    @given(seeds)
    def test_symmetry_and_sign(self, seed):
        rng = np.random.default_rng(seed)
        p = random_joint(rng, (2, 3, 3), "abc")
        i1 = mutual_information(p, ["a"], ["b", "c"])
        i2 = mutual_information(p, ["c", "b"], ["a"])
        assert abs(i1 - i2) < 1e-12
        assert i1 >= -1e-12

    def test_cmi_irrelevant_conditioning(self, rng):
        ab = random_joint(rng, (2, 3), "ab")
        p = product(ab, random_joint(rng, (4,), "c"))
        i = mutual_information(ab, ["a"], ["b"])
        assert abs(conditional_mutual_information(p, ["a"], ["b"], ["c"]) - i) < 1e-12

    def test_cmi_copies(self):
        t = np.zeros((2, 2, 2))
        t[0, 0, 0] = t[1, 1, 1] = 0.5
        p = Pmf([("a", 2), ("b", 2), ("c", 2)], t)
        assert abs(conditional_mutual_information(p, ["a"], ["b"], ["c"])) < 1e-15

    def test_cmi_brute_force(self, rng):
        p = random_joint(rng, (2, 2, 2), "abc")
        t = p.table
        pc = t.sum(axis=(0, 1))
        pac = t.sum(axis=1)
        pbc = t.sum(axis=0)
        oracle = sum(
            t[a, b, c] * math.log2(t[a, b, c] * pc[c] / (pac[a, c] * pbc[b, c]))
            for a, b, c in itertools.product(range(2), repeat=3)
        )
        assert abs(conditional_mutual_information(p, ["a"], ["b"], ["c"]) - oracle) < 1e-12

    @given(seeds)
    def test_data_processing(self, seed):
        rng = np.random.default_rng(seed)
        pa = random_joint(rng, (3,), "a")
        ab = ConditionalPmf([("a", 3)], [("b", 3)], rng.dirichlet(np.ones(3), size=3))
        bc = ConditionalPmf([("b", 3)], [("c", 2)], rng.dirichlet(np.ones(2), size=3))
        p = chain(chain(pa, ab), bc)
        assert mutual_information(p, ["a"], ["c"]) <= mutual_information(p, ["a"], ["b"]) + 1e-9

    def test_entropy_cache_matches(self, rng):
        p = random_joint(rng, (2, 3, 2, 2), "abcd")
        c = EntropyCache(p)
        assert abs(c.h(["b", "d"]) - entropy(p, ["b", "d"])) < 1e-15
        assert abs(c.mi(["a"], ["c", "d"]) - mutual_information(p, ["a"], ["c", "d"])) < 1e-15
        assert c.h([]) == 0.0


@given(st.lists(st.floats(0.01, 1.0), min_size=2, max_size=6))
def test_entropy_matches_formula(ws):
    p = np.array(ws) / sum(ws)
    assert abs(entropy(Pmf([("a", len(p))], p)) - h(p)) < 1e-12
