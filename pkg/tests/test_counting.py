from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import corpus_names, expected, load, rescale
from germcount.colength import local_colength
from germcount.counting import (
    FormulaError,
    Method,
    NotFinite,
    NotWeightedHomogeneous,
    NotZeroDimensional,
    count_both,
    count_by_colength,
    count_by_formula,
    enumerate_stable_partitions,
    formula_colength,
    infer_weights,
    milnor_from_colength,
    zero_dimensional_partitions,
)
from germcount.germparse import make_germ
from germcount.partition import Partition, stabilizer_order
from germcount.schemes import restricted_ideal


def parts(descs):
    return {d.partition.parts for d in descs}


class TestEnumerate:
    def test_surfaces_in_three_space(self):
        assert {P.parts for P in zero_dimensional_partitions(2, 3)} == {(2,), (1, 1, 1)}

    def test_three_to_four_full(self):
        descs = enumerate_stable_partitions(3, 4)
        assert parts(descs) == {(1, 1, 1, 1), (1, 1, 1), (1, 1), (2, 1), (2,)}
        assert [d.partition.parts for d in descs] == [(2,), (1, 1), (2, 1), (1, 1, 1), (1, 1, 1, 1)]

    def test_three_to_four_zero_dimensional(self):
        assert {P.parts for P in zero_dimensional_partitions(3, 4)} == {(2, 1), (1, 1, 1, 1)}

    def test_n_below_p(self):
        with pytest.raises(ValueError):
            enumerate_stable_partitions(3, 3)

    @pytest.mark.parametrize("n,p", [(1, 2), (2, 3), (3, 4), (4, 5), (3, 5), (5, 7), (6, 7)])
    def test_dimensions_nonnegative_and_exact(self, n, p):
        for d in enumerate_stable_partitions(n, p):
            assert d.dimension == p - d.partition.k * (p - n + 1) + d.partition.ell >= 0
            assert d.zero_dimensional == (d.dimension == 0)
            assert d.partition.k * (p - n) <= p


class TestStabilizer:
    def test_repeated_blocks(self):
        assert stabilizer_order(Partition.of(4, 4, 4, 2, 2, 2, 1, 1)) == 72

    def test_single(self):
        assert stabilizer_order(Partition.of(2)) == 1

    def test_all_ones(self):
        assert stabilizer_order(Partition.of(1, 1, 1)) == 6


class TestCountByColength:
    def test_double_folds(self):
        rep = count_by_colength(load("ex33"), Partition.of(2))
        assert (rep.colength, rep.stabilizer, rep.count) == (6, 1, 6)

    def test_no_quadruple_points(self):
        assert count_by_colength(load("ex34"), Partition.of(1, 1, 1, 1)).count == 0

    def test_positive_dimensional_rejected(self):
        with pytest.raises(NotZeroDimensional):
            count_by_colength(load("ex34"), Partition.of(1, 1))

    def test_not_finite(self):
        g = make_germ("nf", ["x", "z"], ["z^2", "z^4"])
        with pytest.raises(NotFinite) as info:
            count_by_colength(g, Partition.of(2), max_jet=8)
        assert info.value.result.bound == 8


class TestFormula:
    def test_two_one(self):
        rep = count_by_formula(load("ex34"), Partition.of(2, 1))
        assert rep.count == 2 and rep.method is Method.FORMULA

    def test_triple_points(self):
        assert count_by_formula(load("crosscap_mond"), Partition.of(1, 1, 1)).count == 1

    def test_table_row(self):
        assert count_by_formula(load("hk_p2"), Partition.of(2, 1)).count == 3

    def test_unit_generator_gives_zero(self):
        assert count_by_formula(load("hk_q2"), Partition.of(1, 1, 1, 1)).count == 0

    def test_vanishing_generator(self):
        g = make_germ("v", ["x", "z"], ["x*z", "z^5"])
        # V_1^2(xz) = x has degree w_x; use P=(1,1,1) where V_2^3(xz) vanishes
        with pytest.raises(FormulaError):
            formula_colength(g, Partition.of(1, 1, 1))

    def test_not_weighted_homogeneous(self):
        with pytest.raises(NotWeightedHomogeneous):
            count_by_formula(load("hk_r2"), Partition.of(2, 1))

    def test_declared_weights_used(self):
        g = load("crosscap_mond")
        assert g.weights == (2, 1)
        assert formula_colength(g, Partition.of(2)) == 3


class TestInferWeights:
    def test_crosscap(self):
        assert infer_weights(load("crosscap_mond")) == ((2, 1), (3, 4))

    def test_mixed_degrees(self):
        g = make_germ("m", ["x", "y", "z"], ["x*z+z^3", "y*z^2+z^4+z^3"])
        assert infer_weights(g) is None

    def test_free_variable(self):
        assert infer_weights(make_germ("f", ["x", "z"], ["z^2", "z^3"])) == ((1, 1), (2, 3))

    def test_classification_rows(self):
        assert infer_weights(load("hk_q1")) == ((3, 2, 1), (4, 3))
        assert infer_weights(load("hk_s11_wh")) == ((5, 2, 1), (6, 3))
        assert infer_weights(load("hk_p3_1")) is None


class TestMilnor:
    def test_table_rows(self):
        assert milnor_from_colength(2) == 1
        assert milnor_from_colength(5) == 4

    def test_point(self):
        assert milnor_from_colength(1) == 0

    def test_empty(self):
        with pytest.raises(ValueError):
            milnor_from_colength(0)

    def test_from_result(self):
        res = local_colength(restricted_ideal(load("hk_p4"), Partition.of(2, 1)))
        assert milnor_from_colength(res) == 4


def zero_dim_cases():
    for name in corpus_names():
        g = load(name)
        for P in zero_dimensional_partitions(g.n, g.p):
            yield name, P.parts


@pytest.mark.parametrize("name,parts", list(zero_dim_cases()))
def test_stabilizer_divides_colength(name, parts):
    g, P = load(name), Partition(parts)
    res = local_colength(restricted_ideal(g, P))
    if res.finite:
        assert res.value % stabilizer_order(P) == 0


WH_FINITE = ["crosscap_mond", "ex34", "hk_p1", "hk_p2", "hk_p3_1_wh", "hk_p4", "hk_q1", "hk_q2",
             "hk_s11_wh", "family_z3", "family_z4", "family_z5", "family_z6", "family_z7"]


@pytest.mark.parametrize("name", WH_FINITE)
def test_methods_agree(name):
    g = load(name)
    for P in zero_dimensional_partitions(g.n, g.p):
        rep = count_both(g, P)
        assert rep.method is Method.BOTH and rep.agreement, (name, P, rep)
        assert rep.count * rep.stabilizer == rep.colength


@pytest.mark.parametrize("name", corpus_names())
def test_zero_count_iff_unit(name):
    g = load(name)
    for P in zero_dimensional_partitions(g.n, g.p):
        I = restricted_ideal(g, P)
        rep = count_by_colength(g, P)
        assert (rep.count == 0) == any(q.constant_term() for q in I.generators)


SCALING_FIXTURES = ["ex33", "crosscap_mond", "hk_p2", "hk_r3", "family_z5"]
nonzero = st.fractions(min_value=-3, max_value=3, max_denominator=3).filter(bool)


@settings(max_examples=100)
@given(st.sampled_from(SCALING_FIXTURES), nonzero, st.lists(nonzero, min_size=4, max_size=4))
def test_counts_invariant_under_scaling(name, lam, rest):
    g = load(name)
    h = rescale(g, lam, rest[:g.n - 1], rest[2:])
    for P in zero_dimensional_partitions(g.n, g.p):
        assert count_by_colength(h, P).count == expected(name)["engine"]["counts"][
            ",".join(map(str, P.parts))]
