from __future__ import annotations

from itertools import product
from math import prod

import pytest
from hypothesis import given
from hypothesis import strategies as st

from corpus import load
from germcount.colength import ColengthResult, eliminate_linear, jet_quotient_dim, local_colength
from germcount.germparse import parse_polynomial
from germcount.partition import Partition
from germcount.polyring import VariableContext
from germcount.schemes import restricted_ideal

R2 = VariableContext(("x", "y"))
R3 = VariableContext(("x", "y", "z"))


def gens(ring, *texts):
    return [parse_polynomial(t, ring) for t in texts]


class TestJetQuotient:
    def test_maximal_ideal(self):
        assert jet_quotient_dim(gens(R2, "x", "y"), 3) == 1

    def test_monomial_staircase(self):
        assert jet_quotient_dim(gens(R2, "x^2", "y^3"), 10) == 6

    def test_elimination_example(self):
        assert jet_quotient_dim(gens(R2, "x+3*y^2", "4*y^3"), 6) == 3

    def test_order_one(self):
        assert jet_quotient_dim(gens(R2, "x*y"), 1) == 1

    def test_bad_order(self):
        with pytest.raises(ValueError):
            jet_quotient_dim(gens(R2, "x"), 0)


class TestLocalColength:
    def test_double_fold_type(self):
        I = restricted_ideal(load("ex33"), Partition.of(2))
        assert local_colength(I) == ColengthResult.Finite(6, 24, local_colength(I).stabilized_at, None, 2)
        assert local_colength(I).value == 6

    def test_not_zero_dimensional(self):
        for bound in (5, 12):
            res = local_colength(gens(R2, "x*y"), bound)
            assert not res.finite and res.bound == bound and str(res) == f"NotFiniteUpTo({bound})"

    def test_crosscap_oracle(self):
        res = local_colength(gens(R2, "x+3*y^2", "4*y^3"))
        assert res.value == 3

    def test_unit_gives_zero(self):
        assert local_colength(gens(R2, "1+x", "y^5")).value == 0

    def test_only_local_points_count(self):
        # y(y-1) has a second root away from the origin
        assert local_colength(gens(R2, "x", "y^2-y")).value == 1

    def test_basis_size(self):
        res = local_colength(gens(R3, "x^2", "y^2", "z^3", "x*y*z"), with_basis=True)
        assert res.value == len(res.quotient_basis) == 10

    def test_basis_lives_in_original_ring(self):
        res = local_colength(gens(R3, "x - y^2", "y^3", "z"), with_basis=True)
        assert res.value == 3
        assert sorted(res.quotient_basis) == [(0, 0, 0), (0, 1, 0), (0, 2, 0)]

    def test_bound_validated(self):
        with pytest.raises(ValueError):
            local_colength(gens(R2, "x"), 1)

    def test_stabilized_within_bound(self):
        res = local_colength(gens(R2, "x^5", "y^7"), max_jet=12)
        assert res.finite and res.stabilized_at <= 12
        assert not local_colength(gens(R2, "x^5", "y^7"), max_jet=8).finite


class TestElimination:
    def test_removes_linear_variable(self):
        out = eliminate_linear(gens(R3, "x - y^2 - z^3", "x*y + z^2", "y^4"))
        assert out[0].ring.names == ("y", "z")

    def test_keeps_last_variable(self):
        out = eliminate_linear(gens(R2, "x", "y"))
        assert out[0].ring.nvars == 1

    def test_non_constant_coefficient_not_used(self):
        g = gens(R2, "x*(1+y) + y^2", "y^3")
        assert eliminate_linear(g)[0].ring == R2


def staircase(exps_list, nvars, box):
    return sum(1 for m in product(*[range(b) for b in box])
               if not any(all(a >= e for a, e in zip(m, g)) for g in exps_list))


@st.composite
def monomial_ideals(draw):
    n = draw(st.integers(1, 3))
    pure = [draw(st.integers(1, 5)) for _ in range(n)]
    gens_ = [tuple(a if j == i else 0 for j in range(n)) for i, a in enumerate(pure)]
    for _ in range(draw(st.integers(0, 3))):
        gens_.append(tuple(draw(st.integers(0, 4)) for _ in range(n)))
    gens_ = [g for g in gens_ if any(g)]
    return n, pure, gens_


@given(monomial_ideals())
def test_staircase_oracle(data):
    n, pure, exps = data
    ring = VariableContext(tuple(f"u{i}" for i in range(n)))
    I = [ring.monomial(e) for e in exps]
    assert local_colength(I, with_basis=True).value == staircase(exps, n, pure)
    assert local_colength(I, eliminate=False).value == staircase(exps, n, pure)


@given(monomial_ideals(), st.lists(st.integers(-3, 3), min_size=6, max_size=6))
def test_jets_monotone_and_stable(data, coeffs):
    n, pure, exps = data
    ring = VariableContext(tuple(f"u{i}" for i in range(n)))
    I = [ring.monomial(e) for e in exps]
    # mix the generators so the ideal is no longer monomial
    if len(I) >= 2:
        I[0] = I[0] + I[1] * ring.monomial([1] + [0] * (n - 1), coeffs[0] or 1)
    res = local_colength(I, eliminate=False)
    assert res.finite
    dims = [jet_quotient_dim(I, N) for N in range(1, res.stabilized_at + 3)]
    assert all(a <= b for a, b in zip(dims, dims[1:]))
    assert all(d == res.value for d in dims[res.stabilized_at - 2:])


@st.composite
def triangular_wh_sequences(draw):
    """x_i^e_i + (weighted-homogeneous terms in later variables): a regular sequence."""
    m = draw(st.integers(1, 3))
    w = [draw(st.integers(1, 3)) for _ in range(m)]
    e = [draw(st.integers(1, 4)) for _ in range(m)]
    ring = VariableContext(tuple(f"u{i}" for i in range(m)), tuple(w))
    polys = []
    for i in range(m):
        d = w[i] * e[i]
        p = ring.monomial([e[i] if j == i else 0 for j in range(m)])
        later = range(i + 1, m)
        for exps in product(*[range(d // w[j] + 1) for j in later]):
            if exps and sum(a * w[j] for a, j in zip(exps, later)) == d:
                c = draw(st.integers(-3, 3))
                full = [0] * (i + 1) + list(exps)
                p = p + ring.monomial(full, c)
        polys.append(p)
    degrees = [w[i] * e[i] for i in range(m)]
    return polys, degrees, w


@given(triangular_wh_sequences())
def test_weighted_bezout(data):
    polys, degrees, w = data
    assert local_colength(polys).value == prod(degrees) // prod(w)


@given(st.integers(-4, 4).filter(bool), st.integers(-4, 4))
def test_row_operations_and_units(c, d):
    I = gens(R3, "x*z + z^3", "y*z^2 + z^5 + x^2", "y^2 - x*z")
    base = local_colength(I).value
    assert base is not None
    x = R3.var("x")
    J = [I[0] + I[1].scale(d) * x, I[1].scale(c) * (R3.one() + x), I[2] + I[0] * R3.var("y")]
    assert local_colength(J).value == base
