from __future__ import annotations

import json

import pytest

from corpus import FIXTURES, corpus_names, load
from germcount.germparse import (
    Corank,
    GermError,
    ParseError,
    corank_check,
    make_germ,
    parse_germ_file,
    parse_polynomial,
)
from germcount.polyring import VariableContext, format_polynomial

R = VariableContext(("x", "y", "z", "v", "w"))


class TestParsePolynomial:
    def test_three_terms(self):
        p = parse_polynomial("x^2*z + z^6 + z^7", R)
        assert len(p) == 3
        assert p == R.var("x") ** 2 * R.var("z") + R.var("z") ** 6 + R.var("z") ** 7

    def test_expansion(self):
        got = parse_polynomial("-(z - v)*(z - w)", R)
        assert got == parse_polynomial("-z^2 + z*v + z*w - v*w", R)

    def test_rational_literals(self):
        assert parse_polynomial("3/6*x", R) == R.var("x").scale(parse_polynomial("1/2", R).constant_term())

    def test_syntax_error_position(self):
        with pytest.raises(ParseError) as info:
            parse_polynomial("x + + y", R)
        assert (info.value.line, info.value.column) == (1, 5)

    def test_line_tracking(self):
        with pytest.raises(ParseError) as info:
            parse_polynomial("x\n+ )", R)
        assert (info.value.line, info.value.column) == (2, 3)

    @pytest.mark.parametrize("text", ["x^0", "x^y", "x^-1", "x^(2)"])
    def test_bad_exponent(self, text):
        with pytest.raises(ParseError, match="exponent"):
            parse_polynomial(text, R)

    def test_unknown_identifier(self):
        with pytest.raises(ParseError, match="unknown identifier"):
            parse_polynomial("q + 1", R)

    def test_no_implicit_multiplication(self):
        with pytest.raises(ParseError):
            parse_polynomial("2x", R)

    def test_power_binds_tighter_than_unary_minus(self):
        assert parse_polynomial("-x^2", R) == -(R.var("x") ** 2)

    def test_bindings(self):
        p = parse_polynomial("a*z^3 + z", R, {"a": 2})
        assert p == R.var("z") ** 3 * 2 + R.var("z")


class TestGermFile:
    def crosscap(self, **extra):
        obj = {"name": "cc", "vars": ["x", "y"], "components": ["x*y+y^3", "y^4"]}
        obj.update(extra)
        return json.dumps(obj).encode()

    def test_degrees_inferred(self):
        g = parse_germ_file(self.crosscap(weights=[2, 1]))
        assert (g.n, g.p) == (2, 3)
        assert g.degrees == (3, 4)

    def test_inconsistent_weights(self):
        with pytest.raises(GermError, match="not weighted homogeneous"):
            parse_germ_file(self.crosscap(weights=[1, 1]))

    def test_declared_degrees_checked(self):
        with pytest.raises(GermError, match="disagree"):
            parse_germ_file(self.crosscap(weights=[2, 1], degrees=[3, 5]))

    def test_constant_term(self):
        data = json.dumps({"name": "c", "vars": ["x", "z"], "components": ["1+z", "z^2"]})
        with pytest.raises(GermError, match="constant term"):
            parse_germ_file(data.encode())

    def test_n_not_below_p(self):
        data = json.dumps({"name": "c", "vars": ["x", "z"], "components": ["z^2"]})
        with pytest.raises(GermError, match="n >= p"):
            parse_germ_file(data.encode())

    @pytest.mark.parametrize("payload", [
        b"\xff\xfe", b"[1, 2]", b'{"vars": ["z"], "components": ["z^2", "z^3"]}',
        b'{"name": "a", "vars": ["z"], "components": ["z^2", "z^3"], "colour": 1}',
        b'{"name": "a", "vars": ["z"], "components": ["z^2", 3]}',
        b'{"name": "a", "vars": ["z"], "components": ["z^2", "z^3"], "weights": [0]}',
    ])
    def test_schema_violations(self, payload):
        with pytest.raises(GermError):
            parse_germ_file(payload)

    def test_bad_expression_is_germ_error(self):
        data = json.dumps({"name": "a", "vars": ["z"], "components": ["z^2", "z +"]})
        with pytest.raises(GermError, match="bad component"):
            parse_germ_file(data)

    def test_parameters_need_bindings(self):
        with pytest.raises(GermError):
            load("family")
        g = load("family", a1=0, a2=0, a3=1, a4=0, a5=0, a6=0, a7=0)
        assert g.components[1] == parse_polynomial("y*z^2+z^3", g.ring)


class TestCorank:
    def test_crosscap_type(self):
        assert corank_check(make_germ("a", ["x", "y"], ["x*y+y^3", "y^4"])) is Corank.SINGULAR

    def test_immersion(self):
        assert corank_check(make_germ("b", ["x", "z"], ["z", "z^2"])) is Corank.IMMERSIVE

    def test_cusp_type(self):
        assert corank_check(make_germ("c", ["x", "z"], ["z^2", "z^3"])) is Corank.SINGULAR


@pytest.mark.parametrize("name", corpus_names())
def test_fixture_round_trip(name):
    g = load(name)
    for h in g.components:
        assert parse_polynomial(format_polynomial(h), g.ring) == h
    assert corank_check(g) is Corank.SINGULAR


def test_every_fixture_file_is_listed():
    assert len(corpus_names()) == len(list(FIXTURES.glob("*.json"))) - 1
