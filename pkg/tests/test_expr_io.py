import json
from fractions import Fraction

import pytest

from gradedjets import Signature, d_H, delta, dx, parse, parse_derivation, parse_expr, print_value, theta, var, vol
from gradedjets.expr_io import (
    ArityError,
    DSLSyntaxError,
    LexError,
    ResolutionError,
    format_report,
    print_derivation,
)


class TestParse:
    def test_lagrangian(self, s1):
        prog = parse("dim 1 field y:even 1/2*y[0]^2*vol")
        assert prog.signature == s1
        assert prog.evaluate() == Fraction(1, 2) * var(s1, "y", [0]) ** 2 * vol(s1)

    def test_odd_lagrangian(self, s1odd):
        prog = parse("dim 1 field c:odd c[]*c[0]*vol")
        assert prog.evaluate() == var(s1odd, "c") * var(s1odd, "c", [0]) * vol(s1odd)

    def test_multi_index_order_insensitive(self):
        sig = Signature(2, (("y", 0),))
        assert parse_expr("y[10]", sig) == parse_expr("y[01]", sig)

    def test_operators(self, s1):
        y = var(s1, "y")
        assert parse_expr("d_H(y^2)", s1) == d_H(y ** 2)
        assert parse_expr("d0(y)", s1) == var(s1, "y", [0])
        assert parse_expr("delta(1/2*y[0]^2*vol)", s1) == delta(Fraction(1, 2) * var(s1, "y", [0]) ** 2 * vol(s1))
        assert parse_expr("d(y)", s1) == parse_expr("y[0]*dx0 + theta(y,[])", s1)

    def test_wedge_and_precedence(self, s2):
        assert parse_expr("dx0 ^w dx1", s2) == vol(s2)
        assert parse_expr("-y*dx0 + 2", s2) == -(var(s2, "y") * dx(s2, 0)) + 2
        assert parse_expr("(y + 1)^2", s2) == (var(s2, "y") + 1) ** 2
        assert parse_expr("x1*y", s2) == parse_expr("y * x1", s2)

    def test_comments_and_newlines(self, s1):
        prog = parse("dim 1\nfield y : even  # chart\n y[0]\n  + 1")
        assert prog.evaluate() == var(s1, "y", [0]) + 1


class TestErrors:
    def test_unclosed_bracket_column(self):
        with pytest.raises(DSLSyntaxError) as info:
            parse("dim 1 field y:even y[0")
        assert (info.value.line, info.value.col) == (1, 21)

    def test_lexical(self):
        with pytest.raises(LexError):
            parse("dim 1 field y:even y $ 2")
        with pytest.raises(LexError):
            parse("dim 1 field y:even 0.5*y")

    def test_resolution(self):
        with pytest.raises(ResolutionError) as info:
            parse("dim 1 field y:even z[0]")
        assert info.value.col == 20
        with pytest.raises(ResolutionError):
            parse("dim 1 field y:even y[1]")
        with pytest.raises(ResolutionError):
            parse("dim 1 field y:even foo(y)")

    def test_arity(self):
        with pytest.raises(ArityError):
            parse("dim 1 field y:even d_H(y, y)")
        with pytest.raises(ArityError):
            parse("dim 1 field y:even theta(y)")

    def test_syntax(self):
        with pytest.raises(DSLSyntaxError):
            parse("dim 1 field y:even y +")
        with pytest.raises(DSLSyntaxError):
            parse("field y:even y")
        with pytest.raises(DSLSyntaxError):
            parse("dim 1 field y:maybe y")

    def test_categories_are_distinct(self):
        kinds = {LexError, DSLSyntaxError, ResolutionError, ArityError}
        assert len({k.category for k in kinds}) == 4


class TestPrint:
    def test_examples(self, s1):
        assert print_value(Fraction(1, 2) * var(s1, "y", [0]) ** 2) == "1/2*y[0]^2"
        form = -(var(s1, "y", [0, 0]) * theta(s1, "y") * vol(s1))
        assert print_value(form) == "-1*y[00]*theta(y,[])^w vol"
        assert print_value(var(s1, "y") ** 2) == "y^2"
        assert print_value(0 * vol(s1)) == "0"

    def test_sums(self, s2):
        p = var(s2, "y") - 2 * var(s2, "y", [1]) * dx(s2, 0)
        text = print_value(p)
        assert text == "y - 2*y[1]*dx0"
        assert parse_expr(text, s2) == p

    CORPUS = [
        "1/2*y[0]^2*vol", "c*c[0]*vol", "y[01]*theta(c,[1])^w dx0", "-3*x0*y^3 + 2/3*c[11]*c",
        "theta(c,[])^w theta(c,[])^w vol", "d_H(y*theta(y,[0]))", "delta(c*c[0]*y[1]*vol)",
        "(y + c*c[1])^2", "d1(y[0]*x1)", "dx1 ^w dx0", "7", "0", "-y", "u*u[0] - u[0]*u",
        "d(y^2*dx0)", "2*theta(y,[01])^w theta(u,[]) ^w dx0",
    ]

    @pytest.mark.parametrize("text", CORPUS)
    def test_print_parse_print(self, text):
        sig = Signature(2, (("y", 0), ("c", 1), ("u", 0)))
        value = parse_expr(text, sig)
        printed = print_value(value)
        again = parse_expr(printed, sig)
        assert again == value
        assert print_value(again) == printed

    def test_derivation_round_trip(self, mixed):
        v = parse_derivation("deriv { dx0: c; y: c*y; c: y[1] }", mixed)
        assert v.parity == 1
        assert parse_derivation(print_derivation(v), mixed) == v

    def test_derivation_errors(self, mixed):
        with pytest.raises(ResolutionError):
            parse_derivation("deriv { z: 1 }", mixed)
        with pytest.raises(ResolutionError):
            parse_derivation("deriv { y: c; c: c }", mixed)


class TestReports:
    def test_text_header(self, s1):
        text = format_report("el", s1, {"E_y": -var(s1, "y", [0, 0])})
        lines = text.splitlines()
        assert lines[0] == "command: el"
        assert "odd_partial=left" in lines[1] and "base_index=0-based" in lines[1]
        assert "E_y: -1*y[00]" in lines

    def test_json_fields(self, s1):
        doc = json.loads(format_report("el", s1, {"E_y": var(s1, "y")}, {"c": vol(s1)}, fmt="json"))
        assert set(doc) >= {"signature", "result", "certificates"}
        assert doc["result"]["E_y"] == "y"
        assert doc["certificates"]["c"] == "vol"

    def test_deterministic(self, mixed):
        value = parse_expr("u*y + c*c[0] + y[1]*u[0]*u + x1", mixed)
        a = format_report("x", mixed, {"v": value}, fmt="json")
        b = format_report("x", mixed, {"v": parse_expr(print_value(value), mixed)}, fmt="json")
        assert a == b
