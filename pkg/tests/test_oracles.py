"""Cross-checks against an independent engine (sympy) for even fields."""

import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.calculus.euler import euler_equations

from gradedjets import Signature, d_H, euler_lagrange, var, vol
from gradedjets.algebra import BASE, FIELD
from gradedjets.selftest import RandomInstances


def to_sympy(p, sig, xs, funcs):
    out = sp.Integer(0)
    for mono, c in p.terms.items():
        term = sp.Rational(c.numerator, c.denominator)
        for g, e in mono:
            if g[0] == BASE:
                atom = xs[g[1]]
            elif g[0] == FIELD:
                idx = [xs[mu] for mu, k in enumerate(g[2]) for _ in range(k)]
                atom = funcs[g[1]]
                if idx:
                    atom = sp.Derivative(atom, *idx)
            else:
                raise AssertionError("form generator in a function")
            term *= atom ** e
        out += term
    return out


def sympy_el(lag, sig):
    xs = sp.symbols(f"x0:{sig.n}")
    funcs = [sp.Function(name)(*xs) for name, _ in sig.fields]
    expr = to_sympy(lag, sig, xs, funcs)
    out = []
    z = sp.Symbol("z_probe")
    for f in funcs:
        # sympy drops equations that collapse to a constant (0 = 0 or 3 = 0);
        # the probe term z*f keeps every equation symbolic
        (eq,) = euler_equations(expr + z * f, [f], xs)
        out.append(sp.expand(eq.lhs - eq.rhs - z))
    return out, xs, funcs


def check_against_sympy(lag, sig):
    expected, xs, funcs = sympy_el(lag, sig)
    got = euler_lagrange(lag * vol(sig))
    for fid, (name, _) in enumerate(sig.fields):
        mine = sp.expand(to_sympy(got.components[name], sig, xs, funcs))
        assert sp.simplify(mine - expected[fid]) == 0, name


def test_free_field_matches_sympy():
    sig = Signature(1, (("y", 0),))
    lag = Fraction(1, 2) * var(sig, "y", [0]) ** 2
    (eq,), xs, (y,) = sympy_el(lag, sig)
    assert sp.simplify(eq + sp.Derivative(y, xs[0], xs[0])) == 0
    check_against_sympy(lag, sig)


@settings(max_examples=40, deadline=None)
@given(st.randoms(use_true_random=False), st.integers(1, 2), st.integers(1, 2))
def test_random_even_lagrangians_match_sympy(rng, n, nfields):
    sig = Signature(n, tuple((name, 0) for name in ("y", "u")[:nfields]))
    gen = RandomInstances(rng, max_order=2, max_degree=3)
    lag = gen.poly(sig, terms=3, min_degree=1)
    check_against_sympy(lag, sig)


@settings(max_examples=25, deadline=None)
@given(st.randoms(use_true_random=False))
def test_total_divergence_has_zero_sympy_el(rng):
    sig = Signature(2, (("y", 0),))
    gen = RandomInstances(rng, max_order=2, max_degree=3)
    eta = gen.form(sig, 0, 1, terms=2)
    L = d_H(eta)
    coeff = next(iter(L.coefficient_split().values()), None) if L else None
    if coeff is None:
        return
    expected, _, _ = sympy_el(coeff, sig)
    assert all(sp.simplify(e) == 0 for e in expected)


@pytest.mark.parametrize("seed", range(5))
def test_second_order_two_fields(seed):
    rng = random.Random(seed)
    sig = Signature(2, (("y", 0), ("u", 0)))
    gen = RandomInstances(rng, max_order=3, max_degree=2)
    check_against_sympy(gen.poly(sig, terms=4, min_degree=1), sig)
