"""Property tests: hypothesis drives the random instance generator of every suite."""

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from gradedjets import Signature, d_H, parse_expr, print_value, theta
from gradedjets.selftest import SUITES, ParserSuite, RandomInstances, shrink, theta_witnesses

COMMON = settings(max_examples=30, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@pytest.mark.parametrize("suite_cls", SUITES + [ParserSuite], ids=lambda c: c.name)
@COMMON
@given(rng=st.randoms(use_true_random=False), trial=st.integers(0, 3), order=st.integers(1, 3))
def test_suite_invariants(suite_cls, rng, trial, order):
    suite = suite_cls(order)
    case = suite.draw(RandomInstances(rng, max_order=order), trial)
    assert suite.check(case) == []


@COMMON
@given(rng=st.randoms(use_true_random=False), k=st.integers(0, 2))
def test_print_is_canonical(rng, k):
    gen = RandomInstances(rng)
    sig = gen.signature()
    phi = gen.form(sig, k, rng.randint(0, sig.n))
    text = print_value(phi)
    assert parse_expr(text, sig) == phi
    assert print_value(parse_expr(text, sig)) == text


def test_theta_witnesses():
    w = theta_witnesses()
    assert w["even"] == 0
    assert w["odd"] != 0


def test_shrinker_minimizes():
    sig = Signature(2, (("y", 0),))
    big = parse_expr("y[011]*theta(y,[0])^w dx0 + y*y[1]*dx1 + 3*theta(y,[11])^w dx1", sig)

    def fails(case):
        # "failure" whenever some term carries a contact factor
        return any(k > 0 for k, _ in case["phi"].bidegrees())

    small = shrink({"phi": big}, fails)["phi"]
    assert fails({"phi": small})
    assert len(small.terms) == 1
    assert small.jet_order() == 0


def test_round_trip_after_d_H():
    sig = Signature(2, (("y", 0), ("c", 1)))
    phi = d_H(theta(sig, "c", [1]) * parse_expr("c*y[0]", sig))
    assert parse_expr(print_value(phi), sig) == phi
