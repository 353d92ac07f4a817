import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import cgauss, unitary
from youngbench.errors import BadExponent, DominanceViolated, NegativeEntry
from youngbench.norms import (
    NormDescriptor,
    Witness,
    check_strictly_increasing_witness,
    evaluate_norm,
    gauge,
    parse_norm,
    parse_norms,
    rearrange_decreasing,
)

OP = NormDescriptor("operator")
DYADIC = NormDescriptor("dyadic")
ALL_KINDS = [OP, NormDescriptor("schatten", 1.0), NormDescriptor("schatten", 2.0), NormDescriptor("schatten", 4.5),
             NormDescriptor("kyfan", 1), NormDescriptor("kyfan", 3), DYADIC]


@pytest.mark.parametrize(
    "v, expected",
    [((1, 3, 2), (3, 2, 1)), ((0, 0), (0, 0)), ((0.5, 3, 0.5), (3, 0.5, 0.5))],
)
def test_rearrange_decreasing(v, expected):
    assert tuple(rearrange_decreasing(v)) == expected


def test_rearrange_rejects_negative():
    with pytest.raises(NegativeEntry):
        rearrange_decreasing([1, -1])


def test_strictness_flags():
    assert NormDescriptor("schatten", 1.0).strictly_increasing
    assert NormDescriptor("schatten", 7.0).strictly_increasing
    assert DYADIC.strictly_increasing
    assert not OP.strictly_increasing
    assert not NormDescriptor("kyfan", 2).strictly_increasing
    assert not NormDescriptor("schatten", float("inf")).strictly_increasing


def test_parse_roundtrip():
    for text in ("op", "schatten:2", "schatten:1.5", "kyfan:3", "dyadic"):
        assert parse_norm(text).label == text
    assert parse_norms("op, dyadic") == [OP, DYADIC]
    with pytest.raises(BadExponent):
        parse_norm("schatten:0.5")
    with pytest.raises(BadExponent):
        parse_norm("kyfan:0")
    with pytest.raises(ValueError):
        parse_norm("frobenius")


def test_evaluate_examples():
    assert evaluate_norm(NormDescriptor("schatten", 2.0), np.diag([3.0, 4.0])) == pytest.approx(5.0)
    assert evaluate_norm(OP, np.diag([2.0, 7.0])) == pytest.approx(7.0)
    # 3*1 + 0.5*1/2 + 0.25*1/4
    expected = 3 * 1 + 0.5 * 0.5 + 0.25 * 0.25
    assert expected == 3.3125
    m = unitary(np.random.default_rng(3), 3) @ np.diag([0.25, 3.0, 0.5])
    assert evaluate_norm(DYADIC, m) == pytest.approx(3.3125, abs=1e-14)


def test_kyfan_beyond_dimension_sums_everything():
    assert gauge(NormDescriptor("kyfan", 10), [1, 2, 3]) == 6


def test_large_schatten_exponent_does_not_overflow():
    assert gauge(NormDescriptor("schatten", 400.0), [1e3, 1e3]) == pytest.approx(1e3 * 2 ** (1 / 400))


@pytest.mark.parametrize(
    "d, a, b, expected",
    [
        (OP, (1, 0), (1, 1), Witness.VIOLATION),
        (DYADIC, (1, 0), (1, 1), Witness.CONSISTENT),
        (NormDescriptor("kyfan", 1), (2, 0, 0), (2, 1, 1), Witness.VIOLATION),
        (NormDescriptor("schatten", 2.0), (1, 0), (1, 1), Witness.CONSISTENT),
        (OP, (0.3, 0.2), (0.3, 0.2), Witness.CONSISTENT),
        (DYADIC, (0.3, 0.2), (0.3, 0.2), Witness.CONSISTENT),
    ],
)
def test_strictness_witness(d, a, b, expected):
    assert check_strictly_increasing_witness(d, a, b) is expected


def test_witness_requires_dominance():
    with pytest.raises(DominanceViolated):
        check_strictly_increasing_witness(DYADIC, (2, 0), (1, 1))


@pytest.mark.parametrize("d", ALL_KINDS, ids=str)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 7))
def test_norm_axioms(d, seed, n):
    rng = np.random.default_rng(seed)
    x, y = cgauss(rng, n), cgauss(rng, n)
    c = complex(*rng.standard_normal(2))
    nx, ny = evaluate_norm(d, x), evaluate_norm(d, y)
    assert evaluate_norm(d, x + y) <= (nx + ny) * (1 + 1e-12)
    assert evaluate_norm(d, c * x) == pytest.approx(abs(c) * nx, rel=1e-12)
    u, v = unitary(rng, n), unitary(rng, n)
    assert abs(evaluate_norm(d, u @ x @ v) - nx) <= 1e-8 * nx


@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 7))
def test_norm_orderings(seed, n):
    x = cgauss(np.random.default_rng(seed), n)
    op = evaluate_norm(OP, x)
    assert evaluate_norm(NormDescriptor("kyfan", 1), x) == pytest.approx(op, rel=1e-14)
    s1 = evaluate_norm(NormDescriptor("schatten", 1.0), x)
    s2 = evaluate_norm(NormDescriptor("schatten", 2.0), x)
    assert s1 >= s2 * (1 - 1e-12) and s2 >= op * (1 - 1e-12)
    assert s2 == pytest.approx(np.linalg.norm(x), rel=1e-12)


@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 9), zeros=st.integers(0, 3))
def test_dyadic_never_violates(seed, n, zeros):
    rng = np.random.default_rng(seed)
    b = rng.uniform(0, 1, n)
    a = b * rng.uniform(0, 1, n)
    a[rng.permutation(n)[:zeros]] = 0.0
    assert check_strictly_increasing_witness(DYADIC, a, b) is Witness.CONSISTENT
    assert check_strictly_increasing_witness(NormDescriptor("schatten", 3.0), a, b) is Witness.CONSISTENT
