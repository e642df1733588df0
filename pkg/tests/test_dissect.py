import pytest
from hypothesis import given, settings, strategies as st

from overcubic.dissect import binomial_reduce_check, dissect, extract_progression, reconstruct
from overcubic.eta import eta_power
from overcubic.expr import eval_expr
from overcubic.proofscript import parse_expr
from overcubic.series import Series, SeriesError, substitute_power


def pentagonal_exponents(limit):
    out = {}
    j = 0
    while j * (3 * j - 1) // 2 <= limit:
        for s in {j, -j}:
            out[s * (3 * s - 1) // 2] = (-1) ** j
        j += 1
    return {e: c for e, c in out.items() if e <= limit}


def test_extract_all_ones():
    ones = Series([1] * 21)
    assert extract_progression(ones, 0, 2) == Series([1] * 11)


def test_extract_f1_class_one_mod_five():
    pent = pentagonal_exponents(30)
    expected = [0] * 6
    for e, c in pent.items():
        if e % 5 == 1:
            expected[(e - 1) // 5] = c
    got = extract_progression(eta_power(1, 1, 30), 1, 5)
    assert got.order == 5
    assert list(got.coeffs) == expected
    # exponents 1 and 26 carry signs -1 and +1
    assert expected == [-1, 0, 0, 0, 0, 1]


def test_extract_order_bookkeeping():
    a = Series(range(11))
    assert extract_progression(a, 3, 4).coeffs == (3, 7)
    with pytest.raises(SeriesError):
        extract_progression(a, 4, 4)
    with pytest.raises(SeriesError):
        extract_progression(Series([1, 2]), 3, 5)


def test_two_extractions_give_bt_4n():
    bt = eval_expr(parse_expr("f4^3/(f1^6*f2^3)"), 400, 128)
    twice = extract_progression(extract_progression(bt, 0, 2), 0, 2)
    rhs = eval_expr(parse_expr(
        "32*q*f2^47/(f4*f8^2)*(1/f1^4)^12*(1/f1^2) + 56*q*f2^61*f8^2/f4^15*(1/f1^4)^13*(1/f1^2)"
        " + f2^71/(f4^17*f8^2)*(1/f1^4)^14*(1/f1^2)"), 100, 128)
    assert twice == rhs


def test_reconstruct_examples():
    a = Series([1, 1, 1])
    assert reconstruct(dissect(a, 2), 2) == a
    assert reconstruct([Series([1]), Series([1])], 2) == Series([1, 1])


def test_reconstruct_three_dissection_of_psi():
    n = 300
    even = eval_expr(parse_expr("f6*f9^2/(f3*f18)"), n)
    odd = eval_expr(parse_expr("q*f18^2/f9"), n)
    # the r-th piece lives on exponents r mod 3; pull each back to q^n
    pulled = [extract_progression(even, 0, 3), extract_progression(odd, 1, 3), Series.constant(0, 99)]
    assert extract_progression(even, 1, 3).is_zero() and extract_progression(odd, 0, 3).is_zero()
    whole = reconstruct(pulled, 3, n)
    assert whole == eval_expr(parse_expr("f2^2/f1"), n)


def test_reconstruct_errors():
    with pytest.raises(SeriesError):
        reconstruct([Series([1])], 2)
    with pytest.raises(SeriesError):
        reconstruct([Series([1]), Series([1], modulus=2)], 2)


@pytest.mark.parametrize("m,p,k", [(1, 2, 1), (1, 2, 6), (1, 3, 1)])
def test_binomial_examples(m, p, k):
    r = binomial_reduce_check(m, p, k, 500)
    assert r.passed and r.range_checked == 500


def test_binomial_rejects_composite():
    with pytest.raises(ValueError):
        binomial_reduce_check(1, 4, 1, 10)


def random_series(mod=0):
    elem = st.integers(0, mod - 1) if mod else st.integers(-10 ** 6, 10 ** 6)
    return st.lists(elem, min_size=1, max_size=60).map(lambda cs: Series(cs, modulus=mod))


@given(random_series(), st.sampled_from([2, 3, 4, 8]))
def test_round_trip(a, m):
    if a.order + 1 < m:
        return
    assert reconstruct(dissect(a, m), m, a.order) == a


@given(st.lists(st.integers(-99, 99), min_size=40, max_size=40),
       st.lists(st.integers(-99, 99), min_size=40, max_size=40),
       st.integers(2, 8), st.data())
def test_linearity(xs, ys, m, data):
    r = data.draw(st.integers(0, m - 1))
    a, b = Series(xs), Series(ys)
    assert extract_progression(a + b, r, m) == extract_progression(a, r, m) + extract_progression(b, r, m)


@given(st.lists(st.integers(-99, 99), min_size=1, max_size=20), st.integers(2, 6),
       st.integers(0, 12), st.data())
def test_extract_of_shifted_substitution(xs, m, s, data):
    r = data.draw(st.integers(0, m - 1))
    a = Series(xs)
    order = m * (a.order + 1) - 1
    b = substitute_power(a, m, order).shift(s) if s <= order else None
    if b is None:
        return
    got = extract_progression(b, r, m)
    if s % m != r:
        assert got.is_zero()
    else:
        shift = (s - r) // m
        assert got == a.shift(shift).truncate(got.order)


@settings(deadline=None, max_examples=10)
@given(st.sampled_from([(p, k) for p in (2, 3) for k in range(1, 9) if p ** k <= 384]),
       st.integers(1, 8))
def test_binomial_property_sample(pk, m):
    assert binomial_reduce_check(m, pk[0], pk[1], 200).passed
