import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fsbench.ordinals import (
    EMPTY,
    OMEGA,
    ZERO,
    FiniteOrdinalSet,
    Ordinal,
    OrdinalDomainError,
    OrdinalError,
    add,
    cmp,
    is_head_tail_tail,
    nat,
    omega,
    ordinal,
    otp_below,
    sigma,
    sigma_inverse,
)


def below_omega_omega():
    """Ordinals below ω^ω as (coefficient of ω^4, ..., coefficient of ω^0)."""
    return st.lists(st.integers(0, 6), min_size=5, max_size=5)


def build(coefficients):
    value = ZERO
    for exponent, c in zip(range(len(coefficients) - 1, -1, -1), coefficients):
        if c:
            value = add(value, omega(exponent, c))
    return value


def polynomial_value(coefficients, base=10**6):
    total = 0
    for c in coefficients:
        total = total * base + c
    return total


ordinals = below_omega_omega().map(build)


# examples


def test_cmp_examples():
    assert cmp(OMEGA, 3) == 1
    w2_1 = ordinal("w*2+1")
    assert cmp(w2_1, Ordinal.parse("w*2+1")) == 0
    assert cmp(omega(2), ordinal("w*5+7")) == 1


def test_add_examples():
    assert add(1, OMEGA) == OMEGA
    assert str(add(OMEGA, 1)) == "w+1"
    assert add(ordinal("w+3"), ordinal("w*2")) == ordinal("w*3")


def test_otp_below_examples():
    lam = FiniteOrdinalSet([1, "w", "w+5", "w^2"])
    assert otp_below(lam, "w+5") == 2
    assert otp_below(lam, 0) == 0
    assert otp_below(lam, "w^2+1") == 4


def test_sigma_examples():
    z = FiniteOrdinalSet([3, "w", "w^2+1"])
    assert sigma(z, 1) == OMEGA
    assert sigma_inverse(z, "w^2+1") == 2
    with pytest.raises(OrdinalDomainError):
        sigma(EMPTY, 0)
    with pytest.raises(OrdinalDomainError):
        sigma_inverse(z, 4)


def test_head_tail_tail_examples():
    assert is_head_tail_tail([{0, 1, 5, 6}, {0, 1, 8, 9}], {0, 1})
    assert not is_head_tail_tail([{0, 1, 5, 9}, {0, 1, 6, 8}], {0, 1})
    assert not is_head_tail_tail([{2, 5}, {1, 2}], {2})


# text form


@pytest.mark.parametrize("text", ["0", "7", "w", "w+1", "w*2+3", "w^2*3+w+4", "w^(w)", "w^(w+1)*2+w^3+5", "w^(w^2)"])
def test_canonical_text_round_trip(text):
    assert str(Ordinal.parse(text)) == text
    assert Ordinal.parse(str(Ordinal.parse(text))) == Ordinal.parse(text)


@pytest.mark.parametrize("text", ["", "w+*1", "x", "w^", "1+", "w*0", "w^(w"])
def test_malformed_text_rejected(text):
    with pytest.raises(OrdinalError):
        Ordinal.parse(text)


def test_depth_limit():
    deep = "w^(w^(w^(w^(w^w))))"
    with pytest.raises(OrdinalError):
        Ordinal.parse(deep)


def test_text_normalizes_non_canonical_sums():
    assert str(Ordinal.parse("w^w")) == "w^(w)"
    assert str(Ordinal.parse("3+w")) == "w"
    assert str(Ordinal.parse("w+w")) == "w*2"


# properties


@settings(max_examples=300)
@given(below_omega_omega(), below_omega_omega())
def test_order_matches_polynomial_oracle(a, b):
    x, y = build(a), build(b)
    assert cmp(x, y) == (polynomial_value(a) > polynomial_value(b)) - (polynomial_value(a) < polynomial_value(b))


@settings(max_examples=300)
@given(ordinals, ordinals, ordinals)
def test_cmp_total_order(a, b, c):
    assert cmp(a, b) == -cmp(b, a)
    if cmp(a, b) <= 0 and cmp(b, c) <= 0:
        assert cmp(a, c) <= 0
    assert (cmp(a, b) == 0) == (a == b)


@settings(max_examples=300)
@given(ordinals, ordinals, ordinals)
def test_add_laws(a, b, c):
    assert add(add(a, b), c) == add(a, add(b, c))
    assert cmp(a, add(a, b)) <= 0
    assert add(a, ZERO) == a == add(ZERO, a)


@given(ordinals, st.integers(1, 5))
def test_add_finite_on_right_is_successor_chain(a, n):
    value = a
    for _ in range(n):
        value = add(value, 1)
    assert value == add(a, n)


@given(st.lists(ordinals, max_size=8))
def test_sigma_bijective_and_increasing(elements):
    z = FiniteOrdinalSet(elements)
    images = [sigma(z, i) for i in range(len(z))]
    assert images == sorted(set(elements))
    assert all(sigma_inverse(z, a) == i for i, a in enumerate(images))


@given(st.lists(ordinals, max_size=8), ordinals)
def test_otp_below_complement(elements, alpha):
    lam = FiniteOrdinalSet(elements)
    assert otp_below(lam, alpha) + sum(1 for b in lam if cmp(b, alpha) >= 0) == len(lam)


@given(st.lists(ordinals, max_size=6), st.lists(ordinals, max_size=6))
def test_set_algebra_matches_python_sets(xs, ys):
    a, b = FiniteOrdinalSet(xs), FiniteOrdinalSet(ys)
    assert set(a | b) == set(xs) | set(ys)
    assert set(a & b) == set(xs) & set(ys)
    assert set(a - b) == set(xs) - set(ys)
    assert set(a ^ b) == set(xs) ^ set(ys)
    assert list(a | b) == sorted(set(xs) | set(ys))
    assert a.issubset(a | b)


@given(st.lists(ordinals, max_size=6))
def test_set_json_round_trip(xs):
    s = FiniteOrdinalSet(xs)
    assert FiniteOrdinalSet.from_json(s.to_json()) == s


def test_naturals_and_transfinite_mix():
    s = FiniteOrdinalSet([OMEGA, 5, nat(2), "w+1"])
    assert [str(a) for a in s] == ["2", "5", "w", "w+1"]
    assert s.max() == ordinal("w+1")
    assert s.sup() == s.max()
    assert nat(5).is_natural() and not OMEGA.is_natural()
