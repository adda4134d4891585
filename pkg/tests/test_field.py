import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from m5gb.field import FieldError, PrimeField, inv, normalize

F = PrimeField(101)
elems = st.integers(0, 100)


@pytest.mark.parametrize("x, expected", [(102, 1), (-1, 100), (0, 0)])
def test_normalize(x, expected):
    assert normalize(x, 101) == expected
    assert F.normalize(x) == expected


@pytest.mark.parametrize("a, expected", [(1, 1), (2, 51), (100, 100)])
def test_inv(a, expected):
    assert F.inv(a) == expected
    assert inv(a, 101) == expected


def test_inv_zero():
    with pytest.raises(ZeroDivisionError, match="division by zero"):
        F.inv(0)
    with pytest.raises(ZeroDivisionError):
        F.div(3, 0)


@pytest.mark.parametrize("p", [4, 2, 1, 0, -7, 2**31 + 11, 100])
def test_rejects_bad_modulus(p):
    with pytest.raises(FieldError):
        PrimeField(p)


def test_default_and_large_prime():
    assert PrimeField().p == 101
    big = PrimeField(2**31 - 1)
    assert big.mul(big.inv(12345), 12345) == 1


def test_basic_ops():
    assert F.add(100, 5) == 4
    assert F.sub(3, 5) == 99
    assert F.neg(0) == 0 and F.neg(1) == 100
    assert F.mul(50, 3) == 49
    assert F.div(1, 2) == 51
    assert F.is_element(100) and not F.is_element(101) and not F.is_element(-1)


@settings(max_examples=1000, deadline=None)
@given(elems, elems, elems)
def test_field_axioms(a, b, c):
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    if a:
        assert F.mul(a, F.inv(a)) == 1
