from fractions import Fraction

import pytest

from meshgb.fields import QQ, ModP, PrimeField, field_from_spec, is_prime


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert is_prime(32003)


def test_rational_parse_and_format():
    assert QQ.parse("-3/6") == Fraction(-1, 2)
    assert QQ.format(Fraction(4, 2)) == "2"
    assert QQ.format(Fraction(-1, 3)) == "-1/3"


def test_prime_field_arithmetic():
    F = PrimeField(7)
    a, b = F(3), F(5)
    assert a + b == F(1)
    assert a * b == F(1)
    assert a / b == F(2)
    assert -a == F(4)
    assert 1 - a == F(5)
    assert F.parse("-1") == F(6)
    assert F.parse("1/3") == F(5)


def test_prime_field_inverse_of_zero():
    F = PrimeField(5)
    with pytest.raises(ZeroDivisionError):
        F(1) / F(0)


def test_field_from_spec():
    assert field_from_spec("Q") == QQ
    assert field_from_spec("Fp:32003") == PrimeField(32003)
    with pytest.raises(ValueError):
        field_from_spec("Fp:12")
    with pytest.raises(ValueError):
        field_from_spec("R")


def test_modp_mixing_rejects_other_primes():
    with pytest.raises(ValueError):
        ModP(1, 5) + ModP(1, 7)
