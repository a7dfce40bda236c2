from fractions import Fraction

import pytest

from hhx.fields import ModInt, PrimeField, QQ, field_from_name


def test_rational_parse_and_format():
    assert QQ.parse("3/2") == Fraction(3, 2)
    assert QQ.parse("-5") == Fraction(-5)
    assert QQ.format(Fraction(7, 3)) == "7/3"
    assert QQ.format(Fraction(4)) == "4"


def test_rational_scalar_rejects_floats():
    with pytest.raises(TypeError):
        QQ.scalar(0.5)


def test_prime_field_requires_prime():
    with pytest.raises(ValueError):
        PrimeField(4)
    with pytest.raises(ValueError):
        PrimeField(1)
    PrimeField(2)
    PrimeField(97)


def test_field_from_name():
    assert field_from_name("rational") == QQ
    assert field_from_name("prime:5") == PrimeField(5)
    with pytest.raises(ValueError):
        field_from_name("prime:6")
    with pytest.raises(ValueError):
        field_from_name("real")


def test_modint_arithmetic():
    a = ModInt(3, 7)
    assert a + 5 == 1
    assert a - 4 == 6
    assert a * 3 == 2
    assert a / ModInt(2, 7) == 5  # 3 * 4 = 12 = 5 mod 7
    assert -a == 4
    assert bool(ModInt(0, 7)) is False
    assert bool(a) is True


def test_modint_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ModInt(1, 5) / ModInt(0, 5)


def test_prime_field_parses_fractions():
    f5 = PrimeField(5)
    # 3/2 = 3 * inverse(2) = 3 * 3 = 9 = 4 mod 5
    assert f5.parse("3/2") == ModInt(4, 5)
    assert f5.scalar(Fraction(3, 2)) == ModInt(4, 5)


def test_exactness_is_reproducible():
    # the same computation twice gives identical objects, bit for bit
    xs = [QQ.parse("1/3"), QQ.parse("-7/11"), QQ.parse("5")]
    total1 = sum(xs, QQ.zero)
    total2 = sum(xs, QQ.zero)
    assert total1 == total2
    assert QQ.format(total1) == QQ.format(total2)
