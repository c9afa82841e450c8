import random
from fractions import Fraction

import pytest

from orbitslp import GF, QQ, FieldError, field_from_json


def test_rational_arithmetic_is_exact():
    assert QQ.add(Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)
    assert QQ.sub(Fraction(1, 2), Fraction(1, 2)) == 0
    assert QQ.mul(Fraction(2, 3), Fraction(3, 2)) == 1


def test_prime_field_arithmetic():
    f = GF(5)
    assert f.add(3, 4) == 2
    assert f.mul(2, 3) == 1
    assert f.sub(1, 3) == 3


def test_quasi_inverse_cases():
    assert QQ.qinv(QQ.zero) == 0
    assert QQ.qinv(Fraction(2)) == Fraction(1, 2)
    f = GF(5)
    assert f.qinv(0) == 0
    assert f.qinv(2) == 3


def test_quasi_inverse_of_int_stays_exact():
    v = QQ.qinv(2)
    assert v == Fraction(1, 2) and isinstance(v, Fraction)


@pytest.mark.parametrize("field,samples", [
    (QQ, [Fraction(0), Fraction(1), Fraction(-3, 7), Fraction(22, 5), Fraction(-1)]),
    (GF(7), list(range(7))),
    (GF(101), [0, 1, 2, 50, 100, 37]),
])
def test_quasi_inverse_identities(field, samples):
    for a in samples:
        qa = field.qinv(a)
        # a * {a} * a == a and {{a}} == a
        assert field.mul(field.mul(a, qa), a) == a
        assert field.qinv(qa) == a
        # e = a*{a} is a 0/1 idempotent
        e = field.mul(a, qa)
        assert e in (field.zero, field.one)
        assert field.mul(e, e) == e


def test_identity_elements():
    a = Fraction(-5, 9)
    assert QQ.add(a, QQ.zero) == a
    assert QQ.mul(a, QQ.one) == a


def test_parse_and_format_round_trip():
    for text in ["0", "5/6", "-7", "3", "-22/7"]:
        assert QQ.fmt(QQ.parse(text)) == text
    f = GF(11)
    assert f.parse("13") == 2
    assert f.parse("1/2") == 6  # 2 * 6 = 12 = 1 mod 11
    assert f.fmt(f.parse("-1")) == "10"


def test_floats_and_junk_rejected():
    for bad in ["1.5", "1e3", "x", "", "1/0"]:
        with pytest.raises((FieldError, ZeroDivisionError)):
            QQ.parse(bad)
    with pytest.raises(FieldError):
        GF(7).coerce(Fraction(1, 7))


def test_prime_validation():
    with pytest.raises(FieldError):
        GF(6)
    with pytest.raises(FieldError):
        GF(1)
    GF(2), GF(101)  # fine


def test_field_json_round_trip():
    assert field_from_json(QQ.to_json()) == QQ
    assert field_from_json(GF(13).to_json()) == GF(13)
    with pytest.raises(FieldError):
        field_from_json({"weird": 1})


def test_random_field_axioms():
    rng = random.Random(11)
    f = GF(13)
    for _ in range(200):
        a, b, c = (rng.randrange(13) for _ in range(3))
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
        assert f.add(a, b) == f.add(b, a)
        assert f.sub(f.add(a, b), b) == a
