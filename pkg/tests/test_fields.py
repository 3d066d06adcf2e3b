"""Tests for finite fields, embeddings and field elements."""

from fractions import Fraction

import pytest

from src.algebra.fields import (
    QQ,
    FieldElement,
    common_field,
    element_degree,
    embed_element,
    embed_value,
    extension_of,
    gcd_of_list,
    make_extension,
    make_prime_field,
)
from src.errors import DegreeTooLarge, FieldMismatch, NoEmbedding, NotPrime


class TestPrimeFields:
    def test_arithmetic_mod_p(self):
        F = make_prime_field(7)
        assert F.add(5, 4) == 2
        assert F.mul(3, 5) == 1
        assert F.inv(3) == 5
        assert F.neg(2) == 5
        assert F.pow(3, 6) == 1

    def test_not_prime_rejected(self):
        with pytest.raises(NotPrime):
            make_prime_field(9)
        with pytest.raises(NotPrime):
            make_prime_field(1)

    def test_cached(self):
        assert make_prime_field(5) is make_prime_field(5)

    def test_inverse_of_zero(self, F5):
        with pytest.raises(ZeroDivisionError):
            F5.inv(0)


class TestExtensions:
    def test_f4_modulus(self, F4):
        assert F4.modulus == (1, 1, 1)
        assert repr(F4) == "F_4[a]/(a^2+a+1)"

    def test_f9_modulus(self, F9):
        assert F9.modulus == (1, 0, 1)
        assert F9.order == 9

    def test_f8_modulus(self, F2):
        assert make_extension(F2, 3).modulus == (1, 1, 0, 1)

    def test_generator_is_a_root(self, F9):
        a = F9.generator()
        assert a * a + 1 == 0

    def test_every_nonzero_element_invertible(self, F2):
        F16 = make_extension(F2, 4)
        for x in range(1, 16):
            assert F16.mul(x, F16.inv(x)) == 1

    def test_frobenius_is_additive(self, F9):
        for a in F9.elements():
            for b in F9.elements():
                assert F9.frobenius(F9.add(a, b)) == F9.add(F9.frobenius(a), F9.frobenius(b))

    def test_degree_caps(self, F2, F3):
        with pytest.raises(DegreeTooLarge):
            make_extension(F2, 9)
        with pytest.raises(DegreeTooLarge):
            make_extension(F3, 11)

    def test_extension_needs_prime_base(self, F4):
        with pytest.raises(FieldMismatch):
            make_extension(F4, 2)

    def test_extension_of_composes_degrees(self, F4):
        assert extension_of(F4, 2).order == 16
        assert extension_of(F4, 1) is F4


class TestEmbeddings:
    def test_prime_elements_fixed(self, F2):
        F16 = make_extension(F2, 4)
        assert embed_value(F2, F16, 1) == 1

    def test_f4_into_f16_is_a_homomorphism(self, F2, F4):
        F16 = make_extension(F2, 4)
        for a in F4.elements():
            for b in F4.elements():
                ea, eb = embed_value(F4, F16, a), embed_value(F4, F16, b)
                assert embed_value(F4, F16, F4.mul(a, b)) == F16.mul(ea, eb)
                assert embed_value(F4, F16, F4.add(a, b)) == F16.add(ea, eb)

    def test_generator_image_is_a_root(self, F2, F4):
        F16 = make_extension(F2, 4)
        beta = embed_element(F4.generator(), F16)
        assert beta.field == F16
        assert beta * beta + beta + 1 == 0

    def test_f4_does_not_embed_in_f8(self, F2, F4):
        with pytest.raises(NoEmbedding):
            embed_value(F4, make_extension(F2, 3), 2)

    def test_element_degree(self, F3, F9):
        a = F9.generator().value
        assert element_degree(F3, F9, a) == 2
        assert element_degree(F3, F9, 1) == 1

    def test_common_field(self, F2, F4):
        F16 = make_extension(F2, 4)
        assert common_field([F2, F4, F16]) == F16
        with pytest.raises(FieldMismatch):
            common_field([F4, make_extension(F2, 3)])


class TestFieldElement:
    def test_int_coercion(self):
        x = make_prime_field(7).element(3)
        assert x + 5 == 1
        assert 2 - x == 6
        assert x / 3 == 1
        assert x.inverse() == 5

    def test_mismatched_fields(self, F2, F4):
        with pytest.raises(FieldMismatch):
            F4.generator() + make_extension(F2, 3).generator()

    def test_extension_element_printing(self, F9):
        a = F9.generator()
        assert str(a) == "a"
        assert str(a + 1) == "a+1"
        assert str(a * 2) == "2*a"

    def test_out_of_range_value(self, F4):
        with pytest.raises(FieldMismatch):
            FieldElement(F4, 4)


class TestRationals:
    def test_fraction_arithmetic(self):
        assert QQ.add(Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)
        assert QQ.inv(Fraction(-2)) == Fraction(-1, 2)
        assert QQ.format(Fraction(-1, 2)) == "-1/2"


class TestGcdOfList:
    def test_empty_is_zero(self):
        assert gcd_of_list([]) == 0

    def test_values(self):
        assert gcd_of_list([6, 10]) == 2
        assert gcd_of_list([0, 3]) == 3
