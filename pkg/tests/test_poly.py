"""Test monomials, orders, polynomials and contraction."""
from fractions import Fraction
import itertools
import random

import pytest
import sympy

from slicedepth.exceptions import CharacteristicError, FieldMismatchError, ShapeMismatchError
from slicedepth.poly import (
    GREVLEX,
    LEX,
    ONE,
    RATIONALS,
    Monomial,
    Polynomial,
    contract,
    elimination_order,
    field_name,
    format_monomial,
    format_polynomial,
    mono_compare,
    mono_divide,
    mono_divides,
    mono_gcd,
    mono_lcm,
    mono_mul,
    parse_field,
    parse_order,
    poly_add,
    poly_mul,
    prime_field,
    rational,
)
from slicedepth.slicefamily import slice_monomial, witness_monomial


def _random_polynomial(rng: random.Random, variables: int = 3, degree: int = 3) -> Polynomial:
    terms = []
    for _ in range(rng.randint(1, 3)):
        exps = {(v,): rng.randint(0, degree) for v in range(1, variables + 1)}
        terms.append((Monomial(exps), rng.randint(-3, 3)))
    return Polynomial(terms)


def _to_sympy(f: Polynomial, symbols: list[sympy.Symbol]):
    return sum(
        (
            RATIONALS.to_sympy(c)
            * sympy.Mul(*(symbols[v[0] - 1] ** e for v, e in m.exponents))
            for m, c in f
        ),
        sympy.Integer(0),
    )


def test_monomial_merges_and_drops_zero_exponents() -> None:
    """Test repeated variables add up and zero exponents vanish."""
    m = Monomial([((1, 1), 2), ((1, 1), 1), ((2, 1), 0)])
    assert m.exponents == (((1, 1), 3),)
    assert m.degree == 3
    assert m[(2, 1)] == 0


def test_monomial_rejects_bad_input() -> None:
    """Test negative exponents and mixed index lengths raise."""
    with pytest.raises(ValueError):
        Monomial({(1,): -1})
    with pytest.raises(ShapeMismatchError):
        Monomial({(1,): 1, (1, 2): 1})
    with pytest.raises(ShapeMismatchError):
        Monomial.variable((1,)) * Monomial.variable((1, 1))


def test_monomial_arithmetic() -> None:
    """Test multiply, divide, lcm and gcd."""
    a = Monomial({(1,): 2, (2,): 1})
    b = Monomial({(2,): 3})
    assert a * b == Monomial({(1,): 2, (2,): 4})
    assert (a * b).divide(b) == a
    assert a.divide(b) is None
    assert a.lcm(b) == Monomial({(1,): 2, (2,): 3})
    assert a.gcd(b) == Monomial.variable((2,))
    assert a**0 is ONE
    assert ONE.is_one
    assert format_monomial(ONE) == "1"


def test_monomial_exponent_overflow() -> None:
    """Test exponents beyond the limit raise."""
    big = Monomial.variable((1,), 2**31 - 1)
    with pytest.raises(OverflowError):
        big * Monomial.variable((1,))
    with pytest.raises(OverflowError):
        big**2


def test_orders() -> None:
    """Test lex and grevlex with the smallest index ranking highest."""
    x1x3 = Monomial({(1,): 1, (3,): 1})
    x2sq = Monomial({(2,): 2})
    assert mono_compare(x1x3, x2sq, LEX) == 1
    assert mono_compare(x1x3, x2sq, GREVLEX) == -1
    assert mono_compare(Monomial.variable((3,), 3), x2sq, GREVLEX) == 1
    assert parse_order("LEX") == LEX
    with pytest.raises(ValueError):
        parse_order("block")
    with pytest.raises(ValueError):
        parse_order("deglex")


def test_elimination_order_ranks_block_first() -> None:
    """Test any power of a block variable outranks the rest."""
    order = elimination_order([(0,)])
    t = Monomial.variable((0,))
    assert order.compare(t, Monomial.variable((1,), 5)) == 1
    assert order.compare(t * Monomial.variable((2,)), t * Monomial.variable((3,))) == 1


def test_polynomial_canonical_form(x, y) -> None:
    """Test like terms merge, zeros drop and terms sort descending."""
    f = y + x * x - y
    assert f == x * x
    assert f.leading_monomial == Monomial.variable((1,), 2)
    assert (x - x).is_zero
    assert Polynomial.zero() == 0
    assert (x + 3).constant_coefficient() == 3
    assert (x * y + x).degree == 2
    assert Polynomial.zero().degree == -1
    assert not (x * y + x).is_homogeneous


def test_polynomial_product(x, y) -> None:
    """Test (x + y)(x - y) = x^2 - y^2."""
    assert (x + y) * (x - y) == x * x - y * y
    assert 2 * x == x + x
    assert (x * y).divide_monomial(Monomial.variable((2,))) == x
    assert (x + y).divide_monomial(Monomial.variable((2,))) is None


def test_polynomial_field_mismatch(x) -> None:
    """Test combining polynomials over different fields raises."""
    g = Polynomial.variable((1,), prime_field(3))
    with pytest.raises(FieldMismatchError):
        x + g


def test_fields() -> None:
    """Test field names and rational scalars."""
    assert field_name(parse_field("q")) == "q"
    assert field_name(parse_field("F5")) == "f5"
    with pytest.raises(FieldMismatchError):
        parse_field("f4")
    with pytest.raises(FieldMismatchError):
        parse_field("r")
    assert rational(prime_field(5), 1, 3) == prime_field(5).convert(2)
    with pytest.raises(ZeroDivisionError):
        rational(RATIONALS, 1, 0)
    with pytest.raises(ZeroDivisionError):
        rational(prime_field(3), 1, 6)


def test_reduction_mod_p(x) -> None:
    """Test x/2 maps to 2x over F_3."""
    half = Polynomial([(Monomial.variable((1,)), RATIONALS(1, 2))])
    assert format_polynomial(half.to_field(prime_field(3))) == "2*x[1]"
    assert half.to_field(prime_field(3)) == (x + x).to_field(prime_field(3))


def test_format_polynomial() -> None:
    """Test the canonical text form."""
    f = Polynomial(
        [
            (Monomial({(1, 1): 2}), RATIONALS(2, 3)),
            (Monomial({(1, 2): 1, (2, 1): 1}), -1),
        ]
    )
    assert format_polynomial(f) == "2/3*x[1,1]^2 - x[1,2]*x[2,1]"
    assert format_polynomial(-f) == "-2/3*x[1,1]^2 + x[1,2]*x[2,1]"
    assert format_polynomial(Polynomial.zero()) == "0"
    assert format_polynomial(Polynomial.constant(-5)) == "-5"


def test_contract_examples(x, y) -> None:
    """Test contraction against hand computed values."""
    assert contract(x, x * x * x) == 3 * x * x
    assert contract(x * y, x * x * y * y) == 4 * x * y
    assert contract(y, x * x).is_zero
    assert contract(Polynomial.constant(1), x + y) == x + y


def test_contract_matches_differentiation(rng) -> None:
    """Test g o f equals applying g as a differential operator."""
    symbols = list(sympy.symbols("a b c"))
    for _ in range(50):
        f = _random_polynomial(rng)
        mono = Monomial({(v,): rng.randint(0, 2) for v in range(1, 4)})
        g = Polynomial.monomial(mono)
        expected = _to_sympy(f, symbols)
        for v, e in mono.exponents:
            expected = sympy.diff(expected, symbols[v[0] - 1], e)
        assert sympy.expand(_to_sympy(contract(g, f), symbols) - expected) == 0


def test_contract_composition_law(rng) -> None:
    """Test (g h) o f = g o (h o f)."""
    for _ in range(500):
        f, g, h = (_random_polynomial(rng) for _ in range(3))
        assert contract(g * h, f) == contract(g, contract(h, f))


def test_contract_needs_rationals() -> None:
    """Test contraction over F_p raises."""
    f = Polynomial.variable((1,), prime_field(2))
    with pytest.raises(CharacteristicError):
        contract(f, f)


def test_monomial_helpers() -> None:
    """Test the function forms of divides, lcm and gcd."""
    a = Monomial({(1,): 1, (2,): 2})
    b = Monomial({(2,): 1, (3,): 1})
    assert mono_divides(Monomial.variable((2,)), a)
    assert not mono_divides(b, a)
    assert mono_lcm(a, b) == Monomial({(1,): 1, (2,): 2, (3,): 1})
    assert mono_gcd(a, b) == Monomial.variable((2,))
    assert mono_gcd(Monomial.variable((1,)), b).is_one


@pytest.mark.parametrize("order", [LEX, GREVLEX, elimination_order([(1,)])])
def test_orders_are_multiplicative_well_orders(order) -> None:
    """Test every order on degree <= 3 in three variables."""
    monomials = [
        Monomial({(1,): a, (2,): b, (3,): c})
        for a, b, c in itertools.product(range(4), repeat=3)
        if a + b + c <= 3
    ]
    ranked = order.sort_descending(monomials)
    assert len(set(ranked)) == len(monomials)
    assert ranked[-1].is_one
    for a, b in itertools.combinations(monomials, 2):
        verdict = order.compare(a, b)
        assert verdict != 0
        assert order.compare(b, a) == -verdict
        for c in (Monomial.variable((1,)), Monomial.variable((3,))):
            assert order.compare(a * c, b * c) == verdict
    for a, b, c in itertools.combinations(ranked, 3):
        assert order.compare(a, b) == order.compare(b, c) == order.compare(a, c) == 1


def test_rational_arithmetic_matches_fractions(rng) -> None:
    """Test coefficient arithmetic against Fraction."""
    for _ in range(1000):
        p, q = (
            Fraction(rng.randint(-10**12, 10**12), rng.randint(1, 10**6)) for _ in range(2)
        )
        f = Polynomial.constant(rational(RATIONALS, p.numerator, p.denominator))
        g = Polynomial.constant(rational(RATIONALS, q.numerator, q.denominator))
        for value, expected in ((f + g, p + q), (f - g, p - q), (f * g, p * q)):
            c = value.constant_coefficient()
            assert Fraction(int(RATIONALS.numer(c)), int(RATIONALS.denom(c))) == expected


def test_function_forms(x, y, z, square) -> None:
    """Test mono_mul, mono_divide, poly_add and poly_mul on small examples."""
    x11, x12 = Monomial.variable((1, 1)), Monomial.variable((1, 2))
    assert mono_mul(x11, x12) == Monomial({(1, 1): 1, (1, 2): 1})
    assert mono_mul(x11, x11) == Monomial.variable((1, 1), 2)
    everything = mono_mul(slice_monomial(square, 1, 1), slice_monomial(square, 1, 2))
    assert everything == Monomial((v, 1) for v in square.variables())
    x2y = Monomial({(1,): 2, (2,): 1})
    assert mono_divide(x2y, Monomial({(1,): 1, (2,): 1})) == Monomial.variable((1,))
    assert mono_divide(Monomial.variable((1,)), Monomial.variable((1,), 2)) is None
    assert mono_divide(witness_monomial(square), Monomial.variable((2, 1))) == Monomial.variable(
        (2, 2)
    )
    assert poly_add(x - y, y - z) == x - z
    assert poly_mul(x + y, x - y) == x * x - y * y
