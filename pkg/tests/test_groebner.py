"""Test ideals, normal forms and Groebner bases."""
import itertools
import random

import pytest
import sympy

from slicedepth.exceptions import FieldMismatchError, ShapeMismatchError
from slicedepth.groebner import (
    Ideal,
    colon,
    colon_maximal,
    groebner,
    ideal_contains,
    ideal_equal,
    ideal_intersect,
    ideal_member,
    interreduce_generators,
    is_groebner,
    minimal_generators,
    normal_form,
    normal_form_with_quotients,
    reduce_basis,
)
from slicedepth.poly import GREVLEX, LEX, RATIONALS, Monomial, Polynomial, prime_field
from slicedepth.slicefamily import build_ideal, support_bound, support_count

VARIABLES = ((1,), (2,), (3,))
RING4 = ((1,), (2,), (3,), (4,))


def _random_polynomial(rng: random.Random, degree: int = 1) -> Polynomial:
    while True:
        terms = []
        for _ in range(rng.randint(1, 3)):
            exps = {v: rng.randint(0, degree) for v in VARIABLES}
            terms.append((Monomial(exps), rng.choice([-2, -1, 1, 2, 3])))
        f = Polynomial(terms)
        if f:
            return f


def _random_ideal(rng: random.Random, count: int = 3) -> Ideal:
    return Ideal.create(
        [_random_polynomial(rng) for _ in range(rng.randint(1, count))], VARIABLES
    )


def _to_sympy(f: Polynomial, symbols) -> sympy.Expr:
    return sympy.expand(
        sum(
            (
                RATIONALS.to_sympy(c)
                * sympy.Mul(*(symbols[v] ** e for v, e in m.exponents))
                for m, c in f
            ),
            sympy.Integer(0),
        )
    )


def test_normal_form_example(x, y) -> None:
    """Test NF(x^2 y + y, {x^2 - y}) = y^2 + y."""
    assert normal_form(x * x * y + y, [x * x - y]) == y * y + y


def test_normal_form_quotients(x, y) -> None:
    """Test f = sum q_k g_k + r."""
    f = x * x * y + x * y * y + y * y
    divisors = [x * y - 1, y * y - 1]
    quotients, remainder = normal_form_with_quotients(f, divisors)
    total = remainder
    for q, g in zip(quotients, divisors, strict=True):
        total = total + q * g
    assert total == f
    assert remainder == x + y + 1


def test_slice_square_basis(square) -> None:
    """Test the reduced basis of the 2x2 slice ideal against sympy."""
    ideal = build_ideal(square).ideal()
    gb = groebner(ideal)
    assert is_groebner(gb.basis)
    symbols = {v: sympy.Symbol(f"x{v[0]}{v[1]}") for v in square.variables()}
    expected = sympy.groebner(
        [_to_sympy(g, symbols) for g in ideal.generators],
        *(symbols[v] for v in square.variables()),
        order="grevlex",
        domain=sympy.QQ,
    )
    assert {_to_sympy(g, symbols) for g in gb.basis} == set(expected.exprs)


@pytest.mark.parametrize("order", ["grevlex", "lex"])
def test_random_bases_match_sympy(rng, order) -> None:
    """Test reduced bases of random ideals agree with sympy."""
    symbols = {v: sympy.Symbol(f"v{v[0]}") for v in VARIABLES}
    mono_order = LEX if order == "lex" else None
    for _ in range(15):
        ideal = _random_ideal(rng, 2 if mono_order else 3)
        if mono_order is not None:
            ideal = ideal.with_order(mono_order)
        gb = groebner(ideal)
        expected = sympy.groebner(
            [_to_sympy(g, symbols) for g in ideal.generators],
            *(symbols[v] for v in VARIABLES),
            order=order,
            domain=sympy.QQ,
        )
        assert {_to_sympy(g, symbols) for g in gb.basis} == set(expected.exprs)


def test_basis_unique_under_permutation(rng) -> None:
    """Test shuffling the generators leaves the reduced basis unchanged."""
    for _ in range(50):
        ideal = _random_ideal(rng)
        gens = list(ideal.generators)
        rng.shuffle(gens)
        assert groebner(ideal).basis == groebner(ideal.with_generators(gens)).basis


def test_normal_form_properties(rng) -> None:
    """Test NF is a fixpoint and f - NF(f) lies in the ideal."""
    for _ in range(200):
        ideal = _random_ideal(rng)
        gb = groebner(ideal)
        f = _random_polynomial(rng, 3)
        r = gb.normal_form(f)
        assert gb.normal_form(r) == r
        assert gb.contains(f - r)
        member = sum(
            (_random_polynomial(rng, 1) * g for g in ideal.generators), Polynomial.zero()
        )
        assert ideal_member(member, ideal)


def _linear_algebra_member(mono: Monomial, ideal: Ideal) -> bool:
    generators = ideal.generators
    degree = mono.degree
    columns = []
    support: dict[Monomial, int] = {}
    for g in generators:
        shift = degree - g.degree
        if shift < 0:
            continue
        for combo in itertools.combinations_with_replacement(ideal.variables, shift):
            columns.append(g * Monomial((v, 1) for v in combo))
    for f in columns:
        for m, _ in f:
            support.setdefault(m, len(support))
    if mono not in support:
        return False
    matrix = sympy.zeros(len(support), len(columns))
    for c, f in enumerate(columns):
        for m, coeff in f:
            matrix[support[m], c] = RATIONALS.to_sympy(coeff)
    target = sympy.zeros(len(support), 1)
    target[support[mono], 0] = 1
    return matrix.rank() == matrix.row_join(target).rank()


def test_membership_matches_linear_algebra(square) -> None:
    """Test GB membership of every monomial of degree <= 4 against linear algebra."""
    ideal = build_ideal(square).ideal()
    for degree in range(5):
        for combo in itertools.combinations_with_replacement(square.variables(), degree):
            mono = Monomial((v, 1) for v in combo)
            assert ideal_member(Polynomial.monomial(mono), ideal) == _linear_algebra_member(
                mono, ideal
            )


def test_member_field_mismatch(square) -> None:
    """Test membership across fields raises."""
    ideal = build_ideal(square).ideal(prime_field(2))
    with pytest.raises(FieldMismatchError):
        ideal_member(Polynomial.variable((1, 1)), ideal)


def test_ideal_rejects_stray_variables(x) -> None:
    """Test generators outside the ring raise."""
    with pytest.raises(ShapeMismatchError):
        Ideal.create([x], [(2,)])


def test_intersect_and_colon(x, y) -> None:
    """Test (x) cap (y) = (xy) and (xy : x) = (y)."""
    ring = ((1,), (2,))
    a = Ideal.create([x], ring)
    b = Ideal.create([y], ring)
    assert ideal_equal(ideal_intersect(a, b), Ideal.create([x * y], ring))
    assert ideal_equal(colon(Ideal.create([x * y], ring), x), b)
    assert ideal_equal(colon(a, x), Ideal.create([Polynomial.constant(1)], ring))
    assert groebner(colon(a, Polynomial.zero())).is_unit


def test_colon_maximal(x, y) -> None:
    """Test (x^2, xy) : m = (x)."""
    ring = ((1,), (2,))
    ideal = Ideal.create([x * x, x * y], ring)
    assert ideal_equal(colon_maximal(ideal), Ideal.create([x], ring))
    assert ideal_contains(colon_maximal(ideal), ideal)


def test_interreduce(x, y) -> None:
    """Test each leading monomial is absent from the other supports."""
    result = interreduce_generators([x * x + y, x * x, Polynomial.zero()])
    assert set(result) == {y, x * x}
    for k, g in enumerate(result):
        for h in result[:k] + result[k + 1 :]:
            assert g.leading_monomial not in h.monomials()


def test_minimal_generators(x, y) -> None:
    """Test redundant generators are dropped, lowest degree first."""
    ring = ((1,), (2,))
    ideal = Ideal.create([x * x * y, y * y * y, x * x], ring)
    assert minimal_generators(ideal).generators == (x * x, y * y * y)


def test_standard_monomials(x, y) -> None:
    """Test standard monomials of (x^2, y^2) in degree 2."""
    ideal = Ideal.create([x * x, y * y], ((1,), (2,)))
    assert groebner(ideal).standard_monomials(2) == [
        Monomial({(1,): 1, (2,): 1})
    ]


def _random_form(rng: random.Random, variables, degree: int) -> Polynomial:
    while True:
        terms = [
            (Monomial((v, 1) for v in rng.choices(variables, k=degree)), rng.choice([-1, 1, 2]))
            for _ in range(rng.randint(1, 2))
        ]
        f = Polynomial(terms)
        if f:
            return f


def test_membership_matches_linear_algebra_on_random_ideals(rng) -> None:
    """Test GB membership against linear algebra on random homogeneous ideals."""
    for _ in range(3):
        ideal = Ideal.create(
            [_random_form(rng, RING4, rng.randint(1, 2)) for _ in range(rng.randint(1, 3))],
            RING4,
        )
        for degree in range(5):
            for combo in itertools.combinations_with_replacement(RING4, degree):
                mono = Monomial((v, 1) for v in combo)
                assert ideal_member(
                    Polynomial.monomial(mono), ideal
                ) == _linear_algebra_member(mono, ideal)


def test_reduce_basis_completes_non_groebner_input(x, y) -> None:
    """Test {x, x + y} reduces to {x, y} under lex."""
    assert not is_groebner([x, x + y])
    assert reduce_basis([x, x + y], LEX) == (x, y)
    assert reduce_basis([x * x - y, x * y - 1], GREVLEX) == groebner(
        Ideal.create([x * x - y, x * y - 1], ((1,), (2,)))
    ).basis
    assert reduce_basis([Polynomial.zero()], GREVLEX) == ()


def test_reduce_basis_is_idempotent(rng) -> None:
    """Test reduced bases are fixed points."""
    for _ in range(20):
        basis = groebner(_random_ideal(rng)).basis
        assert reduce_basis(basis, GREVLEX) == basis


def test_intersect_example(x, y) -> None:
    """Test (x^2, xy) cap (y) = (xy)."""
    ring = ((1,), (2,))
    meet = ideal_intersect(Ideal.create([x * x, x * y], ring), Ideal.create([y], ring))
    assert ideal_equal(meet, Ideal.create([x * y], ring))
    assert groebner(meet).basis == (x * y,)


def test_interreduce_respects_order(x, y) -> None:
    """Test the order decides which monomial leads."""
    result = interreduce_generators([x + y * y, y * y], LEX)
    assert set(result) == {x, y * y}
    assert all(g.order == LEX for g in result)


def test_interreduced_support_bound(rng) -> None:
    """Test r interreduced forms in N monomials have support <= -r^2 + r(N + 1)."""
    for _ in range(30):
        forms = [_random_form(rng, VARIABLES, 2) for _ in range(rng.randint(2, 4))]
        result = interreduce_generators(forms)
        if not result:
            continue
        count = support_count(result)
        assert count.with_multiplicity <= support_bound(count.distinct, len(result))
