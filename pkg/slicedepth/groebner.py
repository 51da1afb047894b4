"""Ideals, normal forms, Buchberger's algorithm and derived ideal operations."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import lru_cache
import heapq
import itertools
import logging

from .exceptions import FieldMismatchError, ShapeMismatchError
from .poly import (
    GREVLEX,
    RATIONALS,
    Field,
    Monomial,
    MonomialOrder,
    Polynomial,
    VarIndex,
    elimination_order,
    field_name,
    same_field,
)

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class Ideal:
    """An ideal given by generators in a fixed ambient set of variables."""

    generators: tuple[Polynomial, ...]
    variables: tuple[VarIndex, ...]
    field: Field = RATIONALS
    order: MonomialOrder = GREVLEX

    @classmethod
    def create(
        cls,
        generators: Iterable[Polynomial],
        variables: Iterable[VarIndex],
        field: Field | None = None,
        order: MonomialOrder = GREVLEX,
    ) -> Ideal:
        """Build an ideal, dropping zero generators and checking compatibility."""
        gens = list(generators)
        variables = tuple(tuple(v) for v in variables)
        if field is None:
            field = gens[0].field if gens else RATIONALS
        ambient = set(variables)
        dims = {len(v) for v in variables}
        if len(dims) > 1:
            raise ShapeMismatchError(f"Mixed index dimensions {sorted(dims)}")
        kept: list[Polynomial] = []
        for g in gens:
            if not same_field(g.field, field):
                raise FieldMismatchError(
                    f"Generator over {field_name(g.field)} in an ideal over"
                    f" {field_name(field)}"
                )
            stray = g.variables - ambient
            if stray:
                raise ShapeMismatchError(f"Variables {sorted(stray)} are outside the ring")
            if g:
                kept.append(g.with_order(order))
        return cls(tuple(kept), variables, field, order)

    @property
    def dimension(self) -> int | None:
        """Return the length of the variable indices."""
        return len(self.variables[0]) if self.variables else None

    @property
    def is_zero(self) -> bool:
        """Show if the ideal has no nonzero generator."""
        return not self.generators

    def with_order(self, order: MonomialOrder) -> Ideal:
        """Return the same ideal with another monomial order."""
        if order == self.order:
            return self
        return Ideal(
            tuple(g.with_order(order) for g in self.generators),
            self.variables,
            self.field,
            order,
        )

    def with_generators(self, generators: Iterable[Polynomial]) -> Ideal:
        """Return an ideal in the same ring with other generators."""
        return Ideal.create(generators, self.variables, self.field, self.order)

    def one(self) -> Polynomial:
        """Return 1 in the ring of this ideal."""
        return Polynomial.constant(1, self.field, self.order)


@dataclass(frozen=True)
class GroebnerBasis:
    """A Groebner basis of an ideal; reduced ones sort descending by leading monomial."""

    ideal: Ideal
    basis: tuple[Polynomial, ...]
    reduced: bool = True

    @property
    def order(self) -> MonomialOrder:
        """Return the monomial order."""
        return self.ideal.order

    @property
    def leading_monomials(self) -> tuple[Monomial, ...]:
        """Return the leading monomials of the basis."""
        return tuple(g.leading_monomial for g in self.basis)

    @property
    def is_unit(self) -> bool:
        """Show if the ideal is the whole ring."""
        return any(m.is_one for m in self.leading_monomials)

    def normal_form(self, f: Polynomial) -> Polynomial:
        """Reduce f modulo the basis."""
        return normal_form(f, self.basis)

    def contains(self, f: Polynomial) -> bool:
        """Show if f lies in the ideal."""
        return normal_form(f, self.basis).is_zero

    def standard_monomials(self, degree: int) -> list[Monomial]:
        """Return the monomials of a degree outside the initial ideal."""
        leads = self.leading_monomials
        out = []
        for combo in itertools.combinations_with_replacement(self.ideal.variables, degree):
            mono = Monomial((v, 1) for v in combo)
            if not any(lead.divides(mono) for lead in leads):
                out.append(mono)
        return out


def normal_form_with_quotients(
    f: Polynomial, divisors: Sequence[Polynomial]
) -> tuple[list[Polynomial], Polynomial]:
    """Divide f by divisors, returning quotients and the fully reduced remainder.

    The leading term is reduced by the first divisor whose leading monomial
    divides it; otherwise it moves to the remainder.
    """
    order = f.order
    field = f.field
    divisors = [g.with_order(order) for g in divisors]
    quotients: list[list[tuple[Monomial, object]]] = [[] for _ in divisors]
    remainder = []
    p = f
    while p.terms:
        mono, coeff = p.leading_term
        for k, g in enumerate(divisors):
            if not g.terms:
                continue
            q = mono.divide(g.leading_monomial)
            if q is not None:
                c = coeff / g.leading_coefficient
                p = p - g.mul_term(q, c)
                quotients[k].append((q, c))
                break
        else:
            remainder.append((mono, coeff))
            p = Polynomial._trusted(p.terms[1:], field, order)
    return (
        [Polynomial(terms, field, order) for terms in quotients],
        Polynomial._trusted(tuple(remainder), field, order),
    )


def normal_form(f: Polynomial, divisors: Sequence[Polynomial]) -> Polynomial:
    """Return the fully reduced remainder of f modulo divisors."""
    return normal_form_with_quotients(f, divisors)[1]


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    """Return the S-polynomial of two nonzero polynomials."""
    lcm = f.leading_monomial.lcm(g.leading_monomial)
    field = f.field
    return f.mul_term(
        lcm.divide(f.leading_monomial), field.one / f.leading_coefficient
    ) - g.mul_term(lcm.divide(g.leading_monomial), field.one / g.leading_coefficient)


def _reduce_groebner(
    candidates: list[Polynomial], order: MonomialOrder
) -> tuple[Polynomial, ...]:
    # candidates must already form a Groebner basis
    candidates.sort(key=lambda p: order.key(p.leading_monomial))
    minimal: list[Polynomial] = []
    for p in candidates:
        lead = p.leading_monomial
        if not any(q.leading_monomial.divides(lead) for q in minimal):
            minimal.append(p)
    reduced = []
    for k, p in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1 :]
        reduced.append(normal_form(p, others).monic())
    reduced.sort(key=lambda p: order.key(p.leading_monomial), reverse=True)
    return tuple(reduced)


def reduce_basis(polys: Iterable[Polynomial], order: MonomialOrder) -> tuple[Polynomial, ...]:
    """Return the reduced Groebner basis of the ideal polys generate.

    Input that is not yet a Groebner basis is completed with Buchberger first.
    """
    candidates = [p.with_order(order).monic() for p in polys if p]
    if not candidates:
        return ()
    if not is_groebner(candidates):
        variables = sorted({v for p in candidates for v in p.variables})
        _LOGGER.debug("Completing %d generators before reduction", len(candidates))
        return buchberger(
            Ideal.create(candidates, variables, candidates[0].field, order)
        ).basis
    return _reduce_groebner(candidates, order)


def buchberger(ideal: Ideal) -> GroebnerBasis:
    """Compute the reduced Groebner basis with the normal pair strategy.

    Pairs with coprime leading monomials are skipped, as are pairs covered by
    the chain criterion.
    """
    order = ideal.order
    basis: list[Polynomial] = []
    queue: list[tuple[int, int, int, int]] = []
    pending: set[tuple[int, int]] = set()
    counter = itertools.count()

    def add(g: Polynomial) -> None:
        index = len(basis)
        basis.append(g.monic())
        for i in range(index):
            lcm = basis[i].leading_monomial.lcm(basis[index].leading_monomial)
            heapq.heappush(queue, (lcm.degree, next(counter), i, index))
            pending.add((i, index))

    for g in ideal.generators:
        add(g)
    reductions = 0
    while queue:
        _, _, i, j = heapq.heappop(queue)
        pending.discard((i, j))
        lead_i, lead_j = basis[i].leading_monomial, basis[j].leading_monomial
        if lead_i.gcd(lead_j).is_one:
            continue
        lcm = lead_i.lcm(lead_j)
        if any(
            k not in (i, j)
            and basis[k].leading_monomial.divides(lcm)
            and (min(i, k), max(i, k)) not in pending
            and (min(j, k), max(j, k)) not in pending
            for k in range(len(basis))
        ):
            continue
        remainder = normal_form(s_polynomial(basis[i], basis[j]), basis)
        reductions += 1
        if remainder:
            add(remainder)
    _LOGGER.debug(
        "Buchberger finished with %d elements after %d reductions", len(basis), reductions
    )
    return GroebnerBasis(ideal, _reduce_groebner(basis, order), reduced=True)


@lru_cache(maxsize=128)
def groebner(ideal: Ideal) -> GroebnerBasis:
    """Return the reduced Groebner basis of an ideal, cached per ideal."""
    return buchberger(ideal)


def is_groebner(polys: Sequence[Polynomial]) -> bool:
    """Show if every S-polynomial of polys reduces to zero."""
    polys = [p for p in polys if p]
    return all(
        normal_form(s_polynomial(f, g), polys).is_zero
        for f, g in itertools.combinations(polys, 2)
    )


def ideal_member(f: Polynomial, ideal: Ideal) -> bool:
    """Show if f lies in the ideal."""
    if not same_field(f.field, ideal.field):
        raise FieldMismatchError(
            f"Polynomial over {field_name(f.field)}, ideal over {field_name(ideal.field)}"
        )
    return groebner(ideal).contains(f.with_order(ideal.order))


def _check_same_ring(a: Ideal, b: Ideal) -> None:
    if not same_field(a.field, b.field):
        raise FieldMismatchError(
            f"Ideals over {field_name(a.field)} and {field_name(b.field)}"
        )
    if a.dimension and b.dimension and a.dimension != b.dimension:
        raise ShapeMismatchError("Ideals in rings with different index dimensions")


def ideal_intersect(a: Ideal, b: Ideal) -> Ideal:
    """Intersect two ideals by eliminating t from t*a + (1 - t)*b."""
    _check_same_ring(a, b)
    variables = tuple(dict.fromkeys(a.variables + b.variables))
    if a.is_zero or b.is_zero:
        return Ideal((), variables, a.field, a.order)
    t = (0,) * len(variables[0])
    order = elimination_order([t])
    field = a.field
    tee = Polynomial.variable(t, field, order)
    one_minus_t = Polynomial.constant(1, field, order) - tee
    gens = [tee * g.with_order(order) for g in a.generators]
    gens += [one_minus_t * g.with_order(order) for g in b.generators]
    gb = groebner(Ideal.create(gens, variables + (t,), field, order))
    kept = [g for g in gb.basis if t not in g.variables]
    return Ideal.create(
        reduce_basis(kept, a.order), variables, field, a.order
    )


def _divide_exact(h: Polynomial, f: Polynomial) -> Polynomial:
    (quotient,), remainder = normal_form_with_quotients(h, [f])
    if remainder:
        raise ArithmeticError(f"{f} does not divide {h}")
    return quotient


def colon(ideal: Ideal, f: Polynomial) -> Ideal:
    """Return (ideal : f) = {g : g*f in ideal}."""
    if not same_field(f.field, ideal.field):
        raise FieldMismatchError("Polynomial and ideal over different fields")
    f = f.with_order(ideal.order)
    if f.is_zero or ideal_member(f, ideal):
        return ideal.with_generators([ideal.one()])
    principal = Ideal.create([f], ideal.variables, ideal.field, ideal.order)
    meet = ideal_intersect(ideal, principal)
    quotients = [_divide_exact(h, f) for h in meet.generators]
    return ideal.with_generators(reduce_basis(quotients, ideal.order))


def colon_maximal(ideal: Ideal) -> Ideal:
    """Return (ideal : m) for the maximal ideal m of the variables."""
    result: Ideal | None = None
    for var in ideal.variables:
        part = colon(ideal, Polynomial.variable(var, ideal.field, ideal.order))
        result = part if result is None else ideal_intersect(result, part)
    return result if result is not None else ideal


def ideal_equal(a: Ideal, b: Ideal) -> bool:
    """Show if two ideals coincide, comparing reduced Groebner bases."""
    _check_same_ring(a, b)
    b = b.with_order(a.order)
    if set(a.variables) != set(b.variables):
        b = Ideal(b.generators, a.variables, b.field, b.order)
    return groebner(a).basis == groebner(b).basis


def ideal_contains(a: Ideal, b: Ideal) -> bool:
    """Show if b is contained in a."""
    gb = groebner(a)
    return all(gb.contains(g.with_order(a.order)) for g in b.generators)


def interreduce_generators(
    generators: Iterable[Polynomial], order: MonomialOrder = GREVLEX
) -> list[Polynomial]:
    """Reduce each generator by the others under order until nothing changes.

    Zeros are dropped.
    """
    gens = [g.with_order(order) for g in generators if g]
    changed = True
    while changed:
        changed = False
        for k in range(len(gens)):
            others = gens[:k] + gens[k + 1 :]
            r = normal_form(gens[k], others)
            if r != gens[k]:
                changed = True
                if r:
                    gens[k] = r
                else:
                    del gens[k]
                break
    return [g.monic() for g in gens]


def minimal_generators(ideal: Ideal) -> Ideal:
    """Pick a minimal generating set of a homogeneous ideal, lowest degrees first."""
    kept: list[Polynomial] = []
    for g in sorted(ideal.generators, key=lambda p: p.degree):
        if not kept or not ideal_member(g, ideal.with_generators(kept)):
            kept.append(g)
    return ideal.with_generators(kept)


def change_field(ideal: Ideal, field: Field) -> Ideal:
    """Map the generators into another field."""
    return Ideal.create(
        (g.to_field(field) for g in ideal.generators), ideal.variables, field, ideal.order
    )
