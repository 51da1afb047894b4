"""Exact scalars, array-indexed variables, monomials, monomial orders and polynomials."""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from enum import StrEnum
from functools import cache, cached_property, cmp_to_key
import logging
import math
from typing import Any

from sympy import isprime
from sympy.polys.domains import GF, QQ
from sympy.polys.domains.domain import Domain

from .const import FIELD_RATIONALS, MAX_EXPONENT
from .exceptions import CharacteristicError, FieldMismatchError, ShapeMismatchError

_LOGGER = logging.getLogger(__name__)

VarIndex = tuple[int, ...]
Field = Domain
Scalar = Any

RATIONALS: Field = QQ


@cache
def prime_field(p: int) -> Field:
    """Return F_p with residues kept in [0, p)."""
    if p < 2 or not isprime(p):
        raise FieldMismatchError(f"{p} is not a prime")
    return GF(p, symmetric=False)


def parse_field(name: str) -> Field:
    """Convert a field name (q, f2, f3, ...) to a coefficient field."""
    name = name.strip().lower()
    if name == FIELD_RATIONALS:
        return RATIONALS
    if name.startswith("f") and name[1:].isdigit():
        return prime_field(int(name[1:]))
    raise FieldMismatchError(f"Unknown field {name!r}")


def field_name(field: Field) -> str:
    """Name a coefficient field the way parse_field reads it."""
    p = field.characteristic()
    return FIELD_RATIONALS if p == 0 else f"f{p}"


def same_field(a: Field, b: Field) -> bool:
    """Show if two coefficient fields coincide."""
    return a.characteristic() == b.characteristic()


def rational(field: Field, numerator: int, denominator: int = 1) -> Scalar:
    """Build numerator/denominator as an element of field."""
    if denominator == 0:
        raise ZeroDivisionError("zero denominator")
    p = field.characteristic()
    if p and denominator % p == 0:
        raise ZeroDivisionError(f"denominator {denominator} vanishes in F_{p}")
    if p == 0:
        return field(numerator, denominator)
    return field.convert(numerator) / field.convert(denominator)


def _to_field(value: Scalar, source: Field, target: Field) -> Scalar:
    if source.characteristic() == 0:
        return rational(target, int(source.numer(value)), int(source.denom(value)))
    return target.convert(source.to_int(value))


def split_scalar(field: Field, value: Scalar) -> tuple[bool, str]:
    """Return (is_negative, magnitude) of a scalar for printing."""
    if field.characteristic():
        return False, str(field.to_int(value))
    num, den = int(field.numer(value)), int(field.denom(value))
    magnitude = str(abs(num)) if den == 1 else f"{abs(num)}/{den}"
    return num < 0, magnitude


class Monomial:
    """A monomial in array-indexed variables, stored as a sparse exponent map."""

    __slots__ = ("_exponents", "_map", "degree", "_hash")

    def __init__(
        self, exponents: Mapping[VarIndex, int] | Iterable[tuple[VarIndex, int]] = ()
    ) -> None:
        """Build a monomial, dropping zero exponents."""
        items = exponents.items() if isinstance(exponents, Mapping) else exponents
        merged: dict[VarIndex, int] = {}
        for var, exp in items:
            if exp < 0:
                raise ValueError(f"Negative exponent {exp} for {var}")
            if exp:
                key = tuple(var)
                merged[key] = merged.get(key, 0) + exp
        if len({len(v) for v in merged}) > 1:
            raise ShapeMismatchError(f"Mixed index dimensions in {sorted(merged)}")
        self._set(merged)

    def _set(self, exps: dict[VarIndex, int]) -> None:
        self._map = exps
        self._exponents = tuple(sorted(exps.items()))
        self.degree = sum(exps.values())
        self._hash = hash(self._exponents)

    @classmethod
    def _trusted(cls, exps: dict[VarIndex, int]) -> Monomial:
        m = object.__new__(cls)
        m._set(exps)
        return m

    @classmethod
    def one(cls) -> Monomial:
        """Return the monomial 1."""
        return ONE

    @classmethod
    def variable(cls, var: VarIndex, exp: int = 1) -> Monomial:
        """Return x_var^exp."""
        return cls({tuple(var): exp})

    @property
    def exponents(self) -> tuple[tuple[VarIndex, int], ...]:
        """Return (variable, exponent) pairs in ascending index order."""
        return self._exponents

    @property
    def variables(self) -> tuple[VarIndex, ...]:
        """Return the variables with a positive exponent."""
        return tuple(v for v, _ in self._exponents)

    @property
    def dimension(self) -> int | None:
        """Return the length of the variable indices, None for 1."""
        return len(self._exponents[0][0]) if self._exponents else None

    @property
    def is_one(self) -> bool:
        """Show if this is the monomial 1."""
        return not self._exponents

    def __getitem__(self, var: VarIndex) -> int:
        return self._map.get(var, 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Monomial):
            return NotImplemented
        return self._hash == other._hash and self._exponents == other._exponents

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return format_monomial(self)

    def _check_dimension(self, other: Monomial) -> None:
        a, b = self.dimension, other.dimension
        if a is not None and b is not None and a != b:
            raise ShapeMismatchError(f"Cannot combine {self} and {other}")

    def __mul__(self, other: Monomial) -> Monomial:
        if not isinstance(other, Monomial):
            return NotImplemented
        self._check_dimension(other)
        exps = dict(self._map)
        for var, exp in other._map.items():
            total = exps.get(var, 0) + exp
            if total > MAX_EXPONENT:
                raise OverflowError(f"Exponent of {var} exceeds {MAX_EXPONENT}")
            exps[var] = total
        return Monomial._trusted(exps)

    def __pow__(self, k: int) -> Monomial:
        if k < 0:
            raise ValueError("Negative power of a monomial")
        if k == 0:
            return ONE
        if any(e * k > MAX_EXPONENT for e in self._map.values()):
            raise OverflowError(f"Exponent overflow in {self}^{k}")
        return Monomial._trusted({v: e * k for v, e in self._map.items()})

    def divides(self, other: Monomial) -> bool:
        """Show if self divides other."""
        if self.degree > other.degree:
            return False
        omap = other._map
        return all(omap.get(v, 0) >= e for v, e in self._map.items())

    def divide(self, other: Monomial) -> Monomial | None:
        """Return self / other when other divides self, otherwise None."""
        if not other.divides(self):
            return None
        self._check_dimension(other)
        exps = dict(self._map)
        for var, exp in other._map.items():
            left = exps[var] - exp
            if left:
                exps[var] = left
            else:
                del exps[var]
        return Monomial._trusted(exps)

    def lcm(self, other: Monomial) -> Monomial:
        """Return the least common multiple."""
        self._check_dimension(other)
        exps = dict(self._map)
        for var, exp in other._map.items():
            if exp > exps.get(var, 0):
                exps[var] = exp
        return Monomial._trusted(exps)

    def gcd(self, other: Monomial) -> Monomial:
        """Return the greatest common divisor."""
        return Monomial._trusted(
            {v: min(e, other._map[v]) for v, e in self._map.items() if v in other._map}
        )


ONE = Monomial._trusted({})


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    """Multiply two monomials."""
    return a * b


def mono_divide(a: Monomial, b: Monomial) -> Monomial | None:
    """Divide a by b, None when b does not divide a."""
    return a.divide(b)


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """Return True when a divides b."""
    return a.divides(b)


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return a.lcm(b)


def mono_gcd(a: Monomial, b: Monomial) -> Monomial:
    return a.gcd(b)


class OrderKind(StrEnum):
    """Kinds of monomial order."""

    LEX = "lex"
    GREVLEX = "grevlex"
    BLOCK = "block"


def _lex(a: tuple, b: tuple) -> int:
    # variables ascend by index, so the highest ranked variable comes first
    i = j = 0
    while i < len(a) and j < len(b):
        (va, ea), (vb, eb) = a[i], b[j]
        if va == vb:
            if ea != eb:
                return 1 if ea > eb else -1
            i += 1
            j += 1
        elif va < vb:
            return 1
        else:
            return -1
    if i < len(a):
        return 1
    if j < len(b):
        return -1
    return 0


def _revlex(a: tuple, b: tuple) -> int:
    i, j = len(a) - 1, len(b) - 1
    while i >= 0 and j >= 0:
        (va, ea), (vb, eb) = a[i], b[j]
        if va == vb:
            if ea != eb:
                return 1 if ea < eb else -1
            i -= 1
            j -= 1
        elif va > vb:
            return -1
        else:
            return 1
    if i >= 0:
        return -1
    if j >= 0:
        return 1
    return 0


def _grevlex(a: tuple, b: tuple) -> int:
    da = sum(e for _, e in a)
    db = sum(e for _, e in b)
    if da != db:
        return 1 if da > db else -1
    return _revlex(a, b)


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order; variables rank by index, the smallest index highest.

    A block order compares the designated variables by grevlex first and breaks
    ties with grevlex on the remaining variables, so it eliminates the block.
    """

    kind: OrderKind = OrderKind.GREVLEX
    block: frozenset[VarIndex] = frozenset()

    def compare(self, a: Monomial, b: Monomial) -> int:
        """Return 1, 0 or -1 as a is greater than, equal to or less than b."""
        if a is b or a == b:
            return 0
        if self.kind == OrderKind.LEX:
            return _lex(a.exponents, b.exponents)
        if self.kind == OrderKind.GREVLEX:
            return _grevlex(a.exponents, b.exponents)
        a_in = tuple(t for t in a.exponents if t[0] in self.block)
        b_in = tuple(t for t in b.exponents if t[0] in self.block)
        verdict = _grevlex(a_in, b_in)
        if verdict:
            return verdict
        return _grevlex(
            tuple(t for t in a.exponents if t[0] not in self.block),
            tuple(t for t in b.exponents if t[0] not in self.block),
        )

    @cached_property
    def key(self) -> Any:
        """Return a sort key implementing this order."""
        return cmp_to_key(self.compare)

    def sort_descending(self, monomials: Iterable[Monomial]) -> list[Monomial]:
        """Sort monomials from greatest to least."""
        return sorted(monomials, key=self.key, reverse=True)

    def __str__(self) -> str:
        return self.kind.value


GREVLEX = MonomialOrder(OrderKind.GREVLEX)
LEX = MonomialOrder(OrderKind.LEX)


def elimination_order(variables: Iterable[VarIndex]) -> MonomialOrder:
    """Return a block order eliminating the given variables."""
    return MonomialOrder(OrderKind.BLOCK, frozenset(tuple(v) for v in variables))


def parse_order(name: str) -> MonomialOrder:
    """Convert an order name to a MonomialOrder."""
    try:
        kind = OrderKind(name.strip().lower())
    except ValueError as err:
        raise ValueError(f"Unknown monomial order {name!r}") from err
    if kind == OrderKind.BLOCK:
        raise ValueError("A block order needs its variables, use elimination_order")
    return MonomialOrder(kind)


def mono_compare(a: Monomial, b: Monomial, order: MonomialOrder = GREVLEX) -> int:
    """Compare two monomials in the given order."""
    a._check_dimension(b)
    return order.compare(a, b)


Term = tuple[Monomial, Scalar]


class Polynomial:
    """A sparse polynomial with terms held strictly descending in its order."""

    __slots__ = ("terms", "field", "order", "_hash")

    def __init__(
        self,
        terms: Mapping[Monomial, Scalar] | Iterable[Term] = (),
        field: Field = RATIONALS,
        order: MonomialOrder = GREVLEX,
    ) -> None:
        """Build a polynomial in canonical form."""
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Monomial, Scalar] = {}
        for mono, coeff in items:
            coeff = field.convert(coeff)
            if mono in acc:
                acc[mono] = acc[mono] + coeff
            else:
                acc[mono] = coeff
        dims = {m.dimension for m in acc if not m.is_one}
        if len(dims) > 1:
            raise ShapeMismatchError(f"Mixed index dimensions {sorted(dims)}")
        ordered = order.sort_descending(m for m, c in acc.items() if c)
        self._set(tuple((m, acc[m]) for m in ordered), field, order)

    def _set(self, terms: tuple[Term, ...], field: Field, order: MonomialOrder) -> None:
        self.terms = terms
        self.field = field
        self.order = order
        self._hash: int | None = None

    @classmethod
    def _trusted(
        cls, terms: tuple[Term, ...], field: Field, order: MonomialOrder
    ) -> Polynomial:
        p = object.__new__(cls)
        p._set(terms, field, order)
        return p

    @classmethod
    def zero(cls, field: Field = RATIONALS, order: MonomialOrder = GREVLEX) -> Polynomial:
        """Return the zero polynomial."""
        return cls._trusted((), field, order)

    @classmethod
    def constant(
        cls, value: Scalar, field: Field = RATIONALS, order: MonomialOrder = GREVLEX
    ) -> Polynomial:
        """Return a constant polynomial."""
        return cls([(ONE, value)], field, order)

    @classmethod
    def monomial(
        cls,
        mono: Monomial,
        coeff: Scalar = 1,
        field: Field = RATIONALS,
        order: MonomialOrder = GREVLEX,
    ) -> Polynomial:
        """Return coeff * mono."""
        return cls([(mono, coeff)], field, order)

    @classmethod
    def variable(
        cls, var: VarIndex, field: Field = RATIONALS, order: MonomialOrder = GREVLEX
    ) -> Polynomial:
        """Return the polynomial x_var."""
        return cls.monomial(Monomial.variable(var), 1, field, order)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Term]:
        return iter(self.terms)

    @property
    def is_zero(self) -> bool:
        """Show if this is the zero polynomial."""
        return not self.terms

    @property
    def is_constant(self) -> bool:
        """Show if this polynomial has no variables."""
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0].is_one)

    @property
    def leading_monomial(self) -> Monomial:
        """Return the greatest monomial."""
        return self.terms[0][0]

    @property
    def leading_coefficient(self) -> Scalar:
        """Return the coefficient of the greatest monomial."""
        return self.terms[0][1]

    @property
    def leading_term(self) -> Term:
        """Return the greatest term."""
        return self.terms[0]

    @property
    def degree(self) -> int:
        """Return the total degree, -1 for zero."""
        return max((m.degree for m, _ in self.terms), default=-1)

    @property
    def is_homogeneous(self) -> bool:
        """Show if all terms share one degree."""
        return len({m.degree for m, _ in self.terms}) <= 1

    @property
    def variables(self) -> set[VarIndex]:
        """Return the variables appearing in some term."""
        return {v for m, _ in self.terms for v in m.variables}

    @property
    def dimension(self) -> int | None:
        """Return the index length of the variables, None for constants."""
        return next((m.dimension for m, _ in self.terms if not m.is_one), None)

    def monomials(self) -> tuple[Monomial, ...]:
        """Return the monomial support in descending order."""
        return tuple(m for m, _ in self.terms)

    def coefficient(self, mono: Monomial) -> Scalar:
        """Return the coefficient of mono."""
        return next((c for m, c in self.terms if m == mono), self.field.zero)

    def constant_coefficient(self) -> Scalar:
        """Return the coefficient of 1."""
        return self.coefficient(ONE)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            if isinstance(other, int):
                return self == Polynomial.constant(other, self.field, self.order)
            return NotImplemented
        if not same_field(self.field, other.field) or len(self.terms) != len(other.terms):
            return False
        if self.order == other.order:
            return self.terms == other.terms
        return dict(self.terms) == dict(other.terms)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms))
        return self._hash

    def __repr__(self) -> str:
        return format_polynomial(self)

    def _coerce(self, other: Any) -> Polynomial:
        if isinstance(other, Polynomial):
            if not same_field(self.field, other.field):
                raise FieldMismatchError(
                    f"Cannot combine polynomials over {field_name(self.field)}"
                    f" and {field_name(other.field)}"
                )
            if other.order != self.order:
                return other.with_order(self.order)
            return other
        if isinstance(other, Monomial):
            return Polynomial.monomial(other, 1, self.field, self.order)
        return Polynomial.constant(other, self.field, self.order)

    def _combine(self, other: Polynomial, negate: bool) -> Polynomial:
        a, b = self.terms, other.terms
        compare = self.order.compare
        out: list[Term] = []
        i = j = 0
        while i < len(a) and j < len(b):
            (ma, ca), (mb, cb) = a[i], b[j]
            if ma == mb:
                c = ca - cb if negate else ca + cb
                if c:
                    out.append((ma, c))
                i += 1
                j += 1
            elif compare(ma, mb) > 0:
                out.append(a[i])
                i += 1
            else:
                out.append((mb, -cb) if negate else b[j])
                j += 1
        out.extend(a[i:])
        out.extend(((m, -c) for m, c in b[j:]) if negate else b[j:])
        if out:
            dims = {m.dimension for m, _ in out if not m.is_one}
            if len(dims) > 1:
                raise ShapeMismatchError(f"Mixed index dimensions {sorted(dims)}")
        return Polynomial._trusted(tuple(out), self.field, self.order)

    def __add__(self, other: Any) -> Polynomial:
        return self._combine(self._coerce(other), negate=False)

    __radd__ = __add__

    def __sub__(self, other: Any) -> Polynomial:
        return self._combine(self._coerce(other), negate=True)

    def __rsub__(self, other: Any) -> Polynomial:
        return self._coerce(other)._combine(self, negate=True)

    def __neg__(self) -> Polynomial:
        return Polynomial._trusted(
            tuple((m, -c) for m, c in self.terms), self.field, self.order
        )

    def __mul__(self, other: Any) -> Polynomial:
        if isinstance(other, Monomial):
            return self.mul_term(other, self.field.one)
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._coerce(other)
        if len(other.terms) == 1:
            return self.mul_term(*other.terms[0])
        acc: dict[Monomial, Scalar] = {}
        for ma, ca in self.terms:
            for mb, cb in other.terms:
                m = ma * mb
                acc[m] = acc[m] + ca * cb if m in acc else ca * cb
        return Polynomial(acc, self.field, self.order)

    def __rmul__(self, other: Any) -> Polynomial:
        return self * other

    def scale(self, value: Scalar) -> Polynomial:
        """Multiply by a scalar."""
        c = self.field.convert(value)
        if not c:
            return Polynomial.zero(self.field, self.order)
        return Polynomial._trusted(
            tuple((m, k * c) for m, k in self.terms), self.field, self.order
        )

    def mul_term(self, mono: Monomial, coeff: Scalar) -> Polynomial:
        """Multiply by coeff * mono; the order is multiplicative so no re-sort."""
        c = self.field.convert(coeff)
        if not c:
            return Polynomial.zero(self.field, self.order)
        return Polynomial._trusted(
            tuple((m * mono, k * c) for m, k in self.terms), self.field, self.order
        )

    def monic(self) -> Polynomial:
        """Divide by the leading coefficient."""
        if not self.terms:
            return self
        lc = self.leading_coefficient
        if lc == self.field.one:
            return self
        inv = self.field.one / lc
        return Polynomial._trusted(
            tuple((m, c * inv) for m, c in self.terms), self.field, self.order
        )

    def with_order(self, order: MonomialOrder) -> Polynomial:
        """Return the same polynomial sorted in another order."""
        if order == self.order:
            return self
        ordered = sorted(self.terms, key=lambda t: order.key(t[0]), reverse=True)
        return Polynomial._trusted(tuple(ordered), self.field, order)

    def to_field(self, field: Field) -> Polynomial:
        """Map the coefficients into another field (reduction mod p for F_p)."""
        if same_field(field, self.field):
            return self
        return Polynomial(
            [(m, _to_field(c, self.field, field)) for m, c in self.terms],
            field,
            self.order,
        )

    def divide_monomial(self, mono: Monomial) -> Polynomial | None:
        """Divide every term by mono, None if some term is not divisible."""
        out = []
        for m, c in self.terms:
            q = m.divide(mono)
            if q is None:
                return None
            out.append((q, c))
        return Polynomial._trusted(tuple(out), self.field, self.order)


def poly_add(f: Polynomial, g: Polynomial) -> Polynomial:
    """Add two polynomials."""
    return f + g


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    """Multiply two polynomials."""
    return f * g


def contract(g: Polynomial, f: Polynomial) -> Polynomial:
    """Let g act on f by partial differentiation, x^a o x^b = b!/(b-a)! x^(b-a)."""
    if g.field.characteristic() or f.field.characteristic():
        raise CharacteristicError("Contraction is only defined over the rationals")
    acc: dict[Monomial, Scalar] = {}
    for a, ca in g.terms:
        for b, cb in f.terms:
            quotient = b.divide(a)
            if quotient is None:
                continue
            weight = math.prod(math.perm(b[v], e) for v, e in a.exponents)
            value = ca * cb * weight
            acc[quotient] = acc[quotient] + value if quotient in acc else value
    return Polynomial(acc, f.field, f.order)


def format_monomial(mono: Monomial) -> str:
    """Render a monomial as x[1,1]^2*x[2,1]."""
    if mono.is_one:
        return "1"
    return "*".join(
        f"x[{','.join(map(str, v))}]" + (f"^{e}" if e != 1 else "")
        for v, e in mono.exponents
    )


def format_polynomial(f: Polynomial) -> str:
    """Render a polynomial in the canonical textual form read by the parser."""
    if not f.terms:
        return "0"
    parts: list[str] = []
    for k, (mono, coeff) in enumerate(f.terms):
        negative, magnitude = split_scalar(f.field, coeff)
        if mono.is_one:
            body = magnitude
        elif magnitude == "1":
            body = format_monomial(mono)
        else:
            body = f"{magnitude}*{format_monomial(mono)}"
        if k == 0:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f" - {body}" if negative else f" + {body}")
    return "".join(parts)
