"""The slice-ideal family: shapes, slices, generators, tableaux and the polynomial F."""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from functools import cached_property, lru_cache
import itertools
import logging
import math
import re
from typing import NamedTuple

from .exceptions import ShapeError
from .groebner import Ideal
from .poly import GREVLEX, RATIONALS, Field, Monomial, MonomialOrder, Polynomial, VarIndex

_LOGGER = logging.getLogger(__name__)

SHAPE_PATTERN = re.compile(r"^\d+(?:x\d+)+$")


@dataclass(frozen=True)
class Shape:
    """The sizes (n_1, ..., n_d) of a d-dimensional array of variables."""

    dims: tuple[int, ...]

    def __post_init__(self) -> None:
        """Validate the sizes."""
        if len(self.dims) < 2:
            raise ShapeError(f"A shape needs at least two directions, got {self.dims}")
        if any(n < 2 for n in self.dims):
            raise ShapeError(f"Every size must be at least 2, got {self.dims}")

    @classmethod
    def parse(cls, text: str) -> Shape:
        """Read a shape literal such as 2x3x2."""
        text = text.strip().lower()
        if not SHAPE_PATTERN.match(text):
            raise ShapeError(f"Invalid shape literal {text!r}")
        return cls(tuple(int(n) for n in text.split("x")))

    @classmethod
    def cubic(cls, n: int, d: int) -> Shape:
        """Return the shape (n, ..., n) with d directions."""
        return cls((n,) * d)

    def __str__(self) -> str:
        return "x".join(map(str, self.dims))

    @property
    def directions(self) -> int:
        """Return d."""
        return len(self.dims)

    @property
    def variable_count(self) -> int:
        """Return n_1 * ... * n_d."""
        return math.prod(self.dims)

    @property
    def is_cubic(self) -> bool:
        """Show if all sizes agree."""
        return len(set(self.dims)) == 1

    @cached_property
    def index_set(self) -> tuple[VarIndex, ...]:
        """Return every variable index, ascending."""
        return tuple(itertools.product(*(range(1, n + 1) for n in self.dims)))

    def variables(self) -> tuple[VarIndex, ...]:
        """Return every variable index, ascending."""
        return self.index_set

    def line_indices(self) -> tuple[tuple[int, ...], ...]:
        """Return the positions p of the first d-1 directions, ascending."""
        return tuple(itertools.product(*(range(1, n + 1) for n in self.dims[:-1])))

    def contains(self, nu: Sequence[int]) -> bool:
        """Show if nu indexes a variable of this shape."""
        return len(nu) == len(self.dims) and all(
            1 <= a <= n for a, n in zip(nu, self.dims, strict=True)
        )


def _check_direction(shape: Shape, i: int, j: int) -> None:
    if not 1 <= i <= shape.directions:
        raise ShapeError(f"Direction {i} is outside 1..{shape.directions}")
    if not 1 <= j <= shape.dims[i - 1]:
        raise ShapeError(f"Index {j} is outside 1..{shape.dims[i - 1]} in direction {i}")


def slice_monomial(shape: Shape, i: int, j: int) -> Monomial:
    """Return s_ij, the product of the variables x_nu with nu_i = j."""
    _check_direction(shape, i, j)
    return Monomial._trusted({nu: 1 for nu in shape.index_set if nu[i - 1] == j})


def slice_polynomial(
    shape: Shape, i: int, j: int, field: Field = RATIONALS, order: MonomialOrder = GREVLEX
) -> Polynomial:
    """Return s_ij as a polynomial."""
    return Polynomial.monomial(slice_monomial(shape, i, j), 1, field, order)


@dataclass(frozen=True)
class SliceIdeal:
    """The generators s_i1 - s_ij (i < d, j >= 2) followed by s_dj (all j)."""

    shape: Shape
    binomials: tuple[Polynomial, ...]
    monomials: tuple[Polynomial, ...]

    @property
    def generators(self) -> tuple[Polynomial, ...]:
        """Return the generators, direction-major then index order."""
        return self.binomials + self.monomials

    @property
    def labels(self) -> tuple[str, ...]:
        """Name each generator in terms of slices."""
        d = self.shape.directions
        names = [
            f"s[{i},1] - s[{i},{j}]"
            for i in range(1, d)
            for j in range(2, self.shape.dims[i - 1] + 1)
        ]
        names += [f"s[{d},{j}]" for j in range(1, self.shape.dims[-1] + 1)]
        return tuple(names)

    def ideal(self, field: Field = RATIONALS, order: MonomialOrder = GREVLEX) -> Ideal:
        """Return the ideal over a field in a given order."""
        return Ideal.create(
            (g.to_field(field) for g in self.generators),
            self.shape.variables(),
            field,
            order,
        )


@lru_cache(maxsize=32)
def build_ideal(shape: Shape) -> SliceIdeal:
    """Construct the slice ideal of a shape over the rationals."""
    d = shape.directions
    binomials = tuple(
        slice_polynomial(shape, i, 1) - slice_polynomial(shape, i, j)
        for i in range(1, d)
        for j in range(2, shape.dims[i - 1] + 1)
    )
    monomials = tuple(
        slice_polynomial(shape, d, j) for j in range(1, shape.dims[-1] + 1)
    )
    _LOGGER.debug(
        "Built slice ideal of %s with %d generators", shape, len(binomials) + len(monomials)
    )
    return SliceIdeal(shape, binomials, monomials)


def generator_degrees(shape: Shape) -> tuple[tuple[int, int], ...]:
    """Return (count, degree) of the generators per direction.

    Direction i < d has n_i - 1 binomials of degree n_1...n_d / n_i and
    direction d has n_d monomials of degree n_1...n_{d-1}.
    """
    total = shape.variable_count
    return tuple(
        (n - 1 if i < shape.directions else n, total // n)
        for i, n in enumerate(shape.dims, start=1)
    )


def witness_monomial(shape: Shape) -> Monomial:
    """Return s, the product of s_ij over i < d and j >= 2."""
    d = shape.directions
    return Monomial._trusted(
        {
            nu: k
            for nu in shape.index_set
            if (k := sum(1 for a in nu[: d - 1] if a != 1))
        }
    )


def line_monomial(shape: Shape, p: Sequence[int]) -> Monomial:
    """Return l_p, the product of the n_d variables x_(p, k)."""
    p = tuple(p)
    if len(p) != shape.directions - 1 or not all(
        1 <= a <= n for a, n in zip(p, shape.dims[:-1], strict=True)
    ):
        raise ShapeError(f"{p} is not a line position of {shape}")
    return Monomial._trusted({p + (k,): 1 for k in range(1, shape.dims[-1] + 1)})


@dataclass(frozen=True)
class Tableau:
    """Rows of non-negative integers; row i has n_i entries."""

    rows: tuple[tuple[int, ...], ...]

    def weight(self, p: Sequence[int]) -> int:
        """Return |p|_A, the sum of a_(i, p_i)."""
        return sum(row[pi - 1] for row, pi in zip(self.rows, p, strict=True))

    def satisfies(self, condition: Sequence[int]) -> bool:
        """Show if row i sums to condition_i - 1."""
        return len(condition) == len(self.rows) and all(
            sum(row) == c - 1 for row, c in zip(self.rows, condition, strict=True)
        )

    def __str__(self) -> str:
        return " / ".join(" ".join(map(str, row)) for row in self.rows)


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    # descending lexicographic, so (1, 0) comes before (0, 1)
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first, *rest)


def _check_condition(shape: Shape, condition: Sequence[int]) -> None:
    if len(condition) != shape.directions - 1:
        raise ShapeError(
            f"A row condition for {shape} has {shape.directions - 1} entries, got {condition}"
        )
    if any(c < 1 for c in condition):
        raise ShapeError(f"Row condition entries must be at least 1, got {condition}")


def tableaux(shape: Shape, condition: Sequence[int]) -> Iterator[Tableau]:
    """Enumerate the tableaux satisfying a row condition, row-lexicographically."""
    _check_condition(shape, condition)
    rows = [
        list(_compositions(c - 1, n))
        for c, n in zip(condition, shape.dims[:-1], strict=True)
    ]
    for combo in itertools.product(*rows):
        yield Tableau(combo)


def tableau_count(shape: Shape, condition: Sequence[int]) -> int:
    """Return the number of tableaux satisfying a row condition."""
    _check_condition(shape, condition)
    return math.prod(
        math.comb(c - 1 + n - 1, n - 1)
        for c, n in zip(condition, shape.dims[:-1], strict=True)
    )


def tableau_weight(tableau: Tableau, p: Sequence[int]) -> int:
    """Return |p|_A."""
    return tableau.weight(p)


def _tau_term(shape: Shape, tableau: Tableau) -> tuple[Monomial, int]:
    n_d = shape.dims[-1]
    exps: dict[VarIndex, int] = {}
    denominator = 1
    for p in shape.line_indices():
        k = tableau.weight(p)
        if k:
            denominator *= math.factorial(k) ** n_d
            for last in range(1, n_d + 1):
                exps[p + (last,)] = k
    return Monomial._trusted(exps), denominator


def tau(shape: Shape, tableau: Tableau) -> Polynomial:
    """Return the term of F indexed by a tableau."""
    mono, denominator = _tau_term(shape, tableau)
    return Polynomial.monomial(mono, RATIONALS(1, denominator))


def tableau_sum(shape: Shape, condition: Sequence[int]) -> Polynomial:
    """Sum tau over the tableaux satisfying a condition, merging equal monomials."""
    terms = []
    for tableau in tableaux(shape, condition):
        mono, denominator = _tau_term(shape, tableau)
        terms.append((mono, RATIONALS(1, denominator)))
    return Polynomial(terms)


@lru_cache(maxsize=32)
def build_F(shape: Shape) -> Polynomial:  # noqa: N802
    """Return F, the sum of tau over tableaux with row condition (n_1, ..., n_{d-1})."""
    f = tableau_sum(shape, shape.dims[:-1])
    _LOGGER.debug("Built F for %s with %d terms", shape, len(f))
    return f


def special_tableau(shape: Shape) -> Tableau:
    """Return A_s: first column 0, every other entry 1."""
    return Tableau(tuple((0,) + (1,) * (n - 1) for n in shape.dims[:-1]))


def witness_alpha(shape: Shape) -> int:
    """Return the integer alpha with s = alpha * tau(A_s)."""
    special = special_tableau(shape)
    n_d = shape.dims[-1]
    return math.prod(
        math.factorial(special.weight(p)) ** n_d for p in shape.line_indices()
    )


class SupportCount(NamedTuple):
    """Sizes of the monomial support of a generating set."""

    with_multiplicity: int
    distinct: int


def support_count(generators: SliceIdeal | Iterable[Polynomial]) -> SupportCount:
    """Count the monomials of the generators, with multiplicity and distinct."""
    if isinstance(generators, SliceIdeal):
        generators = generators.generators
    total = 0
    seen: set[Monomial] = set()
    for g in generators:
        total += len(g)
        seen.update(g.monomials())
    return SupportCount(total, len(seen))


def support_bound(total: int, r: int) -> int:
    """Return -r^2 + r(N + 1), the support bound for r interreduced generators in N monomials."""
    if not 1 <= r <= total:
        raise ValueError(f"r must lie in 1..{total}, got {r}")
    return -r * r + r * (total + 1)


def support_bound_max(total: int) -> tuple[int, int]:
    """Return the maximum of support_bound over r and where it is attained.

    The maximum is floor(((N + 1) / 2)^2) at r = floor((N + 1) / 2).
    """
    if total < 1:
        raise ValueError(f"N must be positive, got {total}")
    return (total + 1) ** 2 // 4, (total + 1) // 2


def cubic_support_size(n: int, d: int) -> int:
    """Return 2(n - 1)(d - 1) + n, the support size of the cubic shape."""
    return 2 * (n - 1) * (d - 1) + n


def growth_shape(support: int) -> Shape:
    """Return the shape 2x...x2 with N/2 directions, whose support is N."""
    if support < 4 or support % 2:
        raise ShapeError(f"Support size must be even and at least 4, got {support}")
    return Shape.cubic(2, support // 2)
