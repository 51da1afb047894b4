"""Certificates that the slice ideal has depth zero.

Every check returns a report instead of raising, so one run documents each
claim: the generators annihilate F, the witness s pairs with F to 1, and
x_nu * s lies in the ideal for every variable x_nu.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
import logging

from .const import (
    ATTR_DETAIL,
    ATTR_NAME,
    ATTR_PASS,
    GROEBNER_VARIABLE_LIMIT,
    MODE_EXCHANGE,
    MODE_GROEBNER,
)
from .exceptions import CertificateError, NotSliceFactoredError
from .groebner import groebner
from .poly import (
    ONE,
    RATIONALS,
    Monomial,
    Polynomial,
    Scalar,
    VarIndex,
    contract,
    format_monomial,
    format_polynomial,
    split_scalar,
)
from .slicefamily import (
    Shape,
    Tableau,
    build_F,
    build_ideal,
    slice_monomial,
    tableau_sum,
    tableaux,
    tau,
    witness_monomial,
)

_LOGGER = logging.getLogger(__name__)

SliceKey = tuple[int, int]


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one check."""

    name: str
    passed: bool
    detail: str = ""

    def as_dict(self) -> dict[str, object]:
        """Return the report form of the check."""
        return {ATTR_NAME: self.name, ATTR_PASS: self.passed, ATTR_DETAIL: self.detail}


@dataclass(frozen=True)
class CheckReport:
    """A named group of checks that passes when all of them pass."""

    name: str
    results: tuple[CheckResult, ...] = ()

    @property
    def passed(self) -> bool:
        """Show if every check passed."""
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> tuple[CheckResult, ...]:
        """Return the failed checks."""
        return tuple(r for r in self.results if not r.passed)

    def summary(self) -> CheckResult:
        """Fold the report into a single check."""
        failed = self.failures
        detail = (
            f"{len(self.results)} checks passed"
            if not failed
            else f"{len(failed)} of {len(self.results)} failed, first {failed[0].name}"
        )
        return CheckResult(self.name, not failed, detail)


def _binomial_index(shape: Shape, i: int, j: int) -> int:
    return sum(n - 1 for n in shape.dims[: i - 1]) + j - 2


def _monomial_index(shape: Shape, j: int) -> int:
    return sum(n - 1 for n in shape.dims[:-1]) + j - 1


def check_annihilation(shape: Shape) -> CheckReport:
    """Check that contract(g, F) = 0 for every generator g."""
    f = build_F(shape)
    ideal = build_ideal(shape)
    results = []
    for label, g in zip(ideal.labels, ideal.generators, strict=True):
        value = contract(g, f)
        results.append(CheckResult(f"{label} o F", value.is_zero, format_polynomial(value)))
    return CheckReport("annihilation", tuple(results))


def check_witness_pairing(shape: Shape) -> Scalar:
    """Return contract(s, F); F certifies s outside the ideal when this is 1.

    A non-constant result cannot certify anything and is returned as 0.
    """
    s = Polynomial.monomial(witness_monomial(shape))
    value = contract(s, build_F(shape))
    if not value.is_constant:
        _LOGGER.warning("s o F is not a constant for %s: %s", shape, value)
        return value.field.zero
    return value.constant_coefficient()


def pairing_terms(shape: Shape) -> list[tuple[Tableau, Scalar]]:
    """Return contract(s, tau_A) for every tableau A in F."""
    s = Polynomial.monomial(witness_monomial(shape))
    return [
        (a, contract(s, tau(shape, a)).constant_coefficient())
        for a in tableaux(shape, shape.dims[:-1])
    ]


@dataclass(frozen=True)
class SliceProduct:
    """A monomial tracked as a multiset of slices s_ij in directions i < d."""

    shape: Shape
    factors: tuple[tuple[SliceKey, int], ...]

    @classmethod
    def of(
        cls, shape: Shape, factors: Mapping[SliceKey, int] | Iterable[SliceKey]
    ) -> SliceProduct:
        """Build a slice product from a multiset of (i, j) keys."""
        counts = Counter(factors)
        for (i, j), count in counts.items():
            if not 1 <= i < shape.directions:
                raise NotSliceFactoredError(f"s[{i},{j}] is not a slice in a direction below d")
            slice_monomial(shape, i, j)
            if count < 0:
                raise ValueError(f"Negative multiplicity of s[{i},{j}]")
        return cls(shape, tuple(sorted((k, c) for k, c in counts.items() if c)))

    @classmethod
    def witness(cls, shape: Shape) -> SliceProduct:
        """Return s as the product of s_ij over i < d and j >= 2."""
        return cls.of(
            shape,
            [
                (i, j)
                for i in range(1, shape.directions)
                for j in range(2, shape.dims[i - 1] + 1)
            ],
        )

    @classmethod
    def from_monomial(cls, shape: Shape, mono: Monomial) -> SliceProduct:
        """Split a monomial into slices, taking the lowest (i, j) that divides first."""
        counts: Counter[SliceKey] = Counter()
        rest = mono
        keys = [
            (i, j) for i in range(1, shape.directions) for j in range(1, shape.dims[i - 1] + 1)
        ]
        while not rest.is_one:
            for key in keys:
                quotient = rest.divide(slice_monomial(shape, *key))
                if quotient is not None:
                    counts[key] += 1
                    rest = quotient
                    break
            else:
                raise NotSliceFactoredError(
                    f"{format_monomial(mono)} is not a product of slices of {shape}"
                )
        return cls.of(shape, counts)

    def count(self, key: SliceKey) -> int:
        """Return the multiplicity of a slice."""
        return dict(self.factors).get(key, 0)

    def monomial(self) -> Monomial:
        """Expand into a monomial."""
        out = ONE
        for (i, j), count in self.factors:
            out = out * slice_monomial(self.shape, i, j) ** count
        return out

    def replace(self, key: SliceKey, target: SliceKey) -> SliceProduct:
        """Swap one copy of key for target."""
        counts = Counter(dict(self.factors))
        if not counts[key]:
            raise NotSliceFactoredError(f"s[{key[0]},{key[1]}] is not a factor")
        counts[key] -= 1
        counts[target] += 1
        return SliceProduct.of(self.shape, counts)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "*".join(
            f"s[{i},{j}]" + (f"^{c}" if c > 1 else "") for (i, j), c in self.factors
        )


@dataclass(frozen=True)
class Exchange:
    """before - after, written as sum of cofactor_k * generator_k."""

    shape: Shape
    before: SliceProduct
    after: SliceProduct
    cofactors: tuple[tuple[int, Polynomial], ...] = ()

    @property
    def result(self) -> Monomial:
        """Return the monomial after the exchange."""
        return self.after.monomial()

    def combination(self) -> Polynomial:
        """Expand sum of cofactor_k * generator_k."""
        generators = build_ideal(self.shape).generators
        out = Polynomial.zero()
        for k, cofactor in self.cofactors:
            out = out + cofactor * generators[k]
        return out

    def verify(self) -> bool:
        """Show if before - after equals the expanded combination."""
        difference = Polynomial.monomial(self.before.monomial()) - Polynomial.monomial(
            self.result
        )
        return difference == self.combination()


def _add_cofactor(acc: dict[int, Polynomial], index: int, value: Polynomial) -> None:
    acc[index] = acc[index] + value if index in acc else value


def slice_exchange_reduce(
    mono: Monomial | SliceProduct,
    shape: Shape,
    exchanges: Sequence[tuple[int, int, int]] | None = None,
) -> Exchange:
    """Swap slice factors s_ij for s_ij' within the residue class modulo the ideal.

    exchanges lists (i, j, j') steps; by default every factor moves to index 1.
    """
    start = mono if isinstance(mono, SliceProduct) else SliceProduct.from_monomial(shape, mono)
    if exchanges is None:
        exchanges = [
            (i, j, 1) for (i, j), count in start.factors for _ in range(count) if j != 1
        ]
    current = start
    acc: dict[int, Polynomial] = {}
    for i, j, target in exchanges:
        if j == target:
            continue
        slice_monomial(shape, i, target)
        rest = current.monomial().divide(slice_monomial(shape, i, j))
        if rest is None or not current.count((i, j)):
            raise NotSliceFactoredError(f"s[{i},{j}] is not a factor of {current}")
        rest_poly = Polynomial.monomial(rest)
        # s_ij - s_ij' = (s_i1 - s_ij') - (s_i1 - s_ij)
        if target != 1:
            _add_cofactor(acc, _binomial_index(shape, i, target), rest_poly)
        if j != 1:
            _add_cofactor(acc, _binomial_index(shape, i, j), -rest_poly)
        current = current.replace((i, j), (i, target))
    cofactors = tuple(sorted((k, c) for k, c in acc.items() if c))
    return Exchange(shape, start, current, cofactors)


@dataclass(frozen=True)
class ColonCertificate:
    """x_nu * s written as an explicit combination of the generators."""

    shape: Shape
    nu: VarIndex
    exchange: Exchange
    cofactors: tuple[tuple[int, Polynomial], ...] = ()

    def verify(self) -> bool:
        """Expand the combination and compare with x_nu * s."""
        generators = build_ideal(self.shape).generators
        total = Polynomial.zero()
        for k, cofactor in self.cofactors:
            total = total + cofactor * generators[k]
        target = Monomial.variable(self.nu) * witness_monomial(self.shape)
        return total == Polynomial.monomial(target)

    def __str__(self) -> str:
        d = self.shape.directions
        return (
            f"x[{','.join(map(str, self.nu))}]*s = x*({self.exchange.after})"
            f" mod I, divisible by s[{d},{self.nu[-1]}]"
        )


def colon_certificate(shape: Shape, nu: Sequence[int]) -> ColonCertificate:
    """Certify x_nu * s in the ideal by slice exchanges and one divisibility step."""
    nu = tuple(nu)
    if not shape.contains(nu):
        raise CertificateError(f"{nu} is not a variable of {shape}")
    d = shape.directions
    exchange = slice_exchange_reduce(
        SliceProduct.witness(shape),
        shape,
        [(i, nu[i - 1], 1) for i in range(1, d) if nu[i - 1] != 1],
    )
    x_nu = Monomial.variable(nu)
    quotient = (x_nu * exchange.result).divide(slice_monomial(shape, d, nu[-1]))
    if quotient is None:
        raise CertificateError(f"s[{d},{nu[-1]}] does not divide x{nu} * {exchange.after}")
    acc: dict[int, Polynomial] = {k: c * x_nu for k, c in exchange.cofactors}
    _add_cofactor(acc, _monomial_index(shape, nu[-1]), Polynomial.monomial(quotient))
    return ColonCertificate(shape, nu, exchange, tuple(sorted(acc.items())))


def check_colon_membership(
    shape: Shape,
    mode: str = MODE_EXCHANGE,
    nus: Iterable[VarIndex] | None = None,
    include_witness: bool = True,
) -> CheckReport:
    """Check x_nu * s in the ideal for every nu (or the given ones).

    In groebner mode s itself is also reduced, unless include_witness is False.
    """
    nus = shape.variables() if nus is None else tuple(tuple(n) for n in nus)
    s = witness_monomial(shape)
    results = []
    if mode == MODE_GROEBNER:
        if shape.variable_count > GROEBNER_VARIABLE_LIMIT:
            _LOGGER.warning(
                "Groebner colon check on %d variables may take long", shape.variable_count
            )
        gb = groebner(build_ideal(shape).ideal())
        for nu in nus:
            product = Polynomial.monomial(Monomial.variable(nu) * s)
            remainder = gb.normal_form(product)
            results.append(
                CheckResult(
                    f"x[{','.join(map(str, nu))}]*s in I",
                    remainder.is_zero,
                    f"normal form {format_polynomial(remainder)}",
                )
            )
        if include_witness:
            remainder = gb.normal_form(Polynomial.monomial(s))
            results.append(
                CheckResult(
                    "s not in I",
                    not remainder.is_zero,
                    f"normal form {format_polynomial(remainder)}",
                )
            )
    elif mode == MODE_EXCHANGE:
        for nu in nus:
            cert = colon_certificate(shape, nu)
            results.append(
                CheckResult(f"x[{','.join(map(str, nu))}]*s in I", cert.verify(), str(cert))
            )
    else:
        raise ValueError(f"Unknown colon mode {mode!r}")
    return CheckReport("colon", tuple(results))


def check_recursion(shape: Shape) -> CheckReport:
    """Check that s_ij o F equals the tableau sum with row i's condition lowered by one."""
    f = build_F(shape)
    results = []
    for i in range(1, shape.directions):
        condition = list(shape.dims[:-1])
        condition[i - 1] -= 1
        expected = tableau_sum(shape, condition)
        for j in range(1, shape.dims[i - 1] + 1):
            value = contract(Polynomial.monomial(slice_monomial(shape, i, j)), f)
            results.append(
                CheckResult(
                    f"s[{i},{j}] o F",
                    value == expected,
                    f"{len(value)} terms, condition {tuple(condition)}",
                )
            )
    return CheckReport("recursion", tuple(results))


@dataclass(frozen=True)
class DepthZeroCertificate:
    """Evidence that s lies in (I : m) but not in I, so depth R/I = 0."""

    shape: Shape
    mode: str
    annihilation: CheckReport
    pairing: Scalar
    colon: CheckReport

    @property
    def pairing_passed(self) -> bool:
        """Show if s o F = 1."""
        return self.pairing == RATIONALS.one

    @property
    def passed(self) -> bool:
        """Show if every part holds."""
        return self.annihilation.passed and self.pairing_passed and self.colon.passed

    @property
    def projective_dimension(self) -> int:
        """Return n_1 * ... * n_d, which the certificate establishes."""
        if not self.passed:
            raise CertificateError(f"The certificate for {self.shape} did not pass")
        return self.shape.variable_count

    def checks(self) -> list[CheckResult]:
        """Return one check per part."""
        negative, magnitude = split_scalar(RATIONALS, self.pairing)
        return [
            self.annihilation.summary(),
            CheckResult(
                "pairing", self.pairing_passed, f"s o F = {'-' if negative else ''}{magnitude}"
            ),
            self.colon.summary(),
        ]


def certify_depth_zero(
    shape: Shape, mode: str = MODE_EXCHANGE, nus: Iterable[VarIndex] | None = None
) -> DepthZeroCertificate:
    """Run every check and assemble the certificate."""
    cert = DepthZeroCertificate(
        shape,
        mode,
        check_annihilation(shape),
        check_witness_pairing(shape),
        check_colon_membership(shape, mode, nus),
    )
    _LOGGER.debug("Certificate for %s in %s mode: %s", shape, mode, cert.passed)
    return cert
