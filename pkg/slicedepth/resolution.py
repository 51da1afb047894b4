"""Free resolutions, minimalization, Taylor complexes and Betti tables."""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
import heapq
import itertools
import logging

from .const import DEFAULT_MAX_LENGTH
from .exceptions import CertificateError, ResolutionError
from .groebner import Ideal, minimal_generators
from .poly import GREVLEX, RATIONALS, Field, Monomial, MonomialOrder, Polynomial, Scalar
from .slicefamily import Shape
from .witness import DepthZeroCertificate

_LOGGER = logging.getLogger(__name__)

Vector = tuple[Polynomial, ...]
Lead = tuple[int, Monomial, Scalar]


@dataclass(frozen=True)
class FreeModule:
    """A graded free module R(-a_1) + ... + R(-a_r)."""

    degrees: tuple[int, ...] = ()

    @property
    def rank(self) -> int:
        """Return the number of generators."""
        return len(self.degrees)

    def without(self, index: int) -> FreeModule:
        """Drop one generator."""
        return FreeModule(self.degrees[:index] + self.degrees[index + 1 :])


@dataclass(frozen=True)
class PolyMatrix:
    """A map source -> target; entries[r][c] is row r of target, column c of source."""

    source: FreeModule
    target: FreeModule
    entries: tuple[tuple[Polynomial, ...], ...]
    field: Field = RATIONALS
    order: MonomialOrder = GREVLEX

    def __post_init__(self) -> None:
        """Check the entry grid against the modules."""
        if len(self.entries) != self.target.rank or any(
            len(row) != self.source.rank for row in self.entries
        ):
            raise ResolutionError(
                f"Matrix entries do not fit a map of rank {self.source.rank}"
                f" into rank {self.target.rank}"
            )

    @classmethod
    def from_columns(
        cls,
        source: FreeModule,
        target: FreeModule,
        columns: Sequence[Vector],
        field: Field = RATIONALS,
        order: MonomialOrder = GREVLEX,
    ) -> PolyMatrix:
        """Build a matrix from its columns."""
        entries = tuple(
            tuple(col[r] for col in columns) for r in range(target.rank)
        )
        return cls(source, target, entries, field, order)

    @classmethod
    def identity(
        cls, module: FreeModule, field: Field = RATIONALS, order: MonomialOrder = GREVLEX
    ) -> PolyMatrix:
        """Return the identity map of a free module."""
        one = Polynomial.constant(1, field, order)
        zero = Polynomial.zero(field, order)
        entries = tuple(
            tuple(one if r == c else zero for c in range(module.rank))
            for r in range(module.rank)
        )
        return cls(module, module, entries, field, order)

    @property
    def shape(self) -> tuple[int, int]:
        """Return (rows, columns)."""
        return self.target.rank, self.source.rank

    def column(self, c: int) -> Vector:
        """Return column c."""
        return tuple(row[c] for row in self.entries)

    def columns(self) -> list[Vector]:
        """Return every column."""
        return [self.column(c) for c in range(self.source.rank)]

    def compose(self, other: PolyMatrix) -> PolyMatrix:
        """Return self o other."""
        if other.target != self.source:
            raise ResolutionError("Cannot compose maps with mismatched modules")
        zero = Polynomial.zero(self.field, self.order)
        entries = []
        for row in self.entries:
            out = []
            for c in range(other.source.rank):
                total = zero
                for k, a in enumerate(row):
                    b = other.entries[k][c]
                    if a and b:
                        total = total + a * b
                out.append(total)
            entries.append(tuple(out))
        return PolyMatrix(other.source, self.target, tuple(entries), self.field, self.order)

    def is_zero(self) -> bool:
        """Show if every entry vanishes."""
        return not any(e for row in self.entries for e in row)

    def unit_position(self) -> tuple[int, int] | None:
        """Return the first nonzero constant entry, scanning row-major."""
        for r, row in enumerate(self.entries):
            for c, e in enumerate(row):
                if e and e.is_constant:
                    return r, c
        return None


@dataclass(frozen=True)
class FreeResolution:
    """F_0 <- F_1 <- ... <- F_l; differentials[k] maps F_(k+1) to F_k."""

    modules: tuple[FreeModule, ...]
    differentials: tuple[PolyMatrix, ...]
    minimal: bool = False
    truncated: bool = False

    @property
    def length(self) -> int:
        """Return the index of the last nonzero module."""
        nonzero = [k for k, m in enumerate(self.modules) if m.rank]
        return nonzero[-1] if nonzero else 0

    @property
    def ranks(self) -> tuple[int, ...]:
        """Return the ranks of the modules."""
        return tuple(m.rank for m in self.modules)

    def is_complex(self) -> bool:
        """Show if consecutive differentials compose to zero."""
        return all(
            self.differentials[k].compose(self.differentials[k + 1]).is_zero()
            for k in range(len(self.differentials) - 1)
        )


@dataclass(frozen=True)
class BettiTable:
    """The graded Betti numbers beta_(i, j) of a minimal resolution."""

    entries: tuple[tuple[tuple[int, int], int], ...]

    def __getitem__(self, key: tuple[int, int]) -> int:
        return dict(self.entries).get(key, 0)

    @property
    def projdim(self) -> int:
        """Return the largest i with some nonzero beta_(i, j)."""
        return max((i for (i, _), b in self.entries if b), default=0)

    def totals(self) -> tuple[int, ...]:
        """Return sum_j beta_(i, j) for each i."""
        out = [0] * (self.projdim + 1)
        for (i, _), b in self.entries:
            out[i] += b
        return tuple(out)


def _lead(v: Vector) -> Lead | None:
    for pos, f in enumerate(v):
        if f:
            return pos, f.leading_monomial, f.leading_coefficient
    return None


def _vec_mul_term(v: Vector, mono: Monomial, coeff: Scalar) -> Vector:
    return tuple(f.mul_term(mono, coeff) if f else f for f in v)


def _vec_sub(a: Vector, b: Vector) -> Vector:
    return tuple(x - y if y else x for x, y in zip(a, b, strict=True))


def _vec_add(a: Vector, b: Vector) -> Vector:
    return tuple(x + y if y else x for x, y in zip(a, b, strict=True))


def vector_degree(v: Vector, degrees: Sequence[int]) -> int:
    """Return the degree of a homogeneous vector in a graded free module."""
    lead = _lead(v)
    if lead is None:
        raise ResolutionError("The zero vector has no degree")
    return degrees[lead[0]] + v[lead[0]].degree


def _top_reduce(
    v: Vector,
    elements: Sequence[Vector],
    leads: Sequence[Lead],
    field: Field,
    order: MonomialOrder,
) -> tuple[list[Polynomial], Vector]:
    quotients: list[list[tuple[Monomial, Scalar]]] = [[] for _ in elements]
    while (lead := _lead(v)) is not None:
        pos, mono, coeff = lead
        for k, (p, m, c) in enumerate(leads):
            if p == pos and (q := mono.divide(m)) is not None:
                factor = coeff / c
                v = _vec_sub(v, _vec_mul_term(elements[k], q, factor))
                quotients[k].append((q, factor))
                break
        else:
            break
    return [Polynomial(terms, field, order) for terms in quotients], v


@dataclass(frozen=True)
class ModuleGroebnerBasis:
    """A Groebner basis of a submodule under the position-over-term order."""

    elements: tuple[Vector, ...]
    field: Field = RATIONALS
    order: MonomialOrder = GREVLEX

    @property
    def leads(self) -> list[Lead]:
        """Return (position, monomial, coefficient) of every leading term."""
        return [_lead(v) for v in self.elements]

    def reduce(self, v: Vector) -> tuple[list[Polynomial], Vector]:
        """Top-reduce v, returning quotients and remainder."""
        return _top_reduce(v, self.elements, self.leads, self.field, self.order)

    def contains(self, v: Vector) -> bool:
        """Show if v lies in the submodule."""
        return _lead(self.reduce(v)[1]) is None


def _s_vector(a: Vector, lead_a: Lead, b: Vector, lead_b: Lead) -> tuple[Vector, tuple]:
    lcm = lead_a[1].lcm(lead_b[1])
    ma, mb = lcm.divide(lead_a[1]), lcm.divide(lead_b[1])
    ca, cb = 1 / lead_a[2], 1 / lead_b[2]
    return _vec_sub(_vec_mul_term(a, ma, ca), _vec_mul_term(b, mb, cb)), (ma, ca, mb, cb)


def module_groebner(
    vectors: Iterable[Vector], field: Field = RATIONALS, order: MonomialOrder = GREVLEX
) -> ModuleGroebnerBasis:
    """Run Buchberger's algorithm on a submodule, position before term.

    Lower positions rank higher. Only the chain criterion is applied.
    """
    elements: list[Vector] = []
    leads: list[Lead] = []
    queue: list[tuple[int, int, int, int]] = []
    pending: set[tuple[int, int]] = set()
    counter = itertools.count()

    def add(v: Vector, lead: Lead) -> None:
        index = len(elements)
        elements.append(v)
        leads.append(lead)
        for i in range(index):
            if leads[i][0] == lead[0]:
                lcm = leads[i][1].lcm(lead[1])
                heapq.heappush(queue, (lcm.degree, next(counter), i, index))
                pending.add((i, index))

    for v in vectors:
        if (lead := _lead(v)) is not None:
            add(v, lead)
    while queue:
        _, _, i, j = heapq.heappop(queue)
        pending.discard((i, j))
        lcm = leads[i][1].lcm(leads[j][1])
        if any(
            k not in (i, j)
            and leads[k][0] == leads[i][0]
            and leads[k][1].divides(lcm)
            and (min(i, k), max(i, k)) not in pending
            and (min(j, k), max(j, k)) not in pending
            for k in range(len(elements))
        ):
            continue
        s, _ = _s_vector(elements[i], leads[i], elements[j], leads[j])
        _, remainder = _top_reduce(s, elements, leads, field, order)
        if (lead := _lead(remainder)) is not None:
            add(remainder, lead)
    _LOGGER.debug("Module Groebner basis has %d elements", len(elements))
    return ModuleGroebnerBasis(tuple(elements), field, order)


def schreyer_syzygies(
    basis: ModuleGroebnerBasis | Sequence[Vector],
    field: Field = RATIONALS,
    order: MonomialOrder = GREVLEX,
) -> list[Vector]:
    """Return the syzygies of a Groebner basis read off its S-pair reductions."""
    if not isinstance(basis, ModuleGroebnerBasis):
        basis = ModuleGroebnerBasis(tuple(basis), field, order)
    elements, leads = basis.elements, basis.leads
    zero = Polynomial.zero(basis.field, basis.order)
    out = []
    for i, j in itertools.combinations(range(len(elements)), 2):
        if leads[i][0] != leads[j][0]:
            continue
        s, (mi, ci, mj, cj) = _s_vector(elements[i], leads[i], elements[j], leads[j])
        quotients, remainder = _top_reduce(s, elements, leads, basis.field, basis.order)
        if _lead(remainder) is not None:
            raise ResolutionError("Syzygies need a Groebner basis")
        sigma = [-q if q else zero for q in quotients]
        sigma[i] = sigma[i] + Polynomial.monomial(mi, ci, basis.field, basis.order)
        sigma[j] = sigma[j] - Polynomial.monomial(mj, cj, basis.field, basis.order)
        out.append(tuple(sigma))
    return out


def syzygy_generators(
    columns: Sequence[Vector], rank: int, field: Field = RATIONALS, order: MonomialOrder = GREVLEX
) -> list[Vector]:
    """Generate the syzygies of the given columns of a rank-r free module.

    The columns are extended by unit vectors so each basis element carries its
    representation; basis elements with zero top part are syzygies and the
    Schreyer syzygies of the rest are mapped back through the representation.
    """
    count = len(columns)
    if not count:
        return []
    one = Polynomial.constant(1, field, order)
    zero = Polynomial.zero(field, order)
    augmented = [
        tuple(col) + tuple(one if k == c else zero for k in range(count))
        for c, col in enumerate(columns)
    ]
    gb = module_groebner(augmented, field, order)
    image: list[Vector] = []
    transforms: list[Vector] = []
    found: list[Vector] = []
    for g in gb.elements:
        top, bottom = g[:rank], g[rank:]
        if any(top):
            image.append(top)
            transforms.append(bottom)
        else:
            found.append(bottom)
    for sigma in schreyer_syzygies(image, field, order):
        mapped = tuple(zero for _ in range(count))
        for k, coeff in enumerate(sigma):
            if coeff:
                mapped = _vec_add(mapped, tuple(coeff * t for t in transforms[k]))
        found.append(mapped)
    return list(dict.fromkeys(v for v in found if any(v)))


def minimal_module_generators(
    vectors: Iterable[Vector],
    degrees: Sequence[int],
    field: Field = RATIONALS,
    order: MonomialOrder = GREVLEX,
) -> list[Vector]:
    """Pick a minimal generating set of a graded submodule, lowest degrees first."""
    kept: list[Vector] = []
    basis = ModuleGroebnerBasis((), field, order)
    for v in sorted(vectors, key=lambda v: vector_degree(v, degrees)):
        if not basis.contains(v):
            kept.append(v)
            basis = module_groebner(kept, field, order)
    return kept


def _differential(
    source_degrees: Sequence[int],
    target: FreeModule,
    columns: Sequence[Vector],
    field: Field,
    order: MonomialOrder,
) -> PolyMatrix:
    return PolyMatrix.from_columns(
        FreeModule(tuple(source_degrees)), target, columns, field, order
    )


def free_resolution(
    ideal: Ideal, max_length: int = DEFAULT_MAX_LENGTH, minimal: bool = True
) -> FreeResolution:
    """Resolve R/I by iterated syzygies until the kernel vanishes or max_length is hit."""
    if max_length < 1:
        raise ResolutionError(f"max_length must be at least 1, got {max_length}")
    field, order = ideal.field, ideal.order
    source = minimal_generators(ideal) if minimal else ideal
    generators = [g for g in source.generators if g]
    f0 = FreeModule((0,))
    if not generators:
        return FreeResolution((f0,), (), minimal=True)
    modules = [f0]
    differentials = [
        _differential(
            [g.degree for g in generators], f0, [(g,) for g in generators], field, order
        )
    ]
    modules.append(differentials[0].source)
    truncated = False
    while True:
        current = differentials[-1]
        degrees = current.source.degrees
        syzygies = syzygy_generators(current.columns(), current.target.rank, field, order)
        if minimal:
            syzygies = minimal_module_generators(syzygies, degrees, field, order)
        _LOGGER.debug(
            "Step %d: rank %d with %d syzygies", len(differentials), len(degrees), len(syzygies)
        )
        if not syzygies:
            break
        if len(differentials) >= max_length:
            truncated = True
            _LOGGER.warning("Resolution truncated at length %d", max_length)
            break
        differentials.append(
            _differential(
                [vector_degree(v, degrees) for v in syzygies],
                current.source,
                syzygies,
                field,
                order,
            )
        )
        modules.append(differentials[-1].source)
    resolution = FreeResolution(tuple(modules), tuple(differentials), False, truncated)
    return minimalize(resolution) if minimal else resolution


def _cancel(resolution: FreeResolution, k: int, r: int, c: int) -> FreeResolution:
    # d = differentials[k] maps F_(k+1) to F_k with a unit at (r, c)
    d = resolution.differentials[k]
    unit = d.entries[r][c]
    inverse = 1 / unit.constant_coefficient()
    entries = tuple(
        tuple(
            d.entries[r2][c2] - d.entries[r2][c] * d.entries[r][c2] * inverse
            for c2 in range(d.source.rank)
            if c2 != c
        )
        for r2 in range(d.target.rank)
        if r2 != r
    )
    modules = list(resolution.modules)
    modules[k] = modules[k].without(r)
    modules[k + 1] = modules[k + 1].without(c)
    differentials = list(resolution.differentials)
    differentials[k] = PolyMatrix(modules[k + 1], modules[k], entries, d.field, d.order)
    if k > 0:
        below = differentials[k - 1]
        differentials[k - 1] = PolyMatrix(
            modules[k],
            modules[k - 1],
            tuple(row[:r] + row[r + 1 :] for row in below.entries),
            below.field,
            below.order,
        )
    if k + 1 < len(differentials):
        above = differentials[k + 1]
        differentials[k + 1] = PolyMatrix(
            modules[k + 2],
            modules[k + 1],
            above.entries[:c] + above.entries[c + 1 :],
            above.field,
            above.order,
        )
    return FreeResolution(
        tuple(modules), tuple(differentials), resolution.minimal, resolution.truncated
    )


def minimalize(resolution: FreeResolution) -> FreeResolution:
    """Cancel unit entries one at a time, lowest homological index first."""
    cancelled = 0
    while True:
        for k, d in enumerate(resolution.differentials):
            position = d.unit_position()
            if position is not None:
                resolution = _cancel(resolution, k, *position)
                cancelled += 1
                break
        else:
            break
    modules, differentials = list(resolution.modules), list(resolution.differentials)
    while len(modules) > 1 and not modules[-1].rank:
        modules.pop()
        differentials.pop()
    if cancelled:
        _LOGGER.debug("Minimalization cancelled %d units", cancelled)
    return FreeResolution(tuple(modules), tuple(differentials), True, resolution.truncated)


def taylor_complex(ideal: Ideal) -> FreeResolution:
    """Build the Taylor resolution of R/M on the subsets of the monomial generators."""
    monos: list[Monomial] = []
    for g in ideal.generators:
        if len(g) != 1:
            raise ResolutionError(f"Taylor complexes need monomial generators, got {g}")
        monos.append(g.leading_monomial)
    field, order = ideal.field, ideal.order
    zero = Polynomial.zero(field, order)
    count = len(monos)

    def lcm(subset: tuple[int, ...]) -> Monomial:
        out = Monomial.one()
        for k in subset:
            out = out.lcm(monos[k])
        return out

    subsets = [list(itertools.combinations(range(count), k)) for k in range(count + 1)]
    modules = tuple(
        FreeModule(tuple(lcm(s).degree for s in level)) for level in subsets
    )
    differentials = []
    for k in range(1, count + 1):
        rows = {s: r for r, s in enumerate(subsets[k - 1])}
        entries = [[zero] * len(subsets[k]) for _ in subsets[k - 1]]
        for c, subset in enumerate(subsets[k]):
            top = lcm(subset)
            for pos in range(len(subset)):
                face = subset[:pos] + subset[pos + 1 :]
                entries[rows[face]][c] = Polynomial.monomial(
                    top.divide(lcm(face)), (-1) ** pos, field, order
                )
        differentials.append(
            PolyMatrix(
                modules[k], modules[k - 1], tuple(map(tuple, entries)), field, order
            )
        )
    return FreeResolution(modules, tuple(differentials))


def betti(resolution: FreeResolution) -> BettiTable:
    """Read the graded Betti numbers off a minimal resolution."""
    if not resolution.minimal:
        raise ResolutionError("Betti numbers need a minimal resolution")
    counts: Counter[tuple[int, int]] = Counter()
    for i, module in enumerate(resolution.modules):
        for degree in module.degrees:
            counts[(i, degree)] += 1
    return BettiTable(tuple(sorted(counts.items())))


def projdim(resolution: FreeResolution) -> int:
    """Return the projective dimension from a minimal resolution."""
    return betti(resolution).projdim


def ab_projdim(shape: Shape, cert: DepthZeroCertificate) -> int:
    """Apply Auslander-Buchsbaum: depth 0 means pd equals the number of variables."""
    if cert.shape != shape:
        raise CertificateError(f"The certificate is for {cert.shape}, not {shape}")
    if not cert.passed:
        raise CertificateError(f"The certificate for {shape} did not pass")
    return shape.variable_count


def betti_text(table: BettiTable) -> str:
    """Render a Betti table as a grid with rows j - i and columns i."""
    pd = table.projdim
    shifts = sorted({j - i for (i, j), b in table.entries if b}) or [0]
    grid = {
        shift: [table[(i, i + shift)] for i in range(pd + 1)]
        for shift in range(shifts[0], shifts[-1] + 1)
    }
    totals = table.totals()
    widths = [
        max(len(str(i)), len(str(totals[i])), *(len(str(row[i])) for row in grid.values()))
        for i in range(pd + 1)
    ]
    label = max(len("total:"), *(len(f"{shift}:") for shift in grid))

    def line(head: str, cells: Iterable[str]) -> str:
        return (
            head.rjust(label) + " " + " ".join(c.rjust(w) for c, w in zip(cells, widths))
        ).rstrip()

    lines = [
        line("", (str(i) for i in range(pd + 1))),
        line("total:", (str(t) for t in totals)),
    ]
    lines += [
        line(f"{shift}:", (str(b) if b else "." for b in row)) for shift, row in grid.items()
    ]
    return "\n".join(lines)


def betti_json(table: BettiTable) -> dict[str, object]:
    """Return a Betti table as JSON-ready data."""
    return {
        "projdim": table.projdim,
        "total": list(table.totals()),
        "betti": [{"i": i, "j": j, "beta": b} for (i, j), b in table.entries],
    }
