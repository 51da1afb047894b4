"""Test free resolutions, minimalization and Betti tables."""
import logging

import pytest

from slicedepth.exceptions import CertificateError, ResolutionError
from slicedepth.groebner import Ideal
from slicedepth.poly import RATIONALS, Polynomial
from slicedepth.resolution import (
    FreeModule,
    FreeResolution,
    PolyMatrix,
    ab_projdim,
    betti,
    betti_json,
    betti_text,
    free_resolution,
    minimalize,
    module_groebner,
    projdim,
    schreyer_syzygies,
    syzygy_generators,
    taylor_complex,
)
from slicedepth.slicefamily import Shape, build_ideal
from slicedepth.witness import DepthZeroCertificate, certify_depth_zero

RING = ((1,), (2,), (3,))


def test_poly_matrix_checks_shape(x) -> None:
    """Test entries must fit the modules."""
    with pytest.raises(ResolutionError):
        PolyMatrix(FreeModule((1, 1)), FreeModule((0,)), ((x,),))
    identity = PolyMatrix.identity(FreeModule((0, 0)))
    assert identity.shape == (2, 2)
    assert identity.unit_position() == (0, 0)
    with pytest.raises(ResolutionError):
        identity.compose(PolyMatrix.identity(FreeModule((0,))))


def test_syzygies_of_two_variables(x, y) -> None:
    """Test the only syzygy of (x, y) is the Koszul one."""
    syzygies = syzygy_generators([(x,), (y,)], 1)
    assert len(syzygies) == 1
    a, b = syzygies[0]
    assert (a * x + b * y).is_zero
    assert {a, b} == {y, -x}


def test_schreyer_needs_groebner_basis(x, y) -> None:
    """Test Schreyer syzygies vanish on the generators."""
    gb = module_groebner([(x * x,), (x * y,), (y * y,)])
    for sigma in schreyer_syzygies(gb):
        total = Polynomial.zero()
        for coeff, (g,) in zip(sigma, gb.elements, strict=True):
            total = total + coeff * g
        assert total.is_zero
    with pytest.raises(ResolutionError):
        schreyer_syzygies([(x * x + y * y,), (x * y,)])


def test_koszul_resolution(x, y, z) -> None:
    """Test (x, y, z) has Betti numbers 1 3 3 1."""
    resolution = free_resolution(Ideal.create([x, y, z], RING))
    assert resolution.minimal
    assert resolution.is_complex()
    assert resolution.ranks == (1, 3, 3, 1)
    table = betti(resolution)
    assert table[(2, 2)] == 3
    assert table.projdim == 3


def test_square_resolution(square) -> None:
    """Test the 2x2 slice ideal has a minimal resolution of length 4."""
    resolution = free_resolution(build_ideal(square).ideal())
    assert resolution.is_complex()
    assert not resolution.truncated
    assert resolution.length == 4
    table = betti(resolution)
    assert resolution.ranks == (1, 3, 5, 4, 1)
    assert table.totals() == (1, 3, 5, 4, 1)
    assert table[(1, 2)] == 3
    assert table[(2, 4)] == 5
    assert table[(3, 5)] == 4
    assert table[(4, 6)] == 1
    assert projdim(resolution) == 4
    assert sum((-1) ** i * b for i, b in enumerate(table.totals())) == 0


def test_truncated_resolution(square, caplog) -> None:
    """Test max_length cuts the resolution off with a warning."""
    with caplog.at_level(logging.WARNING):
        resolution = free_resolution(build_ideal(square).ideal(), max_length=1)
    assert resolution.truncated
    assert "truncated" in caplog.text
    with pytest.raises(ResolutionError):
        free_resolution(build_ideal(square).ideal(), max_length=0)


def test_zero_ideal_resolution() -> None:
    """Test R/0 is resolved by R."""
    resolution = free_resolution(Ideal.create([], RING))
    assert resolution.ranks == (1,)
    assert betti(resolution).projdim == 0


def test_taylor_complex(x, y) -> None:
    """Test the Taylor complex of (x^2, xy, y^2) minimalizes to 1 3 2."""
    taylor = taylor_complex(Ideal.create([x * x, x * y, y * y], RING))
    assert taylor.ranks == (1, 3, 3, 1)
    assert taylor.is_complex()
    with pytest.raises(ResolutionError):
        betti(taylor)
    minimal = minimalize(taylor)
    assert minimal.ranks == (1, 3, 2)
    assert minimal.is_complex()
    assert betti(minimal).projdim == 2


def test_taylor_needs_monomials(x, y) -> None:
    """Test binomial generators are refused."""
    with pytest.raises(ResolutionError):
        taylor_complex(Ideal.create([x - y], RING))


def test_betti_text_and_json(x, y, z) -> None:
    """Test the rendered Betti table."""
    table = betti(free_resolution(Ideal.create([x, y, z], RING)))
    assert betti_text(table).splitlines() == [
        "       0 1 2 3",
        "total: 1 3 3 1",
        "    0: 1 3 3 1",
    ]
    data = betti_json(table)
    assert data["projdim"] == 3
    assert data["total"] == [1, 3, 3, 1]
    assert {"i": 1, "j": 1, "beta": 3} in data["betti"]


def test_auslander_buchsbaum(square) -> None:
    """Test the certificate and the direct resolution agree."""
    cert = certify_depth_zero(square)
    assert ab_projdim(square, cert) == projdim(free_resolution(build_ideal(square).ideal()))
    broken = DepthZeroCertificate(
        square, cert.mode, cert.annihilation, RATIONALS.zero, cert.colon
    )
    with pytest.raises(CertificateError):
        ab_projdim(square, broken)
    with pytest.raises(CertificateError):
        ab_projdim(Shape((3, 4, 2)), cert)


def test_square_betti_table(square) -> None:
    """Test the rendered Betti table of the 2x2 slice ideal."""
    table = betti(free_resolution(build_ideal(square).ideal()))
    assert betti_text(table).splitlines() == [
        "       0 1 2 3 4",
        "total: 1 3 5 4 1",
        "    0: 1 . . . .",
        "    1: . 3 . . .",
        "    2: . . 5 4 1",
    ]


def test_square_syzygies(square) -> None:
    """Test every first syzygy of the 2x2 generators vanishes on them."""
    generators = build_ideal(square).generators
    syzygies = syzygy_generators([(g,) for g in generators], 1)
    assert syzygies
    for sigma in syzygies:
        total = Polynomial.zero()
        for coeff, g in zip(sigma, generators, strict=True):
            total = total + coeff * g
        assert total.is_zero


def test_minimalize_cancels_padded_unit(x, y) -> None:
    """Test a unit column bolted onto the Koszul complex of (x, y) is cancelled."""
    zero, one = Polynomial.zero(), Polynomial.constant(1)
    modules = (FreeModule((0,)), FreeModule((1, 1, 1)), FreeModule((2, 1)))
    differentials = (
        PolyMatrix.from_columns(modules[1], modules[0], [(x,), (y,), (zero,)]),
        PolyMatrix.from_columns(modules[2], modules[1], [(y, -x, zero), (zero, zero, one)]),
    )
    padded = FreeResolution(modules, differentials)
    assert padded.is_complex()
    minimal = minimalize(padded)
    assert minimal.ranks == (1, 2, 1)
    assert minimal.is_complex()
    assert betti(minimal)[(2, 2)] == 1
    again = minimalize(minimal)
    assert again.ranks == minimal.ranks
    assert again.is_complex()


def test_minimalize_is_idempotent(square) -> None:
    """Test minimalizing a minimal resolution changes nothing."""
    resolution = free_resolution(build_ideal(square).ideal())
    again = minimalize(resolution)
    assert again.ranks == resolution.ranks
    assert again.modules == resolution.modules
    assert again.is_complex()
