"""Test the concurrent certification coordinator."""
from unittest.mock import patch

from slicedepth.const import MODE_GROEBNER
from slicedepth.coordinator import CertificationCoordinator, certify, certify_with_recursion
from slicedepth.groebner import buchberger, groebner
from slicedepth.slicefamily import Shape
from slicedepth.witness import certify_depth_zero


async def test_parallel_matches_sequential(cube) -> None:
    """Test splitting the colon checks keeps their order and verdicts."""
    coordinator = CertificationCoordinator(shape=cube, jobs=3)
    cert = await coordinator.async_certify()
    expected = certify_depth_zero(cube)
    assert cert.passed
    assert cert.colon.results == expected.colon.results
    assert cert.annihilation == expected.annihilation
    assert cert.pairing == expected.pairing


async def test_groebner_mode_checks_witness_once(square) -> None:
    """Test s not in I is checked in exactly one chunk."""
    coordinator = CertificationCoordinator(shape=square, mode=MODE_GROEBNER, jobs=2)
    cert = await coordinator.async_certify()
    names = [r.name for r in cert.colon.results]
    assert names.count("s not in I") == 1
    assert len(names) == 5
    assert cert.passed


async def test_sampled_variables(square) -> None:
    """Test only the given variables are checked."""
    coordinator = CertificationCoordinator(shape=square, jobs=4, nus=((1, 1), (2, 2)))
    cert = await coordinator.async_certify()
    assert [r.name for r in cert.colon.results] == ["x[1,1]*s in I", "x[2,2]*s in I"]


async def test_recursion(cube) -> None:
    """Test the recursion check runs off the loop."""
    report = await CertificationCoordinator(shape=cube).async_check_recursion()
    assert report.passed


async def test_failing_check_is_reported(square) -> None:
    """Test a failing colon check fails the certificate without raising."""
    with patch(
        "slicedepth.witness.ColonCertificate.verify", return_value=False
    ):
        cert = await CertificationCoordinator(shape=square, jobs=2).async_certify()
    assert not cert.passed
    assert len(cert.colon.failures) == 4


def test_certify_wrapper() -> None:
    """Test the synchronous wrapper."""
    cert = certify(Shape((3, 2)), jobs=2)
    assert cert.passed
    assert cert.projective_dimension == 6


def test_groebner_basis_computed_once(cube) -> None:
    """Test the colon chunks share one Groebner basis computation."""
    groebner.cache_clear()
    with patch("slicedepth.groebner.buchberger", wraps=buchberger) as mock_buchberger:
        cert = certify(cube, MODE_GROEBNER, jobs=4)
    assert cert.passed
    assert mock_buchberger.call_count == 1


def test_certify_with_recursion(cube) -> None:
    """Test the certificate and the recursion check come back together."""
    cert, recursion = certify_with_recursion(cube, jobs=2)
    assert cert.passed
    assert cert.projective_dimension == 8
    assert recursion.passed
    assert recursion.name == "recursion"
