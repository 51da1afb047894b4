"""Runs the independent certificate checks concurrently."""

from __future__ import annotations

import asyncio
from collections.abc import Sequence
from dataclasses import dataclass
import logging

from aioitertools.asyncio import gather

from .const import DEFAULT_JOBS, MODE_EXCHANGE, MODE_GROEBNER
from .groebner import groebner
from .poly import VarIndex
from .slicefamily import Shape, build_F, build_ideal
from .witness import (
    CheckReport,
    DepthZeroCertificate,
    check_annihilation,
    check_colon_membership,
    check_recursion,
    check_witness_pairing,
)

_LOGGER = logging.getLogger(__name__)


def _chunks(items: Sequence[VarIndex], count: int) -> list[tuple[VarIndex, ...]]:
    size = max(1, -(-len(items) // max(1, count)))
    return [tuple(items[k : k + size]) for k in range(0, len(items), size)]


@dataclass(frozen=True, kw_only=True)
class CertificationCoordinator:
    """Certifies one shape, spreading the colon checks over worker threads."""

    shape: Shape
    mode: str = MODE_EXCHANGE
    jobs: int = DEFAULT_JOBS
    nus: tuple[VarIndex, ...] | None = None

    async def _async_colon(self) -> CheckReport:
        nus = self.nus if self.nus is not None else self.shape.variables()
        if self.mode == MODE_GROEBNER:
            # every chunk reads the same cached basis
            await asyncio.to_thread(groebner, build_ideal(self.shape).ideal())
        chunks = _chunks(nus, self.jobs)
        parts: list[CheckReport] = await gather(
            *(
                asyncio.to_thread(
                    check_colon_membership,
                    self.shape,
                    self.mode,
                    chunk,
                    self.mode == MODE_GROEBNER and k == 0,
                )
                for k, chunk in enumerate(chunks)
            ),
            limit=self.jobs,
        )
        return CheckReport("colon", tuple(r for part in parts for r in part.results))

    async def async_certify(self) -> DepthZeroCertificate:
        """Run annihilation, pairing and colon checks and merge them in order."""
        await asyncio.to_thread(build_F, self.shape)
        _LOGGER.debug("Certifying %s with %d jobs in %s mode", self.shape, self.jobs, self.mode)
        annihilation, pairing, colon = await gather(
            asyncio.to_thread(check_annihilation, self.shape),
            asyncio.to_thread(check_witness_pairing, self.shape),
            self._async_colon(),
            limit=self.jobs,
        )
        return DepthZeroCertificate(self.shape, self.mode, annihilation, pairing, colon)

    async def async_check_recursion(self) -> CheckReport:
        """Run the recursion check off the event loop."""
        return await asyncio.to_thread(check_recursion, self.shape)

    async def async_certify_with_recursion(self) -> tuple[DepthZeroCertificate, CheckReport]:
        """Run the certificate and the recursion check side by side."""
        await asyncio.to_thread(build_F, self.shape)
        cert, recursion = await gather(
            self.async_certify(), self.async_check_recursion(), limit=max(2, self.jobs)
        )
        return cert, recursion


def certify(
    shape: Shape,
    mode: str = MODE_EXCHANGE,
    jobs: int = DEFAULT_JOBS,
    nus: Sequence[VarIndex] | None = None,
) -> DepthZeroCertificate:
    """Certify a shape from synchronous code."""
    coordinator = CertificationCoordinator(
        shape=shape, mode=mode, jobs=jobs, nus=tuple(nus) if nus is not None else None
    )
    return asyncio.run(coordinator.async_certify())


def certify_with_recursion(
    shape: Shape,
    mode: str = MODE_EXCHANGE,
    jobs: int = DEFAULT_JOBS,
    nus: Sequence[VarIndex] | None = None,
) -> tuple[DepthZeroCertificate, CheckReport]:
    """Certify a shape and check the recursion, from synchronous code."""
    coordinator = CertificationCoordinator(
        shape=shape, mode=mode, jobs=jobs, nus=tuple(nus) if nus is not None else None
    )
    return asyncio.run(coordinator.async_certify_with_recursion())
