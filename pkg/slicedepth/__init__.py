"""Slice ideals, their inverse systems and certificates of depth zero."""

from __future__ import annotations

from .coordinator import CertificationCoordinator, certify
from .slicefamily import Shape, build_F, build_ideal
from .witness import DepthZeroCertificate, certify_depth_zero

__all__ = [
    "CertificationCoordinator",
    "DepthZeroCertificate",
    "Shape",
    "build_F",
    "build_ideal",
    "certify",
    "certify_depth_zero",
]
