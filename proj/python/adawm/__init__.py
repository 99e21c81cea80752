"""Adaptive blind DWT-DCT image watermarking."""

from ._core import (
    PAYLOAD_BITS,
    attack,
    ber,
    canny_edges,
    embed,
    extract,
    nc,
    psnr,
    ssim,
    strength_factors,
)

__all__ = [
    "PAYLOAD_BITS",
    "attack",
    "ber",
    "canny_edges",
    "embed",
    "extract",
    "nc",
    "psnr",
    "ssim",
    "strength_factors",
]
__version__ = "0.1.0"
