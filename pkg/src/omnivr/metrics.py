"""Latitude-weighted quality metrics for ERP rasters.

ERP oversamples the sphere toward the poles, so plain per-pixel metrics
overstate polar error. Both metrics here weight each pixel by the cosine of
its latitude: WS-PSNR weights the squared error map, WS-SSIM weights the
per-pixel SSIM map (Gaussian window 11x11, sigma 1.5, K1 = 0.01, K2 = 0.03,
dynamic range L = 1.0). Identical inputs report the 99 dB sentinel rather
than infinity so reports stay serializable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.ndimage import correlate1d

from .errors import DimensionError
from .resample import ErpImage

PSNR_CAP_DB = 99.0

_SSIM_WINDOW = 11
_SSIM_SIGMA = 1.5
_SSIM_C1 = (0.01 * 1.0) ** 2
_SSIM_C2 = (0.03 * 1.0) ** 2

__all__ = [
    "QualityReport",
    "PSNR_CAP_DB",
    "latitude_weights",
    "ws_psnr",
    "ws_ssim",
    "quality_report",
]


@dataclass(frozen=True, slots=True)
class QualityReport:
    ws_psnr: float
    ws_ssim: float


def latitude_weights(height: int, width: int) -> np.ndarray:
    """Per-pixel cos(latitude) weights for an H x W ERP raster.

    w(i, j) = cos((i + 0.5 - H/2) * pi / H), identical across columns and
    strictly positive.
    """
    if width != 2 * height:
        raise DimensionError(f"ERP raster requires W = 2H, got H={height}, W={width}")
    rows = np.cos((np.arange(height) + 0.5 - height / 2.0) * (math.pi / height))
    return np.repeat(rows[:, np.newaxis], width, axis=1)


def _check_pair(ref: ErpImage, test: ErpImage) -> None:
    if ref.samples.shape != test.samples.shape:
        raise DimensionError(
            f"image dimensions differ: {ref.samples.shape} vs {test.samples.shape}"
        )
    if not ref.is_erp():
        raise DimensionError(
            f"metrics require ERP rasters (W = 2H), got {ref.height}x{ref.width}"
        )


def ws_psnr(ref: ErpImage, test: ErpImage) -> float:
    """Weighted-spherical PSNR in dB (peak 1.0), capped at 99 dB."""
    _check_pair(ref, test)
    weights = latitude_weights(ref.height, ref.width)
    sq_err = np.mean((ref.samples - test.samples) ** 2, axis=2)
    wmse = float(np.sum(weights * sq_err) / np.sum(weights))
    if wmse == 0.0:
        return PSNR_CAP_DB
    return min(PSNR_CAP_DB, 10.0 * math.log10(1.0 / wmse))


def _gaussian_window(size: int = _SSIM_WINDOW, sigma: float = _SSIM_SIGMA) -> np.ndarray:
    offsets = np.arange(size) - (size - 1) / 2.0
    kernel = np.exp(-0.5 * (offsets / sigma) ** 2)
    return kernel / kernel.sum()


def _window_mean(plane: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    out = correlate1d(plane, kernel, axis=0, mode="constant")
    return correlate1d(out, kernel, axis=1, mode="constant")


def _ssim_map(ref: np.ndarray, test: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    """Per-pixel SSIM over the valid (fully windowed) region of one channel."""
    mu1 = _window_mean(ref, kernel)
    mu2 = _window_mean(test, kernel)
    mu11 = mu1 * mu1
    mu22 = mu2 * mu2
    mu12 = mu1 * mu2
    var1 = _window_mean(ref * ref, kernel) - mu11
    var2 = _window_mean(test * test, kernel) - mu22
    cov = _window_mean(ref * test, kernel) - mu12
    num = (2.0 * mu12 + _SSIM_C1) * (2.0 * cov + _SSIM_C2)
    den = (mu11 + mu22 + _SSIM_C1) * (var1 + var2 + _SSIM_C2)
    margin = _SSIM_WINDOW // 2
    return (num / den)[margin:-margin, margin:-margin]


def ws_ssim(ref: ErpImage, test: ErpImage) -> float:
    """Latitude-weighted mean SSIM over the valid window region.

    Window statistics are taken per channel and averaged; the latitude
    weights apply to the aggregated SSIM map, cropped to the region where
    the 11x11 window fits entirely inside the raster.
    """
    _check_pair(ref, test)
    if ref.height < _SSIM_WINDOW or ref.width < _SSIM_WINDOW:
        raise DimensionError(
            f"images must be at least {_SSIM_WINDOW}x{_SSIM_WINDOW} for SSIM, "
            f"got {ref.height}x{ref.width}"
        )
    kernel = _gaussian_window()
    maps = [
        _ssim_map(ref.samples[:, :, c], test.samples[:, :, c], kernel)
        for c in range(ref.channels)
    ]
    ssim = maps[0] if len(maps) == 1 else np.mean(maps, axis=0)
    margin = _SSIM_WINDOW // 2
    weights = latitude_weights(ref.height, ref.width)[margin:-margin, margin:-margin]
    return float(np.sum(weights * ssim) / np.sum(weights))


def quality_report(ref: ErpImage, test: ErpImage) -> QualityReport:
    return QualityReport(ws_psnr=ws_psnr(ref, test), ws_ssim=ws_ssim(ref, test))
