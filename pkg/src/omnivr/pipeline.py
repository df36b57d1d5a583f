"""End-to-end ERP transformation: upsample, warp by a navigation command, resample.

The transform runs in the high-resolution space: the raster is upsampled
first and the warp applied second, so curve rendering works with the densest
available pixel grid. Warping is backward: the output grid is pulled through
the *inverse* matrix, so every output pixel reads a well-defined source
location and the result has no holes.

Sign convention (pinned by the whole-column rotation tests): a command with
beta > 0 pans the rendered content westward -- the scene slides
left-to-right across the raster by beta / (2 pi) of its width.
"""

from __future__ import annotations

from .errors import ConfigurationError
from .geometry import erp_grid
from .mobius import UserCommand, from_command, inverse, transform_index_map
from .resample import ErpImage, bicubic_resample, resample

SUPPORTED_FACTORS = (1, 2, 4, 8, 16)

__all__ = ["SUPPORTED_FACTORS", "upsample_bicubic", "transform_image"]


def upsample_bicubic(img: ErpImage, factor: int) -> ErpImage:
    """Upsample an ERP raster by an integer factor with Catmull-Rom weights."""
    if factor not in SUPPORTED_FACTORS:
        raise ConfigurationError(
            f"unsupported upsampling factor {factor}; expected one of {SUPPORTED_FACTORS}"
        )
    if factor == 1:
        return img
    hr_grid = erp_grid(img.height * factor, img.width * factor)
    return bicubic_resample(img, hr_grid)


def transform_image(
    img: ErpImage,
    cmd: UserCommand,
    up_factor: int = 1,
    interp: str = "slerp",
) -> ErpImage:
    """Apply a navigation command to an ERP raster.

    Steps: upsample by ``up_factor``; build the command matrix; pull the
    output pixel grid through the inverse matrix (backward warp); resample
    the upsampled raster there with the chosen interpolator. Output size is
    ``(up_factor * h, up_factor * w)``.
    """
    hr = upsample_bicubic(img, up_factor)
    matrix = from_command(cmd)
    source_coords = transform_index_map(
        erp_grid(hr.height, hr.width), inverse(matrix)
    )
    return resample(hr, source_coords, interp)
