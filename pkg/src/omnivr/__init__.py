"""Navigation and conformal zooming for equirectangular panoramas.

Library layout:

* :mod:`omnivr.geometry` -- spherical/Cartesian/complex coordinate chain
* :mod:`omnivr.mobius` -- Moebius matrices, navigation commands, index-map warps
* :mod:`omnivr.resample` -- spherical, bicubic, and nearest resamplers
* :mod:`omnivr.pipeline` -- upsample + command transform of whole images
* :mod:`omnivr.projection` -- perspective views, optional conformal zoom
* :mod:`omnivr.metrics` -- latitude-weighted PSNR/SSIM
* :mod:`omnivr.dataset` -- LR / transformed-HR pair generation
* :mod:`omnivr.cli`, :mod:`omnivr.service` -- command line and HTTP surfaces
"""

from .geometry import ComplexPoint, IndexMap, SphericalCoord, SpherePoint, erp_grid
from .mobius import MobiusMatrix, UserCommand, from_command
from .pipeline import transform_image, upsample_bicubic
from .projection import PerspectiveCamera, render_perspective, render_view
from .resample import (
    ErpImage,
    bicubic_resample,
    nearest_resample,
    resample,
    slerp,
    spherical_resample,
)
from .metrics import QualityReport, latitude_weights, quality_report, ws_psnr, ws_ssim

__version__ = "0.1.0"

__all__ = [
    "ComplexPoint",
    "ErpImage",
    "IndexMap",
    "MobiusMatrix",
    "PerspectiveCamera",
    "QualityReport",
    "SphericalCoord",
    "SpherePoint",
    "UserCommand",
    "bicubic_resample",
    "erp_grid",
    "from_command",
    "latitude_weights",
    "nearest_resample",
    "quality_report",
    "render_perspective",
    "render_view",
    "resample",
    "slerp",
    "spherical_resample",
    "transform_image",
    "upsample_bicubic",
    "ws_psnr",
    "ws_ssim",
]
