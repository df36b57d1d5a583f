"""PNG load/save helpers.

All computation runs on float64 samples in [0, 1]; quantization to 8 bits
happens only here, at the I/O boundary, with round-half-even. Grayscale
files load as single-channel rasters, everything else as RGB.
"""

from __future__ import annotations

import io
from pathlib import Path

import numpy as np
from PIL import Image

from .resample import ErpImage

__all__ = ["load_image", "save_image", "encode_png", "decode_png", "to_uint8", "from_uint8"]


def to_uint8(img: ErpImage) -> np.ndarray:
    return np.rint(np.clip(img.samples, 0.0, 1.0) * 255.0).astype(np.uint8)


def from_uint8(raw: np.ndarray) -> ErpImage:
    arr = np.asarray(raw, dtype=np.float64) / 255.0
    return ErpImage(arr)


def _to_pil(img: ErpImage) -> Image.Image:
    raw = to_uint8(img)
    if raw.shape[2] == 1:
        return Image.fromarray(raw[:, :, 0], mode="L")
    if raw.shape[2] == 3:
        return Image.fromarray(raw, mode="RGB")
    raise ValueError(f"cannot encode {raw.shape[2]}-channel image as PNG")


def _from_pil(pil: Image.Image) -> ErpImage:
    if pil.mode != "L":
        pil = pil.convert("RGB")
    raw = np.asarray(pil, dtype=np.uint8)
    return from_uint8(raw)


def load_image(path: str | Path) -> ErpImage:
    with Image.open(path) as pil:
        return _from_pil(pil)


def save_image(img: ErpImage, path: str | Path) -> None:
    _to_pil(img).save(path, format="PNG")


def encode_png(img: ErpImage) -> bytes:
    buf = io.BytesIO()
    _to_pil(img).save(buf, format="PNG")
    return buf.getvalue()


def decode_png(data: bytes) -> ErpImage:
    with Image.open(io.BytesIO(data)) as pil:
        return _from_pil(pil)
