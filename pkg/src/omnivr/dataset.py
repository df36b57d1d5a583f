"""Dataset generation: LR inputs paired with command-transformed HR ground truths.

Each record pairs a bicubic-downsampled LR copy of an HR panorama with the
HR panorama warped by a sampled navigation command. A baseline score --
WS-PSNR of "upsample the LR input, then apply the same command" against the
ground truth -- is recorded per image, which is the quality floor any
reconstruction method should beat.

Generation is deterministic: a fixed seed yields byte-identical manifests
and PNGs. In ``train-random`` mode commands come from one sequential stream;
in ``eval-fixed`` mode each image's command derives from (seed, image index)
so a given image always receives the same command regardless of how many
images precede it.

Output layout: ``out/lr/NNNN.png``, ``out/hr_t/NNNN.png``,
``out/manifest.json``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image

from .errors import DimensionError
from .imgio import from_uint8, load_image, save_image, to_uint8
from .metrics import ws_psnr
from .mobius import MobiusMatrix, UserCommand, from_command, matrices_equivalent
from .pipeline import transform_image
from .resample import ErpImage

MODES = ("train-random", "eval-fixed")

__all__ = [
    "DatasetRecord",
    "MODES",
    "sample_command",
    "downsample_bicubic",
    "generate",
    "load_manifest",
]


@dataclass(frozen=True, slots=True)
class DatasetRecord:
    id: int
    lr_path: str
    hr_transformed_path: str
    command: UserCommand
    matrix: MobiusMatrix
    scale: int
    source: str
    bicubic_ws_psnr: float

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "lr_path": self.lr_path,
            "hr_transformed_path": self.hr_transformed_path,
            "command": {
                "beta": self.command.beta,
                "gamma": self.command.gamma,
                "s": self.command.s,
            },
            "matrix": {
                "a": [self.matrix.a.real, self.matrix.a.imag],
                "b": [self.matrix.b.real, self.matrix.b.imag],
                "c": [self.matrix.c.real, self.matrix.c.imag],
                "d": [self.matrix.d.real, self.matrix.d.imag],
            },
            "scale": self.scale,
            "source": self.source,
            "bicubic_ws_psnr": self.bicubic_ws_psnr,
        }

    @classmethod
    def from_json(cls, blob: dict) -> "DatasetRecord":
        cmd = UserCommand(
            beta=blob["command"]["beta"],
            gamma=blob["command"]["gamma"],
            s=blob["command"]["s"],
        )
        m = blob["matrix"]
        matrix = MobiusMatrix(
            complex(*m["a"]), complex(*m["b"]), complex(*m["c"]), complex(*m["d"])
        )
        return cls(
            id=blob["id"],
            lr_path=blob["lr_path"],
            hr_transformed_path=blob["hr_transformed_path"],
            command=cmd,
            matrix=matrix,
            scale=blob["scale"],
            source=blob["source"],
            bicubic_ws_psnr=blob["bicubic_ws_psnr"],
        )


def sample_command(rng: np.random.Generator) -> UserCommand:
    """Draw one navigation command.

    beta ~ U[0, 2 pi), gamma ~ U[-pi/2, pi/2], s ~ U[0.5, 2.0]. The zoom cap
    keeps transformed content comparable across records.
    """
    beta = float(rng.uniform(0.0, 2.0 * math.pi))
    gamma = float(rng.uniform(-0.5 * math.pi, 0.5 * math.pi))
    s = float(rng.uniform(0.5, 2.0))
    return UserCommand(beta=beta, gamma=gamma, s=s)


def downsample_bicubic(img: ErpImage, scale: int) -> ErpImage:
    """Antialiased bicubic downsampling (the standard LR degradation)."""
    if img.height % scale or img.width % scale:
        raise DimensionError(
            f"dimensions {img.height}x{img.width} not divisible by scale {scale}"
        )
    raw = to_uint8(img)
    pil = Image.fromarray(raw[:, :, 0], mode="L") if raw.shape[2] == 1 else Image.fromarray(raw, mode="RGB")
    lr = pil.resize((img.width // scale, img.height // scale), Image.BICUBIC)
    arr = np.asarray(lr, dtype=np.uint8)
    return from_uint8(arr if arr.ndim == 3 else arr[:, :, np.newaxis])


def _validate_inputs(hr_paths: list[Path], scale: int) -> list[str]:
    problems = []
    for path in hr_paths:
        with Image.open(path) as pil:
            w, h = pil.size
        if w != 2 * h:
            problems.append(f"{path.name}: {h}x{w} violates W = 2H")
        elif h % scale or w % scale:
            problems.append(f"{path.name}: {h}x{w} not divisible by scale {scale}")
    return problems


def generate(
    hr_dir: str | Path,
    out_dir: str | Path,
    scale: int,
    seed: int,
    mode: str = "train-random",
) -> list[DatasetRecord]:
    """Build a dataset from every PNG under ``hr_dir``; returns the records.

    Images are processed in sorted filename order. The manifest and all
    images are fully determined by (inputs, scale, seed, mode).
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if scale < 1:
        raise ValueError(f"scale must be >= 1, got {scale}")
    hr_dir = Path(hr_dir)
    out_dir = Path(out_dir)
    hr_paths = sorted(hr_dir.glob("*.png"))
    if not hr_paths:
        raise FileNotFoundError(f"no PNG files found in {hr_dir}")
    problems = _validate_inputs(hr_paths, scale)
    if problems:
        raise DimensionError("unsuitable HR images: " + "; ".join(problems))

    (out_dir / "lr").mkdir(parents=True, exist_ok=True)
    (out_dir / "hr_t").mkdir(parents=True, exist_ok=True)
    stream = np.random.default_rng(seed)

    records = []
    for idx, path in enumerate(hr_paths):
        if mode == "train-random":
            cmd = sample_command(stream)
        else:
            cmd = sample_command(np.random.default_rng([seed, idx]))
        hr = load_image(path)
        lr = downsample_bicubic(hr, scale)
        truth = transform_image(hr, cmd, up_factor=1, interp="slerp")

        lr_rel = f"lr/{idx:04d}.png"
        hr_t_rel = f"hr_t/{idx:04d}.png"
        save_image(lr, out_dir / lr_rel)
        save_image(truth, out_dir / hr_t_rel)

        # baseline: best the LR input can do with plain upsampling + the
        # same command, scored on the quantized rasters as written to disk
        rebuilt = transform_image(lr, cmd, up_factor=scale, interp="slerp")
        baseline = ws_psnr(from_uint8(to_uint8(truth)), from_uint8(to_uint8(rebuilt)))

        records.append(
            DatasetRecord(
                id=idx,
                lr_path=lr_rel,
                hr_transformed_path=hr_t_rel,
                command=cmd,
                matrix=from_command(cmd),
                scale=scale,
                source=path.name,
                bicubic_ws_psnr=baseline,
            )
        )

    manifest = {
        "mode": mode,
        "scale": scale,
        "seed": seed,
        "records": [r.to_json() for r in records],
    }
    with open(out_dir / "manifest.json", "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return records


def load_manifest(path: str | Path) -> list[DatasetRecord]:
    """Read a manifest back, checking each stored matrix against its command."""
    with open(path, encoding="utf-8") as fh:
        manifest = json.load(fh)
    records = [DatasetRecord.from_json(blob) for blob in manifest["records"]]
    for record in records:
        if not matrices_equivalent(record.matrix, from_command(record.command)):
            raise ValueError(
                f"record {record.id}: stored matrix does not match its command"
            )
    return records
