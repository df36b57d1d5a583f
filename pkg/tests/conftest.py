import numpy as np
import pytest

from omnivr.resample import ErpImage

from synth import render_texture, smooth_texture, detailed_texture


@pytest.fixture(scope="session")
def smooth_pano_256():
    return render_texture(smooth_texture, 256, 512)


@pytest.fixture(scope="session")
def smooth_pano_64():
    return render_texture(smooth_texture, 64, 128)


@pytest.fixture(scope="session")
def detailed_pano_512():
    return render_texture(detailed_texture, 512, 1024)


@pytest.fixture()
def random_pano_64():
    rng = np.random.default_rng(11)
    return ErpImage(rng.random((64, 128, 3)))
