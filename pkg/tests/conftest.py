import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from slice_radon import GrayImage, SignSpec, synth_sign


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)


@pytest.fixture
def five_stripe_sign():
    """The canonical 64x64 five-stripe 45-degree fixture (no rim)."""
    return synth_sign(SignSpec(size=64, num_stripes=5, stripe_angle=45.0,
                               stripe_width=4, duty=0.5,
                               foreground=0.1, background=0.9))


@pytest.fixture
def ring_sign():
    """Same stripes with the sign rim drawn."""
    return synth_sign(SignSpec(size=64, num_stripes=5, stripe_angle=45.0,
                               stripe_width=4, duty=0.5,
                               foreground=0.1, background=0.9, circle_border=True))


@pytest.fixture
def uniform_image():
    return GrayImage.from_array(np.full((64, 64), 0.5))
