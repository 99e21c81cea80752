import os
import pathlib

import numpy as np
import pytest

import adawm

HEX = "00112233445566778899aabbccddeeff0123456789abcdef0f1e2d3c4b5a6978"


@pytest.fixture(scope="module")
def cover():
    rng = np.random.default_rng(3)
    y, x = np.mgrid[0:512, 0:512]
    base = 40 + (x + y) * 170 / 1022
    return np.clip(base + rng.normal(0, 6, size=base.shape), 0, 255).astype(np.uint8)


def test_round_trip(cover):
    marked = adawm.embed(cover, HEX)
    assert marked.shape == (512, 512)
    assert marked.dtype == np.uint8
    payload, confidence = adawm.extract(marked)
    assert payload == HEX
    assert len(confidence) == adawm.PAYLOAD_BITS
    assert min(confidence) == 1.0
    assert adawm.psnr(cover, marked) > 30.0
    assert adawm.ber(payload, HEX) == 0.0
    assert adawm.nc(payload, HEX) == 1.0


def test_non_adaptive_and_attack(cover):
    marked = adawm.embed(cover, HEX, adaptive=False)
    filtered = adawm.attack(marked, "median", kernel=3)
    payload, _ = adawm.extract(filtered)
    assert adawm.nc(payload, HEX) > 0.6
    a = adawm.attack(marked, "gaussian", variance=0.003, seed=7)
    b = adawm.attack(marked, "gaussian", variance=0.003, seed=7)
    assert np.array_equal(a, b)


def test_errors(cover):
    with pytest.raises(ValueError, match="payload must be 256 bits"):
        adawm.embed(cover, HEX[:-1])
    with pytest.raises(ValueError, match="multiples of 128"):
        adawm.embed(np.zeros((300, 300), np.uint8), HEX)


def test_strength_factors_in_bounds(cover):
    sf = adawm.strength_factors(cover)
    assert len(sf) == 16
    assert all(0.01 <= v <= 0.12 for v in sf)


def _classic(name):
    root = os.environ.get("ADAWM_CLASSIC_DIR")
    if not root:
        return None
    for ext in (".png", ".pgm"):
        p = pathlib.Path(root) / (name + ext)
        if p.exists():
            return p
    return None


def test_canny_agrees_with_skimage():
    feature = pytest.importorskip("skimage.feature")
    io = pytest.importorskip("skimage.io")
    ndi = pytest.importorskip("scipy.ndimage")
    path = _classic("lena")
    if path is None:
        pytest.skip("no lena image configured")
    img = io.imread(path)
    if img.ndim == 3:
        pytest.skip("expected a grayscale image")

    ours = adawm.canny_edges(img).astype(bool)
    # skimage takes absolute thresholds; derive them from the max smoothed Sobel magnitude.
    smooth = ndi.gaussian_filter(img.astype(float), 1.4, mode="mirror", truncate=3.0)
    mag = np.hypot(ndi.sobel(smooth, axis=1, mode="nearest"), ndi.sobel(smooth, axis=0, mode="nearest"))
    ref = feature.canny(img.astype(float), sigma=1.4, low_threshold=0.1 * mag.max(), high_threshold=0.2 * mag.max())

    assert 0.02 <= ours.mean() <= 0.20
    assert abs(ours.mean() - ref.mean()) <= 0.1 * ref.mean()
    near_ref = ndi.binary_dilation(ref)
    near_ours = ndi.binary_dilation(ours)
    assert (ours & near_ref).sum() / ours.sum() > 0.95
    assert (ref & near_ours).sum() / ref.sum() > 0.95
