import numpy as np
import pytest

import fuselet


@pytest.fixture(scope="module")
def pair():
    return fuselet.multifocus_fixture(64, 2.0)


def test_nsct_round_trip(pair):
    truth, _, _ = pair
    low, bands = fuselet.nsct_forward(truth, [2, 3])
    assert [len(s) for s in bands] == [4, 8]
    assert all(b.shape == truth.shape for s in bands for b in s)
    back = fuselet.nsct_inverse(low, bands)
    assert np.max(np.abs(back - truth)) < 1e-10


def test_dwt_round_trip(pair):
    truth, _, _ = pair
    ll, details = fuselet.dwt_forward(truth, 3)
    assert ll.shape == (8, 8)
    assert details[0][0].shape == (32, 32)
    assert np.max(np.abs(fuselet.dwt_inverse(ll, details) - truth)) < 1e-10


def test_fuse_beats_either_source(pair):
    truth, a, b = pair
    fused = fuselet.fuse(a, b)
    rmse = lambda x: float(np.sqrt(np.mean((x - truth) ** 2)))
    assert rmse(fused) < min(rmse(a), rmse(b))
    assert np.array_equal(fused, fuselet.fuse(a, b))
    wl = fuselet.fuse(a, b, domain="wavelet", rule="sd")
    assert wl.shape == truth.shape


def test_metrics(pair):
    truth, a, b = pair
    r = fuselet.evaluate(truth, truth, truth)
    assert r["s"] == 1.0
    assert r["pm"] == pytest.approx(1.0)
    assert r["en1"] == fuselet.entropy(truth)
    assert fuselet.uiqi([1, 2, 3, 4], [2, 4, 6, 8]) == pytest.approx(0.64)
    assert fuselet.weighted_fusion_quality(a, b, truth) <= 1.0
    edges = fuselet.canny_edges(truth)
    assert set(np.unique(edges)) <= {0.0, 255.0}


def test_wamm_weights():
    assert fuselet.wamm_weights(0.1, 0.25) == (0.0, 1.0)
    assert fuselet.wamm_weights(1.0, 0.25) == (0.5, 0.5)


def test_errors(pair, tmp_path):
    _, a, _ = pair
    with pytest.raises(ValueError, match=r"\(0, 0.5\)"):
        fuselet.fuse(a, a, threshold=0.7)
    with pytest.raises(fuselet.DimensionMismatch):
        fuselet.fuse(a, a[:32, :32])
    with pytest.raises(fuselet.ImageIoError):
        fuselet.load_image(tmp_path / "missing.pgm")
    with pytest.raises(ValueError):
        fuselet.fuse(a, a, rule="max")


def test_io_round_trip(pair, tmp_path):
    truth, _, _ = pair
    for name in ("t.pgm", "t.png"):
        path = tmp_path / name
        fuselet.save_image(truth, path)
        back = fuselet.load_image(path)
        assert np.array_equal(back, np.clip(np.floor(truth + 0.5), 0, 255))
