"""Noise, shift, and scale perturbations: identities, statistics, geometry."""

import numpy as np
import pytest

from sparsefuse.perturb import (
    PerturbationSpec,
    apply_spec,
    gaussian_noise,
    parse_spec,
    salt_pepper,
    scale,
    spec_from_json,
    spec_to_json,
    speckle,
    translate,
)


@pytest.fixture()
def flat128():
    return np.full((128, 128), 128, dtype=np.uint8)


def test_zero_parameter_specs_are_exact_identities():
    rng = np.random.default_rng(30)
    img = rng.integers(0, 256, size=(17, 23), dtype=np.uint8)
    identities = [
        PerturbationSpec("gaussian", amount=0.0),
        PerturbationSpec("salt_pepper", amount=0.0),
        PerturbationSpec("speckle", amount=0.0),
        PerturbationSpec("translate", dx=0, dy=0),
        PerturbationSpec("scale", amount=1.0),
    ]
    for spec in identities:
        out = apply_spec(img, spec, seed=99)
        assert np.array_equal(out, img), spec.kind
        assert out is not img  # callers may mutate the result freely


def test_noise_is_deterministic_in_the_seed(flat128):
    for fn in (gaussian_noise, salt_pepper, speckle):
        a = fn(flat128, 0.05, seed=4)
        b = fn(flat128, 0.05, seed=4)
        c = fn(flat128, 0.05, seed=5)
        assert np.array_equal(a, b)
        assert not np.array_equal(a, c)


def test_gaussian_noise_std_matches_unit_variance_request(flat128):
    out = gaussian_noise(flat128, 0.01, seed=1)
    deviation = (out.astype(np.float64) - 128.0) / 255.0
    assert 0.08 <= deviation.std() <= 0.12  # requested std = 0.1 of unit range
    assert abs(deviation.mean()) < 0.01


def test_salt_pepper_density_and_values(flat128):
    out = salt_pepper(flat128, 0.1, seed=2)
    changed = out != 128
    fraction = changed.mean()
    assert 0.08 <= fraction <= 0.12
    assert set(np.unique(out[changed]).tolist()) <= {0, 255}
    salt_fraction = (out[changed] == 255).mean()
    assert 0.4 <= salt_fraction <= 0.6


def test_speckle_bounds_and_mean(flat128):
    out = speckle(flat128, 0.04, seed=3)
    # n is uniform over [-sqrt(0.12), sqrt(0.12)), so 128*(1+n) stays in
    # [83.66, 172.34) before rounding.
    assert out.min() >= 83
    assert out.max() <= 173
    assert abs(out.astype(np.float64).mean() - 128.0) < 2.0


def test_noise_parameter_validation(flat128):
    with pytest.raises(ValueError):
        gaussian_noise(flat128, -0.1, seed=0)
    with pytest.raises(ValueError):
        salt_pepper(flat128, 1.5, seed=0)
    with pytest.raises(ValueError):
        speckle(flat128, -1.0, seed=0)


def test_translate_moves_content_and_zero_fills():
    img = np.arange(9, dtype=np.uint8).reshape(3, 3)
    right = translate(img, 1, 0)
    assert right.tolist() == [[0, 0, 1], [0, 3, 4], [0, 6, 7]]
    down = translate(img, 0, 1)
    assert down.tolist() == [[0, 0, 0], [0, 1, 2], [3, 4, 5]]
    up_left = translate(img, -1, -1)
    assert up_left.tolist() == [[4, 5, 0], [7, 8, 0], [0, 0, 0]]


def test_translate_rejects_shifts_as_large_as_the_image():
    img = np.zeros((3, 4), dtype=np.uint8)
    with pytest.raises(ValueError):
        translate(img, 4, 0)
    with pytest.raises(ValueError):
        translate(img, 0, -3)


def test_scale_up_center_crops():
    img = np.zeros((4, 4), dtype=np.uint8)
    img[1:3, 1:3] = 200
    out = scale(img, 2.0)
    assert out.shape == (4, 4)
    # The bright center square doubles in size, so it covers the whole crop.
    assert out[1:3, 1:3].min() == 200


def test_scale_down_pads_with_zeros():
    img = np.full((8, 8), 250, dtype=np.uint8)
    out = scale(img, 0.5)
    assert out.shape == (8, 8)
    assert np.all(out[:2, :] == 0) and np.all(out[-2:, :] == 0)
    assert np.all(out[:, :2] == 0) and np.all(out[:, -2:] == 0)
    assert np.all(out[2:6, 2:6] == 250)


def test_scale_rejects_nonpositive_factor():
    with pytest.raises(ValueError):
        scale(np.zeros((4, 4), dtype=np.uint8), 0.0)


def test_spec_validation():
    with pytest.raises(ValueError):
        PerturbationSpec("blur", amount=1.0)
    with pytest.raises(ValueError):
        PerturbationSpec("gaussian", amount=-0.5)
    with pytest.raises(ValueError):
        PerturbationSpec("salt_pepper", amount=2.0)
    with pytest.raises(ValueError):
        PerturbationSpec("scale", amount=0.0)


def test_parse_spec_forms():
    spec = parse_spec("gaussian=0.05")
    assert (spec.kind, spec.amount) == ("gaussian", 0.05)
    spec = parse_spec("translate=2,-1", noise_seed=7)
    assert (spec.kind, spec.dx, spec.dy, spec.noise_seed) == ("translate", 2, -1, 7)
    spec = parse_spec("scale=1.2")
    assert (spec.kind, spec.amount) == ("scale", 1.2)
    spec = parse_spec(" SALT_PEPPER =0.02")
    assert spec.kind == "salt_pepper"


def test_parse_spec_rejects_malformed_text():
    for text in ("gaussian", "blur=1", "translate=2", "translate=1,2,3", "gaussian=abc"):
        with pytest.raises(ValueError):
            parse_spec(text)


def test_spec_json_round_trip():
    specs = [
        PerturbationSpec("gaussian", amount=0.01, noise_seed=3),
        PerturbationSpec("salt_pepper", amount=0.2),
        PerturbationSpec("speckle", amount=0.04),
        PerturbationSpec("translate", dx=-2, dy=5),
        PerturbationSpec("scale", amount=0.8),
    ]
    for spec in specs:
        assert spec_from_json(spec_to_json(spec)) == spec


def test_spec_json_accepts_parameter_aliases():
    assert spec_from_json({"kind": "gaussian", "variance": 0.02}).amount == 0.02
    assert spec_from_json({"kind": "salt_pepper", "density": 0.1}).amount == 0.1
    assert spec_from_json({"kind": "scale", "factor": 1.5}).amount == 1.5
    assert spec_from_json({"kind": "scale"}).amount == 1.0


def test_apply_spec_seed_override(flat128):
    spec = PerturbationSpec("gaussian", amount=0.01, noise_seed=1)
    assert np.array_equal(apply_spec(flat128, spec),
                          gaussian_noise(flat128, 0.01, seed=1))
    assert np.array_equal(apply_spec(flat128, spec, seed=8),
                          gaussian_noise(flat128, 0.01, seed=8))
