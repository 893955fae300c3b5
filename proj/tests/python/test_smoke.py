import math

import numpy as np
import pytest

import beamsweep as bs


def test_grids_and_resolution():
    limit = 0.5 * math.sin(math.radians(33.0))
    g = bs.minimal_naf_grid(8, limit)
    assert len(g) == 9
    assert g == pytest.approx([k / 15 for k in range(-4, 5)], abs=1e-15)
    assert len(bs.oversampled_naf_grid(8, limit)) == 81
    assert bs.naf_resolution(8) == 1 / 15
    assert bs.sweep_durations(8, limit) == pytest.approx((0.54, 4.86))


def test_dirichlet_matches_numpy():
    lags = np.linspace(-0.49, 0.49, 36)
    want = np.sin(np.pi * 15 * lags) / (15 * np.sin(np.pi * lags))
    got = [bs.dirichlet_kernel(float(x), 15) for x in lags]
    assert np.allclose(got, want, atol=1e-12)


def test_response_peak_and_dft_reconstruction():
    steer = [k / 15 for k in range(-7, 8)]
    samples = bs.beamformed_response(8, [(2 / 15, 1 + 0j)], steer)
    assert abs(samples[9]) == pytest.approx(64.0)
    targets = list(np.linspace(-0.45, 0.45, 31))
    dense = bs.beamformed_response(8, [(2 / 15, 1 + 0j)], targets)
    # Real and imaginary parts interpolate separately through the real kernel.
    re = bs.dft_interpolate(steer, [s.real for s in samples], 15, targets)
    im = bs.dft_interpolate(steer, [s.imag for s in samples], 15, targets)
    assert np.allclose(np.array(re) + 1j * np.array(im), dense, atol=1e-9)


def test_off_grid_dft_raises():
    with pytest.raises(bs.ContractViolation):
        bs.dft_interpolate([0.0, 0.07, 0.14], [1, 2, 3], 15, [0.0])


def test_omp_recovers_single_atom():
    atoms, beams, grid = bs.dictionary()
    assert atoms.shape == (9, 81)
    out = bs.omp(atoms[:, 40] * 3.0)
    assert out["support"] == [40]
    assert out["coefficients"][0] == pytest.approx(3.0)
    assert out["naf"][0] == pytest.approx(grid[40])


def test_cfar_and_peaks():
    p = [1.0] * 64
    p[20] = 1e4
    mask = bs.ca_cfar(p)
    assert mask[20] and sum(mask) == 1
    grid = bs.oversampled_naf_grid(8, 0.2723)
    power = [0.0] * 81
    power[10] = 4.0
    power[60] = 1.0
    peaks = bs.extract_peaks(grid, power)
    assert [round(x["power"], 9) for x in peaks] == [4.0, 1.0]


def test_config_errors_are_value_errors():
    with pytest.raises(ValueError):
        bs.catalog('{"omp": {"nope": 1}}')


def test_catalog_and_small_evaluation():
    names = [s["name"] for s in bs.catalog()]
    assert len(names) == 8 and "wall-far" in names
    cfg = {"sweep": {"frames_per_beam": 6}, "seeds": {"master": 3}}
    a = bs.evaluate(["octahedral-far"], ["oversampled", "dft"], 1, cfg)
    b = bs.evaluate(["octahedral-far"], ["oversampled", "dft"], 1, cfg)
    assert a == b
    assert bs.naf_to_cross_track_m(0.017, 18.0) == pytest.approx(0.612, abs=1e-3)
