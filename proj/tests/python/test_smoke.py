"""Smoke tests for the python bindings."""

import numpy as np
import pytest

import oscsys


def test_prime_field():
    f = oscsys.PrimeField(5)
    assert f.p == 5
    assert f.generator == 2
    assert f.nonsquare == 2
    assert f.legendre(4) == 1
    assert f.legendre(2) == -1
    assert f.legendre(0) == 0
    assert abs(f.psi(5) - 1.0) < 1e-15
    with pytest.raises(ValueError):
        oscsys.PrimeField(4)


def test_operators_are_unitary():
    for p in (5, 7):
        w = oscsys.weil_operator(p, [0, 1, p - 1, 0])
        assert np.allclose(w @ w.conj().T, np.eye(p), atol=1e-10)
        pi = oscsys.heisenberg_operator(p, 1, 2, 0)
        assert np.allclose(pi @ pi.conj().T, np.eye(p), atol=1e-10)
    f = oscsys.fourier_operator(5)
    assert np.allclose(np.linalg.matrix_power(f, 4), np.eye(5), atol=1e-10)


def test_bruhat():
    assert oscsys.bruhat_decompose(5, [1, 1, 1, 2]) == (True, 2, 1, 1)
    assert oscsys.bruhat_decompose(5, [1, 0, 3, 1]) == (False, 3, 1, 0)


def test_system_counts():
    assert len(oscsys.generate_system(5, "split")) == 45
    # p(p-1)/2 non-split tori carrying p signals each.
    assert len(oscsys.generate_system(5, "nonsplit")) == 50
    assert len(oscsys.generate_system(5, "heisenberg")) == 30


def test_system_report_passes():
    sys5 = oscsys.generate_system(5, "nonsplit")
    report = oscsys.system_report(sys5)
    assert report["pass"]
    assert report["max_auto_offcenter"] <= report["auto_bound"]
    fourier = oscsys.fourier_invariance(sys5)
    assert fourier["pass"] and fourier["bijective"]


def test_delta_ambiguity_row():
    delta = np.zeros(5, dtype=complex)
    delta[0] = 1.0
    grid = oscsys.ambiguity(5, delta)
    assert np.allclose(np.abs(grid[0]), 1.0, atol=1e-12)
    assert np.allclose(np.abs(grid[1:]), 0.0, atol=1e-12)


def test_signal_metadata():
    sys5 = oscsys.generate_system(5, "split", max_tori=2)
    sig = sys5.signals[0]
    assert sig.group == 0 and sig.index == 0
    assert abs(np.linalg.norm(sig.values) - 1.0) < 1e-10
    assert abs(abs(sig.eigenvalue) - 1.0) < 1e-8


def test_radar_and_cdma():
    sys13 = oscsys.generate_system(13, "nonsplit", max_tori=2)
    radar = oscsys.radar_simulate(sys13, signal=0, trials=50, seed=1)
    assert radar["recovery_rate"] == 1.0
    cdma = oscsys.cdma_simulate(
        sys13, users=2, scenario="full", trials=40, seed=1, known_distortions=True
    )
    assert cdma["ber"] == 0.0


def test_save_load_roundtrip(tmp_path):
    sys7 = oscsys.generate_system(7, "split", max_tori=3)
    path = str(tmp_path / "sys.oss")
    oscsys.save_system(path, sys7)
    back = oscsys.load_system(path)
    assert len(back) == len(sys7)
    assert np.array_equal(back.signals[4].values, sys7.signals[4].values)
