import csv
import io

import numpy as np
import pytest

wavemu = pytest.importorskip("wavemu")


def test_scrambler_first_bits():
    out = wavemu.scramble(np.zeros(16, dtype=np.uint8))
    assert "".join(map(str, out)) == "0110110000011001"


def test_tx_rx_loopback():
    cfg = wavemu.PhyConfig(16, "1/2")
    rng = np.random.default_rng(0)
    bits = rng.integers(0, 2, 3 * cfg.data_bits_per_symbol, dtype=np.uint8)
    samples = wavemu.tx(bits, cfg)
    assert samples.dtype == np.complex128
    assert samples.size == 3 * cfg.samples_per_ofdm
    assert np.array_equal(wavemu.rx(samples, cfg), bits)


def test_viterbi_corrects_single_error():
    bits = np.r_[np.random.default_rng(1).integers(0, 2, 40), np.zeros(6)].astype(np.uint8)
    coded = wavemu.conv_encode(bits)
    coded[17] ^= 1
    assert np.array_equal(wavemu.viterbi_decode(coded), bits)


def test_emulator_noiseless_bound():
    e = wavemu.Emulator()
    assert len(e.chosen) == 36 and e.rank == 216
    s = wavemu.gaussian_symbols(720, seed=3) * 0.5
    est = e.emulate(s)
    err = np.abs(np.r_[(est - s).real, (est - s).imag]) * e.scale
    assert err.max() <= 1 / np.sqrt(42) + 1e-12


def test_ideal_link_mse():
    s = wavemu.gaussian_symbols(20000, seed=4)
    y = wavemu.ideal_link(s, 10.0, seed=5)
    assert abs(np.mean(np.abs(y - s) ** 2) - 0.1) < 0.005


def test_gf2_rank():
    assert wavemu.gf2_rank(np.eye(5, dtype=np.uint8)) == 5
    assert wavemu.gf2_rank(np.array([[1, 1], [1, 1]], dtype=np.uint8)) == 1


def test_sweep_csv_is_deterministic():
    text = wavemu.sweep([0.0, 20.0], symbols=360, systems=["ideal", "emulated"], seed=2)
    rows = list(csv.DictReader(io.StringIO(text)))
    assert [r["system"] for r in rows] == ["ideal", "ideal", "emulated", "emulated"]
    assert float(rows[2]["symbol_mse"]) > float(rows[3]["symbol_mse"])
    assert text == wavemu.sweep([0.0, 20.0], symbols=360, systems=["ideal", "emulated"], seed=2)


def test_errors_map_to_python():
    with pytest.raises(ValueError):
        wavemu.PhyConfig(32)
    with pytest.raises(ValueError):
        wavemu.tx(np.zeros(5, dtype=np.uint8))


def test_selftest():
    ok, text = wavemu.selftest(probes=20)
    assert ok, text
