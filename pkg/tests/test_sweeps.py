import numpy as np
import pytest

from lambda_holo.dynamics import PropagationConfig, TRANSMON
from lambda_holo.sweeps import (
    SEQUENCE_LABELS,
    SweepPoint,
    TABLE1_FREQUENCIES,
    TABLE2_INPUT_LABELS,
    TABLE3_DURATIONS_NS,
    duration_average_sweep,
    duration_sweep,
    envelope_input_sweep,
    fig1_default_durations_ns,
    frequency_sweep,
    sequence_sweep,
)

COORD_KEYS = {"mode", "fe0_rad_s", "fe1_rad_s", "envelope", "width_param", "tau_ns", "input"}


def test_sweep_point_rejects_out_of_range_fidelity():
    with pytest.raises(ValueError):
        SweepPoint(coordinates={}, fidelity=1.1)
    with pytest.raises(ValueError):
        SweepPoint(coordinates={}, fidelity=-0.1)


def test_frequency_sweep_shape_and_coordinates():
    points = frequency_sweep(freqs=(1e6, 1e10))
    assert len(points) == 4  # 2 freqs x 2 gates
    for p in points:
        assert COORD_KEYS | {"gate", "theta_rad", "phi_rad"} <= set(p.coordinates)
        assert p.coordinates["fe0_rad_s"] == p.coordinates["fe1_rad_s"]
        assert 0.0 <= p.fidelity <= 1.0 + 1e-9
        assert p.excited_population is not None
        assert p.overlap_phase is not None


def test_frequency_sweep_deterministic_and_worker_independent():
    a = frequency_sweep(freqs=(1e6, 1e9))
    b = frequency_sweep(freqs=(1e6, 1e9))
    c = frequency_sweep(freqs=(1e6, 1e9), workers=3)
    for x, y, z in zip(a, b, c):
        assert x.fidelity == y.fidelity == z.fidelity
        assert x.coordinates == y.coordinates == z.coordinates


def test_envelope_input_sweep_grid():
    points = envelope_input_sweep()
    assert len(points) == 15  # 5 kinds x 3 inputs
    got = {(p.coordinates["envelope"], p.coordinates["input"]) for p in points}
    assert len(got) == 15
    assert {i for _, i in got} == set(TABLE2_INPUT_LABELS)


def test_duration_sweep_grid():
    points = duration_sweep()
    assert len(points) == 20  # 5 kinds x 4 durations
    taus = {p.coordinates["tau_ns"] for p in points}
    assert taus == set(TABLE3_DURATIONS_NS)


def test_duration_average_sweep_labels():
    points = duration_average_sweep(durations_ns=(40.0, 100.0))
    assert len(points) == 4
    for p in points:
        assert p.coordinates["input"] == "avg"
        assert p.overlap_phase is None
        assert p.excited_population is not None


def test_fig1_grid_is_logarithmic():
    taus = fig1_default_durations_ns()
    assert len(taus) == 100
    assert taus[0] == pytest.approx(1.0)
    assert taus[-1] == pytest.approx(100.0)
    ratios = taus[1:] / taus[:-1]
    assert np.allclose(ratios, ratios[0])


def test_sequence_sweep_rwa_is_unity():
    cfg = PropagationConfig(mode="rwa")
    points = sequence_sweep(durations_ns=(25.0,), cfg=cfg)
    assert len(points) == 3
    labels = {p.coordinates["sequence"] for p in points}
    assert labels == set(SEQUENCE_LABELS)
    for p in points:
        assert abs(p.fidelity - 1.0) < 1e-6


def test_sequence_sweep_product_row_has_no_state_diagnostics():
    points = sequence_sweep(durations_ns=(30.0,))
    by_label = {p.coordinates["sequence"]: p for p in points}
    assert by_label["product"].excited_population is None
    assert by_label["hadamard_then_not"].excited_population is not None


def test_sweep_points_echo_system():
    points = envelope_input_sweep(kinds=("square",), inputs=("0",))
    p = points[0]
    assert p.coordinates["fe0_rad_s"] == TRANSMON.fe0
    assert p.coordinates["fe1_rad_s"] == TRANSMON.fe1
    assert p.coordinates["mode"] == "full"


def test_record_layout():
    points = frequency_sweep(freqs=(1e8,))
    rec = points[0].record()
    keys = list(rec)
    coords = sorted(points[0].coordinates)
    assert keys == coords + ["fidelity", "excited_population", "overlap_phase"]
