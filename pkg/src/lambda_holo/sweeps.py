"""Parameter-sweep harness: frequency, envelope/input, duration and sequence scans.

Every sweep returns a list of SweepPoint records in deterministic parameter
order; each record echoes the full coordinates of the run so an output file
needs no ambient context to interpret. Points are independent and may be
evaluated by a thread pool; assembly order never depends on completion order.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np

from .dynamics import TRANSMON, LambdaSystem, PropagationConfig, propagate_sequence
from .gates import (
    AVERAGE_INPUT_LABELS,
    GateOutcome,
    GateSpec,
    HADAMARD_GATE,
    INPUT_STATES,
    NOT_GATE,
    drive_for_gate,
    gate_outcome,
    ideal_gate,
)
from .pulses import DEFAULT_FWHM_FRACTION, DEFAULT_SECH_BETA, ENVELOPE_KINDS, envelope
from .qstate import apply, excited_population, overlap

NS = 1e-9

TABLE1_FREQUENCIES = (1e6, 1e7, 1e8, 5e8, 1e9, 1e10)
TABLE2_INPUT_LABELS = ("x+", "y+", "0")
TABLE3_DURATIONS_NS = (100.0, 40.0, 10.0, 2.5)
DEFAULT_TAU_NS = 40.0

SEQUENCE_LABELS = ("hadamard_then_not", "not_then_hadamard", "product")

_FIDELITY_CEILING = 1.0 + 1e-9


def fig1_default_durations_ns(points: int = 100, lo: float = 1.0, hi: float = 100.0):
    """Logarithmic duration grid (ns) for the averaged duration scan."""
    return np.logspace(np.log10(lo), np.log10(hi), points)


def fig2_default_durations_ns():
    """Linear per-pulse duration grid (ns) for the sequence scan."""
    return np.linspace(10.0, 100.0, 19)


@dataclass(frozen=True)
class SweepPoint:
    """One sweep record: coordinates, fidelity, and diagnostics."""

    coordinates: Mapping[str, object]
    fidelity: float
    excited_population: float | None = None
    overlap_phase: float | None = None

    def __post_init__(self):
        if not 0.0 <= self.fidelity <= _FIDELITY_CEILING:
            raise ValueError(f"fidelity {self.fidelity!r} outside [0, 1 + 1e-9]")

    def record(self) -> dict:
        """Flat dict: coordinates (alphabetical), then fidelity, then diagnostics."""
        row = {key: self.coordinates[key] for key in sorted(self.coordinates)}
        row["fidelity"] = self.fidelity
        row["excited_population"] = self.excited_population
        row["overlap_phase"] = self.overlap_phase
        return row


def _run_jobs(jobs: Sequence[Callable[[], SweepPoint]], workers: int) -> list[SweepPoint]:
    if workers <= 1:
        return [job() for job in jobs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda job: job(), jobs))


def _pulse(kind: str, tau_ns: float, fwhm_fraction: float, sech_beta: float):
    return envelope(kind, tau_ns * NS, fwhm_fraction=fwhm_fraction, sech_beta=sech_beta)


def _coords(
    sys: LambdaSystem,
    cfg: PropagationConfig,
    kind: str,
    width_param: float | None,
    tau_ns: float,
    gate: GateSpec | None,
    input_label: str,
    **extra,
) -> dict:
    coords = {
        "mode": cfg.mode,
        "fe0_rad_s": sys.fe0,
        "fe1_rad_s": sys.fe1,
        "envelope": kind,
        "width_param": width_param,
        "tau_ns": tau_ns,
        "input": input_label,
    }
    if gate is not None:
        coords["gate"] = gate.name
        coords["theta_rad"] = gate.theta
        coords["phi_rad"] = gate.phi
    coords.update(extra)
    return coords


def _outcome_point(coords: dict, outcome: GateOutcome) -> SweepPoint:
    return SweepPoint(
        coordinates=coords,
        fidelity=outcome.fidelity,
        excited_population=outcome.excited_population,
        overlap_phase=outcome.overlap_phase,
    )


def frequency_sweep(
    freqs: Sequence[float] = TABLE1_FREQUENCIES,
    gates: Sequence[GateSpec] = (NOT_GATE, HADAMARD_GATE),
    *,
    tau_ns: float = DEFAULT_TAU_NS,
    kind: str = "gaussian",
    fwhm_fraction: float = DEFAULT_FWHM_FRACTION,
    sech_beta: float = DEFAULT_SECH_BETA,
    input_label: str = "0",
    cfg: PropagationConfig | None = None,
    workers: int = 1,
) -> list[SweepPoint]:
    """Fidelity vs transition frequency, the same f on both transitions."""
    cfg = cfg or PropagationConfig()
    env = _pulse(kind, tau_ns, fwhm_fraction, sech_beta)
    psi0 = INPUT_STATES[input_label]

    def job(f: float, gate: GateSpec) -> Callable[[], SweepPoint]:
        def evaluate() -> SweepPoint:
            sys = LambdaSystem(fe0=f, fe1=f)
            outcome = gate_outcome(sys, gate, drive_for_gate(gate, env), psi0, cfg)
            coords = _coords(sys, cfg, kind, env.width_param, tau_ns, gate, input_label)
            return _outcome_point(coords, outcome)

        return evaluate

    jobs = [job(float(f), gate) for f in freqs for gate in gates]
    return _run_jobs(jobs, workers)


def envelope_input_sweep(
    kinds: Sequence[str] = ENVELOPE_KINDS,
    inputs: Sequence[str] = TABLE2_INPUT_LABELS,
    *,
    sys: LambdaSystem = TRANSMON,
    gate: GateSpec = NOT_GATE,
    tau_ns: float = DEFAULT_TAU_NS,
    fwhm_fraction: float = DEFAULT_FWHM_FRACTION,
    sech_beta: float = DEFAULT_SECH_BETA,
    cfg: PropagationConfig | None = None,
    workers: int = 1,
) -> list[SweepPoint]:
    """Envelope-shape x input-state fidelity grid at fixed gate and duration."""
    cfg = cfg or PropagationConfig()

    def job(kind: str, input_label: str) -> Callable[[], SweepPoint]:
        def evaluate() -> SweepPoint:
            env = _pulse(kind, tau_ns, fwhm_fraction, sech_beta)
            outcome = gate_outcome(
                sys, gate, drive_for_gate(gate, env), INPUT_STATES[input_label], cfg
            )
            coords = _coords(sys, cfg, kind, env.width_param, tau_ns, gate, input_label)
            return _outcome_point(coords, outcome)

        return evaluate

    jobs = [job(kind, label) for kind in kinds for label in inputs]
    return _run_jobs(jobs, workers)


def duration_sweep(
    durations_ns: Sequence[float] = TABLE3_DURATIONS_NS,
    kinds: Sequence[str] = ENVELOPE_KINDS,
    *,
    sys: LambdaSystem = TRANSMON,
    gate: GateSpec = NOT_GATE,
    input_label: str = "0",
    fwhm_fraction: float = DEFAULT_FWHM_FRACTION,
    sech_beta: float = DEFAULT_SECH_BETA,
    cfg: PropagationConfig | None = None,
    workers: int = 1,
) -> list[SweepPoint]:
    """Fidelity per (envelope kind, pulse duration) for one gate and input."""
    cfg = cfg or PropagationConfig()

    def job(kind: str, tau_ns: float) -> Callable[[], SweepPoint]:
        def evaluate() -> SweepPoint:
            env = _pulse(kind, tau_ns, fwhm_fraction, sech_beta)
            outcome = gate_outcome(
                sys, gate, drive_for_gate(gate, env), INPUT_STATES[input_label], cfg
            )
            coords = _coords(sys, cfg, kind, env.width_param, tau_ns, gate, input_label)
            return _outcome_point(coords, outcome)

        return evaluate

    jobs = [job(kind, float(t)) for kind in kinds for t in durations_ns]
    return _run_jobs(jobs, workers)


def duration_average_sweep(
    durations_ns: Sequence[float] | None = None,
    gates: Sequence[GateSpec] = (NOT_GATE, HADAMARD_GATE),
    *,
    sys: LambdaSystem = TRANSMON,
    kind: str = "gaussian",
    fwhm_fraction: float = DEFAULT_FWHM_FRACTION,
    sech_beta: float = DEFAULT_SECH_BETA,
    cfg: PropagationConfig | None = None,
    workers: int = 1,
) -> list[SweepPoint]:
    """Input-averaged fidelity per (gate, duration) over a dense duration grid."""
    cfg = cfg or PropagationConfig()
    if durations_ns is None:
        durations_ns = fig1_default_durations_ns()

    def job(gate: GateSpec, tau_ns: float) -> Callable[[], SweepPoint]:
        def evaluate() -> SweepPoint:
            env = _pulse(kind, tau_ns, fwhm_fraction, sech_beta)
            drive = drive_for_gate(gate, env)
            outcomes = [
                gate_outcome(sys, gate, drive, INPUT_STATES[label], cfg)
                for label in AVERAGE_INPUT_LABELS
            ]
            coords = _coords(sys, cfg, kind, env.width_param, tau_ns, gate, "avg")
            return SweepPoint(
                coordinates=coords,
                fidelity=float(np.mean([o.fidelity for o in outcomes])),
                excited_population=float(np.mean([o.excited_population for o in outcomes])),
                overlap_phase=None,
            )

        return evaluate

    jobs = [job(gate, float(t)) for gate in gates for t in durations_ns]
    return _run_jobs(jobs, workers)


def _sequence_average(
    sys: LambdaSystem,
    first: GateSpec,
    second: GateSpec,
    tau_ns: float,
    kind: str,
    fwhm_fraction: float,
    sech_beta: float,
    cfg: PropagationConfig,
) -> tuple[float, float]:
    """Input-averaged fidelity of two abutting pulses against the ideal product."""
    env = _pulse(kind, tau_ns, fwhm_fraction, sech_beta)
    drives = [drive_for_gate(first, env), drive_for_gate(second, env)]
    u_ideal = ideal_gate(second) @ ideal_gate(first)
    fids, pops = [], []
    for label in AVERAGE_INPUT_LABELS:
        psi0 = INPUT_STATES[label]
        exact = propagate_sequence(sys, drives, psi0, cfg)
        fids.append(abs(overlap(apply(u_ideal, psi0), exact)))
        pops.append(excited_population(exact))
    return float(np.mean(fids)), float(np.mean(pops))


def sequence_sweep(
    durations_ns: Sequence[float] | None = None,
    *,
    sys: LambdaSystem = TRANSMON,
    kind: str = "gaussian",
    fwhm_fraction: float = DEFAULT_FWHM_FRACTION,
    sech_beta: float = DEFAULT_SECH_BETA,
    cfg: PropagationConfig | None = None,
    workers: int = 1,
) -> list[SweepPoint]:
    """Hadamard/NOT two-pulse combinations vs the product of single-gate fidelities.

    For each per-pulse duration tau the sweep emits three points: the two
    application orders (each averaged over the canonical inputs) and the
    product of the separately averaged single-gate fidelities at the same tau.
    """
    cfg = cfg or PropagationConfig()
    if durations_ns is None:
        durations_ns = fig2_default_durations_ns()

    def job(tau_ns: float, label: str) -> Callable[[], SweepPoint]:
        def evaluate() -> SweepPoint:
            env = _pulse(kind, tau_ns, fwhm_fraction, sech_beta)
            if label == "hadamard_then_not":
                fid, pop = _sequence_average(
                    sys, HADAMARD_GATE, NOT_GATE, tau_ns, kind, fwhm_fraction, sech_beta, cfg
                )
            elif label == "not_then_hadamard":
                fid, pop = _sequence_average(
                    sys, NOT_GATE, HADAMARD_GATE, tau_ns, kind, fwhm_fraction, sech_beta, cfg
                )
            else:
                fid_not = np.mean(
                    [
                        gate_outcome(
                            sys, NOT_GATE, drive_for_gate(NOT_GATE, env), INPUT_STATES[l], cfg
                        ).fidelity
                        for l in AVERAGE_INPUT_LABELS
                    ]
                )
                fid_had = np.mean(
                    [
                        gate_outcome(
                            sys,
                            HADAMARD_GATE,
                            drive_for_gate(HADAMARD_GATE, env),
                            INPUT_STATES[l],
                            cfg,
                        ).fidelity
                        for l in AVERAGE_INPUT_LABELS
                    ]
                )
                fid, pop = float(fid_not * fid_had), None
            coords = _coords(
                sys, cfg, kind, env.width_param, tau_ns, None, "avg", sequence=label
            )
            return SweepPoint(
                coordinates=coords,
                fidelity=fid,
                excited_population=pop,
                overlap_phase=None,
            )

        return evaluate

    jobs = [job(float(t), label) for t in durations_ns for label in SEQUENCE_LABELS]
    return _run_jobs(jobs, workers)
