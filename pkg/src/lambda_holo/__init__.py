"""Exact vs rotating-wave dynamics of driven three-level lambda systems."""

from .qstate import (
    KET_0,
    KET_1,
    KET_E,
    NumericalContractError,
    apply,
    expm_unitary,
    ket,
    overlap,
    state_vector,
)
from .pulses import (
    DEFAULT_FWHM_FRACTION,
    DEFAULT_SECH_BETA,
    ENVELOPE_KINDS,
    DriveSpec,
    Envelope,
    drive_coefficients,
    envelope,
)
from .dynamics import (
    TRANSMON,
    LambdaSystem,
    PropagationConfig,
    hamiltonian_at,
    propagate,
    propagate_sequence,
    propagator,
    sequence_propagator,
)
from .gates import (
    GATE_PRESETS,
    HADAMARD_GATE,
    INPUT_STATES,
    NOT_GATE,
    GateSpec,
    average_fidelity,
    drive_for_gate,
    gate_fidelity,
    ideal_gate,
)
from .sweeps import (
    SweepPoint,
    duration_average_sweep,
    duration_sweep,
    envelope_input_sweep,
    frequency_sweep,
    sequence_sweep,
)

__version__ = "0.1.0"
