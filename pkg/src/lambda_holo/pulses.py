"""Pulse envelopes, pulse-area normalization, and drive coefficient pairs.

An Envelope is a named shape g(t) supported on [0, tau] together with an
amplitude scale A chosen so that the integral of A*g over the window equals
pi (a pi pulse, completing one cyclic evolution of the driven subspace).
The two drive tones share the envelope; their fixed complex coefficients
(c0, c1) encode the target rotation angles (theta, phi) through
c0/c1 = -tan(theta/2) * exp(i*phi) with |c0|^2 + |c1|^2 = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

ENVELOPE_KINDS = ("gaussian", "sech", "parabola", "sin2", "square")

DEFAULT_FWHM_FRACTION = 0.25
DEFAULT_SECH_BETA = 5.3

# FWHM = 2*sqrt(2*ln 2) * sigma for a Gaussian
_FWHM_TO_SIGMA = 1.0 / (2.0 * math.sqrt(2.0 * math.log(2.0)))

_QUAD_START_PANELS = 4096
_QUAD_MAX_PANELS = 2**22
_QUAD_RTOL = 1e-13


def raw_shape(kind: str, tau: float, width_param: float | None, t) -> np.ndarray:
    """Unnormalized envelope g(t), zero outside [0, tau]. Vectorized in t."""
    tv = np.asarray(t, dtype=float)
    inside = (tv >= 0.0) & (tv <= tau)
    x = 2.0 * tv / tau - 1.0  # [-1, 1] across the window
    if kind == "gaussian":
        sigma = width_param * tau * _FWHM_TO_SIGMA  # width_param = FWHM / tau
        g = np.exp(-((tv - 0.5 * tau) ** 2) / (2.0 * sigma * sigma))
    elif kind == "sech":
        g = 1.0 / np.cosh(width_param * np.where(inside, x, 0.0))
    elif kind == "parabola":
        g = 1.0 - x * x
    elif kind == "sin2":
        g = np.sin(np.pi * tv / tau) ** 2
    elif kind == "square":
        g = np.ones_like(tv)
    else:
        raise ValueError(f"unknown envelope kind {kind!r}; expected one of {ENVELOPE_KINDS}")
    return np.where(inside, g, 0.0)


def _simpson_area(kind: str, tau: float, width_param: float | None, panels: int) -> float:
    x = np.linspace(0.0, tau, panels + 1)
    y = raw_shape(kind, tau, width_param, x)
    h = tau / panels
    return float(h / 3.0 * (y[0] + y[-1] + 4.0 * y[1::2].sum() + 2.0 * y[2:-1:2].sum()))


def shape_area(kind: str, tau: float, width_param: float | None) -> float:
    """Integral of the raw shape over [0, tau], by composite Simpson.

    Panel count starts at 4096 and doubles until two successive estimates
    agree to 1e-13 relative; all five shapes are smooth enough that this
    converges within a few doublings.
    """
    panels = _QUAD_START_PANELS
    prev = _simpson_area(kind, tau, width_param, panels)
    while panels < _QUAD_MAX_PANELS:
        panels *= 2
        cur = _simpson_area(kind, tau, width_param, panels)
        if abs(cur - prev) <= _QUAD_RTOL * abs(cur):
            return cur
        prev = cur
    return prev


@dataclass(frozen=True)
class Envelope:
    """A pulse shape with duration tau (s) and amplitude scale (rad/s)."""

    kind: str
    tau: float
    width_param: float | None
    amplitude: float

    def evaluate(self, t) -> np.ndarray:
        """A * g(t); zero outside [0, tau]."""
        return self.amplitude * raw_shape(self.kind, self.tau, self.width_param, t)

    __call__ = evaluate

    def with_amplitude(self, amplitude: float) -> "Envelope":
        """Copy with a different amplitude scale (diagnostics and limit checks)."""
        return replace(self, amplitude=amplitude)


def envelope(
    kind: str,
    tau: float,
    fwhm_fraction: float = DEFAULT_FWHM_FRACTION,
    sech_beta: float = DEFAULT_SECH_BETA,
) -> Envelope:
    """Build an envelope normalized so that its pulse area is pi.

    The width parameter depends on the kind: for 'gaussian' it is the FWHM
    as a fraction of tau, for 'sech' the dimensionless steepness beta in
    sech(beta * (2t/tau - 1)); the remaining kinds span the full window.
    """
    if kind not in ENVELOPE_KINDS:
        raise ValueError(f"unknown envelope kind {kind!r}; expected one of {ENVELOPE_KINDS}")
    if not (np.isfinite(tau) and tau > 0.0):
        raise ValueError(f"pulse duration must be positive and finite, got {tau!r}")
    if kind == "gaussian":
        if not (np.isfinite(fwhm_fraction) and fwhm_fraction > 0.0):
            raise ValueError(f"fwhm_fraction must be positive, got {fwhm_fraction!r}")
        width = fwhm_fraction
    elif kind == "sech":
        if not (np.isfinite(sech_beta) and sech_beta > 0.0):
            raise ValueError(f"sech_beta must be positive, got {sech_beta!r}")
        width = sech_beta
    else:
        width = None
    area = shape_area(kind, tau, width)
    if area <= 0.0:
        raise ValueError(f"envelope {kind!r} has zero area over [0, {tau!r}]")
    return Envelope(kind=kind, tau=tau, width_param=width, amplitude=math.pi / area)


def drive_coefficients(theta: float, phi: float) -> tuple[complex, complex]:
    """Coefficient pair (c0, c1) with c0/c1 = -tan(theta/2) e^{i phi}, c1 real >= 0.

    theta = pi makes the ratio singular; there the limit pair (-e^{i phi}, 0)
    is returned explicitly.
    """
    if not (np.isfinite(theta) and np.isfinite(phi)):
        raise ValueError("theta and phi must be finite")
    if not 0.0 <= theta <= math.pi:
        raise ValueError(f"theta must lie in [0, pi], got {theta!r}")
    if not -math.pi <= phi <= math.pi:
        raise ValueError(f"phi must lie in [-pi, pi], got {phi!r}")
    if abs(theta - math.pi) < 1e-12:
        return (-np.exp(1j * phi), 0.0 + 0.0j)
    c0 = -math.sin(theta / 2.0) * np.exp(1j * phi)
    c1 = complex(math.cos(theta / 2.0))
    return (complex(c0), c1)


@dataclass(frozen=True)
class DriveSpec:
    """The two drive tones: a shared pi-normalized envelope times fixed coefficients."""

    envelope: Envelope
    c0: complex
    c1: complex

    def __post_init__(self):
        weight = abs(self.c0) ** 2 + abs(self.c1) ** 2
        if abs(weight - 1.0) > 1e-12:
            raise ValueError(f"|c0|^2 + |c1|^2 must be 1, got {weight!r}")

    @classmethod
    def for_angles(cls, theta: float, phi: float, env: Envelope) -> "DriveSpec":
        c0, c1 = drive_coefficients(theta, phi)
        return cls(envelope=env, c0=c0, c1=c1)

    def omega0(self, t) -> np.ndarray:
        return self.c0 * self.envelope.evaluate(t)

    def omega1(self, t) -> np.ndarray:
        return self.c1 * self.envelope.evaluate(t)
