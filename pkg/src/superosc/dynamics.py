"""First-order excitation of a two-level detector by the sampled field.

The excitation probability after coupling for a time t is
    P(t) = g^2 | int_0^t F(z0 - c t') exp(i Omega t') dt' |^2
with g the coupling prefactor and Omega the detector's gap frequency
(working units c = hbar = 1).  The signal is interpolated from its samples
by a cubic spline; the time integral is composite Simpson with a fixed
number of nodes per period of the fastest phase present, Omega + c*k_max.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import DomainError, GridUnderresolved, InsufficientData
from .signal import SampledSignal

N_PER_PERIOD = 32
BREAKDOWN_THRESHOLD = 0.1  # first-order validity guard on P


@dataclass(frozen=True)
class TwoLevelParticle:
    gap_frequency: float
    coupling: float = 1.0
    detector_z: float = 0.0

    def __post_init__(self):
        if self.gap_frequency <= 0.0:
            raise ValueError("gap_frequency must be > 0")

    @property
    def gap_energy(self) -> float:
        return self.gap_frequency  # hbar = 1


def _excitation_integral(spline, particle: TwoLevelParticle, t: float,
                         k_max: float, n_per_period: int) -> complex:
    fastest = particle.gap_frequency + k_max
    n = max(8, int(math.ceil(t * fastest / (2.0 * math.pi) * n_per_period)))
    n += n % 2
    ts = np.linspace(0.0, t, n + 1)
    w = spline(particle.detector_z - ts) * np.exp(1j * particle.gap_frequency * ts)
    h = t / n
    return (h / 3.0) * (w[0] + w[-1] + 4.0 * w[1:-1:2].sum() + 2.0 * w[2:-2:2].sum())


def _check_coverage(s: SampledSignal, particle: TwoLevelParticle, t: float):
    if t < 0.0:
        raise DomainError("t must be >= 0")
    if s.dz > math.pi / (4.0 * s.k_max) * (1.0 + 1e-12):
        raise GridUnderresolved("signal grid too coarse for its own content")
    if not s.covers(particle.detector_z - t, particle.detector_z):
        raise DomainError(
            f"signal grid does not cover [z0 - c t, z0] = "
            f"[{particle.detector_z - t}, {particle.detector_z}]"
        )


def transition_probability(s: SampledSignal, particle: TwoLevelParticle, t: float,
                           n_per_period: int = N_PER_PERIOD) -> float:
    """P(t) for one time; see module docstring."""
    _check_coverage(s, particle, t)
    if t == 0.0:
        return 0.0
    spline = CubicSpline(s.z, s.values)
    amp = _excitation_integral(spline, particle, t, s.k_max, n_per_period)
    return particle.coupling**2 * abs(amp) ** 2


@dataclass(frozen=True, eq=False)
class ProbabilityCurve:
    times: np.ndarray
    values: np.ndarray
    gap_frequency: float
    coupling: float
    label: str = ""
    breakdown: np.ndarray = field(init=False)

    def __post_init__(self):
        if np.any(self.values < 0.0):
            raise ValueError("probabilities must be >= 0")
        object.__setattr__(self, "breakdown", self.values > BREAKDOWN_THRESHOLD)

    @property
    def any_breakdown(self) -> bool:
        return bool(self.breakdown.any())


def probability_curve(s: SampledSignal, particle: TwoLevelParticle, times,
                      n_per_period: int = N_PER_PERIOD,
                      label: str = "") -> ProbabilityCurve:
    """P on a time grid; points with P above 0.1 carry the breakdown flag."""
    times = np.asarray(times, dtype=float)
    _check_coverage(s, particle, float(times.max()))
    spline = CubicSpline(s.z, s.values)
    values = np.array(
        [
            0.0 if t == 0.0 else particle.coupling**2
            * abs(_excitation_integral(spline, particle, t, s.k_max, n_per_period)) ** 2
            for t in times
        ]
    )
    return ProbabilityCurve(times=times, values=values,
                            gap_frequency=particle.gap_frequency,
                            coupling=particle.coupling, label=label or s.label)


def monochromatic_reference(gap_frequency: float, amplitude: float, t: float,
                            coupling: float = 1.0) -> float:
    """Resonant closed form g^2 amplitude^2 t^2 / 4 for F = amplitude*sin(Omega z)."""
    if t < 0.0:
        raise DomainError("t must be >= 0")
    return (coupling * amplitude * t) ** 2 / 4.0


def matched_sine_amplitude(s: SampledSignal, wavenumber: float,
                           z_lo: float, z_hi: float) -> float:
    """Least-squares amplitude of a sin(wavenumber*z) fit over [z_lo, z_hi].

    The constant relating the window-interior waveform to the reference sine
    is extracted from the samples, not assumed.
    """
    sel = (s.z >= z_lo) & (s.z <= z_hi)
    if sel.sum() < 8:
        raise InsufficientData("fewer than 8 samples in the fit window")
    zw = s.z[sel]
    gw = np.real(s.values[sel])
    basis = np.column_stack([np.sin(wavenumber * zw), np.cos(wavenumber * zw)])
    coeff, *_ = np.linalg.lstsq(basis, gw, rcond=None)
    return float(np.hypot(*coeff))


@dataclass(frozen=True)
class ExponentFit:
    exponent: float
    prefactor: float
    window: tuple[float, float]
    residual_rms: float
    n_points: int


def fit_exponent(curve: ProbabilityCurve, window: tuple[float, float]) -> ExponentFit:
    """Least-squares line in (log t, log P) over the window."""
    t_lo, t_hi = window
    sel = (curve.times >= t_lo) & (curve.times <= t_hi)
    if sel.sum() < 10:
        raise InsufficientData(f"only {int(sel.sum())} curve points in the fit window")
    if np.any(curve.values[sel] <= 0.0):
        raise InsufficientData("non-positive probabilities in the fit window")
    logt = np.log(curve.times[sel])
    logp = np.log(curve.values[sel])
    slope, intercept = np.polyfit(logt, logp, 1)
    resid = logp - (slope * logt + intercept)
    return ExponentFit(
        exponent=float(slope),
        prefactor=float(np.exp(intercept)),
        window=(float(t_lo), float(t_hi)),
        residual_rms=float(np.sqrt(np.mean(resid**2))),
        n_points=int(sel.sum()),
    )


@dataclass(frozen=True, eq=False)
class DetuningScan:
    gaps: np.ndarray
    probabilities: np.ndarray
    t: float
    coupling: float

    def selectivity(self, matched_gap: float, min_rel_detuning: float = 0.1) -> float:
        """P(matched) over the largest P among probes detuned by >= 10%."""
        i_match = int(np.argmin(np.abs(self.gaps - matched_gap)))
        others = np.abs(self.gaps - matched_gap) >= min_rel_detuning * matched_gap
        if not others.any():
            raise InsufficientData("no probe detuned by the required fraction")
        return float(self.probabilities[i_match] / self.probabilities[others].max())


def detuning_scan(s: SampledSignal, gaps, t: float,
                  coupling: float = 1.0, detector_z: float = 0.0,
                  n_per_period: int = N_PER_PERIOD) -> DetuningScan:
    """P at time t for each probe gap frequency."""
    gaps = np.asarray(gaps, dtype=float)
    if np.any(gaps <= 0.0):
        raise DomainError("all probe gaps must be > 0")
    probs = np.empty(gaps.size)
    spline = CubicSpline(s.z, s.values)
    for i, gap in enumerate(gaps):
        particle = TwoLevelParticle(gap_frequency=float(gap), coupling=coupling,
                                    detector_z=detector_z)
        _check_coverage(s, particle, t)
        amp = _excitation_integral(spline, particle, t, s.k_max, n_per_period)
        probs[i] = coupling**2 * abs(amp) ** 2
    return DetuningScan(gaps=gaps, probabilities=probs, t=t, coupling=coupling)
