"""Coherent-state description of the field realizing a sampled waveform.

A box of length L carries modes k_n = 2 pi n / L (n >= 1) with omega = c k
(c = 1 in working units).  The mode lattice is exactly the DFT lattice of a
signal sampled on a box of the same length, so the map
signal -> spectrum -> per-mode amplitudes -> field expectation is an exact
round trip up to the dropped k <= 0 bins.

Per-mode amplitude: alpha_k = i sqrt(L / (2 pi omega_k)) F(k), which makes
the magnetic-field expectation
  B(z, t) = sum_k sqrt(8 pi omega_k / L^3)
            (Re alpha_k sin(k z - w t) + Im alpha_k cos(k z - w t))
reproduce the right-moving waveform F(z - c t).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import CutoffMissing, InfraredError, TruncationError
from .signal import SampledSignal
from .spectral import SpectralDensity

ENERGY_ROUTE_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class ModeGrid:
    """Positive-k mode lattice of a quantization box."""

    box_length: float
    wavenumbers: np.ndarray
    uv_cutoff: float | None = None

    def __post_init__(self):
        k = np.asarray(self.wavenumbers, dtype=float)
        if k.ndim != 1 or k.size < 1:
            raise ValueError("wavenumbers must be a non-empty 1-d array")
        dk = 2.0 * math.pi / self.box_length
        n = np.rint(k / dk)
        if n[0] < 1 or not np.allclose(k, n * dk, rtol=1e-9, atol=0.0):
            raise ValueError("wavenumbers must be positive multiples of 2 pi / L")
        if self.uv_cutoff is not None:
            if self.uv_cutoff <= 0.0:
                raise ValueError("uv_cutoff must be positive")
            if k[-1] > self.uv_cutoff:
                raise ValueError("mode lattice extends beyond the UV cutoff")
        object.__setattr__(self, "wavenumbers", k)

    @property
    def dk(self) -> float:
        return 2.0 * math.pi / self.box_length

    @property
    def omega(self) -> np.ndarray:
        return self.wavenumbers  # c = 1

    @classmethod
    def for_box(cls, box_length: float, k_cut: float,
                uv_cutoff: float | None = None) -> "ModeGrid":
        dk = 2.0 * math.pi / box_length
        n = int(math.floor(k_cut / dk))
        if n < 1:
            raise ValueError("box too small: no mode below k_cut")
        return cls(box_length=box_length, wavenumbers=dk * np.arange(1, n + 1),
                   uv_cutoff=uv_cutoff)

    @classmethod
    def for_signal(cls, s: SampledSignal, k_cut: float | None = None,
                   uv_cutoff: float | None = None) -> "ModeGrid":
        """Mode lattice of the signal's box; defaults to the full half-lattice.

        The full lattice (all positive DFT bins below Nyquist) makes the
        signal -> amplitudes -> expectation round trip exact to rounding.
        """
        if k_cut is None:
            dk = 2.0 * math.pi / s.box_length
            n = s.n // 2 - 1
            return cls(box_length=s.box_length, wavenumbers=dk * np.arange(1, n + 1),
                       uv_cutoff=uv_cutoff)
        return cls.for_box(s.box_length, k_cut, uv_cutoff)


@dataclass(frozen=True, eq=False)
class FourierCoeffs:
    """Real Fourier-series coefficients on the mode lattice."""

    grid: ModeGrid
    a: np.ndarray  # cosine channel
    b: np.ndarray  # sine channel

    def reconstruct(self, z, t: float = 0.0) -> np.ndarray:
        """Direct resummation sum_n a_n cos(k z - w t) + b_n sin(k z - w t)."""
        z = np.atleast_1d(np.asarray(z, dtype=float))
        k = self.grid.wavenumbers
        out = np.zeros(z.size)
        # chunk over modes to bound memory
        step = 4096
        for i in range(0, k.size, step):
            kk = k[i:i + step]
            ph = np.outer(z, kk) - kk * t
            out += np.cos(ph) @ self.a[i:i + step] + np.sin(ph) @ self.b[i:i + step]
        return out


def fourier_coeffs(s: SampledSignal, grid: ModeGrid) -> FourierCoeffs:
    """Cosine/sine coefficients a_n = (2/L) int F cos(k_n z), b_n likewise with sine.

    Rectangle-rule quadrature on the sample grid, evaluated through the DFT
    (exactly the same sum when the mode lattice matches the sample box).
    """
    if not s.real_valued:
        raise TruncationError("fourier_coeffs requires a real-valued signal")
    if not math.isclose(grid.box_length, s.box_length, rel_tol=1e-9):
        raise TruncationError(
            f"mode lattice box {grid.box_length} != signal box {s.box_length}"
        )
    transform = s.dz * np.fft.rfft(np.real(s.values))
    k_all = 2.0 * math.pi * np.fft.rfftfreq(s.n, d=s.dz)
    transform = transform * np.exp(-1j * k_all * s.z_min)
    idx = np.rint(grid.wavenumbers / grid.dk).astype(int)
    if idx.max() >= transform.size:
        raise TruncationError("mode lattice extends beyond the Nyquist wavenumber")
    coeff = (2.0 / grid.box_length) * transform[idx]
    return FourierCoeffs(grid=grid, a=np.real(coeff), b=-np.imag(coeff))


@dataclass(frozen=True, eq=False)
class CoherentAmplitudes:
    """Per-mode coherent amplitudes alpha_k plus the originating box geometry."""

    grid: ModeGrid
    alpha: np.ndarray
    z_min: float = 0.0
    dz: float = 1.0
    n_samples: int = 0

    @property
    def mean_photon_numbers(self) -> np.ndarray:
        return np.abs(self.alpha) ** 2

    def is_classical(self, threshold: float = 10.0, support_frac: float = 1e-3) -> bool:
        """All amplitudes large on the occupied support."""
        mag = np.abs(self.alpha)
        support = mag >= support_frac * mag.max()
        return bool(support.any() and mag[support].min() >= threshold)

    def spectral_values(self) -> np.ndarray:
        """F(k) on the mode lattice, inverted from the amplitudes."""
        return -1j * self.alpha * np.sqrt(2.0 * math.pi * self.grid.omega / self.grid.box_length)


def amplitudes_from_spectrum(sd: SpectralDensity, grid: ModeGrid,
                             require_band_limited: float | None = None) -> CoherentAmplitudes:
    """alpha_k = i sqrt(L/(2 pi omega_k)) F(k_n) on the mode lattice.

    Pass ``require_band_limited=half_width`` to insist the spectral density
    carries its band-confinement certificate for that blur width first
    (grid-truncated signals are legitimate states but not certifiable).
    """
    if require_band_limited is not None and not sd.is_band_limited(require_band_limited):
        raise TruncationError(
            f"spectral density not band-limited at eps_band = {sd.eps_band:g}"
        )
    if not math.isclose(sd.dk, grid.dk, rel_tol=1e-9):
        raise TruncationError(
            f"spectral spacing {sd.dk} does not match mode spacing {grid.dk}"
        )
    idx0 = int(np.rint((0.0 - sd.k[0]) / sd.dk))
    idx = idx0 + np.rint(grid.wavenumbers / grid.dk).astype(int)
    if idx.max() >= sd.k.size:
        raise TruncationError("mode lattice not covered by the spectral grid")
    if not np.allclose(sd.k[idx], grid.wavenumbers, rtol=1e-9, atol=sd.dk * 1e-9):
        raise TruncationError("mode lattice misaligned with the spectral grid")
    f_k = sd.values[idx]
    alpha = 1j * np.sqrt(grid.box_length / (2.0 * math.pi * grid.omega)) * f_k
    if not np.all(np.isfinite(alpha)):
        raise InfraredError("divergent amplitude on the lowest modes")
    return CoherentAmplitudes(grid=grid, alpha=alpha, z_min=sd.z_min, dz=sd.dz,
                              n_samples=sd.n_samples)


def expectation_B(ca: CoherentAmplitudes, z=None, t: float = 0.0):
    """Field expectation at time t.

    With z omitted, evaluates on the originating sample grid through one
    inverse FFT (exact mode resummation).  With explicit z (scalar or
    array), performs the direct mode sum.
    """
    if z is None:
        if ca.n_samples == 0:
            raise ValueError("amplitudes carry no box geometry; pass z explicitly")
        n = ca.n_samples
        dk = ca.grid.dk
        f_k = ca.spectral_values()
        spect = np.zeros(n, dtype=complex)
        idx = np.rint(ca.grid.wavenumbers / dk).astype(int)
        spect[idx] = f_k * np.exp(-1j * ca.grid.omega * t) * np.exp(
            1j * ca.grid.wavenumbers * ca.z_min
        )
        vals = n * np.fft.ifft(spect)
        return (dk / math.pi) * np.real(vals)

    z = np.atleast_1d(np.asarray(z, dtype=float))
    k = ca.grid.wavenumbers
    w = ca.grid.omega
    L = ca.grid.box_length
    coeff = np.sqrt(8.0 * math.pi * w / L**3)
    out = np.zeros(z.size)
    step = 4096
    for i in range(0, k.size, step):
        ph = np.outer(z, k[i:i + step]) - w[i:i + step] * t
        out += np.sin(ph) @ (coeff[i:i + step] * np.real(ca.alpha[i:i + step]))
        out += np.cos(ph) @ (coeff[i:i + step] * np.imag(ca.alpha[i:i + step]))
    return out if out.size > 1 else float(out[0])


class TwoPointResult(NamedTuple):
    product: float
    vacuum: complex

    @property
    def total(self) -> complex:
        return self.product + self.vacuum


def vacuum_two_point(box_length: float, uv_cutoff: float, tau: float) -> complex:
    """(1/L^2) int_0^{w_uv} dw w exp(i w tau), in closed form (c = hbar = 1)."""
    w_uv = uv_cutoff  # omega = c k
    if tau == 0.0:
        integral = 0.5 * w_uv**2
    else:
        e = np.exp(1j * w_uv * tau)
        integral = w_uv * e / (1j * tau) + (e - 1.0) / tau**2
    return complex(integral / box_length**2)


def two_point_function(ca: CoherentAmplitudes, z0: float, t1: float,
                       t2: float) -> TwoPointResult:
    """Product term F(z0-t1) F(z0-t2) plus the explicit cutoff vacuum term."""
    if ca.grid.uv_cutoff is None:
        raise CutoffMissing("two_point_function requires uv_cutoff on the mode grid")
    b1 = expectation_B(ca, z0, t1)
    b2 = expectation_B(ca, z0, t2)
    vac = vacuum_two_point(ca.grid.box_length, ca.grid.uv_cutoff, t2 - t1)
    return TwoPointResult(product=float(b1 * b2), vacuum=vac)


class EnergyBefore(NamedTuple):
    spectral_route: float   # (L^2 / 4 pi^2) int dk |F(k)|^2
    mode_sum_route: float   # sum_k omega_k |alpha_k|^2 under the same measure

    @property
    def value(self) -> float:
        return self.spectral_route


def energy_before(ca: CoherentAmplitudes) -> EnergyBefore:
    """Field energy of the state, by two routes that must agree to 1e-8.

    Both routes realize the mode sum under the same continuum measure
    (sum_k -> (L/2pi) int dk with trapezoid weights); one starts from the
    spectral density, the other from photon occupations, so their agreement
    checks the amplitude map's normalization.
    """
    f_k = ca.spectral_values()
    L = ca.grid.box_length
    spectral = (L**2 / (4.0 * math.pi**2)) * float(
        np.trapezoid(np.abs(f_k) ** 2, ca.grid.wavenumbers)
    )
    mode_sum = (L / (2.0 * math.pi)) * float(
        np.trapezoid(ca.grid.omega * ca.mean_photon_numbers, ca.grid.wavenumbers)
    )
    if mode_sum > 0.0 and abs(spectral - mode_sum) > ENERGY_ROUTE_TOL * mode_sum:
        raise ValueError(
            f"energy routes disagree: spectral {spectral!r} vs mode sum {mode_sum!r}"
        )
    return EnergyBefore(spectral, mode_sum)
