"""Discrete spectra scaled to approximate the continuous Fourier transform.

The DFT of the sampled box, multiplied by dz, approximates
F(k) = integral dz F(z) exp(-i k z); the k grid spacing is 2*pi over the box
length.  Energy fractions are computed on magnitude-normalized values so
that signals whose samples reach e^700 never overflow the quadratic forms.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import TruncationError
from .signal import SampledSignal

BOUNDARY_DECAY = 1e-6
EPS_BAND_DEFAULT = 1e-4


@dataclass(frozen=True, eq=False)
class SpectralDensity:
    k: np.ndarray
    values: np.ndarray
    band_limit: float
    eps_band: float = EPS_BAND_DEFAULT
    # originating box (needed to hand mode lattices exactly aligned data)
    z_min: float = 0.0
    dz: float = 1.0
    n_samples: int = 0
    _dk: float = field(init=False, repr=False)

    def __post_init__(self):
        dk = float(self.k[1] - self.k[0])
        if not np.allclose(np.diff(self.k), dk, rtol=1e-9, atol=0.0):
            raise ValueError("k grid must be uniform")
        object.__setattr__(self, "_dk", dk)

    @property
    def dk(self) -> float:
        return self._dk

    def band_energy_fraction(self, k_lo: float, k_hi: float) -> float:
        """Fraction of spectral energy inside [k_lo, k_hi] (overflow-safe)."""
        mag = np.abs(self.values)
        if mag.max() == 0.0:
            return 1.0  # vacuum spectrum is trivially confined
        scaled = mag / mag.max()
        energy = scaled**2
        inside = (self.k >= k_lo) & (self.k <= k_hi)
        return float(energy[inside].sum() / energy.sum())

    def leakage(self, half_width: float) -> float:
        """Energy fraction outside [-half_width, band_limit + half_width]."""
        return 1.0 - self.band_energy_fraction(-half_width, self.band_limit + half_width)

    def is_band_limited(self, half_width: float) -> bool:
        return self.leakage(half_width) <= self.eps_band


def spectrum(s: SampledSignal, band_limit: float,
             eps_band: float = EPS_BAND_DEFAULT) -> SpectralDensity:
    """Continuous-transform approximation of the sampled signal.

    Requires the boundary samples to have decayed below 1e-6 of the grid
    maximum, i.e. the box must contain the (windowed) signal.
    """
    v = s.values
    boundary = max(abs(v[0]), abs(v[-1]))
    if boundary > BOUNDARY_DECAY * s.max_abs:
        raise TruncationError(
            f"boundary samples at {boundary / s.max_abs:.2e} of max exceed "
            f"{BOUNDARY_DECAY:.0e}: box does not contain the signal"
        )
    n = s.n
    transform = s.dz * np.fft.fft(v)
    k = 2.0 * np.pi * np.fft.fftfreq(n, d=s.dz)
    transform = transform * np.exp(-1j * k * s.z_min)
    k = np.fft.fftshift(k)
    transform = np.fft.fftshift(transform)
    if k[0] > -band_limit or k[-1] < 2.0 * band_limit:
        raise TruncationError("k grid does not cover [-k0, 2 k0]; refine dz")
    return SpectralDensity(k=k, values=transform, band_limit=band_limit,
                           eps_band=eps_band, z_min=s.z_min, dz=s.dz, n_samples=n)


def parseval_residual(s: SampledSignal, sd: SpectralDensity) -> float:
    """Relative mismatch of sum|F(k)|^2 dk/2pi against sum|F(z)|^2 dz."""
    scale = s.max_abs
    if scale == 0.0:
        return 0.0
    lhs = (np.abs(sd.values / (scale * s.box_length)) ** 2).sum() * sd.dk / (2.0 * np.pi)
    rhs = (np.abs(s.values / scale) ** 2).sum() * s.dz / s.box_length**2
    return float(abs(lhs - rhs) / rhs)
